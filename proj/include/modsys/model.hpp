#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "modsys/integrators.hpp"
#include "modsys/multiset.hpp"
#include "modsys/poset.hpp"
#include "modsys/scales.hpp"
#include "modsys/transforms.hpp"

namespace modsys {

/// Design alternative: one candidate for a leaf component, with at most one estimate per kind.
struct DA {
    std::string id;
    std::map<std::string, Estimate> estimates;

    friend bool operator==(const DA&, const DA&) = default;
};

enum class NodeKind { Leaf, Internal };

struct SystemNode {
    std::string id;
    NodeKind kind = NodeKind::Leaf;
    std::vector<SystemNode> children;   // internal only
    std::vector<std::string> das;       // leaf only
    std::optional<std::string> method;  // internal only; overrides the requested method
    std::optional<std::string> table;   // internal only; integration table id
    std::optional<std::string> transform;  // leaf only; threshold spec or ordinal map id

    bool is_leaf() const noexcept { return kind == NodeKind::Leaf; }

    friend bool operator==(const SystemNode&, const SystemNode&) = default;
};

struct ThresholdDecl {
    std::string source_scale;
    ThresholdSpec spec;

    friend bool operator==(const ThresholdDecl&, const ThresholdDecl&) = default;
};

/// Exactly one DA per leaf, keyed by leaf id.
struct Composition {
    std::string name;
    std::map<std::string, std::string> selection;

    friend bool operator==(const Composition&, const Composition&) = default;
};

enum class Method { Additive, Tables, VectorSum, CountProfile, Quality, MultisetMedian };

std::string_view method_name(Method m) noexcept;
/// Throws Error on an unknown name.
Method parse_method(std::string_view name);
/// Estimate kind a method reads from DAs unless the model rebinds it.
std::string_view default_estimate_kind(Method m) noexcept;

struct Model {
    std::string name;
    std::vector<std::string> notes;
    ScaleSet scales;
    std::vector<DA> das;
    SystemNode root;
    std::optional<CompatTable> compat;
    std::map<std::string, IntegrationTable> tables;
    std::map<std::string, ThresholdDecl> thresholds;
    std::map<std::string, OrdinalMap> ordinal_maps;
    std::map<std::string, TopsisConfig> topsis;
    std::vector<Composition> compositions;
    /// Method name -> estimate kind.
    std::map<std::string, std::string> bindings;

    const DA* find_da(const std::string& id) const;
    const Composition* find_composition(const std::string& name) const;
    std::string estimate_kind(Method m) const;
    /// Leaves in depth-first order.
    std::vector<const SystemNode*> leaves() const;

    friend bool operator==(const Model&, const Model&) = default;
};

struct Violation {
    std::string path;
    std::string message;
    bool warning = false;
};

struct ValidationOptions {
    bool strict_monotone = true;
};

struct ModelReport {
    std::vector<Violation> violations;

    bool ok() const;
    std::size_t errors() const;
};

/// Tree shape, DA/scale/estimate consistency, table density and monotonicity, compatibility
/// completeness. Never throws on model content; every problem is a violation with a path.
ModelReport validate_model(const Model& model, const ValidationOptions& options = {});

struct CompositionList {
    std::vector<Composition> compositions;
    bool truncated = false;
};

inline constexpr std::size_t default_composition_limit = 1'000'000;

/// Cartesian product of the leaf DA lists, last leaf fastest; named by joining DA ids with '*'.
CompositionList enumerate_compositions(const Model& model,
                                       std::size_t limit = default_composition_limit);

using EvalValue = std::variant<double, Level, RealVector, CountVector, QualityVector, MedianResult>;

bool operator==(const EvalValue& a, const EvalValue& b);
std::string format_eval(const EvalValue& v);

struct EvalOptions {
    MultisetMetric metric = MultisetMetric::CumulativeL1;
};

/// Bottom-up evaluation of the whole tree. Throws Error with the offending node path when an
/// estimate, table or compatibility entry is missing.
EvalValue evaluate(const Model& model, const Composition& composition, Method method,
                   const EvalOptions& options = {});

enum class Reduction { Layers, LabelD, Closeness };

std::string_view reduction_name(Reduction r) noexcept;
Reduction parse_reduction(std::string_view name);

struct RankEntry {
    std::string name;
    EvalValue value;
    int priority = 0;
    std::optional<DLabel> label;
    std::optional<TopsisResult> topsis;
};

struct RankReport {
    Method method;
    Reduction reduction;
    std::vector<RankEntry> entries;
    bool truncated = false;
};

struct RankOptions {
    EvalOptions eval;
    /// Named compositions to rank; empty means the model's named compositions, or every
    /// enumerated composition when there are none (or when `all` is set).
    std::vector<std::string> subset;
    bool all = false;
    std::size_t limit = default_composition_limit;
};

RankReport rank(const Model& model, Method method, Reduction reduction,
                const RankOptions& options = {});

/// Non-Pareto compositions among `compositions` that reach the Pareto layer by one DA swap.
std::vector<std::string> near_pareto(const Model& model, std::span<const Composition> compositions,
                                     Method method, const EvalOptions& options = {});

} // namespace modsys
