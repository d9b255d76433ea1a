#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "modsys/multiset.hpp"
#include "modsys/poset.hpp"
#include "modsys/scales.hpp"

namespace modsys {

// --- additive utility -------------------------------------------------------------------

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

struct AdditiveResult {
    double value;
    /// Derived scale for the total: best = m * alpha, worst = m * beta.
    QuantScale scale;
};

/// Throws Error on empty input or a value outside the component scale.
AdditiveResult additive_utility(std::span<const double> values, const QuantScale& component_scale);

// --- integration tables -----------------------------------------------------------------

/// One table input: its ordinal scale and the levels the table actually spans (ascending).
struct TableInput {
    OrdinalScale scale{1};
    std::vector<Level> domain;

    friend bool operator==(const TableInput&, const TableInput&) = default;
};

struct TableCell {
    std::vector<Level> inputs;
    Level output;

    friend bool operator==(const TableCell&, const TableCell&) = default;
};

struct MonotonicityViolation {
    std::vector<Level> cell;
    std::size_t input;
    Level improved_level;
    Level output;
    Level improved_output;

    std::string describe() const;
};

/// Dense lookup table from a tuple of input levels to an output level.
class IntegrationTable {
public:
    /// Throws Error on a missing, duplicate or out-of-domain cell.
    IntegrationTable(std::vector<TableInput> inputs, OrdinalScale output,
                     std::span<const TableCell> cells);

    const std::vector<TableInput>& inputs() const noexcept { return inputs_; }
    const OrdinalScale& output() const noexcept { return output_; }

    /// Throws Error when the arity is wrong or a level is outside its input domain.
    Level lookup(std::span<const Level> levels) const;

    /// All cells, first input slowest.
    std::vector<TableCell> cells() const;

    /// Cells whose output gets worse when one input moves to the next better domain level.
    std::vector<MonotonicityViolation> monotonicity_violations() const;
    bool monotone() const { return monotonicity_violations().empty(); }

    friend bool operator==(const IntegrationTable&, const IntegrationTable&) = default;

private:
    std::size_t offset(std::span<const Level> levels) const;
    std::vector<Level> tuple_at(std::size_t offset) const;

    std::vector<TableInput> inputs_;
    OrdinalScale output_;
    std::vector<std::size_t> strides_;
    std::vector<Level> cells_;
};

// --- vector / count / quality -----------------------------------------------------------

/// Componentwise sum. Throws Error on empty input or an arity mismatch.
RealVector vector_sum(std::span<const RealVector> vectors);

/// eta_r = number of levels equal to r. Throws Error on a level outside 1..k.
CountVector count_profile(std::span<const Level> levels, int k);

/// Pairwise compatibility levels between DAs of different components. Keys are unordered.
class CompatTable {
public:
    explicit CompatTable(int nu, bool zero_level = false);

    int nu() const noexcept { return nu_; }
    bool zero_level() const noexcept { return zero_level_; }
    Level min_level() const noexcept { return zero_level_ ? 0 : 1; }

    /// Throws Error on a self pair or a level outside min_level()..nu.
    void set(const std::string& a, const std::string& b, Level level);
    std::optional<Level> get(const std::string& a, const std::string& b) const;

    const std::map<std::pair<std::string, std::string>, Level>& entries() const noexcept
    {
        return entries_;
    }

    friend bool operator==(const CompatTable&, const CompatTable&) = default;

private:
    int nu_;
    bool zero_level_;
    std::map<std::pair<std::string, std::string>, Level> entries_;
};

/// Minimum compatibility over all pairs of the selected DAs (one per component). A single
/// DA has no pairs and yields nu. Throws Error naming a missing pair.
Level min_compatibility(std::span<const std::string> das, const CompatTable& compat);

QualityVector quality_vector(std::span<const std::string> das, std::span<const Level> levels,
                             int k, const CompatTable& compat);

// --- TOPSIS-like ranking ----------------------------------------------------------------

struct TopsisConfig {
    /// One reference point per row.
    Eigen::MatrixXd best_points;
    Eigen::MatrixXd worst_points;
    int exponent = 2;
};

bool operator==(const TopsisConfig& a, const TopsisConfig& b);

struct TopsisResult {
    double rho_plus;
    double rho_minus;
    double closeness;
};

struct TopsisRanking {
    std::vector<TopsisResult> results;
    /// Point indices by descending closeness, input order on ties.
    std::vector<std::size_t> order;
    /// outranks(a, b): rho_plus(a) <= rho_plus(b) and rho_minus(a) >= rho_minus(b), one strict.
    Relation outranks;
};

/// Points are rows. Throws Error on an invalid config or a zero denominator.
TopsisRanking topsis_rank(const Eigen::MatrixXd& points, const TopsisConfig& config);

// --- multiset integration ---------------------------------------------------------------

MedianResult multiset_integrate(std::span<const CountVector> estimates, const MultisetScale& scale,
                                MultisetMetric metric = MultisetMetric::CumulativeL1);

/// Product of the compatibility chain 1..nu (higher better) with the scale-poset of P^{l,n}.
/// Elements are ordered by descending w, then canonical multiset order.
PosetView<QualityVector> compat_extended_poset(const MultisetScale& scale, int nu);

} // namespace modsys
