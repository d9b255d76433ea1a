#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "modsys/error.hpp"

namespace modsys {

using Level = int;
using CountVector = Eigen::VectorXi;
using RealVector = Eigen::VectorXd;

enum class Orientation { LowerIsBetter, HigherIsBetter };

/// Quantitative interval scale between a worst (beta) and a best (alpha) endpoint.
/// The orientation follows from the endpoints: best < worst means lower is better.
class QuantScale {
public:
    QuantScale(double worst, double best);

    double worst() const noexcept { return worst_; }
    double best() const noexcept { return best_; }
    double min() const noexcept { return std::min(worst_, best_); }
    double max() const noexcept { return std::max(worst_, best_); }
    Orientation orientation() const noexcept
    {
        return best_ < worst_ ? Orientation::LowerIsBetter : Orientation::HigherIsBetter;
    }
    bool contains(double x) const noexcept { return x >= min() && x <= max(); }
    /// True iff a is strictly better than b.
    bool better(double a, double b) const noexcept
    {
        return orientation() == Orientation::LowerIsBetter ? a < b : a > b;
    }

    friend bool operator==(const QuantScale&, const QuantScale&) = default;

private:
    double worst_;
    double best_;
};

/// Ordinal scale with levels 1..size; level 1 is best.
class OrdinalScale {
public:
    explicit OrdinalScale(int size);

    int size() const noexcept { return size_; }
    bool contains(Level l) const noexcept { return l >= 1 && l <= size_; }

    friend bool operator==(const OrdinalScale&, const OrdinalScale&) = default;

private:
    int size_;
};

using Criterion = std::variant<QuantScale, OrdinalScale>;

/// Multicriteria scale; criteria order is fixed and each criterion keeps its own orientation.
class VectorScale {
public:
    explicit VectorScale(std::vector<Criterion> criteria);

    const std::vector<Criterion>& criteria() const noexcept { return criteria_; }
    Eigen::Index arity() const noexcept { return static_cast<Eigen::Index>(criteria_.size()); }

    friend bool operator==(const VectorScale&, const VectorScale&) = default;

private:
    std::vector<Criterion> criteria_;
};

/// Count vectors n(S) = (eta_1..eta_k) with sum m: how many of m elements sit at each level.
class CountPosetScale {
public:
    CountPosetScale(int levels, int elements);

    int levels() const noexcept { return levels_; }
    int elements() const noexcept { return elements_; }

    friend bool operator==(const CountPosetScale&, const CountPosetScale&) = default;

private:
    int levels_;
    int elements_;
};

/// Interval multiset estimates for the assessment problem P^{l,n}: count vectors over
/// l levels summing to n whose nonzero entries form one contiguous run.
class MultisetScale {
public:
    MultisetScale(int levels, int elements);

    int levels() const noexcept { return levels_; }
    int elements() const noexcept { return elements_; }

    friend bool operator==(const MultisetScale&, const MultisetScale&) = default;

private:
    int levels_;
    int elements_;
};

using ScaleKind = std::variant<QuantScale, OrdinalScale, VectorScale, CountPosetScale, MultisetScale>;

struct Scale {
    std::string id;
    ScaleKind kind;

    friend bool operator==(const Scale&, const Scale&) = default;
};

using EstimateValue = std::variant<double, Level, RealVector, CountVector>;

struct Estimate {
    std::string scale_id;
    EstimateValue value;
};

bool operator==(const Estimate& a, const Estimate& b);

/// Quality of a composite: w is the minimum pairwise compatibility (higher is better),
/// counts is the count profile n(S) (level 1 best).
struct QualityVector {
    Level w;
    CountVector counts;
};

bool operator==(const QualityVector& a, const QualityVector& b);

/// Ordered registry of scales keyed by id.
class ScaleSet {
public:
    /// Throws Error on a duplicate id.
    void add(Scale s);
    const Scale* find(const std::string& id) const;
    /// Throws ReferenceError when the id does not resolve.
    const Scale& at(const std::string& id) const;
    const std::vector<Scale>& all() const noexcept { return scales_; }
    bool empty() const noexcept { return scales_.empty(); }

    friend bool operator==(const ScaleSet&, const ScaleSet&) = default;

private:
    std::vector<Scale> scales_;
};

struct Validation {
    bool ok = true;
    std::string violation;

    static Validation pass() { return {}; }
    static Validation fail(std::string why) { return {false, std::move(why)}; }
    explicit operator bool() const noexcept { return ok; }
};

Validation validate_value(const ScaleKind& scale, const EstimateValue& value);
/// Throws ReferenceError when the estimate's scale id is dangling.
Validation validate_estimate(const Estimate& e, const ScaleSet& scales);

/// Checks only the interval-multiset constraints (sum and contiguous support).
Validation validate_multiset(const CountVector& counts, const MultisetScale& scale);

enum class Preference { First, Second, Tie, Incomparable };

/// Compares two values on one scale. Quantitative and ordinal scales are totally ordered;
/// vector and count scales use componentwise/cumulative dominance.
Preference better_of(const ScaleKind& scale, const EstimateValue& a, const EstimateValue& b);
/// Throws Error when the estimates live on different scales.
Preference better_of(const Estimate& a, const Estimate& b, const ScaleSet& scales);

bool same_vector(const CountVector& a, const CountVector& b) noexcept;
bool same_vector(const RealVector& a, const RealVector& b) noexcept;

std::string format_number(double x);
/// "(3,1,0)"
std::string format_counts(const CountVector& c);
/// "(2;3,0,0)"
std::string format_quality(const QualityVector& q);
std::string format_vector(const RealVector& v);
std::string format_value(const EstimateValue& v);

std::string_view kind_name(const ScaleKind& s) noexcept;

} // namespace modsys
