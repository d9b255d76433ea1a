#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "modsys/poset.hpp"
#include "modsys/scales.hpp"

namespace modsys {

/// Affine map sending src.worst -> dst.worst and src.best -> dst.best.
/// Throws Error when x lies outside src.
double linear_map(double x, const QuantScale& src, const QuantScale& dst);

template <class Derived>
auto linear_map(const Eigen::ArrayBase<Derived>& x, const QuantScale& src, const QuantScale& dst)
{
    using Scalar = typename Derived::Scalar;
    const Scalar slope = (dst.best() - dst.worst()) / (src.best() - src.worst());
    return ((x - Scalar(src.worst())) * slope + Scalar(dst.worst())).eval();
}

/// Cut points on a quantitative scale, ordered from the best end to the worst end.
struct ThresholdSpec {
    std::vector<double> thresholds;
    OrdinalScale target{1};

    friend bool operator==(const ThresholdSpec&, const ThresholdSpec&) = default;
};

Validation validate_thresholds(const ThresholdSpec& spec, const QuantScale& src);

/// Class index counted from the best end. A value sitting exactly on a threshold goes to the
/// better class.
Level quantize(double x, const ThresholdSpec& spec, const QuantScale& src);

/// Monotone (or, with `reverse`, anti-monotone) surjective level table between ordinal scales.
class OrdinalMap {
public:
    OrdinalMap(OrdinalScale source, OrdinalScale target, std::vector<Level> table,
               bool reverse = false);

    const OrdinalScale& source() const noexcept { return source_; }
    const OrdinalScale& target() const noexcept { return target_; }
    const std::vector<Level>& table() const noexcept { return table_; }
    bool reverse() const noexcept { return reverse_; }

    Level operator()(Level level) const;

    friend bool operator==(const OrdinalMap&, const OrdinalMap&) = default;

private:
    OrdinalScale source_;
    OrdinalScale target_;
    std::vector<Level> table_;
    bool reverse_;
};

inline Level ordinal_remap(Level level, const OrdinalMap& map) { return map(level); }

struct UtilityResult {
    RealVector values;
    Orientation orientation;
};

/// Weighted sum of every row of `points` (one point per row). Ordinal criteria contribute
/// their level numbers. The result is lower-is-better only when every criterion is.
UtilityResult utility_reduce(const Eigen::MatrixXd& points, const RealVector& weights,
                             const VectorScale& scale);

/// Pareto-layer index of each row under per-criterion dominance.
std::vector<int> vectors_to_ordinal(const Eigen::MatrixXd& points, const VectorScale& scale);

template <class Key, class Dom>
std::vector<int> poset_to_ordinal(std::span<const Key> points, Dom&& dom)
{
    return peel_layers(points, std::forward<Dom>(dom));
}

} // namespace modsys
