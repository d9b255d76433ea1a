#include "modsys/transforms.hpp"

#include <string>

#include "overloaded.hpp"

namespace modsys {

double linear_map(double x, const QuantScale& src, const QuantScale& dst)
{
    if (!src.contains(x)) {
        throw Error("value " + format_number(x) + " outside source scale [" + format_number(src.min()) +
                    "," + format_number(src.max()) + "]");
    }
    if (x == src.best()) {
        return dst.best();
    }
    if (x == src.worst()) {
        return dst.worst();
    }
    const double slope = (dst.best() - dst.worst()) / (src.best() - src.worst());
    return dst.worst() + (x - src.worst()) * slope;
}

Validation validate_thresholds(const ThresholdSpec& spec, const QuantScale& src)
{
    const auto expected = static_cast<std::size_t>(spec.target.size() - 1);
    if (spec.thresholds.size() != expected) {
        return Validation::fail("target scale of size " + std::to_string(spec.target.size()) + " needs " +
                                std::to_string(expected) + " thresholds, got " +
                                std::to_string(spec.thresholds.size()));
    }
    for (std::size_t i = 0; i < spec.thresholds.size(); ++i) {
        const double t = spec.thresholds[i];
        if (!(t > src.min() && t < src.max())) {
            return Validation::fail("threshold " + format_number(t) + " not strictly inside the source scale");
        }
        if (i > 0 && !src.better(spec.thresholds[i - 1], t)) {
            return Validation::fail("thresholds must run strictly from the best end to the worst end");
        }
    }
    return Validation::pass();
}

Level quantize(double x, const ThresholdSpec& spec, const QuantScale& src)
{
    if (auto v = validate_thresholds(spec, src); !v) {
        throw Error("malformed threshold spec: " + v.violation);
    }
    if (!src.contains(x)) {
        throw Error("value " + format_number(x) + " outside source scale");
    }
    Level level = 1;
    for (double t : spec.thresholds) {
        if (src.better(t, x)) {
            ++level;
        }
    }
    return level;
}

OrdinalMap::OrdinalMap(OrdinalScale source, OrdinalScale target, std::vector<Level> table, bool reverse)
    : source_(source), target_(target), table_(std::move(table)), reverse_(reverse)
{
    if (table_.size() != static_cast<std::size_t>(source_.size())) {
        throw Error("ordinal map needs " + std::to_string(source_.size()) + " entries, got " +
                    std::to_string(table_.size()));
    }
    std::vector<bool> hit(static_cast<std::size_t>(target_.size()), false);
    for (std::size_t i = 0; i < table_.size(); ++i) {
        const Level l = table_[i];
        if (!target_.contains(l)) {
            throw Error("ordinal map entry " + std::to_string(l) + " not in 1.." +
                        std::to_string(target_.size()));
        }
        hit[static_cast<std::size_t>(l - 1)] = true;
        if (i > 0) {
            const Level prev = table_[i - 1];
            if (reverse_ ? l > prev : l < prev) {
                throw Error(std::string("ordinal map is not ") + (reverse_ ? "anti-monotone" : "monotone") +
                            " at level " + std::to_string(i + 1));
            }
        }
    }
    for (std::size_t l = 0; l < hit.size(); ++l) {
        if (!hit[l]) {
            throw Error("ordinal map never reaches target level " + std::to_string(l + 1));
        }
    }
}

Level OrdinalMap::operator()(Level level) const
{
    if (!source_.contains(level)) {
        throw Error("level " + std::to_string(level) + " not in 1.." + std::to_string(source_.size()));
    }
    return table_[static_cast<std::size_t>(level - 1)];
}

UtilityResult utility_reduce(const Eigen::MatrixXd& points, const RealVector& weights,
                             const VectorScale& scale)
{
    if (points.cols() != scale.arity() || weights.size() != scale.arity()) {
        throw Error("utility weights/points arity does not match the " + std::to_string(scale.arity()) +
                    "-criterion scale");
    }
    bool all_lower = true;
    for (const auto& c : scale.criteria()) {
        all_lower = all_lower && std::visit(detail::overloaded{
                                                [](const QuantScale& q) {
                                                    return q.orientation() == Orientation::LowerIsBetter;
                                                },
                                                [](const OrdinalScale&) { return true; },
                                            },
                                            c);
    }
    return {points * weights, all_lower ? Orientation::LowerIsBetter : Orientation::HigherIsBetter};
}

std::vector<int> vectors_to_ordinal(const Eigen::MatrixXd& points, const VectorScale& scale)
{
    std::vector<RealVector> rows;
    rows.reserve(static_cast<std::size_t>(points.rows()));
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        rows.emplace_back(points.row(i).transpose());
    }
    return peel_layers(std::span<const RealVector>(rows), [&](const RealVector& a, const RealVector& b) {
        return dominates_vector(scale, a, b);
    });
}

} // namespace modsys
