#include "modsys/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace modsys {

namespace {

std::string format_levels(std::span<const Level> levels)
{
    std::string s = "(";
    for (std::size_t i = 0; i < levels.size(); ++i) {
        s += (i > 0 ? "," : "") + std::to_string(levels[i]);
    }
    return s + ")";
}

double minkowski(const RealVector& a, const RealVector& b, int exponent)
{
    return exponent == 1 ? (a - b).lpNorm<1>() : (a - b).norm();
}

} // namespace

double compensated_sum(std::span<const double> values)
{
    double sum = 0.0, correction = 0.0;
    for (double x : values) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            correction += (sum - t) + x;
        } else {
            correction += (x - t) + sum;
        }
        sum = t;
    }
    return sum + correction;
}

AdditiveResult additive_utility(std::span<const double> values, const QuantScale& component_scale)
{
    if (values.empty()) {
        throw Error("additive utility of an empty selection");
    }
    for (double x : values) {
        if (!component_scale.contains(x)) {
            throw Error("value " + format_number(x) + " outside the component scale");
        }
    }
    const double m = static_cast<double>(values.size());
    return {compensated_sum(values), QuantScale(m * component_scale.worst(), m * component_scale.best())};
}

std::string MonotonicityViolation::describe() const
{
    return "cell " + format_levels(cell) + " -> " + std::to_string(output) + ": improving input " +
           std::to_string(input + 1) + " to " + std::to_string(improved_level) + " gives worse output " +
           std::to_string(improved_output);
}

IntegrationTable::IntegrationTable(std::vector<TableInput> inputs, OrdinalScale output,
                                   std::span<const TableCell> cells)
    : inputs_(std::move(inputs)), output_(output)
{
    if (inputs_.empty()) {
        throw Error("integration table needs at least one input");
    }
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
        auto& in = inputs_[i];
        if (in.domain.empty()) {
            in.domain.resize(static_cast<std::size_t>(in.scale.size()));
            std::iota(in.domain.begin(), in.domain.end(), 1);
        }
        for (std::size_t d = 0; d < in.domain.size(); ++d) {
            if (!in.scale.contains(in.domain[d]) || (d > 0 && in.domain[d] <= in.domain[d - 1])) {
                throw Error("input " + std::to_string(i + 1) +
                            " domain must be strictly ascending levels of its scale");
            }
        }
    }
    strides_.assign(inputs_.size(), 1);
    for (std::size_t i = inputs_.size() - 1; i > 0; --i) {
        strides_[i - 1] = strides_[i] * inputs_[i].domain.size();
    }
    cells_.assign(strides_.front() * inputs_.front().domain.size(), 0);

    for (const auto& cell : cells) {
        const auto at = offset(cell.inputs);
        if (!output_.contains(cell.output)) {
            throw Error("cell " + format_levels(cell.inputs) + " output " + std::to_string(cell.output) +
                        " not in 1.." + std::to_string(output_.size()));
        }
        if (cells_[at] != 0) {
            throw Error("duplicate cell " + format_levels(cell.inputs));
        }
        cells_[at] = cell.output;
    }
    for (std::size_t at = 0; at < cells_.size(); ++at) {
        if (cells_[at] == 0) {
            throw Error("missing cell " + format_levels(tuple_at(at)));
        }
    }
}

std::size_t IntegrationTable::offset(std::span<const Level> levels) const
{
    if (levels.size() != inputs_.size()) {
        throw Error("table expects " + std::to_string(inputs_.size()) + " inputs, got " +
                    std::to_string(levels.size()));
    }
    std::size_t at = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto& dom = inputs_[i].domain;
        const auto it = std::find(dom.begin(), dom.end(), levels[i]);
        if (it == dom.end()) {
            throw Error("level " + std::to_string(levels[i]) + " outside the domain of table input " +
                        std::to_string(i + 1));
        }
        at += strides_[i] * static_cast<std::size_t>(it - dom.begin());
    }
    return at;
}

std::vector<Level> IntegrationTable::tuple_at(std::size_t offset) const
{
    std::vector<Level> t(inputs_.size());
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
        t[i] = inputs_[i].domain[(offset / strides_[i]) % inputs_[i].domain.size()];
    }
    return t;
}

Level IntegrationTable::lookup(std::span<const Level> levels) const { return cells_[offset(levels)]; }

std::vector<TableCell> IntegrationTable::cells() const
{
    std::vector<TableCell> out;
    out.reserve(cells_.size());
    for (std::size_t at = 0; at < cells_.size(); ++at) {
        out.push_back({tuple_at(at), cells_[at]});
    }
    return out;
}

std::vector<MonotonicityViolation> IntegrationTable::monotonicity_violations() const
{
    std::vector<MonotonicityViolation> out;
    for (std::size_t at = 0; at < cells_.size(); ++at) {
        const auto tuple = tuple_at(at);
        for (std::size_t i = 0; i < inputs_.size(); ++i) {
            const auto& dom = inputs_[i].domain;
            const auto pos = static_cast<std::size_t>(std::find(dom.begin(), dom.end(), tuple[i]) - dom.begin());
            if (pos == 0) {
                continue;
            }
            auto better = tuple;
            better[i] = dom[pos - 1];
            const Level improved = lookup(better);
            if (improved > cells_[at]) {
                out.push_back({tuple, i, better[i], cells_[at], improved});
            }
        }
    }
    return out;
}

RealVector vector_sum(std::span<const RealVector> vectors)
{
    if (vectors.empty()) {
        throw Error("vector sum of an empty selection");
    }
    RealVector total = RealVector::Zero(vectors.front().size());
    for (const auto& v : vectors) {
        if (v.size() != total.size()) {
            throw Error("vector arity mismatch: " + std::to_string(v.size()) + " vs " +
                        std::to_string(total.size()));
        }
        total += v;
    }
    return total;
}

CountVector count_profile(std::span<const Level> levels, int k)
{
    if (k < 1) {
        throw Error("count profile needs a positive number of levels");
    }
    CountVector counts = CountVector::Zero(k);
    for (auto l : levels) {
        if (l < 1 || l > k) {
            throw Error("level " + std::to_string(l) + " not in 1.." + std::to_string(k));
        }
        ++counts[l - 1];
    }
    return counts;
}

CompatTable::CompatTable(int nu, bool zero_level) : nu_(nu), zero_level_(zero_level)
{
    if (nu < 1) {
        throw Error("compatibility scale top level nu must be positive");
    }
}

void CompatTable::set(const std::string& a, const std::string& b, Level level)
{
    if (a == b) {
        throw Error("compatibility of '" + a + "' with itself");
    }
    if (level < min_level() || level > nu_) {
        throw Error("compatibility level " + std::to_string(level) + " not in " +
                    std::to_string(min_level()) + ".." + std::to_string(nu_));
    }
    entries_[std::minmax(a, b)] = level;
}

std::optional<Level> CompatTable::get(const std::string& a, const std::string& b) const
{
    const auto it = entries_.find(std::minmax(a, b));
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

Level min_compatibility(std::span<const std::string> das, const CompatTable& compat)
{
    Level w = compat.nu();
    for (std::size_t i = 0; i < das.size(); ++i) {
        for (std::size_t j = i + 1; j < das.size(); ++j) {
            const auto level = compat.get(das[i], das[j]);
            if (!level) {
                throw Error("missing compatibility entry for pair (" + das[i] + "," + das[j] + ")");
            }
            w = std::min(w, *level);
        }
    }
    return w;
}

QualityVector quality_vector(std::span<const std::string> das, std::span<const Level> levels, int k,
                             const CompatTable& compat)
{
    if (das.size() != levels.size()) {
        throw Error("quality vector needs one level per DA");
    }
    return {min_compatibility(das, compat), count_profile(levels, k)};
}

bool operator==(const TopsisConfig& a, const TopsisConfig& b)
{
    auto same = [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
        return x.rows() == y.rows() && x.cols() == y.cols() && (x.array() == y.array()).all();
    };
    return a.exponent == b.exponent && same(a.best_points, b.best_points) &&
           same(a.worst_points, b.worst_points);
}

TopsisRanking topsis_rank(const Eigen::MatrixXd& points, const TopsisConfig& config)
{
    if (config.exponent != 1 && config.exponent != 2) {
        throw Error("TOPSIS exponent must be 1 or 2");
    }
    if (config.best_points.rows() == 0 || config.worst_points.rows() == 0) {
        throw Error("TOPSIS needs at least one best and one worst point");
    }
    if (config.best_points.cols() != points.cols() || config.worst_points.cols() != points.cols()) {
        throw Error("TOPSIS reference points and alternatives differ in dimension");
    }
    auto nearest = [&](const RealVector& p, const Eigen::MatrixXd& refs) {
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index r = 0; r < refs.rows(); ++r) {
            best = std::min(best, minkowski(p, refs.row(r).transpose(), config.exponent));
        }
        return best;
    };

    const auto n = static_cast<std::size_t>(points.rows());
    TopsisRanking out;
    out.results.reserve(n);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        const RealVector p = points.row(i).transpose();
        const double plus = nearest(p, config.best_points);
        const double minus = nearest(p, config.worst_points);
        if (plus + minus == 0.0) {
            throw Error("alternative " + std::to_string(i + 1) + " coincides with a best and a worst point");
        }
        out.results.push_back({plus, minus, minus / (plus + minus)});
    }
    out.order.resize(n);
    std::iota(out.order.begin(), out.order.end(), std::size_t{0});
    std::stable_sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
        return out.results[a].closeness > out.results[b].closeness;
    });
    out.outranks = dominance_matrix(std::span<const TopsisResult>(out.results),
                                    [](const TopsisResult& a, const TopsisResult& b) {
                                        return a.rho_plus <= b.rho_plus && a.rho_minus >= b.rho_minus &&
                                               (a.rho_plus < b.rho_plus || a.rho_minus > b.rho_minus);
                                    });
    return out;
}

MedianResult multiset_integrate(std::span<const CountVector> estimates, const MultisetScale& scale,
                                MultisetMetric metric)
{
    return median_like(estimates, scale, metric);
}

PosetView<QualityVector> compat_extended_poset(const MultisetScale& scale, int nu)
{
    if (nu < 1) {
        throw Error("compatibility top level nu must be positive");
    }
    const auto estimates = enumerate_estimates(scale);
    std::vector<QualityVector> elements;
    elements.reserve(estimates.size() * static_cast<std::size_t>(nu));
    for (int w = nu; w >= 1; --w) {
        for (const auto& e : estimates) {
            elements.push_back({w, e});
        }
    }
    return make_poset_view(std::move(elements), dominates_quality);
}

} // namespace modsys
