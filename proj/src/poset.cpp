#include "modsys/poset.hpp"

#include <string>

#include "overloaded.hpp"

namespace modsys {

bool dominates_counts(const CountVector& a, const CountVector& b)
{
    if (a.size() != b.size()) {
        throw Error("count vectors " + format_counts(a) + " and " + format_counts(b) +
                    " differ in length");
    }
    if (a.sum() != b.sum()) {
        throw Error("count vectors " + format_counts(a) + " and " + format_counts(b) +
                    " differ in total");
    }
    long cum_a = 0, cum_b = 0;
    bool strict = false;
    for (Eigen::Index j = 0; j < a.size(); ++j) {
        cum_a += a[j];
        cum_b += b[j];
        if (cum_a < cum_b) {
            return false;
        }
        strict = strict || cum_a > cum_b;
    }
    return strict;
}

bool dominates_quality(const QualityVector& a, const QualityVector& b)
{
    if (a.counts.size() != b.counts.size() || a.counts.sum() != b.counts.sum()) {
        throw Error("quality vectors " + format_quality(a) + " and " + format_quality(b) +
                    " live on different count scales");
    }
    if (a.w < b.w) {
        return false;
    }
    const bool same_counts = same_vector(a.counts, b.counts);
    if (same_counts) {
        return a.w > b.w;
    }
    return dominates_counts(a.counts, b.counts);
}

bool dominates_vector(const VectorScale& scale, const RealVector& a, const RealVector& b)
{
    if (a.size() != scale.arity() || b.size() != scale.arity()) {
        throw Error("vector arity does not match the " + std::to_string(scale.arity()) +
                    "-criterion scale");
    }
    bool strict = false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const bool lower_better = std::visit(
            detail::overloaded{
                [](const QuantScale& q) { return q.orientation() == Orientation::LowerIsBetter; },
                [](const OrdinalScale&) { return true; },
            },
            scale.criteria()[static_cast<std::size_t>(i)]);
        const double x = lower_better ? a[i] : -a[i];
        const double y = lower_better ? b[i] : -b[i];
        if (x > y) {
            return false;
        }
        strict = strict || x < y;
    }
    return strict;
}

std::vector<std::size_t> pareto_layer(const Relation& rel)
{
    std::vector<std::size_t> front;
    for (Eigen::Index j = 0; j < rel.cols(); ++j) {
        if (!rel.col(j).any()) {
            front.push_back(static_cast<std::size_t>(j));
        }
    }
    return front;
}

std::vector<int> peel_layers(const Relation& rel)
{
    const auto n = rel.rows();
    std::vector<int> layer(static_cast<std::size_t>(n), 0);
    Eigen::Array<bool, Eigen::Dynamic, 1> remaining = Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(n, true);
    Eigen::Index left = n;
    for (int k = 1; left > 0; ++k) {
        std::vector<Eigen::Index> current;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (remaining(j) && !(rel.col(j) && remaining).any()) {
                current.push_back(j);
            }
        }
        if (current.empty()) {
            throw Error("dominance relation has a cycle");
        }
        for (auto j : current) {
            layer[static_cast<std::size_t>(j)] = k;
            remaining(j) = false;
        }
        left -= static_cast<Eigen::Index>(current.size());
    }
    return layer;
}

std::vector<Edge> cover_edges(const Relation& rel)
{
    std::vector<Edge> edges;
    for (Eigen::Index a = 0; a < rel.rows(); ++a) {
        for (Eigen::Index b = 0; b < rel.cols(); ++b) {
            if (rel(a, b) && !(rel.row(a).transpose() && rel.col(b)).any()) {
                edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
            }
        }
    }
    return edges;
}

Relation transitive_closure(std::size_t n, std::span<const Edge> edges)
{
    const auto size = static_cast<Eigen::Index>(n);
    Relation reach = Relation::Constant(size, size, false);
    for (const auto& [a, b] : edges) {
        reach(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = true;
    }
    for (Eigen::Index k = 0; k < size; ++k) {
        for (Eigen::Index i = 0; i < size; ++i) {
            if (reach(i, k)) {
                reach.row(i) = reach.row(i) || reach.row(k);
            }
        }
    }
    return reach;
}

std::string format_label(const DLabel& d)
{
    switch (d.kind) {
    case DLabel::Kind::Ideal: return "Ideal";
    case DLabel::Kind::Worst: return "Worst";
    default: return "Layer(" + std::to_string(d.layer) + ")";
    }
}

std::vector<DLabel> label_d(const Relation& rel, const std::vector<bool>& is_best,
                            const std::vector<bool>& is_worst)
{
    const auto n = static_cast<std::size_t>(rel.rows());
    if (is_best.size() != n || is_worst.size() != n) {
        throw Error("corner flags do not match the point count");
    }
    std::vector<Eigen::Index> middle;
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_best[i] && !is_worst[i]) {
            middle.push_back(static_cast<Eigen::Index>(i));
        }
    }
    const auto m = static_cast<Eigen::Index>(middle.size());
    Relation sub(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            sub(i, j) = rel(middle[static_cast<std::size_t>(i)], middle[static_cast<std::size_t>(j)]);
        }
    }
    const auto layers = peel_layers(sub);

    std::vector<DLabel> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (is_best[i]) {
            labels[i] = DLabel::ideal();
        } else if (is_worst[i]) {
            labels[i] = DLabel::worst();
        }
    }
    for (std::size_t i = 0; i < middle.size(); ++i) {
        labels[static_cast<std::size_t>(middle[i])] = DLabel::at(layers[i]);
    }
    return labels;
}

} // namespace modsys
