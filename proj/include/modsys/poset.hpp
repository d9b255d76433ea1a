#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "modsys/scales.hpp"

namespace modsys {

/// Dense strict-dominance relation over an indexed point set: rel(i, j) == true iff
/// point i dominates point j.
using Relation = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;
using Edge = std::pair<std::size_t, std::size_t>;

/// Cumulative (first-order) dominance of count vectors with level 1 best: every prefix sum
/// of a is at least the matching prefix sum of b and at least one is strictly larger.
/// Throws Error when the lengths or totals differ.
bool dominates_counts(const CountVector& a, const CountVector& b);

/// a.w >= b.w and a.counts equal to or cumulatively dominating b.counts, with a != b.
bool dominates_quality(const QualityVector& a, const QualityVector& b);

/// Componentwise dominance where each criterion keeps its own orientation.
bool dominates_vector(const VectorScale& scale, const RealVector& a, const RealVector& b);

template <class Key, class Dom>
Relation dominance_matrix(std::span<const Key> points, Dom&& dom)
{
    const auto n = static_cast<Eigen::Index>(points.size());
    Relation rel = Relation::Constant(n, n, false);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i != j) {
                rel(i, j) = static_cast<bool>(dom(points[i], points[j]));
            }
        }
    }
    return rel;
}

/// Indices of points no other point dominates, in input order.
std::vector<std::size_t> pareto_layer(const Relation& rel);

/// Nondominated sorting: layer 1 is the Pareto layer, layer k the Pareto layer of what is
/// left after removing layers < k. Returns the 1-based layer of every point.
std::vector<int> peel_layers(const Relation& rel);

/// Hasse edges (a, b): a dominates b with nothing in between. Sorted by (a, b).
std::vector<Edge> cover_edges(const Relation& rel);

/// Transitive closure of an edge list as a relation on n points.
Relation transitive_closure(std::size_t n, std::span<const Edge> edges);

struct DLabel {
    enum class Kind { Ideal, Layer, Worst };
    Kind kind = Kind::Layer;
    int layer = 0;

    static DLabel ideal() { return {Kind::Ideal, 0}; }
    static DLabel worst() { return {Kind::Worst, 0}; }
    static DLabel at(int k) { return {Kind::Layer, k}; }

    friend bool operator==(const DLabel&, const DLabel&) = default;
};

std::string format_label(const DLabel& d);

/// Labels on the ordinal scale D: points flagged as the best corner get Ideal, points
/// flagged as the worst corner get Worst, the rest are peeled into layers without them.
std::vector<DLabel> label_d(const Relation& rel, const std::vector<bool>& is_best,
                            const std::vector<bool>& is_worst);

template <class Key, class Dom, class Eq = std::equal_to<>>
std::vector<DLabel> label_d(std::span<const Key> points, Dom&& dom, const Key& best_corner,
                            const Key& worst_corner, Eq eq = {})
{
    std::vector<bool> best(points.size()), worst(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        best[i] = eq(points[i], best_corner);
        worst[i] = !best[i] && eq(points[i], worst_corner);
    }
    return label_d(dominance_matrix(points, std::forward<Dom>(dom)), best, worst);
}

template <class Key, class Dom>
std::vector<std::size_t> pareto_layer(std::span<const Key> points, Dom&& dom)
{
    return pareto_layer(dominance_matrix(points, std::forward<Dom>(dom)));
}

template <class Key, class Dom>
std::vector<int> peel_layers(std::span<const Key> points, Dom&& dom)
{
    return peel_layers(dominance_matrix(points, std::forward<Dom>(dom)));
}

template <class Key, class Dom>
std::vector<Edge> cover_edges(std::span<const Key> points, Dom&& dom)
{
    return cover_edges(dominance_matrix(points, std::forward<Dom>(dom)));
}

/// Explicit finite poset: elements, dominance, Hasse edges and peel layers.
template <class Key>
struct PosetView {
    std::vector<Key> elements;
    Relation dominance;
    std::vector<Edge> covers;
    std::vector<int> layer_of;

    std::size_t size() const noexcept { return elements.size(); }
};

template <class Key, class Dom>
PosetView<Key> make_poset_view(std::vector<Key> elements, Dom&& dom)
{
    PosetView<Key> view;
    view.elements = std::move(elements);
    view.dominance = dominance_matrix(std::span<const Key>(view.elements), std::forward<Dom>(dom));
    view.covers = cover_edges(view.dominance);
    view.layer_of = peel_layers(view.dominance);
    return view;
}

/// A composition as one DA index per leaf.
using Choice = std::vector<std::size_t>;

/// Non-Pareto compositions that reach the Pareto layer by changing exactly one selected DA.
/// A swapped composition counts as Pareto when no candidate evaluation dominates it.
/// `leaf_sizes[i]` is the number of DAs available at leaf i.
template <class Eval, class Dom>
std::vector<std::size_t> near_pareto_by_swap(std::span<const Choice> compositions,
                                             std::span<const std::size_t> leaf_sizes,
                                             Eval&& evaluate, Dom&& dom)
{
    using Key = std::decay_t<decltype(evaluate(compositions.front()))>;
    std::vector<Key> values;
    values.reserve(compositions.size());
    for (const auto& c : compositions) {
        values.push_back(evaluate(c));
    }
    const Relation rel = dominance_matrix(std::span<const Key>(values), dom);
    const auto front = pareto_layer(rel);
    std::vector<bool> on_front(values.size(), false);
    for (auto i : front) {
        on_front[i] = true;
    }

    auto undominated = [&](const Key& v) {
        for (const auto& other : values) {
            if (dom(other, v)) {
                return false;
            }
        }
        return true;
    };

    std::vector<std::size_t> result;
    for (std::size_t i = 0; i < compositions.size(); ++i) {
        if (on_front[i]) {
            continue;
        }
        bool reached = false;
        Choice swapped = compositions[i];
        for (std::size_t leaf = 0; leaf < swapped.size() && !reached; ++leaf) {
            const auto original = swapped[leaf];
            for (std::size_t da = 0; da < leaf_sizes[leaf] && !reached; ++da) {
                if (da == original) {
                    continue;
                }
                swapped[leaf] = da;
                reached = undominated(evaluate(swapped));
            }
            swapped[leaf] = original;
        }
        if (reached) {
            result.push_back(i);
        }
    }
    return result;
}

} // namespace modsys
