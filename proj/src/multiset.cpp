#include "modsys/multiset.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

namespace modsys {

namespace {

void compositions(int levels, int remaining, CountVector& current, Eigen::Index at,
                  std::vector<CountVector>& out)
{
    if (at == levels - 1) {
        current[at] = remaining;
        out.push_back(current);
        return;
    }
    for (int x = remaining; x >= 0; --x) {
        current[at] = x;
        compositions(levels, remaining - x, current, at + 1, out);
    }
}

void canonical_sort(std::vector<CountVector>& v)
{
    std::stable_sort(v.begin(), v.end(), [](const CountVector& a, const CountVector& b) {
        const auto sa = cumulative(a).sum(), sb = cumulative(b).sum();
        if (sa != sb) {
            return sa > sb;
        }
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    });
}

void require_valid(const CountVector& e, const MultisetScale& scale)
{
    if (auto v = validate_multiset(e, scale); !v) {
        throw Error("not a valid P^{" + std::to_string(scale.levels()) + "," +
                    std::to_string(scale.elements()) + "} estimate: " + v.violation);
    }
}

} // namespace

CountVector cumulative(const CountVector& counts)
{
    CountVector c(counts.size());
    int acc = 0;
    for (Eigen::Index i = 0; i < counts.size(); ++i) {
        acc += counts[i];
        c[i] = acc;
    }
    return c;
}

std::vector<CountVector> enumerate_counts(const CountPosetScale& scale)
{
    std::vector<CountVector> out;
    CountVector current = CountVector::Zero(scale.levels());
    compositions(scale.levels(), scale.elements(), current, 0, out);
    canonical_sort(out);
    return out;
}

std::vector<CountVector> enumerate_estimates(const MultisetScale& scale)
{
    auto all = enumerate_counts(CountPosetScale(scale.levels(), scale.elements()));
    std::erase_if(all, [&](const CountVector& c) { return !validate_multiset(c, scale); });
    return all;
}

CountVector counts_from_ordinals(std::span<const Level> levels, int num_levels)
{
    if (num_levels < 1) {
        throw Error("number of levels must be positive");
    }
    if (levels.empty()) {
        throw Error("no ordinal levels given");
    }
    CountVector counts = CountVector::Zero(num_levels);
    for (auto l : levels) {
        if (l < 1 || l > num_levels) {
            throw Error("level " + std::to_string(l) + " not in 1.." + std::to_string(num_levels));
        }
        ++counts[l - 1];
    }
    const MultisetScale scale(num_levels, static_cast<int>(levels.size()));
    if (!validate_multiset(counts, scale)) {
        std::string support;
        for (Eigen::Index r = 0; r < counts.size(); ++r) {
            if (counts[r] > 0) {
                support += (support.empty() ? "" : ",") + std::to_string(r + 1);
            }
        }
        throw SupportError("support {" + support + "} not contiguous", counts);
    }
    return counts;
}

bool operator==(const MedianResult& a, const MedianResult& b)
{
    return a.total_distance == b.total_distance && same_vector(a.representative, b.representative) &&
           std::equal(a.argmin_set.begin(), a.argmin_set.end(), b.argmin_set.begin(), b.argmin_set.end(),
                      [](const CountVector& x, const CountVector& y) { return same_vector(x, y); });
}

ScalePoset::ScalePoset(const MultisetScale& scale)
    : scale_(scale), view_(make_poset_view(enumerate_estimates(scale), dominates_counts))
{
    const auto n = static_cast<Eigen::Index>(view_.size());
    std::vector<std::vector<std::size_t>> adjacent(view_.size());
    for (const auto& [a, b] : view_.covers) {
        adjacent[a].push_back(b);
        adjacent[b].push_back(a);
    }
    hasse_ = Eigen::MatrixXi::Constant(n, n, -1);
    for (Eigen::Index s = 0; s < n; ++s) {
        std::deque<std::size_t> queue{static_cast<std::size_t>(s)};
        hasse_(s, s) = 0;
        while (!queue.empty()) {
            const auto u = queue.front();
            queue.pop_front();
            for (auto v : adjacent[u]) {
                if (hasse_(s, static_cast<Eigen::Index>(v)) < 0) {
                    hasse_(s, static_cast<Eigen::Index>(v)) = hasse_(s, static_cast<Eigen::Index>(u)) + 1;
                    queue.push_back(v);
                }
            }
        }
    }
}

std::size_t ScalePoset::index_of(const CountVector& e) const
{
    for (std::size_t i = 0; i < view_.elements.size(); ++i) {
        if (same_vector(view_.elements[i], e)) {
            return i;
        }
    }
    require_valid(e, scale_);
    throw Error("estimate " + format_counts(e) + " missing from the scale-poset");
}

long ScalePoset::distance(const CountVector& a, const CountVector& b, MultisetMetric metric) const
{
    const auto ia = index_of(a), ib = index_of(b);
    if (metric == MultisetMetric::HassePath) {
        return hasse_(static_cast<Eigen::Index>(ia), static_cast<Eigen::Index>(ib));
    }
    return (cumulative(a) - cumulative(b)).cwiseAbs().sum();
}

MedianResult ScalePoset::median_like(std::span<const CountVector> estimates, MultisetMetric metric) const
{
    if (estimates.empty()) {
        throw Error("median of an empty estimate list");
    }
    for (const auto& e : estimates) {
        index_of(e);
    }
    MedianResult result;
    result.total_distance = std::numeric_limits<long>::max();
    for (const auto& candidate : view_.elements) {
        long total = 0;
        for (const auto& e : estimates) {
            total += distance(candidate, e, metric);
        }
        if (total < result.total_distance) {
            result.total_distance = total;
            result.argmin_set.clear();
        }
        if (total == result.total_distance) {
            result.argmin_set.push_back(candidate);
        }
    }
    result.representative = result.argmin_set.front();
    return result;
}

ScalePoset build_scale_poset(const MultisetScale& scale) { return ScalePoset(scale); }

long multiset_distance(const CountVector& a, const CountVector& b, const MultisetScale& scale,
                       MultisetMetric metric)
{
    if (metric == MultisetMetric::HassePath) {
        return ScalePoset(scale).distance(a, b, metric);
    }
    require_valid(a, scale);
    require_valid(b, scale);
    return (cumulative(a) - cumulative(b)).cwiseAbs().sum();
}

MedianResult median_like(std::span<const CountVector> estimates, const MultisetScale& scale,
                         MultisetMetric metric)
{
    return ScalePoset(scale).median_like(estimates, metric);
}

} // namespace modsys
