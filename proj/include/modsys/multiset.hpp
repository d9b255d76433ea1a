#pragma once

#include <span>
#include <vector>

#include "modsys/poset.hpp"
#include "modsys/scales.hpp"

namespace modsys {

/// Raised by counts_from_ordinals when the observed levels leave a gap.
class SupportError : public Error {
public:
    SupportError(const std::string& what, CountVector counts)
        : Error(what), counts_(std::move(counts))
    {
    }
    const CountVector& counts() const noexcept { return counts_; }

private:
    CountVector counts_;
};

enum class MultisetMetric { CumulativeL1, HassePath };

/// All valid estimates of P^{l,n}, sorted by descending cumulative sum (a linear extension of
/// cumulative dominance) and then by lexicographically descending counts.
std::vector<CountVector> enumerate_estimates(const MultisetScale& scale);

/// Every count vector of length k summing to m (no support constraint), same ordering.
std::vector<CountVector> enumerate_counts(const CountPosetScale& scale);

/// Inclusive prefix sums.
CountVector cumulative(const CountVector& counts);

/// Multiplicity count of ordinal levels 1..levels. Throws SupportError on a gap.
CountVector counts_from_ordinals(std::span<const Level> levels, int num_levels);

struct MedianResult {
    /// Every valid estimate minimising the total distance, in canonical order.
    std::vector<CountVector> argmin_set;
    /// Earliest member of argmin_set; only meaningful as a deterministic tie-break.
    CountVector representative;
    long total_distance = 0;

    bool tie_broken() const noexcept { return argmin_set.size() > 1; }
};

bool operator==(const MedianResult& a, const MedianResult& b);

/// The scale-poset of P^{l,n} plus the lookups needed for distances and medians.
class ScalePoset {
public:
    explicit ScalePoset(const MultisetScale& scale);

    const MultisetScale& scale() const noexcept { return scale_; }
    const PosetView<CountVector>& view() const noexcept { return view_; }
    /// Position in canonical order; throws Error if `e` is not a valid estimate.
    std::size_t index_of(const CountVector& e) const;

    long distance(const CountVector& a, const CountVector& b, MultisetMetric metric) const;

    /// Throws Error on empty input.
    MedianResult median_like(std::span<const CountVector> estimates, MultisetMetric metric) const;

private:
    MultisetScale scale_;
    PosetView<CountVector> view_;
    Eigen::MatrixXi hasse_;
};

ScalePoset build_scale_poset(const MultisetScale& scale);

long multiset_distance(const CountVector& a, const CountVector& b, const MultisetScale& scale,
                       MultisetMetric metric);

MedianResult median_like(std::span<const CountVector> estimates, const MultisetScale& scale,
                         MultisetMetric metric = MultisetMetric::CumulativeL1);

} // namespace modsys
