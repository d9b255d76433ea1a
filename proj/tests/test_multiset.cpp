#include <doctest.h>

#include "modsys/multiset.hpp"
#include "support.hpp"

using namespace modsys;
using test::cv;

namespace {

std::set<oracle::Counts> as_set(const std::vector<CountVector>& v)
{
    std::set<oracle::Counts> s;
    for (const auto& c : v) {
        s.insert(test::to_counts(c));
    }
    return s;
}

/// Compares the library median with the exhaustive oracle under both metrics.
void check_median(const std::vector<CountVector>& inputs, const ScalePoset& poset)
{
    const auto universe = oracle::interval_multisets(poset.scale().levels(), poset.scale().elements());
    std::vector<oracle::Counts> raw;
    for (const auto& c : inputs) {
        raw.push_back(test::to_counts(c));
    }
    const auto cum = oracle::exhaustive_median(universe, raw, oracle::unit_move_distance);
    const auto got = poset.median_like(inputs, MultisetMetric::CumulativeL1);
    CHECK(as_set(got.argmin_set) == cum.argmin);
    CHECK(got.total_distance == cum.total);

    const auto hasse = oracle::exhaustive_median(universe, raw, [&](const auto& a, const auto& b) {
        return oracle::hasse_distance(universe, a, b);
    });
    const auto got_h = poset.median_like(inputs, MultisetMetric::HassePath);
    CHECK(as_set(got_h.argmin_set) == hasse.argmin);
    CHECK(got_h.total_distance == hasse.total);
}

} // namespace

TEST_SUITE("multiset")
{
    TEST_CASE("P^{3,4} has exactly the twelve interval estimates")
    {
        const auto all = enumerate_estimates(MultisetScale(3, 4));
        CHECK(all.size() == 12);
        const std::vector<CountVector> listed{cv({4, 0, 0}), cv({3, 1, 0}), cv({2, 2, 0}), cv({1, 3, 0}),
                                              cv({0, 4, 0}), cv({0, 3, 1}), cv({0, 2, 2}), cv({0, 1, 3}),
                                              cv({0, 0, 4}), cv({2, 1, 1}), cv({1, 2, 1}), cv({1, 1, 2})};
        CHECK(as_set(all) == as_set(listed));
        for (const auto& excluded : {cv({2, 0, 2}), cv({3, 0, 1}), cv({1, 0, 3})}) {
            CHECK_FALSE(as_set(all).contains(test::to_counts(excluded)));
        }
    }

    TEST_CASE("canonical enumeration order")
    {
        const auto all = enumerate_estimates(MultisetScale(3, 4));
        const std::vector<CountVector> expected{cv({4, 0, 0}), cv({3, 1, 0}), cv({2, 2, 0}), cv({2, 1, 1}),
                                                cv({1, 3, 0}), cv({1, 2, 1}), cv({0, 4, 0}), cv({1, 1, 2}),
                                                cv({0, 3, 1}), cv({0, 2, 2}), cv({0, 1, 3}), cv({0, 0, 4})};
        REQUIRE(all.size() == expected.size());
        for (std::size_t i = 0; i < all.size(); ++i) {
            CHECK(same_vector(all[i], expected[i]));
        }
        // Canonical order is a linear extension of dominance.
        for (std::size_t i = 0; i < all.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                CHECK_FALSE(dominates_counts(all[i], all[j]));
            }
        }
    }

    TEST_CASE("small and degenerate scales")
    {
        const auto one = enumerate_estimates(MultisetScale(1, 5));
        REQUIRE(one.size() == 1);
        CHECK(same_vector(one.front(), cv({5})));
        CHECK(enumerate_estimates(MultisetScale(3, 2)).size() == 5);
    }

    TEST_CASE("enumeration counts match brute force for l<=4, n<=5")
    {
        for (int l = 1; l <= 4; ++l) {
            for (int n = 1; n <= 5; ++n) {
                const auto all = oracle::all_multisets(l, n);
                CHECK(static_cast<long>(all.size()) == oracle::binomial(l + n - 1, n));
                CHECK(as_set(enumerate_estimates(MultisetScale(l, n))) == oracle::interval_multisets(l, n));
                CHECK(as_set(enumerate_counts(CountPosetScale(l, n))) == all);
            }
        }
    }

    TEST_CASE("scale poset structure")
    {
        const ScalePoset p(MultisetScale(3, 4));
        const auto& v = p.view();
        CHECK(v.size() == 12);
        const auto oracle_covers = oracle::covers(oracle::interval_multisets(3, 4));
        CHECK(v.covers.size() == oracle_covers.size());
        CHECK(v.covers.size() == 14);

        const auto i211 = p.index_of(cv({2, 1, 1}));
        std::vector<CountVector> up, down;
        for (const auto& [a, b] : v.covers) {
            if (b == i211) {
                up.push_back(v.elements[a]);
            }
            if (a == i211) {
                down.push_back(v.elements[b]);
            }
        }
        CHECK(as_set(up) == as_set({cv({2, 2, 0})}));
        CHECK(as_set(down) == as_set({cv({1, 2, 1})}));

        const auto i310 = p.index_of(cv({3, 1, 0}));
        CHECK(std::find(v.covers.begin(), v.covers.end(), Edge{i310, i211}) == v.covers.end());
        CHECK(v.dominance(static_cast<Eigen::Index>(i310), static_cast<Eigen::Index>(i211)));

        // Unique top and bottom.
        const auto top = p.index_of(cv({4, 0, 0})), bottom = p.index_of(cv({0, 0, 4}));
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i != top) {
                CHECK(v.dominance(static_cast<Eigen::Index>(top), static_cast<Eigen::Index>(i)));
            }
            if (i != bottom) {
                CHECK(v.dominance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(bottom)));
            }
        }

        const ScalePoset tiny(MultisetScale(1, 1));
        CHECK(tiny.view().size() == 1);
        CHECK(tiny.view().covers.empty());
    }

    TEST_CASE("distances")
    {
        const MultisetScale s(3, 4);
        for (auto metric : {MultisetMetric::CumulativeL1, MultisetMetric::HassePath}) {
            CHECK(multiset_distance(cv({4, 0, 0}), cv({3, 1, 0}), s, metric) == 1);
            CHECK(multiset_distance(cv({4, 0, 0}), cv({0, 0, 4}), s, metric) == 8);
            CHECK(multiset_distance(cv({2, 1, 1}), cv({2, 1, 1}), s, metric) == 0);
        }
        CHECK_THROWS_AS(multiset_distance(cv({2, 0, 2}), cv({2, 1, 1}), s, MultisetMetric::CumulativeL1), Error);
    }

    TEST_CASE("distances agree with the oracles and satisfy the triangle inequality")
    {
        for (int l = 1; l <= 3; ++l) {
            for (int n = 1; n <= 4; ++n) {
                const ScalePoset p(MultisetScale(l, n));
                const auto universe = oracle::interval_multisets(l, n);
                const auto& e = p.view().elements;
                for (const auto& a : e) {
                    for (const auto& b : e) {
                        const auto ca = test::to_counts(a), cb = test::to_counts(b);
                        CHECK(p.distance(a, b, MultisetMetric::CumulativeL1) == oracle::unit_move_distance(ca, cb));
                        CHECK(p.distance(a, b, MultisetMetric::HassePath) == oracle::hasse_distance(universe, ca, cb));
                        for (const auto& c : e) {
                            for (auto m : {MultisetMetric::CumulativeL1, MultisetMetric::HassePath}) {
                                CHECK(p.distance(a, c, m) <= p.distance(a, b, m) + p.distance(b, c, m));
                            }
                        }
                    }
                }
            }
        }
    }

    TEST_CASE("median of the four team compositions")
    {
        const ScalePoset p(MultisetScale(3, 4));
        const auto t1 = std::vector{cv({3, 1, 0}), cv({4, 0, 0}), cv({3, 1, 0}), cv({2, 2, 0})};
        const auto t2 = std::vector{cv({0, 4, 0}), cv({4, 0, 0}), cv({1, 2, 1}), cv({0, 2, 2})};
        const auto t3 = std::vector{cv({3, 1, 0}), cv({4, 0, 0}), cv({1, 2, 1}), cv({0, 2, 2})};
        const auto t4 = std::vector{cv({3, 1, 0}), cv({0, 3, 1}), cv({3, 1, 0}), cv({0, 2, 2})};
        for (const auto& in : {t1, t2, t3, t4}) {
            check_median(in, p);
        }

        const auto m1 = p.median_like(t1, MultisetMetric::CumulativeL1);
        CHECK_FALSE(m1.tie_broken());
        CHECK(same_vector(m1.representative, cv({3, 1, 0})));

        // The stated values are members of the argmin sets, not unique minimizers.
        CHECK(as_set(p.median_like(t2, MultisetMetric::CumulativeL1).argmin_set).contains({0, 4, 0}));
        CHECK(as_set(p.median_like(t3, MultisetMetric::CumulativeL1).argmin_set).contains({1, 3, 0}));
        CHECK(as_set(p.median_like(t4, MultisetMetric::CumulativeL1).argmin_set).contains({1, 3, 0}));

        const auto m2 = p.median_like(t2, MultisetMetric::CumulativeL1);
        CHECK(m2.tie_broken());
        CHECK(m2.total_distance == 8);
        CHECK(as_set(m2.argmin_set) == std::set<oracle::Counts>{{1, 3, 0}, {0, 4, 0}, {0, 3, 1}, {1, 2, 1}});
        // Representative is the earliest argmin member in canonical order.
        CHECK(same_vector(m2.representative, cv({1, 3, 0})));
    }

    TEST_CASE("median edge cases")
    {
        const MultisetScale s(3, 4);
        const auto single = median_like(std::vector{cv({1, 2, 1})}, s);
        CHECK(single.argmin_set.size() == 1);
        CHECK(same_vector(single.representative, cv({1, 2, 1})));
        CHECK_THROWS_AS(median_like(std::vector<CountVector>{}, s), Error);
        CHECK_THROWS_AS(median_like(std::vector{cv({2, 0, 2})}, s), Error);
    }

    TEST_CASE("counts from ordinal levels")
    {
        CHECK(same_vector(counts_from_ordinals(std::vector<Level>{1, 1, 1, 2}, 3), cv({3, 1, 0})));
        CHECK(same_vector(counts_from_ordinals(std::vector<Level>{2, 2, 2, 2}, 3), cv({0, 4, 0})));
        try {
            counts_from_ordinals(std::vector<Level>{1, 3, 3, 3}, 3);
            FAIL("expected a support error");
        } catch (const SupportError& e) {
            CHECK(std::string(e.what()) == "support {1,3} not contiguous");
            CHECK(same_vector(e.counts(), cv({1, 0, 3})));
        }
        CHECK_THROWS_AS(counts_from_ordinals(std::vector<Level>{1, 4}, 3), Error);
    }
}
