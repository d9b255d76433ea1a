#include <doctest.h>

#include <random>

#include "modsys/integrators.hpp"
#include "support.hpp"

using namespace modsys;
using test::cv;
using test::rv;

namespace {

Eigen::MatrixXd rows(std::initializer_list<std::initializer_list<double>> rs)
{
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rs.size()), static_cast<Eigen::Index>(rs.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rs) {
        Eigen::Index j = 0;
        for (double x : r) {
            m(i, j++) = x;
        }
        ++i;
    }
    return m;
}

std::map<std::vector<int>, int> cell_map(const IntegrationTable& t)
{
    std::map<std::vector<int>, int> out;
    for (const auto& c : t.cells()) {
        out[{c.inputs.begin(), c.inputs.end()}] = c.output;
    }
    return out;
}

/// The A table of the two-level fixture, optionally with one cell overwritten.
IntegrationTable table_a(std::optional<TableCell> mutation = std::nullopt)
{
    std::vector<TableCell> cells{{{1, 1}, 1}, {{1, 2}, 2}, {{1, 3}, 3}, {{2, 1}, 1}, {{2, 2}, 2}, {{2, 3}, 3},
                                 {{3, 1}, 2}, {{3, 2}, 3}, {{3, 3}, 4}, {{4, 1}, 3}, {{4, 2}, 3}, {{4, 3}, 4}};
    if (mutation) {
        for (auto& c : cells) {
            if (c.inputs == mutation->inputs) {
                c.output = mutation->output;
            }
        }
    }
    return IntegrationTable({{OrdinalScale(4), {1, 2, 3, 4}}, {OrdinalScale(3), {1, 2, 3}}}, OrdinalScale(4), cells);
}

} // namespace

TEST_SUITE("integrators")
{
    TEST_CASE("additive utility of the four teams")
    {
        const QuantScale component(3, 1);
        const auto r = additive_utility(std::vector<double>{1.5, 1.1, 1.2, 1.4}, component);
        CHECK(r.value == 5.2);
        CHECK(r.scale.best() == 4);
        CHECK(r.scale.worst() == 12);

        CHECK(additive_utility(std::vector<double>{1.7}, component).value == 1.7);
        CHECK_THROWS_AS(additive_utility(std::vector<double>{}, component), Error);
        CHECK_THROWS_AS(additive_utility(std::vector<double>{3.1}, component), Error);
    }

    TEST_CASE("compensated sum is exact where naive summation drifts")
    {
        const std::vector<double> xs{1.5, 1.1, 1.2, 1.4};
        CHECK(compensated_sum(xs) == 5.2);
        const std::vector<double> cancel{1e16, 1.0, -1e16};
        CHECK(compensated_sum(cancel) == 1.0);
    }

    TEST_CASE("integration table for the four-component team")
    {
        const auto m = test::fixture("student-team");
        const auto& t = m.tables.at("team");
        CHECK(t.lookup(std::vector<Level>{1, 1, 1, 1}) == 1);
        CHECK(t.lookup(std::vector<Level>{2, 1, 2, 3}) == 4);
        CHECK(t.lookup(std::vector<Level>{1, 1, 2, 3}) == 3);
        CHECK(t.lookup(std::vector<Level>{1, 3, 1, 3}) == 3);
        CHECK_THROWS_AS(t.lookup(std::vector<Level>{1, 2, 1, 1}), Error);
        CHECK_THROWS_AS(t.lookup(std::vector<Level>{1, 1, 1}), Error);
        CHECK(t.monotone());
        CHECK(oracle::table_monotone(cell_map(t)));
    }

    TEST_CASE("chained lookups through the two-level tables")
    {
        const auto m = test::fixture("three-part");
        const Level a = m.tables.at("A").lookup(std::vector<Level>{3, 2});
        const Level b = m.tables.at("B").lookup(std::vector<Level>{2, 1, 2});
        CHECK(a == 3);
        CHECK(b == 2);
        CHECK(m.tables.at("S").lookup(std::vector<Level>{a, b}) == 2);
    }

    TEST_CASE("identity table on a single child")
    {
        const std::vector<TableCell> cells{{{1}, 1}, {{2}, 2}, {{3}, 3}};
        const IntegrationTable id({{OrdinalScale(3), {1, 2, 3}}}, OrdinalScale(3), cells);
        for (Level l = 1; l <= 3; ++l) {
            CHECK(id.lookup(std::vector<Level>{l}) == l);
        }
    }

    TEST_CASE("table construction rejects missing, duplicate and out-of-domain cells")
    {
        const std::vector<TableInput> in{{OrdinalScale(2), {1, 2}}};
        CHECK_THROWS_AS(IntegrationTable(in, OrdinalScale(2), std::vector<TableCell>{{{1}, 1}}), Error);
        CHECK_THROWS_AS(IntegrationTable(in, OrdinalScale(2), std::vector<TableCell>{{{1}, 1}, {{1}, 1}, {{2}, 2}}),
                        Error);
        CHECK_THROWS_AS(IntegrationTable(in, OrdinalScale(2), std::vector<TableCell>{{{1}, 1}, {{3}, 2}}), Error);
        CHECK_THROWS_AS(IntegrationTable(in, OrdinalScale(2), std::vector<TableCell>{{{1}, 1}, {{2}, 3}}), Error);
    }

    TEST_CASE("monotonicity validator agrees with the all-pairs oracle")
    {
        const auto a = table_a();
        CHECK(a.monotone());
        CHECK(oracle::table_monotone(cell_map(a)));

        const auto mutated = table_a(TableCell{{4, 1}, 1});
        const auto v = mutated.monotonicity_violations();
        CHECK_FALSE(oracle::table_monotone(cell_map(mutated)));
        REQUIRE(v.size() == 1);
        CHECK(v[0].cell == std::vector<Level>{4, 1});
        CHECK(v[0].input == 0);
        CHECK(v[0].improved_level == 3);
        CHECK(v[0].improved_output == 2);

        for (const auto& name : {"three-part", "student-team"}) {
            for (const auto& [id, t] : test::fixture(name).tables) {
                CHECK(t.monotone() == oracle::table_monotone(cell_map(t)));
                CHECK(t.monotone());
            }
        }

        // Random single-cell mutations: neighbour check and all-pairs check always agree.
        std::mt19937 rng(17);
        std::uniform_int_distribution<int> x(1, 4), y(1, 3), out(1, 4);
        for (int i = 0; i < 200; ++i) {
            const auto t = table_a(TableCell{{x(rng), y(rng)}, out(rng)});
            CHECK(t.monotone() == oracle::table_monotone(cell_map(t)));
        }
    }

    TEST_CASE("vector sums of the four teams")
    {
        auto sum = [](std::initializer_list<RealVector> vs) { return vector_sum(std::vector<RealVector>(vs)); };
        CHECK(same_vector(sum({rv({2, 1}), rv({1, 1}), rv({1, 1}), rv({1, 2})}), rv({5, 5})));
        CHECK(same_vector(sum({rv({2, 2}), rv({1, 1}), rv({3, 2}), rv({3, 3})}), rv({9, 8})));
        CHECK(same_vector(sum({rv({2, 1}), rv({1, 1}), rv({3, 2}), rv({3, 3})}), rv({9, 7})));
        CHECK(same_vector(sum({rv({2, 1}), rv({2, 3}), rv({1, 1}), rv({3, 3})}), rv({8, 8})));
        CHECK(same_vector(sum({rv({2, 1}), rv({1, 1})}), rv({3, 2})));
        CHECK(same_vector(sum({rv({2, 1})}), rv({2, 1})));
        CHECK_THROWS_AS(sum({rv({2, 1}), rv({1})}), Error);
        CHECK_THROWS_AS(vector_sum(std::vector<RealVector>{}), Error);
    }

    TEST_CASE("count profiles")
    {
        auto profile = [](std::initializer_list<Level> ls) { return count_profile(std::vector<Level>(ls), 3); };
        CHECK(same_vector(profile({1, 1, 1, 1}), cv({4, 0, 0})));
        CHECK(same_vector(profile({2, 1, 2, 3}), cv({1, 2, 1})));
        CHECK(same_vector(profile({1, 1, 2, 3}), cv({2, 1, 1})));
        CHECK(same_vector(profile({1, 3, 1, 3}), cv({2, 0, 2})));
        CHECK_THROWS_AS(profile({1, 4}), Error);
    }

    TEST_CASE("compatibility and quality vectors")
    {
        CompatTable c(3);
        const std::vector<std::string> das{"a", "b", "c", "d"};
        for (std::size_t i = 0; i < das.size(); ++i) {
            for (std::size_t j = i + 1; j < das.size(); ++j) {
                c.set(das[i], das[j], 3);
            }
        }
        CHECK(min_compatibility(das, c) == 3);
        c.set("d", "c", 1);
        CHECK(c.get("c", "d") == 1);
        CHECK(min_compatibility(das, c) == 1);

        const CompatTable four(4);
        CHECK(min_compatibility(std::vector<std::string>{"x"}, four) == 4);
        try {
            min_compatibility(std::vector<std::string>{"x", "y"}, four);
            FAIL("expected a missing pair error");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("(x,y)") != std::string::npos);
        }
        CHECK_THROWS_AS(CompatTable(3).set("a", "a", 1), Error);
        CHECK_THROWS_AS(CompatTable(3).set("a", "b", 0), Error);
        CompatTable zero(3, true);
        zero.set("a", "b", 0);
        CHECK(zero.min_level() == 0);

        CompatTable three(3);
        three.set("p", "q", 2);
        three.set("p", "r", 3);
        three.set("q", "r", 2);
        const std::vector<std::string> pqr{"p", "q", "r"};
        CHECK(quality_vector(pqr, std::vector<Level>{1, 1, 2}, 3, three) == QualityVector{2, cv({2, 1, 0})});

        CompatTable ideal(4);
        ideal.set("p", "q", 4);
        ideal.set("p", "r", 4);
        ideal.set("q", "r", 4);
        CHECK(quality_vector(pqr, std::vector<Level>{1, 1, 1}, 3, ideal) == QualityVector{4, cv({3, 0, 0})});
    }

    TEST_CASE("TOPSIS closeness")
    {
        const TopsisConfig cfg{rows({{3, 4}}), rows({{0, 0}}), 2};
        const auto r = topsis_rank(rows({{0, 0}, {1.5, 2}, {3, 4}}), cfg);
        CHECK(r.results[0].closeness == 0);
        CHECK(r.results[1].rho_plus == doctest::Approx(2.5).epsilon(1e-15));
        CHECK(r.results[1].rho_minus == doctest::Approx(2.5).epsilon(1e-15));
        CHECK(r.results[1].closeness == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(r.results[2].rho_plus == 0);
        CHECK(r.results[2].closeness == 1);
        CHECK(r.order == std::vector<std::size_t>{2, 1, 0});
        CHECK(r.outranks(2, 1));
        CHECK(r.outranks(1, 0));
        CHECK_FALSE(r.outranks(0, 1));

        const TopsisConfig two_best{rows({{0, 10}, {10, 0}}), rows({{5, 5}}), 1};
        CHECK(topsis_rank(rows({{0, 10}}), two_best).results[0].rho_plus == 0);

        CHECK_THROWS_AS(topsis_rank(rows({{1, 1}}), TopsisConfig{rows({{1, 1}}), rows({{1, 1}}), 2}), Error);
        CHECK_THROWS_AS(topsis_rank(rows({{1, 1}}), TopsisConfig{rows({{1, 1}}), rows({{0, 0}}), 3}), Error);
        CHECK_THROWS_AS(topsis_rank(rows({{1, 1, 1}}), cfg), Error);
    }

    TEST_CASE("TOPSIS closeness is invariant under a common positive scaling")
    {
        std::mt19937 rng(99);
        std::uniform_real_distribution<double> u(0, 10), s(0.01, 100);
        for (int trial = 0; trial < 300; ++trial) {
            Eigen::MatrixXd pts(12, 3);
            for (Eigen::Index i = 0; i < pts.size(); ++i) {
                pts(i) = u(rng);
            }
            TopsisConfig cfg{Eigen::MatrixXd::Constant(2, 3, 0.0), Eigen::MatrixXd::Constant(1, 3, 12.0),
                             trial % 2 == 0 ? 2 : 1};
            cfg.best_points.row(1) << 1, 0, 2;
            const double k = s(rng);
            const auto base = topsis_rank(pts, cfg);
            const auto scaled = topsis_rank(k * pts, TopsisConfig{k * cfg.best_points, k * cfg.worst_points,
                                                                  cfg.exponent});
            for (std::size_t i = 0; i < base.results.size(); ++i) {
                CHECK(std::abs(base.results[i].closeness - scaled.results[i].closeness) <= 1e-9);
            }
            CHECK(base.order == scaled.order);
        }
    }

    TEST_CASE("multiset integration delegates to the median")
    {
        const MultisetScale p34(3, 4);
        const std::vector t1{cv({3, 1, 0}), cv({4, 0, 0}), cv({3, 1, 0}), cv({2, 2, 0})};
        const auto r = multiset_integrate(t1, p34);
        CHECK(r.argmin_set.size() == 1);
        CHECK(same_vector(r.representative, cv({3, 1, 0})));

        const std::vector same(3, cv({1, 2, 1}));
        CHECK(multiset_integrate(same, p34).argmin_set.size() == 1);

        const std::vector t3{cv({3, 1, 0}), cv({4, 0, 0}), cv({1, 2, 1}), cv({0, 2, 2})};
        const auto m3 = multiset_integrate(t3, p34);
        CHECK(m3.total_distance == 9);
        std::set<oracle::Counts> got;
        for (const auto& c : m3.argmin_set) {
            got.insert(test::to_counts(c));
        }
        CHECK(got == std::set<oracle::Counts>{{3, 1, 0}, {2, 2, 0}, {1, 3, 0}, {1, 2, 1}, {2, 1, 1}});
    }

    TEST_CASE("compatibility-extended poset")
    {
        const auto v = compat_extended_poset(MultisetScale(3, 4), 3);
        CHECK(v.size() == 36);
        CHECK(v.elements.front() == QualityVector{3, cv({4, 0, 0})});
        CHECK(v.elements.back() == QualityVector{1, cv({0, 0, 4})});
        CHECK(v.layer_of.front() == 1);

        // Product order: covers are either a compat step or a multiset cover, never both.
        const auto base = oracle::covers(oracle::interval_multisets(3, 4));
        CHECK(v.covers.size() == 3 * base.size() + 2 * 12);
        for (const auto& [a, b] : v.covers) {
            const auto& x = v.elements[a];
            const auto& y = v.elements[b];
            const bool compat_step = x.w == y.w + 1 && same_vector(x.counts, y.counts);
            const bool multiset_step = x.w == y.w && base.contains({test::to_counts(x.counts), test::to_counts(y.counts)});
            CHECK(compat_step != multiset_step);
        }
    }
}
