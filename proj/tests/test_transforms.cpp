#include <doctest.h>

#include <random>

#include "modsys/transforms.hpp"
#include "support.hpp"

using namespace modsys;
using test::cv;
using test::rv;

TEST_SUITE("transforms")
{
    TEST_CASE("linear_map sends endpoints to endpoints")
    {
        CHECK(linear_map(0.5, QuantScale(0, 1), QuantScale(0, 100)) == doctest::Approx(50));
        CHECK(linear_map(1, QuantScale(0, 1), QuantScale(0, 100)) == 100);
        CHECK(linear_map(1, QuantScale(3, 1), QuantScale(12, 4)) == 4);
        CHECK(linear_map(3, QuantScale(3, 1), QuantScale(12, 4)) == 12);
        CHECK_THROWS_AS(linear_map(3.5, QuantScale(3, 1), QuantScale(12, 4)), Error);
    }

    TEST_CASE("linear_map composed with its inverse is the identity")
    {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u(0, 1);
        for (int i = 0; i < 1000; ++i) {
            const QuantScale src(-5 + 10 * u(rng), 20 + 10 * u(rng));
            const QuantScale dst(100 * u(rng), -100 * u(rng) - 1);
            const double x = src.worst() + (src.best() - src.worst()) * u(rng);
            const double back = linear_map(linear_map(x, src, dst), dst, src);
            CHECK(std::abs(back - x) <= 1e-12 * std::max(1.0, std::abs(x)));
        }
        const Eigen::ArrayXd xs = Eigen::ArrayXd::LinSpaced(5, 1, 3);
        const Eigen::ArrayXd ys = linear_map(xs, QuantScale(3, 1), QuantScale(12, 4));
        CHECK(ys(0) == doctest::Approx(4));
        CHECK(ys(4) == doctest::Approx(12));
    }

    TEST_CASE("quantize counts intervals from the best end")
    {
        const QuantScale src(0, 10);
        const ThresholdSpec spec{{8, 6, 4}, OrdinalScale(4)};
        CHECK(quantize(9, spec, src) == 1);
        CHECK(quantize(6, spec, src) == 2);
        CHECK(quantize(5, spec, src) == 3);
        CHECK(quantize(0, spec, src) == 4);
        CHECK(quantize(10, spec, src) == 1);

        const QuantScale lower(3, 1);
        const ThresholdSpec cuts{{1.5, 2.5}, OrdinalScale(3)};
        CHECK(quantize(1.1, cuts, lower) == 1);
        CHECK(quantize(1.5, cuts, lower) == 1);
        CHECK(quantize(1.8, cuts, lower) == 2);
        CHECK(quantize(2.7, cuts, lower) == 3);
    }

    TEST_CASE("malformed threshold specs are rejected")
    {
        const QuantScale src(0, 10);
        CHECK_FALSE(validate_thresholds({{8, 6}, OrdinalScale(4)}, src));
        CHECK_FALSE(validate_thresholds({{4, 6, 8}, OrdinalScale(4)}, src));
        CHECK_FALSE(validate_thresholds({{10, 6, 4}, OrdinalScale(4)}, src));
        CHECK_FALSE(validate_thresholds({{8, 8, 4}, OrdinalScale(4)}, src));
        CHECK_THROWS_AS(quantize(5, {{4, 6, 8}, OrdinalScale(4)}, src), Error);
        CHECK_THROWS_AS(quantize(11, {{8, 6, 4}, OrdinalScale(4)}, src), Error);
    }

    TEST_CASE("quantize is monotone over random draws")
    {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u(0, 1);
        std::uniform_int_distribution<int> classes(2, 6);
        for (int draw = 0; draw < 10000; ++draw) {
            const bool higher = u(rng) < 0.5;
            const QuantScale src = higher ? QuantScale(0, 100) : QuantScale(100, 0);
            const int k = classes(rng);
            std::vector<double> cuts;
            for (int i = 0; i < k - 1; ++i) {
                cuts.push_back(1 + 98 * u(rng));
            }
            std::sort(cuts.begin(), cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
            if (higher) {
                std::reverse(cuts.begin(), cuts.end());
            }
            const ThresholdSpec spec{cuts, OrdinalScale(static_cast<int>(cuts.size()) + 1)};
            // Draw values on the cut points as well as between them.
            const double x = u(rng) < 0.2 ? cuts[static_cast<std::size_t>(draw) % cuts.size()] : 100 * u(rng);
            const double y = 100 * u(rng);
            const auto qx = quantize(x, spec, src), qy = quantize(y, spec, src);
            if (src.better(x, y)) {
                REQUIRE(qx <= qy);
            }
            if (x == y) {
                REQUIRE(qx == qy);
            }
        }
    }

    TEST_CASE("ordinal maps")
    {
        const OrdinalMap id(OrdinalScale(3), OrdinalScale(3), {1, 2, 3});
        CHECK(ordinal_remap(2, id) == 2);
        const OrdinalMap collapse(OrdinalScale(5), OrdinalScale(3), {1, 2, 3, 3, 3});
        CHECK(collapse(4) == 3);
        CHECK_THROWS_AS(collapse(6), Error);
        CHECK_THROWS_AS(OrdinalMap(OrdinalScale(2), OrdinalScale(2), {2, 1}), Error);
        CHECK_THROWS_AS(OrdinalMap(OrdinalScale(3), OrdinalScale(3), {1, 1, 2}), Error);
        CHECK_THROWS_AS(OrdinalMap(OrdinalScale(3), OrdinalScale(2), {1, 2}), Error);
        const OrdinalMap rev(OrdinalScale(3), OrdinalScale(2), {2, 1, 1}, true);
        CHECK(rev(1) == 2);

        // Weak order is preserved.
        for (Level a = 1; a <= 5; ++a) {
            for (Level b = a; b <= 5; ++b) {
                CHECK(collapse(a) <= collapse(b));
            }
        }
    }

    TEST_CASE("utility reduction")
    {
        const VectorScale four({QuantScale(3, 1), QuantScale(3, 1), QuantScale(3, 1), QuantScale(3, 1)});
        Eigen::MatrixXd t1(1, 4);
        t1 << 1.5, 1.1, 1.2, 1.4;
        const auto r = utility_reduce(t1, RealVector::Ones(4), four);
        CHECK(r.values(0) == doctest::Approx(5.2).epsilon(1e-12));
        CHECK(r.orientation == Orientation::LowerIsBetter);

        const VectorScale two({OrdinalScale(9), OrdinalScale(9)});
        Eigen::MatrixXd p(1, 2);
        p << 9, 7;
        CHECK(utility_reduce(p, rv({1, 1}), two).values(0) == 16);
        CHECK_THROWS_AS(utility_reduce(p, rv({1}), two), Error);

        const VectorScale mixed({QuantScale(0, 10), OrdinalScale(3)});
        CHECK(utility_reduce(p, rv({1, 1}), mixed).orientation == Orientation::HigherIsBetter);
    }

    TEST_CASE("vectors to ordinal layers")
    {
        const VectorScale two({OrdinalScale(12), OrdinalScale(12)});
        Eigen::MatrixXd sums(4, 2);
        sums << 5, 5, 9, 8, 9, 7, 8, 8;
        CHECK(vectors_to_ordinal(sums, two) == std::vector<int>{1, 3, 2, 2});

        Eigen::MatrixXd one(1, 2);
        one << 3, 3;
        CHECK(vectors_to_ordinal(one, two) == std::vector<int>{1});

        Eigen::MatrixXd cross(2, 2);
        cross << 1, 2, 2, 1;
        CHECK(vectors_to_ordinal(cross, two) == std::vector<int>{1, 1});
    }

    TEST_CASE("vectors_to_ordinal is invariant under positive affine rescaling of one criterion")
    {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> u(0, 10);
        const VectorScale vs({QuantScale(10, 0), QuantScale(0, 10), QuantScale(10, 0)});
        for (int trial = 0; trial < 200; ++trial) {
            Eigen::MatrixXd pts(15, 3);
            for (Eigen::Index i = 0; i < pts.size(); ++i) {
                pts(i) = std::round(u(rng));
            }
            const auto base = vectors_to_ordinal(pts, vs);
            const double a = 0.1 + u(rng), b = u(rng) - 5;
            const auto col = static_cast<Eigen::Index>(trial % 3);
            Eigen::MatrixXd scaled = pts;
            scaled.col(col) = (a * pts.col(col)).array() + b;
            std::vector<Criterion> crit = vs.criteria();
            const auto& q = std::get<QuantScale>(crit[static_cast<std::size_t>(col)]);
            crit[static_cast<std::size_t>(col)] = QuantScale(a * q.worst() + b, a * q.best() + b);
            CHECK(vectors_to_ordinal(scaled, VectorScale(crit)) == base);
        }
    }

    TEST_CASE("poset_to_ordinal on count vectors")
    {
        const std::vector<CountVector> medians{cv({3, 1, 0}), cv({0, 4, 0}), cv({1, 3, 0}), cv({1, 3, 0})};
        CHECK(poset_to_ordinal(std::span<const CountVector>(medians), dominates_counts) ==
              std::vector<int>{1, 3, 2, 2});
        const std::vector<CountVector> profiles{cv({4, 0, 0}), cv({1, 2, 1}), cv({2, 1, 1}), cv({2, 1, 1})};
        CHECK(poset_to_ordinal(std::span<const CountVector>(profiles), dominates_counts) ==
              std::vector<int>{1, 3, 2, 2});
    }
}
