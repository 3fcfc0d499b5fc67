#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ltc/constants.hpp"
#include "ltc/errors.hpp"

using namespace ltc;

TEST_CASE("semiclassical constants") {
    // mpmath
    CHECK(k_cl({1, 1.0}) == doctest::Approx(std::numbers::pi * std::numbers::pi / 3).epsilon(1e-14));
    CHECK(k_cl({2, 1.0}) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-14));
    CHECK(k_cl({3, 1.0}) == doctest::Approx(9.11559974469119427458).epsilon(1e-14));
    CHECK(k_cl({3, 0.5}) == doctest::Approx(2.92333281729057).epsilon(1e-13));
    CHECK(k_cl({3, 0.5}) == doctest::Approx(0.75 * std::cbrt(6 * std::numbers::pi * std::numbers::pi)).epsilon(1e-14));
    CHECK(l_cl({1, 1.0}) == doctest::Approx(0.212206590789194).epsilon(1e-13));
    CHECK(l_cl({3, 1.0}) == doctest::Approx(0.00675474557615585180).epsilon(1e-13));
    CHECK(l_cl({2, 0.5}) == doctest::Approx(0.0265258238486492226).epsilon(1e-13));
    CHECK(l_cl_general(1.5, 2) == doctest::Approx(1 / (10 * std::numbers::pi)).epsilon(1e-14));
    CHECK(l_cl_general(2.0, 3) == doctest::Approx(0.00385985461494620082).epsilon(1e-13));
    CHECK(l_cl_general(1.0, 3) == doctest::Approx(l_cl({3, 1.0})).epsilon(1e-14));
}

TEST_CASE("lemma minimum closed form") {
    // mpmath
    struct Ref {
        double beta, min_value, mu;
    } refs[] = {
        {1.5, 1.44757170809403, 0.723785854047014},
        {2.0, 0.616850275068085, 0.616850275068085},
        {3.0, 0.261932981259283, 0.523865962518566},
        {4.0, 0.160525235468632, 0.481575706405896},
    };
    for (const auto& r : refs) {
        CAPTURE(r.beta);
        const auto m = lemma_min(r.beta);
        CHECK(m.min_value == doctest::Approx(r.min_value).epsilon(1e-13));
        CHECK(m.mu_star == doctest::Approx(r.mu).epsilon(1e-13));
    }
    CHECK(lemma_min(2.0).min_value == doctest::Approx(std::numbers::pi * std::numbers::pi / 16).epsilon(1e-14));
    CHECK_THROWS_AS(lemma_min(1.0), DomainError);
}

TEST_CASE("momentum-optimal bound") {
    // mpmath
    const auto r1 = bound_momentum_optimal({1, 1.0});
    CHECK(r1.method == BoundMethod::momentum_optimal);
    CHECK(r1.k_ratio == doctest::Approx(0.381777046629389).epsilon(1e-13));
    CHECK(r1.l_ratio == doctest::Approx(1.61843437080187).epsilon(1e-13));
    CHECK(bound_momentum_optimal({2, 1.0}).k_ratio == doctest::Approx(0.540379646092468114).epsilon(1e-13));
    CHECK(bound_momentum_optimal({3, 1.0}).l_ratio == doctest::Approx(1.99458316948134).epsilon(1e-13));
    const auto frac = bound_momentum_optimal({3, 0.5});
    CHECK(frac.method == BoundMethod::fractional_first);
    CHECK(frac.k_ratio == doctest::Approx(0.765472735958943605).epsilon(1e-13));
    CHECK(bound_momentum_optimal({1, 0.25}).l_ratio == doctest::Approx(2.09546385007426336).epsilon(1e-12));
}

TEST_CASE("bound from C") {
    const auto r = bound_from_c({1, 1.0}, 0.373556);
    CHECK(r.method == BoundMethod::low_momentum_avg);
    CHECK(r.k_ratio == doctest::Approx(0.471848171386165).epsilon(1e-13));
    CHECK(r.l_ratio == doctest::Approx(1.45579043581245).epsilon(1e-13));
    CHECK(r.c_value == 0.373556);
    const auto third = bound_from_c({1, 1.0}, 1.0 / 3.0);
    CHECK(third.k_ratio == doctest::Approx(16.0 / 27.0).epsilon(1e-14));
    CHECK(third.l_ratio == doctest::Approx(1.29903810567666).epsilon(1e-13));
    const auto frac = bound_from_c({3, 0.5}, 0.046736);
    CHECK(frac.method == BoundMethod::fractional_second);
    CHECK(frac.k_ratio == doctest::Approx(0.826299371892872).epsilon(1e-12));
    CHECK(bound_from_c({3, 0.5}, 0.046737).k_ratio == doctest::Approx(0.826293478594449).epsilon(1e-12));
    CHECK_THROWS_AS(bound_from_c({1, 1.0}, 0.0), Error);
}

TEST_CASE("original bound") {
    CHECK(bound_rumin_original({1, 1.0}).l_ratio == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
    CHECK(bound_rumin_original({3, 1.0}).l_ratio == doctest::Approx(3.56422554052120889).epsilon(1e-13));
    CHECK(rumin_original_l_ratio(1000) < std::numbers::e * std::numbers::e);
    CHECK_THROWS_AS(bound_rumin_original({1, 0.5}), DomainError);
}

TEST_CASE("lifted and best-of") {
    const auto lifted = bound_lifted_1d({3, 1.0});
    CHECK(lifted.method == BoundMethod::lifted_1d);
    CHECK(lifted.l_ratio == doctest::Approx(bound_from_c({1, 1.0}, kC1Upper).l_ratio).epsilon(1e-14));
    CHECK(lifted.l_ratio <= kTheoremL1dRatio);

    const auto best3 = bound_best_of({3, 1.0});
    CHECK(best3.method == BoundMethod::best_of);
    CHECK(best3.winner == BoundMethod::lifted_1d);
    CHECK(best3.l_ratio <= kTheoremL1dRatio);

    const auto frac = bound_best_of({3, 0.5}, 0.046736);
    CHECK(frac.winner == BoundMethod::fractional_second);
    CHECK(std::abs(frac.k_ratio - 0.826297) <= 1e-5);

    // best-of never loses to any single candidate
    for (int d = 1; d <= 8; ++d) {
        const ProblemSpec spec{d, 1.0};
        const auto best = bound_best_of(spec);
        CHECK(best.l_ratio <= bound_momentum_optimal(spec).l_ratio + 1e-15);
        CHECK(best.l_ratio <= bound_rumin_original(spec).l_ratio + 1e-15);
    }
}

TEST_CASE("duality round trip") {
    for (const ProblemSpec spec : {ProblemSpec{1, 1.0}, ProblemSpec{3, 0.5}, ProblemSpec{7, 1.0}, ProblemSpec{2, 0.3}}) {
        for (double k : {0.1, 0.381777, 0.826297, 0.999}) {
            const double l = dual_convert(spec, k);
            CHECK(std::abs(dual_invert(spec, l) - k) <= 1e-13);
            CHECK(l == doctest::Approx(std::pow(k, -spec.exponent())).epsilon(1e-13));
        }
    }
    // every report is self-consistent under duality
    for (const auto& r : {bound_momentum_optimal({1, 1.0}), bound_from_c({1, 1.0}, 0.373556),
                          bound_from_c({3, 0.5}, 0.046736), bound_rumin_original({4, 1.0})}) {
        CHECK(std::abs(dual_convert(r.spec, r.k_ratio) - r.l_ratio) <= 1e-12 * r.l_ratio);
    }
}

TEST_CASE("semiclassical product identity") {
    for (auto [d1, d] : {std::pair{1, 2}, {1, 3}, {2, 5}, {1, 6}, {3, 10}}) {
        CAPTURE(d1);
        CAPTURE(d);
        CHECK(product_identity_check(d1, d) <= 1e-12);
    }
}

TEST_CASE("large-d limit") {
    const double l1000 = large_d_limit_probe(1000, 1.0);
    CHECK(l1000 == doctest::Approx(2.71365003921319).epsilon(1e-11));
    CHECK(large_d_limit_probe(10000, 1.0) == doctest::Approx(2.71781713532074).epsilon(1e-11));
    CHECK(l1000 <= std::numbers::e);
    CHECK(l1000 <= rumin_original_l_ratio(1000));
    double prev = 0;
    for (int d : {10, 100, 1000, 10000, 100000}) {
        const double v = large_d_limit_probe(d, 1.0);
        CHECK(v > prev);
        CHECK(v <= std::numbers::e);
        prev = v;
    }
}

TEST_CASE("method names round-trip") {
    for (auto m : {BoundMethod::rumin_original, BoundMethod::momentum_optimal, BoundMethod::low_momentum_avg,
                   BoundMethod::fractional_first, BoundMethod::fractional_second, BoundMethod::lifted_1d,
                   BoundMethod::best_of}) {
        CHECK(parse_bound_method(to_string(m)) == m);
    }
    CHECK_THROWS_AS(parse_bound_method("nope"), ConfigError);
}
