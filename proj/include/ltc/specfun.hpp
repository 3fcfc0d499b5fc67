#pragma once

// Real-argument Gamma family used by every closed-form constant.

#include <cmath>
#include <concepts>
#include <numbers>
#include <string>

#include "ltc/errors.hpp"

namespace ltc {

namespace detail {

// Stirling series for ln Gamma(x), valid for x >= 10. The first omitted term
// is 1/(156 x^13) < 1e-15 at x = 10.
template <std::floating_point Scalar>
Scalar stirling_log_gamma(Scalar x) {
    const Scalar half_log_two_pi = Scalar(0.91893853320467274178032973640561764L);
    const Scalar inv = Scalar(1) / x;
    const Scalar inv2 = inv * inv;
    // Bernoulli coefficients B_{2k} / (2k (2k-1)), k = 1..6.
    const Scalar series =
        inv * (Scalar(1.0L / 12) +
               inv2 * (Scalar(-1.0L / 360) +
                       inv2 * (Scalar(1.0L / 1260) +
                               inv2 * (Scalar(-1.0L / 1680) +
                                       inv2 * (Scalar(1.0L / 1188) +
                                               inv2 * Scalar(-691.0L / 360360))))));
    return (x - Scalar(0.5)) * std::log(x) - x + half_log_two_pi + series;
}

}  // namespace detail

/// ln Gamma(x) for x > 0.
///
/// Arguments below 10 are shifted upward with the recurrence
/// Gamma(x + n) = x (x + 1) ... (x + n - 1) Gamma(x) and evaluated with the
/// Stirling series; the product stays well inside double range.
template <std::floating_point Scalar>
Scalar log_gamma(Scalar x) {
    if (!(x > Scalar(0)) || !std::isfinite(x)) {
        throw DomainError("log_gamma: argument must be positive and finite, got " +
                          std::to_string(static_cast<double>(x)));
    }
    if (x >= Scalar(10)) return detail::stirling_log_gamma(x);
    Scalar shifted = x;
    Scalar product = Scalar(1);
    while (shifted < Scalar(10)) {
        product *= shifted;
        shifted += Scalar(1);
    }
    return detail::stirling_log_gamma(shifted) - std::log(product);
}

template <std::floating_point Scalar>
Scalar gamma(Scalar x) {
    return std::exp(log_gamma(x));
}

template <std::floating_point Scalar>
Scalar log_beta(Scalar a, Scalar b) {
    if (!(a > Scalar(0)) || !(b > Scalar(0))) {
        throw DomainError("beta: arguments must be positive");
    }
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), through log-Gamma differences.
template <std::floating_point Scalar>
Scalar beta(Scalar a, Scalar b) {
    return std::exp(log_beta(a, b));
}

/// ln |B_1| for the unit ball in R^d.
template <std::floating_point Scalar = double>
Scalar log_unit_ball_volume(int d) {
    if (d < 1) throw DomainError("unit_ball_volume: dimension must be >= 1");
    const Scalar half_d = Scalar(d) / Scalar(2);
    return half_d * std::log(std::numbers::pi_v<Scalar>) - log_gamma(half_d + Scalar(1));
}

/// |B_1| = pi^{d/2} / Gamma(d/2 + 1).
///
/// Small dimensions use the two-step recursion |B_1|_d = |B_1|_{d-2} 2 pi / d
/// from the exact seeds 2 and pi; large ones go through log space.
template <std::floating_point Scalar = double>
Scalar unit_ball_volume(int d) {
    if (d < 1) throw DomainError("unit_ball_volume: dimension must be >= 1");
    if (d > 64) return std::exp(log_unit_ball_volume<Scalar>(d));
    const Scalar pi = std::numbers::pi_v<Scalar>;
    Scalar volume = (d % 2 == 1) ? Scalar(2) : pi;
    for (int k = (d % 2 == 1) ? 3 : 4; k <= d; k += 2) volume *= Scalar(2) * pi / Scalar(k);
    return volume;
}

}  // namespace ltc
