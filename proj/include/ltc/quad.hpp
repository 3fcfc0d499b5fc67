#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature on finite and semi-infinite
// intervals. Panels are kept in a max-heap keyed on their error estimate and
// the worst panel is bisected until the global estimate meets the tolerance
// or the subdivision budget runs out.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "ltc/errors.hpp"

namespace ltc {

enum class Transform {
    none,
    // (a, a + 1) is integrated directly; beyond it t = a + 1 + u / (1 - u) on
    // u in (0, 1), evaluated in the reflected variable s = 1 - u so the
    // t -> infinity end sits at s = 0, where doubles are dense.
    semi_infinite_rational,
    // Finite intervals only: t = a + (b - a) w(u) with the quintic smoothstep
    // w(u) = u^3 (10 - 15 u + 6 u^2), w'(u) = 30 u^2 (1 - u)^2. Turns algebraic
    // endpoint singularities x^alpha into roughly u^{3 alpha + 2}.
    endpoint_smoothing,
};

template <std::floating_point Scalar>
struct BasicQuadSpec {
    Scalar abs_tol = Scalar(1e-11);
    Scalar rel_tol = Scalar(1e-10);
    int max_subdivisions = 2000;
    Transform transform = Transform::semi_infinite_rational;

    void validate() const {
        if (!(abs_tol > 0) || !(rel_tol > 0) || max_subdivisions < 1) {
            throw DomainError("QuadSpec: tolerances must be positive and max_subdivisions >= 1");
        }
    }

    /// Same spec with both tolerances divided by `factor`.
    BasicQuadSpec tightened(Scalar factor) const {
        BasicQuadSpec out = *this;
        out.abs_tol /= factor;
        out.rel_tol /= factor;
        return out;
    }
};

template <std::floating_point Scalar>
struct BasicQuadResult {
    Scalar value = 0;
    Scalar error_estimate = 0;
    int subdivisions_used = 0;
    bool converged = true;
};

using QuadSpec = BasicQuadSpec<double>;
using QuadResult = BasicQuadResult<double>;

namespace detail {

template <std::floating_point Scalar>
struct Panel {
    Scalar lo;
    Scalar hi;
    Scalar value;
    Scalar error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <std::floating_point Scalar, typename F>
Scalar checked_eval(F& f, Scalar x) {
    const Scalar y = static_cast<Scalar>(f(x));
    if (!std::isfinite(y)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "integrand returned " << y << " at node " << x;
        throw NonFiniteError(msg.str());
    }
    return y;
}

// One 15-point Kronrod panel with the embedded 7-point Gauss estimate. The
// error scaling follows the QUADPACK qk15 convention.
template <std::floating_point Scalar, typename F>
Panel<Scalar> kronrod15(F& f, Scalar lo, Scalar hi) {
    static constexpr long double xgk[8] = {
        0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
        0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
        0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
        0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
    static constexpr long double wgk[8] = {
        0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
        0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
        0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
        0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
    static constexpr long double wg[4] = {
        0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
        0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

    const Scalar center = (lo + hi) / 2;
    const Scalar half = (hi - lo) / 2;
    const Scalar abs_half = std::abs(half);

    const Scalar f_center = checked_eval(f, center);
    Scalar gauss = f_center * Scalar(wg[3]);
    Scalar kronrod = f_center * Scalar(wgk[7]);
    Scalar abs_sum = std::abs(kronrod);
    Scalar f1[7];
    Scalar f2[7];
    for (int j = 0; j < 7; ++j) {
        const Scalar dx = half * Scalar(xgk[j]);
        f1[j] = checked_eval(f, center - dx);
        f2[j] = checked_eval(f, center + dx);
        const Scalar pair = f1[j] + f2[j];
        kronrod += Scalar(wgk[j]) * pair;
        abs_sum += Scalar(wgk[j]) * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) gauss += Scalar(wg[j / 2]) * pair;
    }
    const Scalar mean = kronrod / 2;
    Scalar asc = Scalar(wgk[7]) * std::abs(f_center - mean);
    for (int j = 0; j < 7; ++j) {
        asc += Scalar(wgk[j]) * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }

    const Scalar result = kronrod * half;
    const Scalar result_abs = abs_sum * abs_half;
    const Scalar result_asc = asc * abs_half;
    Scalar error = std::abs((kronrod - gauss) * half);
    if (result_asc != 0 && error != 0) {
        error = result_asc * std::min(Scalar(1), std::pow(Scalar(200) * error / result_asc, Scalar(1.5)));
    }
    constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
    constexpr Scalar tiny = std::numeric_limits<Scalar>::min();
    if (result_abs > tiny / (Scalar(50) * eps)) {
        error = std::max(Scalar(50) * eps * result_abs, error);
    }
    return {lo, hi, result, error};
}

template <std::floating_point Scalar, typename F>
BasicQuadResult<Scalar> adaptive(F& f, Scalar lo, Scalar hi, const BasicQuadSpec<Scalar>& spec) {
    std::priority_queue<Panel<Scalar>> heap;
    Panel<Scalar> first = kronrod15(f, lo, hi);
    Scalar total = first.value;
    Scalar total_error = first.error;
    heap.push(first);
    int subdivisions = 0;

    auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

    bool exhausted = false;
    while (total_error > target()) {
        if (subdivisions >= spec.max_subdivisions) {
            exhausted = true;
            break;
        }
        Panel<Scalar> worst = heap.top();
        const Scalar mid = (worst.lo + worst.hi) / 2;
        // No room left to bisect at working precision.
        if (!(mid > worst.lo && mid < worst.hi)) {
            exhausted = true;
            break;
        }
        heap.pop();
        Panel<Scalar> left = kronrod15(f, worst.lo, mid);
        Panel<Scalar> right = kronrod15(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum from the panels so running-update drift does not leak out.
    total = 0;
    total_error = 0;
    while (!heap.empty()) {
        total += heap.top().value;
        total_error += heap.top().error;
        heap.pop();
    }
    BasicQuadResult<Scalar> out;
    out.value = total;
    out.error_estimate = total_error;
    out.subdivisions_used = subdivisions;
    out.converged = !exhausted && total_error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    return out;
}

}  // namespace detail

/// Integrate `f` over (a, b). `b` may be +infinity, in which case the spec's
/// transform must be `semi_infinite_rational`. A non-converged result is
/// returned with `converged == false`; a non-finite integrand value throws
/// NonFiniteError.
template <std::floating_point Scalar, typename F>
BasicQuadResult<Scalar> integrate(F&& f, Scalar a, Scalar b, const BasicQuadSpec<Scalar>& spec) {
    spec.validate();
    if (std::isnan(a) || std::isnan(b)) throw DomainError("integrate: NaN endpoint");
    if (a == b) return {};
    if (a > b) {
        auto flipped = integrate(f, b, a, spec);
        flipped.value = -flipped.value;
        return flipped;
    }
    if (std::isinf(a)) throw DomainError("integrate: lower endpoint must be finite");
    if (std::isinf(b)) {
        if (spec.transform != Transform::semi_infinite_rational) {
            throw DomainError("integrate: an infinite upper endpoint requires the semi_infinite_rational transform");
        }
        // (a, a + 1) directly, where the map would crowd nodes against s = 1,
        // then t = c + (1 - s) / s, dt = ds / s^2 on the rest.
        const Scalar c = a + Scalar(1);
        BasicQuadSpec<Scalar> part = spec;
        part.abs_tol = spec.abs_tol / 2;
        auto head = detail::adaptive(f, a, c, part);
        part.max_subdivisions = std::max(1, spec.max_subdivisions - head.subdivisions_used);
        auto mapped = [&f, c](Scalar s) -> Scalar {
            const Scalar t = c + (Scalar(1) - s) / s;
            const Scalar y = static_cast<Scalar>(f(t));
            if (y == Scalar(0)) return Scalar(0);
            return y / (s * s);
        };
        const auto tail = detail::adaptive(mapped, Scalar(0), Scalar(1), part);
        head.value += tail.value;
        head.error_estimate += tail.error_estimate;
        head.subdivisions_used += tail.subdivisions_used;
        head.converged = head.converged && tail.converged &&
                         head.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::abs(head.value));
        return head;
    }
    if (spec.transform == Transform::endpoint_smoothing) {
        const Scalar width = b - a;
        auto mapped = [&f, a, b, width](Scalar u) -> Scalar {
            const Scalar v = Scalar(1) - u;
            const Scalar jacobian = Scalar(30) * u * u * v * v;
            if (jacobian == Scalar(0)) return Scalar(0);
            const Scalar w = u * u * u * (Scalar(10) - Scalar(15) * u + Scalar(6) * u * u);
            // Evaluate near the right end through 1 - w to keep the node off b.
            const Scalar w_right = v * v * v * (Scalar(10) - Scalar(15) * v + Scalar(6) * v * v);
            const Scalar t = (u < Scalar(0.5)) ? a + width * w : b - width * w_right;
            return static_cast<Scalar>(f(t)) * width * jacobian;
        };
        return detail::adaptive(mapped, Scalar(0), Scalar(1), spec);
    }
    return detail::adaptive(f, a, b, spec);
}

template <typename F>
QuadResult integrate(F&& f, double a, double b, const QuadSpec& spec = {}) {
    return integrate<double>(std::forward<F>(f), a, b, spec);
}

}  // namespace ltc
