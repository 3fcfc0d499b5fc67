#pragma once

// Variational functionals over trial profiles:
//
//   A_f    = (d / 2 sigma) int_0^inf (1 - f(t))^2 t^{-1 - d/(2 sigma)} dt
//   g(t)   = int_0^inf phi(s) f(s t) ds
//   C(f, phi) = (int phi^2)^{d/(2 sigma)} A_g
//
// The generic templates take callables so that profiles outside the built-in
// families (or rescaled weights) can be evaluated with the same machinery.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ltc/errors.hpp"
#include "ltc/quad.hpp"
#include "ltc/trial.hpp"

namespace ltc {

struct ProblemSpec {
    int d = 1;
    double sigma = 1;

    /// d / (2 sigma), the tail exponent of every functional.
    double exponent() const { return d / (2 * sigma); }

    void validate() const {
        if (d < 1) throw DomainError("ProblemSpec: d must be >= 1");
        if (!(sigma > 0) || !std::isfinite(sigma)) throw DomainError("ProblemSpec: sigma must be positive");
    }
};

/// Inner-integral tolerance factor relative to the outer integral.
inline constexpr double kNestedTighten = 100.0;

/// int_0^inf deficit(t)^2 t^{-power} dt for power > 1, split at t = 1. The
/// finite panel carries the small-t behaviour. On the tail the deficit tends
/// to 1, so (1 - h)^2 = 1 - h (2 - h) with h = 1 - deficit is used: the
/// constant part integrates to 1 / (power - 1) and only the decaying remainder
/// goes through the rational transform. Failure to converge on either side is
/// reported as DivergentError.
template <typename Deficit>
double weighted_deficit_integral(Deficit&& deficit, double power, const QuadSpec& quad) {
    if (!(power > 1)) throw DomainError("weighted_deficit_integral: power must exceed 1");
    auto head_integrand = [&](double t) {
        const double gap = deficit(t);
        if (gap == 0) return 0.0;
        return gap * gap * std::pow(t, -power);
    };
    auto tail_remainder = [&](double t) {
        const double gap = deficit(t);
        const double profile = 1 - gap;
        if (profile == 0) return 0.0;
        return profile * (1 + gap) * std::pow(t, -power);
    };
    QuadResult head;
    QuadResult tail;
    try {
        head = integrate(head_integrand, 0.0, 1.0, quad);
        tail = integrate(tail_remainder, 1.0, std::numeric_limits<double>::infinity(), quad);
    } catch (const NonFiniteError& e) {
        throw DivergentError(std::string("deficit integral: ") + e.what());
    }
    if (!head.converged) {
        throw DivergentError("deficit integral: small-t panel did not converge (profile inadmissible for this exponent)");
    }
    if (!tail.converged) throw DivergentError("deficit integral: tail panel did not converge");
    return head.value + (1 / (power - 1) - tail.value);
}

/// (d / 2 sigma) int (1 - f)^2 t^{-1-d/(2 sigma)} for a deficit callable t -> 1 - f(t).
template <typename Deficit>
double deficit_functional(Deficit&& deficit, const ProblemSpec& spec, const QuadSpec& quad) {
    spec.validate();
    const double e = spec.exponent();
    return e * weighted_deficit_integral(std::forward<Deficit>(deficit), 1 + e, quad);
}

/// 1 - g(t) = int_0^support phi(s) (1 - f(s t)) ds for a phi with unit mass.
/// `f_knee` is where f makes its transition (the jump of an indicator, the
/// point mu t^a = 1 of a rational power); the inner integral is split at
/// s = f_knee / t so that feature sits on a panel edge.
template <typename FDeficit, typename Phi>
double averaged_deficit(FDeficit&& f_deficit, Phi&& phi, double phi_support, double f_knee, double t,
                        QuadSpec quad) {
    quad.transform = Transform::endpoint_smoothing;
    auto integrand = [&](double s) { return phi(s) * f_deficit(s * t); };
    const double jump = f_knee / t;
    QuadResult result;
    if (jump > 0 && jump < phi_support) {
        result = integrate(integrand, 0.0, jump, quad);
        const QuadResult rest = integrate(integrand, jump, phi_support, quad);
        result.value += rest.value;
        result.error_estimate += rest.error_estimate;
        result.converged = result.converged && rest.converged;
    } else {
        result = integrate(integrand, 0.0, phi_support, quad);
    }
    if (!result.converged) throw DivergentError("averaged profile: inner integral did not converge");
    return result.value;
}

/// Generic C objective for any (f, phi) pair given as callables. `phi` must
/// have unit mass on (0, phi_support].
template <typename FDeficit, typename Phi>
double c_objective_of(FDeficit&& f_deficit, Phi&& phi, double phi_support, double f_knee,
                      const ProblemSpec& spec, const QuadSpec& quad) {
    spec.validate();
    const QuadSpec inner = quad.tightened(kNestedTighten);
    const QuadResult l2 = integrate([&](double s) { const double v = phi(s); return v * v; }, 0.0,
                                    phi_support, inner);
    if (!l2.converged) throw DivergentError("phi_l2: quadrature did not converge");
    auto g_deficit = [&](double t) {
        return averaged_deficit(f_deficit, phi, phi_support, f_knee, t, inner);
    };
    const double a_g = deficit_functional(g_deficit, spec, quad);
    return std::pow(l2.value, spec.exponent()) * a_g;
}

double a_functional(const FFamily& fam, const ProblemSpec& spec, const QuadSpec& quad = {});

/// int_0^inf (1 - f(t))^2 t^{-beta} dt, the objective minimized in closed form
/// by the lemma_optimal family.
double lemma_objective(const FFamily& fam, double beta, const QuadSpec& quad = {});

double g_profile(const FFamily& f, const PhiFamily& phi, double t, const QuadSpec& quad = {});

/// 1 - g(t), computed as the phi-average of 1 - f so small-t values keep
/// their relative accuracy.
double g_deficit(const FFamily& f, const PhiFamily& phi, double t, const QuadSpec& quad = {});

double phi_l2(const PhiFamily& phi, const QuadSpec& quad = {});

/// Upper bound on C_{d,sigma} from one normalized (f, phi) pair.
double c_objective(const FFamily& f, const PhiFamily& phi, const ProblemSpec& spec, const QuadSpec& quad = {});

}  // namespace ltc
