#include "ltc/functionals.hpp"

namespace ltc {

namespace {

auto deficit_of(const FFamily& fam) {
    return [&fam](double t) { return eval_f_deficit(fam, t); };
}

auto density_of(const PhiFamily& phi) {
    return [&phi](double s) { return eval_phi(phi, s); };
}

}  // namespace

double a_functional(const FFamily& fam, const ProblemSpec& spec, const QuadSpec& quad) {
    return deficit_functional(deficit_of(fam), spec, quad);
}

double lemma_objective(const FFamily& fam, double beta, const QuadSpec& quad) {
    if (!(beta > 1)) throw DomainError("lemma_objective: beta must exceed 1");
    return weighted_deficit_integral(deficit_of(fam), beta, quad);
}

double g_profile(const FFamily& f, const PhiFamily& phi, double t, const QuadSpec& quad) {
    if (!(t > 0)) throw DomainError("g_profile: t must be positive");
    auto integrand = [&](double s) { return eval_phi(phi, s) * eval_f(f, s * t); };
    const double upper = std::min(1.0, f.support_end() / t);
    const QuadResult result = integrate(integrand, 0.0, upper, quad);
    if (!result.converged) throw DivergentError("g_profile: quadrature did not converge");
    return result.value;
}

double g_deficit(const FFamily& f, const PhiFamily& phi, double t, const QuadSpec& quad) {
    if (!(t > 0)) throw DomainError("g_deficit: t must be positive");
    return averaged_deficit(deficit_of(f), density_of(phi), 1.0, f.knee(), t, quad);
}

double phi_l2(const PhiFamily& phi, const QuadSpec& quad) {
    const QuadResult result = integrate(
        [&](double s) {
            const double v = eval_phi(phi, s);
            return v * v;
        },
        0.0, 1.0, quad);
    if (!result.converged) throw DivergentError("phi_l2: quadrature did not converge");
    return result.value;
}

double c_objective(const FFamily& f, const PhiFamily& phi, const ProblemSpec& spec, const QuadSpec& quad) {
    return c_objective_of(deficit_of(f), density_of(phi), 1.0, f.knee(), spec, quad);
}

}  // namespace ltc
