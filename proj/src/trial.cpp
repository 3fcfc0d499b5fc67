#include "ltc/trial.hpp"

#include <cmath>
#include <string>

#include "ltc/errors.hpp"
#include "ltc/specfun.hpp"

namespace ltc {

std::string_view to_string(FKind kind) {
    switch (kind) {
        case FKind::rational_power: return "rational_power";
        case FKind::indicator: return "indicator";
        case FKind::lemma_optimal: return "lemma_optimal";
    }
    return "unknown";
}

std::string_view to_string(PhiKind kind) {
    switch (kind) {
        case PhiKind::bump_simple: return "bump_simple";
        case PhiKind::bump_rich: return "bump_rich";
        case PhiKind::uniform: return "uniform";
        case PhiKind::power_bump: return "power_bump";
    }
    return "unknown";
}

FKind parse_f_kind(std::string_view name) {
    if (name == "rational_power") return FKind::rational_power;
    if (name == "indicator") return FKind::indicator;
    if (name == "lemma_optimal") return FKind::lemma_optimal;
    throw ConfigError("unknown f family kind '" + std::string(name) + "'");
}

PhiKind parse_phi_kind(std::string_view name) {
    if (name == "bump_simple") return PhiKind::bump_simple;
    if (name == "bump_rich") return PhiKind::bump_rich;
    if (name == "uniform") return PhiKind::uniform;
    if (name == "power_bump") return PhiKind::power_bump;
    throw ConfigError("unknown phi family kind '" + std::string(name) + "'");
}

double FFamily::knee() const {
    if (kind == FKind::indicator) return 1.0;
    return std::pow(mu, -1 / a);
}

double rational_power_scale(double a, double p) {
    if (!(a > 0) || !(p > 0) || !(2 * p * a > 1)) {
        throw ConstraintViolation("rational_power family needs a, p > 0 and 2 p a > 1 (got a=" +
                                  std::to_string(a) + ", p=" + std::to_string(p) + ")");
    }
    return std::exp(a * (log_beta(1 / a, 2 * p - 1 / a) - std::log(a)));
}

FFamily normalize_f(FKind kind, double a, double p) {
    FFamily fam;
    fam.kind = kind;
    switch (kind) {
        case FKind::indicator:
            return fam;
        case FKind::rational_power:
            fam.a = a;
            fam.p = p;
            fam.mu = rational_power_scale(a, p);
            return fam;
        case FKind::lemma_optimal:
            if (!(a > 1)) throw ConstraintViolation("lemma_optimal family needs beta > 1");
            fam.a = a;
            fam.beta = a;
            fam.p = 1;
            fam.mu = rational_power_scale(a, 1);
            return fam;
    }
    throw ConstraintViolation("unknown f family");
}

FFamily lemma_optimal_f(double beta) { return normalize_f(FKind::lemma_optimal, beta); }

double rational_power_scale_numeric(double a, double p, const QuadSpec& quad) {
    if (!(a > 0) || !(p > 0) || !(2 * p * a > 1)) {
        throw ConstraintViolation("rational_power family needs a, p > 0 and 2 p a > 1");
    }
    // int_0^inf (1 + mu t^a)^{-2p} dt is decreasing in mu.
    auto mass = [&](double log_mu) {
        const double mu = std::exp(log_mu);
        auto integrand = [&](double t) { return std::exp(-2 * p * std::log1p(mu * std::pow(t, a))); };
        const double split = std::pow(mu, -1 / a);
        return integrate(integrand, 0.0, split, quad).value +
               integrate(integrand, split, std::numeric_limits<double>::infinity(), quad).value;
    };
    double lo = -40;
    double hi = 40;
    while (mass(lo) < 1) lo *= 2;
    while (mass(hi) > 1) hi *= 2;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mass(mid) > 1 ? lo : hi) = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

PhiFamily normalize_phi(PhiKind kind, double q, double r, const QuadSpec& quad) {
    PhiFamily phi;
    phi.kind = kind;
    switch (kind) {
        case PhiKind::uniform:
            phi.c = 1;
            return phi;
        case PhiKind::bump_simple:
            // int_0^1 (1 - t^{1/4}) dt = 1/5
            phi.q = 0.25;
            phi.r = 1;
            phi.c = 5;
            return phi;
        case PhiKind::power_bump: {
            if (!(q > 0) || !(r > 0)) throw ConstraintViolation("power_bump needs q, r > 0");
            phi.q = q;
            phi.r = r;
            // int_0^1 (1 - t^q)^r dt = B(1/q, r + 1) / q
            const double mass = beta(1 / q, r + 1) / q;
            if (!std::isfinite(mass) || !(mass > 0)) throw ConstraintViolation("power_bump has no finite mass");
            phi.c = 1 / mass;
            return phi;
        }
        case PhiKind::bump_rich: {
            if (!(q > 0) || !(r > 0)) throw ConstraintViolation("bump_rich needs q, r > 0");
            phi.q = q;
            phi.r = r;
            phi.c = 1;
            const auto mass =
                integrate([&](double t) { return eval_phi(phi, t); }, 0.0, 1.0, quad.tightened(100));
            if (!std::isfinite(mass.value) || !(mass.value > 0)) {
                throw ConstraintViolation("bump_rich has no finite positive mass");
            }
            phi.c = 1 / mass.value;
            return phi;
        }
    }
    throw ConstraintViolation("unknown phi family");
}

double eval_f(const FFamily& fam, double t) {
    switch (fam.kind) {
        case FKind::indicator:
            return t <= 1 ? 1.0 : 0.0;
        case FKind::rational_power:
        case FKind::lemma_optimal:
            if (t <= 0) return 1.0;
            return std::exp(-fam.p * std::log1p(fam.mu * std::pow(t, fam.a)));
    }
    return 0;
}

double eval_f_deficit(const FFamily& fam, double t) {
    switch (fam.kind) {
        case FKind::indicator:
            return t <= 1 ? 0.0 : 1.0;
        case FKind::rational_power:
        case FKind::lemma_optimal:
            if (t <= 0) return 0.0;
            return -std::expm1(-fam.p * std::log1p(fam.mu * std::pow(t, fam.a)));
    }
    return 1;
}

double eval_phi(const PhiFamily& phi, double t) {
    if (!(t > 0) || t > 1) return 0;
    switch (phi.kind) {
        case PhiKind::uniform:
            return phi.c;
        case PhiKind::bump_simple:
        case PhiKind::power_bump: {
            const double gap = -std::expm1(phi.q * std::log(t));
            return phi.c * std::pow(gap, phi.r);
        }
        case PhiKind::bump_rich: {
            const double gap = -std::expm1(phi.q * std::log(t));
            return phi.c * std::pow(gap, phi.r) / (1 + t);
        }
    }
    return 0;
}

}  // namespace ltc
