#include "ltc/constants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ltc/errors.hpp"
#include "ltc/specfun.hpp"

namespace ltc {

namespace {

constexpr double kPi = std::numbers::pi;

double log_two_pi_power(int d) { return d * std::log(2 * kPi); }

// log of (d/(d+4s)) [ (d+2s)^2 sin(2 pi s/(d+2s)) / (2 pi s d) ]^{1 + 2s/d}
double log_k_momentum_optimal(int d, double sigma) {
    const double dd = d;
    const double angle = 2 * kPi * sigma / (dd + 2 * sigma);
    const double log_bracket =
        2 * std::log(dd + 2 * sigma) + std::log(std::sin(angle)) - std::log(2 * kPi * sigma * dd);
    return std::log(dd / (dd + 4 * sigma)) + (1 + 2 * sigma / dd) * log_bracket;
}

BoundReport make_report(const ProblemSpec& spec, BoundMethod method, double log_k) {
    BoundReport report;
    report.spec = spec;
    report.method = method;
    report.k_ratio = std::exp(log_k);
    report.l_ratio = std::exp(-spec.exponent() * log_k);
    return report;
}

}  // namespace

std::string_view to_string(BoundMethod method) {
    switch (method) {
        case BoundMethod::rumin_original: return "rumin_original";
        case BoundMethod::momentum_optimal: return "momentum_optimal";
        case BoundMethod::low_momentum_avg: return "low_momentum_avg";
        case BoundMethod::fractional_first: return "fractional_first";
        case BoundMethod::fractional_second: return "fractional_second";
        case BoundMethod::lifted_1d: return "lifted_1d";
        case BoundMethod::best_of: return "best_of";
    }
    return "unknown";
}

BoundMethod parse_bound_method(std::string_view name) {
    for (auto m : {BoundMethod::rumin_original, BoundMethod::momentum_optimal, BoundMethod::low_momentum_avg,
                   BoundMethod::fractional_first, BoundMethod::fractional_second, BoundMethod::lifted_1d,
                   BoundMethod::best_of}) {
        if (name == to_string(m)) return m;
    }
    throw ConfigError("unknown bound method '" + std::string(name) + "'");
}

double k_cl(const ProblemSpec& spec) {
    spec.validate();
    const double dd = spec.d;
    const double log_value = std::log(dd / (dd + 2 * spec.sigma)) +
                             (2 * spec.sigma / dd) * (log_two_pi_power(spec.d) - log_unit_ball_volume(spec.d));
    return std::exp(log_value);
}

double l_cl(const ProblemSpec& spec) {
    spec.validate();
    const double dd = spec.d;
    const double log_value =
        std::log(2 * spec.sigma / (dd + 2 * spec.sigma)) + log_unit_ball_volume(spec.d) - log_two_pi_power(spec.d);
    return std::exp(log_value);
}

double l_cl_general(double alpha, int d) {
    if (d < 1) throw DomainError("l_cl_general: d must be >= 1");
    if (!(alpha >= 1)) throw DomainError("l_cl_general: alpha must be >= 1");
    const double half_d = d / 2.0;
    return std::exp(log_gamma(alpha + 1) - half_d * std::log(4 * kPi) - log_gamma(alpha + half_d + 1));
}

LemmaMinimum lemma_min(double beta) {
    if (!(beta > 1) || !std::isfinite(beta)) throw DomainError("lemma_min: beta must exceed 1");
    const double angle = kPi / beta;
    const double log_ratio = std::log(angle / std::sin(angle));
    const double log_min = (beta - 1) * std::log(beta - 1) - beta * std::log(beta) + beta * log_ratio;
    const double log_mu = beta * (std::log((beta - 1) / beta) + log_ratio);
    return {std::exp(log_min), std::exp(log_mu)};
}

double dual_convert(const ProblemSpec& spec, double k_ratio) {
    spec.validate();
    if (!(k_ratio > 0)) throw DomainError("dual_convert: k_ratio must be positive");
    return std::exp(-spec.exponent() * std::log(k_ratio));
}

double dual_invert(const ProblemSpec& spec, double l_ratio) {
    spec.validate();
    if (!(l_ratio > 0)) throw DomainError("dual_invert: l_ratio must be positive");
    return std::exp(-std::log(l_ratio) / spec.exponent());
}

BoundReport bound_momentum_optimal(const ProblemSpec& spec) {
    spec.validate();
    const auto method = spec.sigma == 1 ? BoundMethod::momentum_optimal : BoundMethod::fractional_first;
    return make_report(spec, method, log_k_momentum_optimal(spec.d, spec.sigma));
}

BoundReport bound_rumin_original(const ProblemSpec& spec) {
    spec.validate();
    if (spec.sigma != 1) throw DomainError("bound_rumin_original: only defined for sigma = 1");
    const double dd = spec.d;
    return make_report(spec, BoundMethod::rumin_original, std::log(dd / (dd + 4)));
}

BoundReport bound_from_c(const ProblemSpec& spec, double c_upper) {
    spec.validate();
    if (!(c_upper > 0) || !std::isfinite(c_upper)) throw DomainError("bound_from_c: c must be positive");
    const double dd = spec.d;
    const double s = spec.sigma;
    const double log_k = std::log(dd / (dd + 2 * s)) + (4 * s / dd) * std::log(2 * s / (dd + 2 * s)) -
                         (2 * s / dd) * std::log(c_upper);
    const auto method = s == 1 ? BoundMethod::low_momentum_avg : BoundMethod::fractional_second;
    BoundReport report = make_report(spec, method, log_k);
    report.c_value = c_upper;
    return report;
}

BoundReport bound_lifted_1d(const ProblemSpec& spec, double c1_upper) {
    spec.validate();
    if (spec.sigma != 1) throw DomainError("bound_lifted_1d: lifting is only available for sigma = 1");
    const double l_one = bound_from_c({1, 1.0}, c1_upper).l_ratio;
    BoundReport report;
    report.spec = spec;
    report.method = BoundMethod::lifted_1d;
    report.l_ratio = l_one;
    report.k_ratio = dual_invert(spec, l_one);
    report.c_value = c1_upper;
    return report;
}

BoundReport bound_best_of(const ProblemSpec& spec, std::optional<double> c_upper) {
    spec.validate();
    std::vector<BoundReport> candidates;
    candidates.push_back(bound_momentum_optimal(spec));
    if (c_upper) candidates.push_back(bound_from_c(spec, *c_upper));
    if (spec.sigma == 1) {
        candidates.push_back(bound_rumin_original(spec));
        if (spec.d == 1 && !c_upper) candidates.push_back(bound_from_c(spec, kC1Upper));
        if (spec.d > 1) candidates.push_back(bound_lifted_1d(spec));
    }
    const BoundReport* best = &candidates.front();
    for (const auto& c : candidates) {
        if (c.l_ratio < best->l_ratio) best = &c;
    }
    BoundReport report = *best;
    report.winner = best->method;
    report.method = BoundMethod::best_of;
    return report;
}

double product_identity_check(int d1, int d) {
    if (d1 < 1 || d <= d1) throw DomainError("product_identity_check: need 1 <= d1 < d");
    const double lhs = l_cl_general(1, d1) * l_cl_general(1 + d1 / 2.0, d - d1);
    const double rhs = l_cl_general(1, d);
    return std::abs(lhs - rhs) / rhs;
}

double large_d_limit_probe(int d, double sigma) {
    const ProblemSpec spec{d, sigma};
    spec.validate();
    return std::exp(-spec.exponent() * log_k_momentum_optimal(d, sigma));
}

double rumin_original_l_ratio(int d) {
    if (d < 1) throw DomainError("rumin_original_l_ratio: d must be >= 1");
    return std::exp(0.5 * d * std::log1p(4.0 / d));
}

}  // namespace ltc
