#include "ltc/optimize.hpp"

#include <array>
#include <cmath>
#include <map>

#include "ltc/errors.hpp"

namespace ltc {

namespace {

std::array<double, 4> as_array(const TrialParams& p) { return {p.a, p.p, p.q, p.r}; }

TrialParams from_array(const std::array<double, 4>& v) { return {v[0], v[1], v[2], v[3]}; }

TrialParams clip(const TrialParams& params, const ParamBox& box) {
    auto v = as_array(params);
    const auto lo = as_array(box.lower);
    const auto hi = as_array(box.upper);
    for (int i = 0; i < 4; ++i) v[i] = std::clamp(v[i], lo[i], hi[i]);
    return from_array(v);
}

bool f_uses(FKind kind, int index) {
    if (kind == FKind::rational_power) return index == 0 || index == 1;
    if (kind == FKind::lemma_optimal) return index == 0;
    return false;
}

bool phi_uses(PhiKind kind, int index) {
    return (kind == PhiKind::bump_rich || kind == PhiKind::power_bump) && (index == 2 || index == 3);
}

// Runs Nelder-Mead over the active coordinates of `seed`, clipping every
// trial point into the box and restarting once from the best vertex when the
// first pass does not converge.
template <typename Objective>
OptResult run_simplex(Objective&& objective, const TrialParams& seed, const std::vector<int>& active,
                      const OptConfig& cfg, const ParamBox& box) {
    const auto base = as_array(clip(seed, box));
    auto expand = [&](const Eigen::VectorXd& x) {
        auto v = base;
        for (std::size_t i = 0; i < active.size(); ++i) v[active[i]] = x[static_cast<Eigen::Index>(i)];
        return clip(from_array(v), box);
    };
    const auto n = static_cast<Eigen::Index>(active.size());
    Eigen::VectorXd x0(n);
    Eigen::VectorXd step(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        x0[i] = base[active[i]];
        step[i] = cfg.initial_simplex_scale * (x0[i] != 0 ? std::abs(x0[i]) : 1.0);
    }

    // Keyed on the clipped point, so the screening pass below and the first
    // simplex share evaluations.
    std::map<std::array<double, 4>, double> cache;
    auto wrapped = [&](const Eigen::VectorXd& x) {
        const TrialParams point = expand(x);
        const auto key = as_array(point);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        const double v = objective(point);
        cache.emplace(key, v);
        return v;
    };

    {
        int bad = 0;
        for (Eigen::Index i = 0; i <= n; ++i) {
            Eigen::VectorXd x = x0;
            if (i > 0) x[i - 1] += step[i - 1];
            if (wrapped(x) >= kPenalty) ++bad;
        }
        if (2 * bad > n + 1) {
            throw ObjectiveFailure("more than half of the initial simplex is inadmissible or divergent");
        }
    }

    NelderMeadOptions opt;
    opt.max_iters = cfg.max_iters;
    opt.x_tol = cfg.x_tol;
    opt.f_tol = cfg.f_tol;

    NelderMeadResult first = nelder_mead(wrapped, x0, step, opt);
    NelderMeadResult best = first;
    int iterations = first.iterations;
    int evaluations = first.evaluations;
    auto trace = first.trace;
    if (!first.converged) {
        NelderMeadResult second = nelder_mead(wrapped, first.x, step, opt, iterations);
        iterations += second.iterations;
        evaluations += second.evaluations;
        for (const auto& [it, v] : second.trace) trace.emplace_back(it, std::min(v, best.value));
        if (second.value <= best.value) {
            best = second;
        }
        best.converged = second.converged;
    }

    OptResult out;
    out.best_params = expand(best.x);
    out.best_value = best.value;
    out.iterations = iterations;
    out.evaluations = evaluations;
    out.converged = best.converged;
    out.trace = std::move(trace);
    return out;
}

}  // namespace

void OptConfig::validate() const {
    spec.validate();
    quad.validate();
    if (max_iters < 1) throw ConfigError("OptConfig: max_iters must be >= 1");
    if (!(x_tol > 0) || !(f_tol > 0)) throw ConfigError("OptConfig: tolerances must be positive");
    if (!(initial_simplex_scale > 0)) throw ConfigError("OptConfig: initial_simplex_scale must be positive");
}

std::vector<int> active_parameters(FKind f_kind, PhiKind phi_kind) {
    std::vector<int> active;
    for (int i = 0; i < 4; ++i) {
        if (f_uses(f_kind, i) || phi_uses(phi_kind, i)) active.push_back(i);
    }
    return active;
}

double c_objective_at(const OptConfig& cfg, const TrialParams& params) {
    if (cfg.f_kind == FKind::rational_power && !(2 * params.p * params.a > 1)) return kPenalty;
    try {
        const FFamily f = normalize_f(cfg.f_kind, params.a, params.p);
        const PhiFamily phi = normalize_phi(cfg.phi_kind, params.q, params.r, cfg.quad);
        const double value = c_objective(f, phi, cfg.spec, cfg.quad);
        if (!std::isfinite(value) || value >= kPenalty) return kPenalty;
        return value;
    } catch (const Error&) {
        return kPenalty;
    }
}

OptResult minimize_c(const OptConfig& cfg) {
    cfg.validate();
    const auto active = active_parameters(cfg.f_kind, cfg.phi_kind);
    return run_simplex([&](const TrialParams& p) { return c_objective_at(cfg, p); }, cfg.seed, active, cfg,
                       ParamBox{});
}

OptResult minimize_lemma(double beta, const OptConfig& cfg) {
    cfg.validate();
    if (!(beta > 1)) throw DomainError("minimize_lemma: beta must exceed 1");
    auto objective = [&](const TrialParams& p) {
        if (!(2 * p.p * p.a > 1)) return kPenalty;
        try {
            const double value = lemma_objective(normalize_f(FKind::rational_power, p.a, p.p), beta, cfg.quad);
            return std::isfinite(value) ? std::min(value, kPenalty) : kPenalty;
        } catch (const Error&) {
            return kPenalty;
        }
    };
    return run_simplex(objective, cfg.seed, {0, 1}, cfg, ParamBox{});
}

OptConfig default_seed_config(const ProblemSpec& spec) {
    OptConfig cfg;
    cfg.spec = spec;
    cfg.f_kind = FKind::rational_power;
    if (spec.d == 1) {
        cfg.phi_kind = PhiKind::bump_rich;
        cfg.seed = {4.5, 0.25, 0.36, 2.1};
    } else {
        cfg.phi_kind = PhiKind::power_bump;
        cfg.seed = {10.0, 0.25, 2.0, 4.0};
    }
    return cfg;
}

}  // namespace ltc
