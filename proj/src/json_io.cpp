#include "ltc/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <initializer_list>
#include <string_view>

#include "ltc/errors.hpp"

namespace ltc {

namespace {

void reject_unknown(const Json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) throw ConfigError(std::string(where) + ": expected a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (auto key : allowed) known = known || item.key() == key;
        if (!known) throw ConfigError(std::string(where) + ": unknown field '" + item.key() + "'");
    }
}

double number_at(const Json& j, const char* key, std::string_view where) {
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(std::string(where) + ": field '" + key + "' must be a number");
    return v.get<double>();
}

double number_or(const Json& j, const char* key, double fallback, std::string_view where) {
    return j.contains(key) ? number_at(j, key, where) : fallback;
}

int int_or(const Json& j, const char* key, int fallback, std::string_view where) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string(where) + ": field '" + key + "' must be an integer");
    return v.get<int>();
}

std::string string_at(const Json& j, const char* key, std::string_view where) {
    const auto& v = j.at(key);
    if (!v.is_string()) throw ConfigError(std::string(where) + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

void check_stored(const Json& j, const char* key, double expected, std::string_view where) {
    if (!j.contains(key)) return;
    const double stored = number_at(j, key, where);
    if (std::abs(stored - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
        throw ConfigError(std::string(where) + ": stored '" + key + "' does not match the normalization");
    }
}

template <typename Fn>
auto guarded(std::string_view where, Fn&& fn) {
    try {
        return fn();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string(where) + ": " + e.what());
    }
}

}  // namespace

double round15(double value) {
    if (!std::isfinite(value) || value == 0) return value;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", value);
    return std::strtod(buf, nullptr);
}

Json to_json(const FFamily& fam) {
    Json j;
    j["kind"] = std::string(to_string(fam.kind));
    if (fam.kind != FKind::indicator) {
        j["a"] = round15(fam.a);
        j["p"] = round15(fam.p);
        j["mu"] = round15(fam.mu);
    }
    return j;
}

Json to_json(const PhiFamily& phi) {
    Json j;
    j["kind"] = std::string(to_string(phi.kind));
    if (phi.kind == PhiKind::bump_rich || phi.kind == PhiKind::power_bump) {
        j["q"] = round15(phi.q);
        j["r"] = round15(phi.r);
    }
    j["c"] = round15(phi.c);
    return j;
}

FFamily f_family_from_json(const Json& j) {
    constexpr std::string_view where = "f family";
    reject_unknown(j, where, {"kind", "a", "p", "mu", "q", "r", "c"});
    return guarded(where, [&] {
        const FKind kind = parse_f_kind(string_at(j, "kind", where));
        FFamily fam;
        switch (kind) {
            case FKind::indicator:
                fam = normalize_f(kind);
                break;
            case FKind::rational_power:
                fam = normalize_f(kind, number_at(j, "a", where), number_at(j, "p", where));
                break;
            case FKind::lemma_optimal:
                fam = normalize_f(kind, number_at(j, "a", where));
                break;
        }
        check_stored(j, "mu", fam.mu, where);
        return fam;
    });
}

PhiFamily phi_family_from_json(const Json& j) {
    constexpr std::string_view where = "phi family";
    reject_unknown(j, where, {"kind", "a", "p", "mu", "q", "r", "c"});
    return guarded(where, [&] {
        const PhiKind kind = parse_phi_kind(string_at(j, "kind", where));
        PhiFamily phi;
        if (kind == PhiKind::bump_rich || kind == PhiKind::power_bump) {
            phi = normalize_phi(kind, number_at(j, "q", where), number_at(j, "r", where));
        } else {
            phi = normalize_phi(kind);
        }
        check_stored(j, "c", phi.c, where);
        return phi;
    });
}

Json to_json(const BoundReport& report) {
    Json j;
    j["d"] = report.spec.d;
    j["sigma"] = round15(report.spec.sigma);
    j["method"] = std::string(to_string(report.method));
    j["k_ratio"] = round15(report.k_ratio);
    j["l_ratio"] = round15(report.l_ratio);
    j["c_value"] = report.c_value ? Json(round15(*report.c_value)) : Json(nullptr);
    if (report.trial) {
        j["trial"] = Json{{"f", to_json(report.trial->first)}, {"phi", to_json(report.trial->second)}};
    } else {
        j["trial"] = nullptr;
    }
    if (report.winner) {
        j["winner"] = std::string(to_string(*report.winner));
        if (*report.winner == BoundMethod::lifted_1d) {
            j["note"] = "transferred from d = 1 through the operator-valued lifting argument; not recomputed";
        }
    }
    return j;
}

BoundReport bound_report_from_json(const Json& j) {
    constexpr std::string_view where = "bound report";
    reject_unknown(j, where, {"d", "sigma", "method", "k_ratio", "l_ratio", "c_value", "trial", "winner", "note"});
    return guarded(where, [&] {
        BoundReport report;
        report.spec.d = int_or(j, "d", 0, where);
        report.spec.sigma = number_at(j, "sigma", where);
        report.spec.validate();
        report.method = parse_bound_method(string_at(j, "method", where));
        report.k_ratio = number_at(j, "k_ratio", where);
        report.l_ratio = number_at(j, "l_ratio", where);
        if (j.contains("c_value") && !j.at("c_value").is_null()) report.c_value = number_at(j, "c_value", where);
        if (j.contains("trial") && !j.at("trial").is_null()) {
            const auto& t = j.at("trial");
            reject_unknown(t, "trial", {"f", "phi"});
            report.trial = std::make_pair(f_family_from_json(t.at("f")), phi_family_from_json(t.at("phi")));
        }
        if (j.contains("winner")) report.winner = parse_bound_method(string_at(j, "winner", where));
        return report;
    });
}

Json to_json(const TrialParams& params) {
    return Json{{"a", round15(params.a)}, {"p", round15(params.p)}, {"q", round15(params.q)}, {"r", round15(params.r)}};
}

TrialParams trial_params_from_json(const Json& j) {
    constexpr std::string_view where = "seed";
    reject_unknown(j, where, {"a", "p", "q", "r"});
    TrialParams params;
    params.a = number_or(j, "a", params.a, where);
    params.p = number_or(j, "p", params.p, where);
    params.q = number_or(j, "q", params.q, where);
    params.r = number_or(j, "r", params.r, where);
    return params;
}

Json to_json(const OptResult& result) {
    Json trace = Json::array();
    for (const auto& [it, v] : result.trace) trace.push_back(Json::array({it, round15(v)}));
    Json j;
    j["best_params"] = to_json(result.best_params);
    j["best_value"] = round15(result.best_value);
    j["iterations"] = result.iterations;
    j["evaluations"] = result.evaluations;
    j["converged"] = result.converged;
    j["trace"] = std::move(trace);
    return j;
}

Json to_json(const OptConfig& cfg) {
    Json j;
    j["d"] = cfg.spec.d;
    j["sigma"] = round15(cfg.spec.sigma);
    j["f_kind"] = std::string(to_string(cfg.f_kind));
    j["phi_kind"] = std::string(to_string(cfg.phi_kind));
    j["seed"] = to_json(cfg.seed);
    j["max_iters"] = cfg.max_iters;
    j["x_tol"] = cfg.x_tol;
    j["f_tol"] = cfg.f_tol;
    j["initial_simplex_scale"] = cfg.initial_simplex_scale;
    j["quad"] = Json{{"abs_tol", cfg.quad.abs_tol}, {"rel_tol", cfg.quad.rel_tol},
                     {"max_subdivisions", cfg.quad.max_subdivisions}};
    return j;
}

OptConfig opt_config_from_json(const Json& j) {
    constexpr std::string_view where = "optimize config";
    reject_unknown(j, where, {"d", "sigma", "f_kind", "phi_kind", "seed", "max_iters", "x_tol", "f_tol",
                              "initial_simplex_scale", "quad"});
    return guarded(where, [&] {
        ProblemSpec spec{int_or(j, "d", 1, where), number_or(j, "sigma", 1.0, where)};
        spec.validate();
        OptConfig cfg = default_seed_config(spec);
        if (j.contains("f_kind")) cfg.f_kind = parse_f_kind(string_at(j, "f_kind", where));
        if (j.contains("phi_kind")) cfg.phi_kind = parse_phi_kind(string_at(j, "phi_kind", where));
        if (j.contains("seed")) cfg.seed = trial_params_from_json(j.at("seed"));
        cfg.max_iters = int_or(j, "max_iters", cfg.max_iters, where);
        cfg.x_tol = number_or(j, "x_tol", cfg.x_tol, where);
        cfg.f_tol = number_or(j, "f_tol", cfg.f_tol, where);
        cfg.initial_simplex_scale = number_or(j, "initial_simplex_scale", cfg.initial_simplex_scale, where);
        if (j.contains("quad")) {
            const auto& q = j.at("quad");
            reject_unknown(q, "quad", {"abs_tol", "rel_tol", "max_subdivisions"});
            cfg.quad.abs_tol = number_or(q, "abs_tol", cfg.quad.abs_tol, "quad");
            cfg.quad.rel_tol = number_or(q, "rel_tol", cfg.quad.rel_tol, "quad");
            cfg.quad.max_subdivisions = int_or(q, "max_subdivisions", cfg.quad.max_subdivisions, "quad");
        }
        cfg.validate();
        return cfg;
    });
}

Json to_json(const PotentialSpec& pot) {
    Json j;
    j["kind"] = std::string(to_string(pot.kind));
    if (pot.kind == PotentialKind::poschl_teller) {
        j["nu"] = round15(pot.nu);
    } else {
        j["depth"] = round15(pot.depth);
    }
    j["width"] = round15(pot.width);
    return j;
}

PotentialSpec potential_from_json(const Json& j) {
    constexpr std::string_view where = "potential";
    reject_unknown(j, where, {"kind", "nu", "depth", "width"});
    return guarded(where, [&] {
        PotentialSpec pot;
        pot.kind = parse_potential_kind(string_at(j, "kind", where));
        pot.nu = number_or(j, "nu", pot.nu, where);
        pot.depth = number_or(j, "depth", pot.depth, where);
        pot.width = number_or(j, "width", pot.width, where);
        pot.validate();
        return pot;
    });
}

Json to_json(const GridSpec& grid) {
    return Json{{"half_width", round15(grid.half_width)}, {"n_points", grid.n_points}};
}

GridSpec grid_from_json(const Json& j) {
    constexpr std::string_view where = "grid";
    reject_unknown(j, where, {"half_width", "n_points"});
    GridSpec grid;
    grid.half_width = number_or(j, "half_width", grid.half_width, where);
    grid.n_points = int_or(j, "n_points", grid.n_points, where);
    grid.validate();
    return grid;
}

Json to_json(const SpectrumResult& result) {
    Json eigen = Json::array();
    for (double e : result.negative_eigenvalues) eigen.push_back(round15(e));
    Json j;
    j["negative_eigenvalues"] = std::move(eigen);
    j["sum_negative"] = round15(result.sum_negative);
    j["potential_integral"] = round15(result.potential_integral);
    if (result.grid_too_coarse) j["grid_too_coarse"] = *result.grid_too_coarse;
    if (result.refinement_change) j["refinement_change"] = round15(*result.refinement_change);
    return j;
}

Json to_json(const InequalityCheck& check) {
    return Json{{"lhs", round15(check.lhs)},
                {"rhs", round15(check.rhs)},
                {"holds", check.holds},
                {"margin", round15(check.margin)}};
}

}  // namespace ltc
