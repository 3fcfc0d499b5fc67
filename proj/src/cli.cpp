#include "ltc/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "ltc/constants.hpp"
#include "ltc/errors.hpp"
#include "ltc/functionals.hpp"
#include "ltc/json_io.hpp"
#include "ltc/optimize.hpp"
#include "ltc/verify.hpp"

namespace ltc {

namespace {

struct Common {
    std::string format;
    std::optional<double> quad_abs_tol;
    std::optional<double> quad_rel_tol;
    std::string out_path;

    QuadSpec apply(QuadSpec quad) const {
        if (quad_abs_tol) quad.abs_tol = *quad_abs_tol;
        if (quad_rel_tol) quad.rel_tol = *quad_rel_tol;
        quad.validate();
        return quad;
    }

    std::string format_or(const char* fallback) const { return format.empty() ? fallback : format; }
};

// Errors that map to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string sig15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", round15(v));
    return buf;
}

// Left-aligned first column, right-aligned rest.
void print_table(std::ostream& os, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c > 0) os << "  ";
            const std::string pad(width[c] - cells[c].size(), ' ');
            os << (c == 0 ? cells[c] + pad : pad + cells[c]);
        }
        os << '\n';
    };
    line(header);
    std::size_t total = 0;
    for (auto w : width) total += w;
    os << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    for (const auto& row : rows) line(row);
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("malformed JSON in '" + path + "': " + e.what());
    }
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
    for (auto a : allowed) {
        if (format == a) return;
    }
    throw UsageError("unsupported --format '" + format + "' for this command");
}

// ---- bound ----------------------------------------------------------------

struct BoundArgs {
    int d = 1;
    double sigma = 1;
    std::string method = "momentum-optimal";
    std::optional<double> c_value;
    bool optimize = false;
};

int cmd_bound(const BoundArgs& args, const Common& common, std::ostream& os) {
    const std::string format = common.format_or("json");
    require_format(format, {"json", "csv", "text"});
    const ProblemSpec spec{args.d, args.sigma};
    try {
        spec.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const QuadSpec quad = common.apply({});

    std::optional<double> c = args.c_value;
    std::optional<std::pair<FFamily, PhiFamily>> trial;
    if (args.optimize) {
        OptConfig cfg = default_seed_config(spec);
        cfg.quad = quad;
        const OptResult opt = minimize_c(cfg);
        const auto& p = opt.best_params;
        trial = std::make_pair(normalize_f(cfg.f_kind, p.a, p.p), normalize_phi(cfg.phi_kind, p.q, p.r, quad));
        if (!c || opt.best_value < *c) c = opt.best_value;
    }

    BoundReport report;
    try {
        if (args.method == "rumin-original") {
            report = bound_rumin_original(spec);
        } else if (args.method == "momentum-optimal" || args.method == "fractional-first") {
            report = bound_momentum_optimal(spec);
        } else if (args.method == "from-c") {
            if (!c) throw UsageError("method from-c requires --c-value or --optimize");
            report = bound_from_c(spec, *c);
        } else if (args.method == "best-of") {
            report = bound_best_of(spec, c);
        } else {
            throw UsageError("unknown method '" + args.method + "'");
        }
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    } catch (const ConstraintViolation& e) {
        throw UsageError(e.what());
    }
    if (trial && report.c_value) report.trial = trial;

    if (format == "json") {
        os << to_json(report).dump() << '\n';
    } else if (format == "csv") {
        os << "d,sigma,method,k_ratio,l_ratio,c_value\n";
        os << spec.d << ',' << sig15(spec.sigma) << ',' << to_string(report.method) << ',' << sig15(report.k_ratio)
           << ',' << sig15(report.l_ratio) << ',' << (report.c_value ? sig15(*report.c_value) : "") << '\n';
    } else {
        std::string method(to_string(report.method));
        if (report.winner) method += " (" + std::string(to_string(*report.winner)) + ")";
        print_table(os, {"d", "sigma", "method", "K/K^cl", "L/L^cl", "C"},
                    {{std::to_string(spec.d), fixed6(spec.sigma), method, fixed6(report.k_ratio),
                      fixed6(report.l_ratio), report.c_value ? fixed6(*report.c_value) : "-"}});
    }
    return 0;
}

// ---- optimize -------------------------------------------------------------

struct OptimizeRun {
    std::string name;
    std::string target = "c";
    double beta = 1.5;
    OptConfig cfg;
};

std::vector<OptimizeRun> parse_runs(const Json& doc, const Common& common) {
    if (!doc.is_array()) throw UsageError("optimize config must be a JSON array of runs");
    std::vector<OptimizeRun> runs;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        Json j = doc[i];
        if (!j.is_object()) throw UsageError("run " + std::to_string(i) + ": expected an object");
        OptimizeRun run;
        run.name = "run" + std::to_string(i);
        try {
            if (j.contains("name")) {
                if (!j["name"].is_string()) throw ConfigError("field 'name' must be a string");
                run.name = j["name"].get<std::string>();
                j.erase("name");
            }
            if (j.contains("target")) {
                if (!j["target"].is_string()) throw ConfigError("field 'target' must be a string");
                run.target = j["target"].get<std::string>();
                if (run.target != "c" && run.target != "lemma") {
                    throw ConfigError("target must be 'c' or 'lemma'");
                }
                j.erase("target");
            }
            if (j.contains("beta")) {
                if (!j["beta"].is_number()) throw ConfigError("field 'beta' must be a number");
                run.beta = j["beta"].get<double>();
                j.erase("beta");
            }
            const bool has_quad = j.contains("quad");
            run.cfg = opt_config_from_json(j);
            if (!has_quad) run.cfg.quad = common.apply(run.cfg.quad);
        } catch (const Error& e) {
            throw UsageError("run " + std::to_string(i) + ": " + e.what());
        }
        runs.push_back(std::move(run));
    }
    return runs;
}

Json execute_run(const OptimizeRun& run) {
    Json line;
    line["name"] = run.name;
    line["target"] = run.target;
    line["d"] = run.cfg.spec.d;
    line["sigma"] = round15(run.cfg.spec.sigma);
    if (run.target == "lemma") line["beta"] = round15(run.beta);
    if (run.target == "c") {
        line["f_kind"] = std::string(to_string(run.cfg.f_kind));
        line["phi_kind"] = std::string(to_string(run.cfg.phi_kind));
    }
    try {
        const OptResult result = run.target == "lemma" ? minimize_lemma(run.beta, run.cfg) : minimize_c(run.cfg);
        const Json encoded = to_json(result);
        for (const auto& [key, value] : encoded.items()) line[key] = value;
        line["error"] = nullptr;
    } catch (const std::exception& e) {
        line["error"] = e.what();
    }
    return line;
}

int cmd_optimize(const std::string& path, const Common& common, std::ostream& os) {
    require_format(common.format_or("json"), {"json"});
    const auto runs = parse_runs(read_json_file(path), common);

    std::vector<std::future<Json>> pending;
    pending.reserve(runs.size());
    for (const auto& run : runs) pending.push_back(std::async(std::launch::async, execute_run, std::cref(run)));

    // Best value per (d, sigma) over the successful "c" runs, in first-seen order.
    std::vector<std::pair<std::pair<int, double>, double>> best;
    for (auto& fut : pending) {
        const Json line = fut.get();
        os << line.dump() << '\n' << std::flush;
        if (line["target"] != "c" || !line["error"].is_null()) continue;
        const std::pair<int, double> key{line["d"].get<int>(), line["sigma"].get<double>()};
        const double value = line["best_value"].get<double>();
        auto it = std::find_if(best.begin(), best.end(), [&](const auto& e) { return e.first == key; });
        if (it == best.end()) {
            best.emplace_back(key, value);
        } else {
            it->second = std::min(it->second, value);
        }
    }
    if (!runs.empty()) {
        Json summary = Json::array();
        for (const auto& [key, value] : best) {
            summary.push_back(Json{{"d", key.first}, {"sigma", key.second}, {"best_value", value}});
        }
        os << Json{{"summary", summary}}.dump() << '\n';
    }
    return 0;
}

// ---- table ----------------------------------------------------------------

const char* check_name(RowCheck check) {
    switch (check) {
        case RowCheck::within: return "within";
        case RowCheck::at_most: return "at_most";
        case RowCheck::at_least: return "at_least";
        case RowCheck::reference: return "reference";
    }
    return "?";
}

int cmd_table(bool paper, const Common& common, std::ostream& os) {
    if (!paper) throw UsageError("table requires --paper");
    const std::string format = common.format_or("text");
    require_format(format, {"json", "csv", "text"});
    const auto rows = reference_table(common.apply({}));
    bool ok = true;
    for (const auto& row : rows) ok = ok && row.passes();

    if (format == "json") {
        Json list = Json::array();
        for (const auto& row : rows) {
            list.push_back(Json{{"quantity", row.quantity},
                                {"paper", round15(row.reference)},
                                {"computed", round15(row.computed)},
                                {"abs_diff", round15(row.abs_diff())},
                                {"tolerance", round15(row.tolerance)},
                                {"check", check_name(row.check)},
                                {"pass", row.passes()}});
        }
        os << Json{{"rows", list}, {"all_pass", ok}}.dump() << '\n';
    } else if (format == "csv") {
        os << "quantity,paper,computed,abs_diff,tolerance,check,pass\n";
        for (const auto& row : rows) {
            os << '"' << row.quantity << "\"," << sig15(row.reference) << ',' << sig15(row.computed) << ','
               << sig15(row.abs_diff()) << ',' << sig15(row.tolerance) << ',' << check_name(row.check) << ','
               << (row.passes() ? "true" : "false") << '\n';
        }
    } else {
        std::vector<std::vector<std::string>> cells;
        for (const auto& row : rows) {
            char tol[32];
            std::snprintf(tol, sizeof tol, "%.0e", row.tolerance);
            const char* status = row.check == RowCheck::reference ? "ref" : row.passes() ? "ok" : "FAIL";
            cells.push_back({row.quantity, fixed6(row.reference), fixed6(row.computed), fixed6(row.abs_diff()),
                             row.check == RowCheck::reference ? "-" : tol, check_name(row.check), status});
        }
        print_table(os, {"quantity", "paper", "computed", "abs diff", "tol", "check", "status"}, cells);
    }
    return ok ? 0 : 1;
}

// ---- verify ---------------------------------------------------------------

struct VerifySuite {
    double l_ratio = kTheoremL1dRatio;
    bool check_refinement = false;
    std::vector<VerifyCase> cases;
};

VerifyCase parse_case(const Json& j, std::size_t index) {
    if (!j.is_object()) throw ConfigError("case " + std::to_string(index) + ": expected an object");
    for (const auto& item : j.items()) {
        if (item.key() != "name" && item.key() != "potential" && item.key() != "grid") {
            throw ConfigError("case " + std::to_string(index) + ": unknown field '" + item.key() + "'");
        }
    }
    VerifyCase c;
    c.name = "case" + std::to_string(index);
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ConfigError("case name must be a string");
        c.name = j["name"].get<std::string>();
    }
    if (!j.contains("potential")) throw ConfigError("case " + std::to_string(index) + ": missing 'potential'");
    c.potential = potential_from_json(j["potential"]);
    if (j.contains("grid")) c.grid = grid_from_json(j["grid"]);
    return c;
}

VerifySuite parse_suite(const Json& doc) {
    VerifySuite suite;
    const Json* cases = &doc;
    if (doc.is_object()) {
        for (const auto& item : doc.items()) {
            if (item.key() != "l_ratio" && item.key() != "check_refinement" && item.key() != "cases") {
                throw ConfigError("verify config: unknown field '" + item.key() + "'");
            }
        }
        if (doc.contains("l_ratio")) {
            if (!doc["l_ratio"].is_number()) throw ConfigError("l_ratio must be a number");
            suite.l_ratio = doc["l_ratio"].get<double>();
        }
        if (doc.contains("check_refinement")) {
            if (!doc["check_refinement"].is_boolean()) throw ConfigError("check_refinement must be a boolean");
            suite.check_refinement = doc["check_refinement"].get<bool>();
        }
        if (!doc.contains("cases")) throw ConfigError("verify config: missing 'cases'");
        cases = &doc["cases"];
    }
    if (!cases->is_array()) throw ConfigError("verify config: cases must be an array");
    for (std::size_t i = 0; i < cases->size(); ++i) suite.cases.push_back(parse_case((*cases)[i], i));
    return suite;
}

struct VerifyArgs {
    std::string config;
    std::optional<double> l_ratio;
    bool check_refinement = false;
};

int cmd_verify(const VerifyArgs& args, const Common& common, std::ostream& os) {
    const std::string format = common.format_or("json");
    require_format(format, {"json", "csv", "text"});
    VerifySuite suite;
    if (args.config.empty()) {
        suite.cases = builtin_suite();
    } else {
        try {
            suite = parse_suite(read_json_file(args.config));
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }
    if (args.l_ratio) suite.l_ratio = *args.l_ratio;
    if (args.check_refinement) suite.check_refinement = true;
    if (!(suite.l_ratio > 0)) throw UsageError("l_ratio must be positive");
    const QuadSpec quad = common.apply({});

    std::vector<std::future<SpectrumResult>> pending;
    for (const auto& c : suite.cases) {
        pending.push_back(std::async(std::launch::async, [&c, &suite, quad] {
            SpectrumResult r = discretize_and_solve(c.potential, c.grid, suite.check_refinement);
            r.potential_integral = potential_integral(c.potential, quad);
            return r;
        }));
    }
    std::vector<SpectrumResult> spectra;
    for (auto& fut : pending) spectra.push_back(fut.get());

    bool all_hold = true;
    std::vector<InequalityCheck> checks;
    for (const auto& s : spectra) {
        checks.push_back(check_inequality(s, suite.l_ratio));
        all_hold = all_hold && checks.back().holds;
    }

    if (format == "json") {
        Json list = Json::array();
        for (std::size_t i = 0; i < suite.cases.size(); ++i) {
            list.push_back(Json{{"name", suite.cases[i].name},
                                {"potential", to_json(suite.cases[i].potential)},
                                {"grid", to_json(suite.cases[i].grid)},
                                {"spectrum", to_json(spectra[i])},
                                {"check", to_json(checks[i])}});
        }
        os << Json{{"l_ratio", round15(suite.l_ratio)}, {"cases", list}, {"all_hold", all_hold}}.dump() << '\n';
    } else if (format == "csv") {
        os << "name,n_negative,sum_negative,potential_integral,lhs,rhs,holds,margin\n";
        for (std::size_t i = 0; i < suite.cases.size(); ++i) {
            os << suite.cases[i].name << ',' << spectra[i].negative_eigenvalues.size() << ','
               << sig15(spectra[i].sum_negative) << ',' << sig15(spectra[i].potential_integral) << ','
               << sig15(checks[i].lhs) << ',' << sig15(checks[i].rhs) << ',' << (checks[i].holds ? "true" : "false")
               << ',' << sig15(checks[i].margin) << '\n';
        }
    } else {
        std::vector<std::vector<std::string>> cells;
        for (std::size_t i = 0; i < suite.cases.size(); ++i) {
            std::string note = checks[i].holds ? "yes" : "NO";
            if (spectra[i].grid_too_coarse.value_or(false)) note += " (grid too coarse)";
            cells.push_back({suite.cases[i].name, std::to_string(spectra[i].negative_eigenvalues.size()),
                             fixed6(checks[i].lhs), fixed6(checks[i].rhs), fixed6(checks[i].margin), note});
        }
        os << "l_ratio = " << fixed6(suite.l_ratio) << '\n';
        print_table(os, {"potential", "bound states", "lhs", "rhs", "margin", "holds"}, cells);
    }
    const bool gated = suite.l_ratio >= kTheoremL1dRatio - 1e-12;
    return gated && !all_hold ? 1 : 0;
}

}  // namespace

double TableRow::abs_diff() const { return std::abs(computed - reference); }

bool TableRow::passes() const {
    if (!std::isfinite(computed)) return false;
    switch (check) {
        case RowCheck::within: return abs_diff() <= tolerance;
        case RowCheck::at_most: return computed <= reference + tolerance;
        case RowCheck::at_least: return computed >= reference - tolerance;
        case RowCheck::reference: return true;
    }
    return false;
}

std::vector<TableRow> reference_table(const QuadSpec& quad) {
    const ProblemSpec one{1, 1.0};
    const ProblemSpec three{3, 1.0};
    const ProblemSpec frac{3, 0.5};

    const BoundReport mo1 = bound_momentum_optimal(one);
    const BoundReport mo3 = bound_momentum_optimal(three);

    const double c_simple = c_objective(normalize_f(FKind::rational_power, 1.5, 1.0),
                                        normalize_phi(PhiKind::bump_simple), one, quad);
    const double c_rich = c_objective(normalize_f(FKind::rational_power, 4.5, 0.25),
                                      normalize_phi(PhiKind::bump_rich, 0.36, 2.1, quad), one, quad);
    const double c_frac = c_objective(normalize_f(FKind::rational_power, 10.0, 0.25),
                                      normalize_phi(PhiKind::power_bump, 2.0, 4.0), frac, quad);
    const BoundReport low1 = bound_from_c(one, c_rich);
    const BoundReport low_frac = bound_from_c(frac, c_frac);
    const BoundReport lifted = bound_lifted_1d(three);

    return {
        {"K_1/K^cl momentum-optimal", 0.381777, mo1.k_ratio, 1e-5, RowCheck::within},
        {"L_{1,1}/L^cl momentum-optimal", 1.618435, mo1.l_ratio, 1e-5, RowCheck::within},
        {"L_{1,3}/L^cl momentum-optimal", 1.994584, mo3.l_ratio, 1e-5, RowCheck::within},
        {"C_1 upper (simple trial)", 0.381378, c_simple, 1e-5, RowCheck::at_most},
        {"C_1 upper", 0.373556, c_rich, 1e-5, RowCheck::within},
        {"C_1 lower", 1.0 / 3.0, c_rich, 1e-6, RowCheck::at_least},
        {"K_1/K^cl low-momentum", 0.471851, low1.k_ratio, 1e-5, RowCheck::within},
        {"L_{1,1}/L^cl low-momentum", 1.455786, low1.l_ratio, 1e-5, RowCheck::within},
        {"L_{1,d}/L^cl lifted (d=3)", kTheoremL1dRatio, lifted.l_ratio, 0.0, RowCheck::at_most},
        {"L_{1,1}/L^cl conjectured", kConjecturedL11Ratio, kConjecturedL11Ratio, 0.0, RowCheck::reference},
        {"K^cl_{3,1/2}", 2.923, k_cl(frac), 1e-3, RowCheck::within},
        {"C_{3,1/2} upper", 0.046737, c_frac, 2e-6, RowCheck::at_most},
        {"K_{3,1/2}/K^cl", 0.826297, low_frac.k_ratio, 1e-4, RowCheck::within},
        {"limit probe d=1000", std::numbers::e, large_d_limit_probe(1000, 1.0), 0.0, RowCheck::at_most},
        {"limit probe d=1000 (lower)", std::numbers::e - 0.01, large_d_limit_probe(1000, 1.0), 0.0,
         RowCheck::at_least},
    };
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounds on Lieb-Thirring constants: compute, optimize, tabulate and verify.", "ltc"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--quad-abs-tol", common.quad_abs_tol, "Quadrature absolute tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--quad-rel-tol", common.quad_rel_tol, "Quadrature relative tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", common.out_path, "Write output to FILE instead of stdout");

    BoundArgs bound;
    auto* bound_cmd = app.add_subcommand("bound", "Bound on K/K^cl and L/L^cl for one (d, sigma)");
    bound_cmd->add_option("--d", bound.d, "Dimension")->check(CLI::PositiveNumber);
    bound_cmd->add_option("--sigma", bound.sigma, "Fractional order, 0 < sigma <= 1");
    bound_cmd->add_option("--method", bound.method, "Bound method")
        ->check(CLI::IsMember({"rumin-original", "momentum-optimal", "fractional-first", "from-c", "best-of"}));
    bound_cmd->add_option("--c-value", bound.c_value, "Upper bound on the averaged constant C")
        ->check(CLI::PositiveNumber);
    bound_cmd->add_flag("--optimize", bound.optimize, "Minimize C from the default seed first");

    std::string opt_config;
    auto* opt_cmd = app.add_subcommand("optimize", "Run the optimization campaign in CONFIG (JSON Lines out)");
    opt_cmd->add_option("config", opt_config, "JSON array of runs")->required();

    bool paper = false;
    auto* table_cmd = app.add_subcommand("table", "Reproduce the headline constants");
    table_cmd->add_flag("--paper", paper, "Compare against the published values");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Empirical check on 1-D Schroedinger operators");
    verify_cmd->add_option("config", verify.config, "JSON suite; defaults to the built-in suite");
    verify_cmd->add_option("--l-ratio", verify.l_ratio, "L/L^cl used for the right-hand side")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_flag("--check-refinement", verify.check_refinement, "Also solve on the doubled grid");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    std::ofstream file;
    if (!common.out_path.empty()) {
        file.open(common.out_path);
        if (!file) {
            err << "error: cannot open '" << common.out_path << "' for writing\n";
            return 2;
        }
    }
    std::ostream& os = common.out_path.empty() ? out : file;
    os.precision(15);

    try {
        if (*bound_cmd) return cmd_bound(bound, common, os);
        if (*opt_cmd) return cmd_optimize(opt_config, common, os);
        if (*table_cmd) return cmd_table(paper, common, os);
        if (*verify_cmd) return cmd_verify(verify, common, os);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace ltc
