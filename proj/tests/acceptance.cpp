// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ltc/cli.hpp"
#include "ltc/constants.hpp"
#include "ltc/errors.hpp"
#include "ltc/functionals.hpp"
#include "ltc/optimize.hpp"
#include "ltc/verify.hpp"

using namespace ltc;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<Outcome()> body;
};

Outcome golden_constants() {
    Outcome o;
    const auto one = bound_momentum_optimal({1, 1.0});
    const auto three = bound_momentum_optimal({3, 1.0});
    o.require(std::abs(one.k_ratio - 0.381777) <= 1e-5, fmt("k(1,1) = %.9f", one.k_ratio));
    o.require(std::abs(one.l_ratio - 1.618435) <= 1e-5, fmt("l(1,1) = %.9f", one.l_ratio));
    o.require(std::abs(three.l_ratio - 1.994584) <= 1e-5, fmt("l(3,1) = %.9f", three.l_ratio));
    o.detail = o.ok ? fmt("k=%.6f l=%.6f l3=%.6f", one.k_ratio, one.l_ratio, three.l_ratio) : o.detail;
    return o;
}

Outcome lemma_cross_check() {
    Outcome o;
    double worst = 0;
    for (const ProblemSpec spec : {ProblemSpec{1, 1.0}, ProblemSpec{2, 1.0}, ProblemSpec{6, 1.0}}) {
        const double beta = 1 + spec.exponent();
        const double numeric = a_functional(lemma_optimal_f(beta), spec);
        const double closed = spec.exponent() * lemma_min(beta).min_value;
        const double diff = std::abs(numeric - closed);
        worst = std::max(worst, diff);
        o.require(diff <= 1e-8, fmt("beta=%.1f diff %.2e", beta, diff));
    }
    if (o.ok) o.detail = fmt("max |diff| = %.2e over beta in {3/2, 2, 4}", worst);
    return o;
}

Outcome c1_reproduction() {
    Outcome o;
    const ProblemSpec one{1, 1.0};
    const double simple =
        c_objective(normalize_f(FKind::rational_power, 1.5, 1.0), normalize_phi(PhiKind::bump_simple), one);
    const double rich = c_objective(normalize_f(FKind::rational_power, 4.5, 0.25),
                                    normalize_phi(PhiKind::bump_rich, 0.36, 2.1), one);
    const auto bound = bound_from_c(one, rich);
    o.require(simple <= 0.381378 + 1e-5, fmt("simple trial %.9f", simple));
    o.require(std::abs(rich - 0.373556) <= 1e-5, fmt("rich trial %.9f", rich));
    o.require(std::abs(bound.k_ratio - 0.471851) <= 1e-5, fmt("k = %.9f", bound.k_ratio));
    o.require(std::abs(bound.l_ratio - 1.455786) <= 1e-5, fmt("l = %.9f", bound.l_ratio));
    if (o.ok) {
        o.detail = fmt("C simple %.6f, rich %.6f", simple, rich) + fmt(", k=%.6f l=%.6f", bound.k_ratio, bound.l_ratio);
    }
    return o;
}

Outcome c3_reproduction() {
    Outcome o;
    const ProblemSpec frac{3, 0.5};
    const double c = c_objective(normalize_f(FKind::rational_power, 10.0, 0.25),
                                 normalize_phi(PhiKind::power_bump, 2.0, 4.0), frac);
    const auto bound = bound_from_c(frac, c);
    o.require(c <= 0.046737 + 2e-6, fmt("C = %.9f", c));
    o.require(bound.k_ratio >= 0.826, fmt("k = %.9f", bound.k_ratio));
    o.require(std::abs(bound.k_ratio - 0.826297) <= 1e-4, fmt("k = %.9f", bound.k_ratio));
    if (o.ok) o.detail = fmt("C=%.7f k=%.6f", c, bound.k_ratio);
    return o;
}

Outcome optimizer_recovery() {
    Outcome o;
    auto lemma = std::async(std::launch::async, [] {
        OptConfig cfg = default_seed_config({1, 1.0});
        cfg.seed.a = 2.0;
        cfg.seed.p = 0.7;
        return minimize_lemma(1.5, cfg);
    });
    OptConfig cfg = default_seed_config({1, 1.0});
    // 20% away from the published trial parameters
    cfg.seed = {4.5 * 1.2, 0.25 * 0.8, 0.36 * 1.2, 2.1 * 0.8};
    const OptResult c = minimize_c(cfg);
    const OptResult l = lemma.get();
    const double exact = lemma_min(1.5).min_value;
    const double rel = std::abs(l.best_value - exact) / exact;
    o.require(rel <= 1e-6, fmt("lemma relative error %.2e", rel));
    o.require(c.best_value <= 0.3740, fmt("C from offset seed %.9f", c.best_value));
    if (o.ok) o.detail = fmt("lemma rel err %.1e, C=%.6f after %.0f evaluations", rel, c.best_value, c.evaluations);
    return o;
}

Outcome lower_bound_guard() {
    Outcome o;
    std::mt19937_64 rng(1234567);
    std::uniform_real_distribution<double> ua(1.1, 14.0), up(0.05, 3.0), uq(0.1, 3.0), ur(0.5, 8.0), ub(1.2, 6.0);
    std::uniform_int_distribution<int> kind(0, 5);
    const ProblemSpec one{1, 1.0};
    int admissible = 0;
    int skipped = 0;
    double lowest = 1e300;
    while (admissible < 100) {
        FFamily f;
        const int fk = kind(rng) % 3;
        if (fk == 0) {
            f = normalize_f(FKind::lemma_optimal, ub(rng));
        } else {
            const double a = ua(rng);
            const double p = up(rng);
            if (2 * a * p <= 1) continue;
            f = normalize_f(FKind::rational_power, a, p);
        }
        PhiFamily phi;
        switch (kind(rng) % 4) {
            case 0: phi = normalize_phi(PhiKind::uniform); break;
            case 1: phi = normalize_phi(PhiKind::bump_simple); break;
            case 2: phi = normalize_phi(PhiKind::bump_rich, uq(rng), ur(rng)); break;
            default: phi = normalize_phi(PhiKind::power_bump, uq(rng), ur(rng)); break;
        }
        double value;
        try {
            value = c_objective(f, phi, one);
        } catch (const Error&) {
            ++skipped;
            continue;
        }
        ++admissible;
        lowest = std::min(lowest, value);
        o.require(value >= 1.0 / 3.0 - 1e-6, fmt("pair with C = %.9f", value));
    }
    if (o.ok) o.detail = fmt("min C over 100 pairs = %.6f (%.0f draws rejected as divergent)", lowest, skipped);
    return o;
}

Outcome duality_identities() {
    Outcome o;
    double worst_dual = 0;
    for (const ProblemSpec spec : {ProblemSpec{1, 1.0}, ProblemSpec{3, 0.5}, ProblemSpec{5, 1.0}}) {
        for (double k : {0.381777, 0.471851, 0.826297}) {
            worst_dual = std::max(worst_dual, std::abs(dual_invert(spec, dual_convert(spec, k)) - k));
        }
    }
    double worst_identity = 0;
    for (auto [d1, d] : {std::pair{1, 2}, {1, 3}, {2, 5}, {1, 6}}) {
        worst_identity = std::max(worst_identity, product_identity_check(d1, d));
    }
    o.require(worst_dual <= 1e-13, fmt("dual residual %.2e", worst_dual));
    o.require(worst_identity <= 1e-12, fmt("identity residual %.2e", worst_identity));
    if (o.ok) o.detail = fmt("dual %.1e, identity %.1e", worst_dual, worst_identity);
    return o;
}

Outcome large_d_limit() {
    Outcome o;
    const double l = large_d_limit_probe(1000, 1.0);
    const double rumin = rumin_original_l_ratio(1000);
    o.require(l >= std::numbers::e - 0.01 && l <= std::numbers::e, fmt("l(1000) = %.9f", l));
    o.require(l <= rumin, fmt("l %.9f exceeds original %.9f", l, rumin));
    if (o.ok) o.detail = fmt("l(1000)=%.6f, original %.6f, e=%.6f", l, rumin, std::numbers::e);
    return o;
}

Outcome spectral_verification() {
    Outcome o;
    std::vector<std::future<SpectrumResult>> jobs;
    const auto suite = builtin_suite();
    for (const auto& c : suite) {
        jobs.push_back(std::async(std::launch::async, [&c] { return discretize_and_solve(c.potential, c.grid); }));
    }
    std::vector<SpectrumResult> spectra;
    for (auto& j : jobs) spectra.push_back(j.get());
    double exact[] = {1.0, 5.0};
    for (int i = 0; i < 2; ++i) {
        o.require(suite[i].potential.nu == i + 1 && suite[i].grid.n_points == 8001, "suite layout changed");
        o.require(std::abs(spectra[i].sum_negative - exact[i]) <= 1e-3,
                  fmt("nu=%.0f sum %.9f", i + 1, spectra[i].sum_negative));
    }
    double min_margin = 1e300;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const auto check = check_inequality(spectra[i], kTheoremL1dRatio);
        min_margin = std::min(min_margin, check.margin);
        o.require(check.holds && check.margin > 0, suite[i].name + " fails at 1.456");
    }
    const auto weyl = check_inequality(spectra[1], 1.0);
    o.require(!weyl.holds, "nu=2 unexpectedly holds at l_ratio 1.0");
    if (o.ok) {
        o.detail = fmt("sums %.6f, %.6f; min margin %.4f", spectra[0].sum_negative, spectra[1].sum_negative,
                       min_margin) +
                   fmt("; Weyl margin %.4f", weyl.margin);
    }
    return o;
}

Outcome regression_gate() {
    Outcome o;
    std::ostringstream out, err;
    const int code = run_cli({"table", "--paper", "--format", "text"}, out, err);
    o.require(code == 0, "table --paper exit code " + std::to_string(code));
    int rows = 0;
    for (const auto& row : reference_table()) {
        ++rows;
        o.require(row.passes(), row.quantity + fmt(" computed %.9f", row.computed));
    }
    if (o.ok) o.detail = std::to_string(rows) + " rows within tolerance";
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "golden constants (closed form)", 1e-3, golden_constants},
        {2, "lemma cross-check", 1.0, lemma_cross_check},
        {3, "C_1 reproduction", 10.0, c1_reproduction},
        {4, "C_{3,1/2} reproduction", 10.0, c3_reproduction},
        {5, "optimizer recovery", 120.0, optimizer_recovery},
        {6, "lower-bound guard", 120.0, lower_bound_guard},
        {7, "duality and identities", 1e-3, duality_identities},
        {8, "large-d limit", 1e-3, large_d_limit},
        {9, "spectral verification", 30.0, spectral_verification},
        {10, "full regression gate", 300.0, regression_gate},
    };
    const auto start = Clock::now();
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = Clock::now();
        Outcome outcome;
        try {
            outcome = c.body();
        } catch (const std::exception& e) {
            outcome.ok = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (seconds > c.budget_seconds) {
            outcome.ok = false;
            outcome.detail += fmt(" [over budget: %.3g s > %.3g s]", seconds, c.budget_seconds);
        }
        if (c.id == 10) {
            const double total = std::chrono::duration<double>(Clock::now() - start).count();
            if (total > 300.0) {
                outcome.ok = false;
                outcome.detail += fmt(" [suite took %.1f s]", total);
            }
        }
        if (!outcome.ok) ++failures;
        std::printf("%s criterion %2d  %-32s %10.4f s  %s\n", outcome.ok ? "PASS" : "FAIL", c.id, c.title, seconds,
                    outcome.detail.c_str());
        std::fflush(stdout);
    }
    const double total = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failures, criteria.size(),
                total);
    return failures == 0 ? 0 : 1;
}
