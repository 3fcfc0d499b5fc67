#pragma once

// Derivative-free minimization of the variational objectives over the
// parameters of the trial families.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "ltc/functionals.hpp"
#include "ltc/trial.hpp"

namespace ltc {

struct NelderMeadOptions {
    int max_iters = 2000;
    double x_tol = 1e-6;
    double f_tol = 1e-9;
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = 0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    std::vector<std::pair<int, double>> trace;  // (iteration, best value so far)
};

/// Nelder-Mead on an axis-aligned initial simplex x0 + step_i e_i. Vertices
/// are ordered by value with ties broken by insertion order, so identical
/// inputs give identical traces. Converged when the simplex diameter (max
/// norm) is below x_tol and the value spread is below f_tol.
template <typename Objective>
NelderMeadResult nelder_mead(Objective&& objective, const Eigen::VectorXd& x0, const Eigen::VectorXd& step,
                             const NelderMeadOptions& opt, int iteration_offset = 0) {
    const Eigen::Index n = x0.size();
    std::vector<Eigen::VectorXd> simplex(n + 1, x0);
    std::vector<double> values(n + 1);
    NelderMeadResult result;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++result.evaluations;
        return objective(x);
    };
    for (Eigen::Index i = 0; i < n; ++i) simplex[i + 1][i] += step[i];
    for (Eigen::Index i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

    std::vector<Eigen::Index> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::stable_sort(order.begin(), order.end(), [&](auto l, auto r) { return values[l] < values[r]; });
        std::vector<Eigen::VectorXd> s2;
        std::vector<double> v2;
        s2.reserve(n + 1);
        v2.reserve(n + 1);
        for (auto k : order) {
            s2.push_back(simplex[k]);
            v2.push_back(values[k]);
        }
        simplex.swap(s2);
        values.swap(v2);
    };
    auto diameter = [&] {
        double d = 0;
        for (Eigen::Index i = 1; i <= n; ++i) d = std::max(d, (simplex[i] - simplex[0]).cwiseAbs().maxCoeff());
        return d;
    };

    sort_simplex();
    int iter = 0;
    while (iter < opt.max_iters) {
        if (n == 0 || (diameter() < opt.x_tol && values[n] - values[0] < opt.f_tol)) {
            result.converged = true;
            break;
        }
        ++iter;
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < n; ++i) centroid += simplex[i];
        centroid /= static_cast<double>(n);
        const Eigen::VectorXd& worst = simplex[n];

        const Eigen::VectorXd reflected = centroid + opt.reflection * (centroid - worst);
        const double f_reflected = eval(reflected);
        if (f_reflected < values[0]) {
            const Eigen::VectorXd expanded = centroid + opt.expansion * (reflected - centroid);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                simplex[n] = expanded;
                values[n] = f_expanded;
            } else {
                simplex[n] = reflected;
                values[n] = f_reflected;
            }
        } else if (f_reflected < values[n - 1]) {
            simplex[n] = reflected;
            values[n] = f_reflected;
        } else {
            const bool outside = f_reflected < values[n];
            const Eigen::VectorXd contracted = outside ? Eigen::VectorXd(centroid + opt.contraction * (reflected - centroid))
                                                       : Eigen::VectorXd(centroid + opt.contraction * (worst - centroid));
            const double f_contracted = eval(contracted);
            if (f_contracted < (outside ? f_reflected : values[n])) {
                simplex[n] = contracted;
                values[n] = f_contracted;
            } else {
                for (Eigen::Index i = 1; i <= n; ++i) {
                    simplex[i] = simplex[0] + opt.shrink * (simplex[i] - simplex[0]);
                    values[i] = eval(simplex[i]);
                }
            }
        }
        sort_simplex();
        result.trace.emplace_back(iteration_offset + iter, values[0]);
    }
    if (!result.converged && diameter() < opt.x_tol && values[n] - values[0] < opt.f_tol) result.converged = true;
    result.x = simplex[0];
    result.value = values[0];
    result.iterations = iter;
    return result;
}

/// Parameter vector shared by the (f, phi) families: f = (1 + mu t^a)^{-p},
/// phi ~ (1 - t^q)^r.
struct TrialParams {
    double a = 4.5;
    double p = 0.25;
    double q = 0.36;
    double r = 2.1;
};

/// Admissible box; the constraint 2 p a > 1 is enforced by penalty.
struct ParamBox {
    TrialParams lower{1.1, 0.05, 0.05, 0.5};
    TrialParams upper{20.0, 3.0, 3.0, 10.0};
};

inline constexpr double kPenalty = 1e6;

struct OptConfig {
    ProblemSpec spec{1, 1.0};
    FKind f_kind = FKind::rational_power;
    PhiKind phi_kind = PhiKind::bump_rich;
    TrialParams seed;
    int max_iters = 2000;
    double x_tol = 1e-6;
    double f_tol = 1e-9;
    double initial_simplex_scale = 0.1;
    QuadSpec quad;

    void validate() const;
};

struct OptResult {
    TrialParams best_params;
    double best_value = 0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    std::vector<std::pair<int, double>> trace;
};

/// Indices into (a, p, q, r) that the given family kinds actually use.
std::vector<int> active_parameters(FKind f_kind, PhiKind phi_kind);

/// Objective used by minimize_c at one parameter point; returns kPenalty for
/// inadmissible or divergent points.
double c_objective_at(const OptConfig& cfg, const TrialParams& params);

/// Minimizes c_objective over the active parameters. Throws ObjectiveFailure
/// when more than half of the initial simplex is inadmissible.
OptResult minimize_c(const OptConfig& cfg);

/// Minimizes int (1 - f)^2 t^{-beta} over normalized (1 + mu t^a)^{-p},
/// i.e. over (a, p), starting from cfg.seed.
OptResult minimize_lemma(double beta, const OptConfig& cfg);

/// Default seed for (d, sigma): (a, p, q, r) = (4.5, 0.25, 0.36, 2.1) with
/// the bump_rich weight in d = 1, and (10, 0.25, 2, 4) with power_bump
/// otherwise.
OptConfig default_seed_config(const ProblemSpec& spec);

}  // namespace ltc
