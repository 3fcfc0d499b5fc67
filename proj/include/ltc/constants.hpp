#pragma once

// Closed-form semiclassical constants and the bound formulas built on them.
// Ratios are K/K^cl (a lower bound, <= 1) and L/L^cl (an upper bound, >= 1);
// the two are tied by duality, L/L^cl = (K/K^cl)^{-d/(2 sigma)}.

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "ltc/functionals.hpp"
#include "ltc/trial.hpp"

namespace ltc {

enum class BoundMethod {
    rumin_original,
    momentum_optimal,
    low_momentum_avg,
    fractional_first,
    fractional_second,
    lifted_1d,
    best_of,
};

std::string_view to_string(BoundMethod method);
BoundMethod parse_bound_method(std::string_view name);

struct BoundReport {
    ProblemSpec spec;
    BoundMethod method = BoundMethod::momentum_optimal;
    double k_ratio = 1;
    double l_ratio = 1;
    std::optional<double> c_value;
    std::optional<std::pair<FFamily, PhiFamily>> trial;
    // For best_of: which method supplied the reported ratios.
    std::optional<BoundMethod> winner;
};

/// Upper bound on C_1 from the rich (f, phi) trial pair, as printed.
inline constexpr double kC1Upper = 0.373556;
/// Conjectured sharp value of L_{1,1}/L^cl; a reference line only.
inline constexpr double kConjecturedL11Ratio = 1.1547005383792515;  // 2 / sqrt(3)
/// Dimension-free constant claimed for L_{1,d}/L^cl.
inline constexpr double kTheoremL1dRatio = 1.456;

double k_cl(const ProblemSpec& spec);
double l_cl(const ProblemSpec& spec);

/// L^cl_{alpha,d} = Gamma(alpha + 1) / ((4 pi)^{d/2} Gamma(alpha + d/2 + 1)).
double l_cl_general(double alpha, int d);

struct LemmaMinimum {
    double min_value;
    double mu_star;
};

/// inf int (1 - f)^2 t^{-beta} over int f^2 = 1, and the scale of the
/// minimizer 1 / (1 + mu t^beta). Throws DomainError for beta <= 1.
LemmaMinimum lemma_min(double beta);

/// l_ratio = k_ratio^{-d / (2 sigma)}.
double dual_convert(const ProblemSpec& spec, double k_ratio);
/// Inverse of dual_convert.
double dual_invert(const ProblemSpec& spec, double l_ratio);

/// Optimal single-profile decomposition. Same formula as the first
/// fractional bound; the method tag is momentum_optimal at sigma = 1 and
/// fractional_first otherwise.
BoundReport bound_momentum_optimal(const ProblemSpec& spec);

/// ((d + 4) / d)^{d/2}; sigma must be 1.
BoundReport bound_rumin_original(const ProblemSpec& spec);

/// Bound from an upper estimate of C_{d,sigma}. Tagged low_momentum_avg at
/// sigma = 1 and fractional_second otherwise.
BoundReport bound_from_c(const ProblemSpec& spec, double c_upper);

/// Lifting of the one-dimensional low-momentum bound to dimension d
/// (sigma = 1, d > 1). Not recomputed: it transfers the d = 1 ratio.
BoundReport bound_lifted_1d(const ProblemSpec& spec, double c1_upper = kC1Upper);

/// Best of every method available at (d, sigma): k = max, l = min.
BoundReport bound_best_of(const ProblemSpec& spec, std::optional<double> c_upper = std::nullopt);

/// Relative residual of L^cl_{1,d1} L^cl_{1+d1/2,d-d1} = L^cl_{1,d}.
double product_identity_check(int d1, int d);

/// l_ratio of the first fractional bound, evaluated in log space.
double large_d_limit_probe(int d, double sigma);

/// l_ratio of the original bound in log space, valid for any d.
double rumin_original_l_ratio(int d);

}  // namespace ltc
