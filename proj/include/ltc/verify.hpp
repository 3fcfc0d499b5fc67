#pragma once

// Finite-difference check of Tr[-d^2/dx^2 + V]_- <= L int V_-^{3/2} in one
// dimension.

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ltc/quad.hpp"

namespace ltc {

enum class PotentialKind {
    poschl_teller,  // -nu (nu + 1) / width^2 sech^2(x / width)
    gaussian_well,  // -depth exp(-(x / width)^2)
    square_well,    // -depth on |x| < width / 2
};

std::string_view to_string(PotentialKind kind);
PotentialKind parse_potential_kind(std::string_view name);

struct PotentialSpec {
    PotentialKind kind = PotentialKind::poschl_teller;
    double nu = 1;
    double depth = 0;
    double width = 1;

    void validate() const;
};

struct GridSpec {
    double half_width = 20;
    int n_points = 8001;

    double spacing() const { return 2 * half_width / (n_points + 1); }
    void validate() const;
};

struct SpectrumResult {
    std::vector<double> negative_eigenvalues;  // descending
    double sum_negative = 0;                   // Tr[H]_-
    double potential_integral = 0;             // int V_-^{3/2}
    std::optional<bool> grid_too_coarse;
    std::optional<double> refinement_change;   // relative change of sum_negative on doubling
};

struct InequalityCheck {
    double lhs = 0;
    double rhs = 0;
    bool holds = false;
    double margin = 0;
};

double potential_value(const PotentialSpec& pot, double x);

/// Symmetric tridiagonal -d^2/dx^2 + V with Dirichlet ends: diagonal
/// 2/h^2 + V(x_i), off-diagonal -1/h^2.
struct Tridiagonal {
    Eigen::VectorXd diagonal;
    Eigen::VectorXd off_diagonal;  // size n - 1
};

Tridiagonal discretize(const PotentialSpec& pot, const GridSpec& grid);

/// Number of eigenvalues strictly below x (Sturm sequence of LDL^T pivots).
int sturm_count(const Tridiagonal& m, double x);

/// Eigenvalues below zero, by bisection on the Sturm count, to absolute
/// accuracy `tol`. Ascending order.
std::vector<double> negative_eigenvalues(const Tridiagonal& m, double tol = 1e-11);

/// int V_-^{3/2} dx over the real line by adaptive quadrature on the
/// analytic potential.
double potential_integral(const PotentialSpec& pot, const QuadSpec& quad = {});

/// Solves on `grid`; with `check_refinement` also solves on the doubled grid
/// and flags a relative change above 1e-2 as grid_too_coarse.
SpectrumResult discretize_and_solve(const PotentialSpec& pot, const GridSpec& grid, bool check_refinement = false);

/// lhs = sum_negative, rhs = l_ratio L^cl_{1,1} int V_-^{3/2}.
InequalityCheck check_inequality(const SpectrumResult& result, double l_ratio);

struct VerifyCase {
    std::string name;
    PotentialSpec potential;
    GridSpec grid;
};

/// Built-in potentials used by the verification command.
std::vector<VerifyCase> builtin_suite();

}  // namespace ltc
