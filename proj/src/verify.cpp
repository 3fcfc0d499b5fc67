#include "ltc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ltc/constants.hpp"
#include "ltc/errors.hpp"

namespace ltc {

std::string_view to_string(PotentialKind kind) {
    switch (kind) {
        case PotentialKind::poschl_teller: return "poschl_teller";
        case PotentialKind::gaussian_well: return "gaussian_well";
        case PotentialKind::square_well: return "square_well";
    }
    return "unknown";
}

PotentialKind parse_potential_kind(std::string_view name) {
    if (name == "poschl_teller") return PotentialKind::poschl_teller;
    if (name == "gaussian_well") return PotentialKind::gaussian_well;
    if (name == "square_well") return PotentialKind::square_well;
    throw ConfigError("unknown potential kind '" + std::string(name) + "'");
}

void PotentialSpec::validate() const {
    if (!(width > 0)) throw ConfigError("PotentialSpec: width must be positive");
    if (kind == PotentialKind::poschl_teller && !(nu >= 0)) throw ConfigError("PotentialSpec: nu must be >= 0");
    if (kind != PotentialKind::poschl_teller && !(depth >= 0)) {
        throw ConfigError("PotentialSpec: depth must be >= 0");
    }
}

void GridSpec::validate() const {
    if (!(half_width > 0)) throw ConfigError("GridSpec: half_width must be positive");
    if (n_points < 3) throw ConfigError("GridSpec: n_points must be >= 3");
}

double potential_value(const PotentialSpec& pot, double x) {
    const double y = x / pot.width;
    switch (pot.kind) {
        case PotentialKind::poschl_teller: {
            const double sech = 1 / std::cosh(y);
            return -pot.nu * (pot.nu + 1) / (pot.width * pot.width) * sech * sech;
        }
        case PotentialKind::gaussian_well:
            return -pot.depth * std::exp(-y * y);
        case PotentialKind::square_well:
            return std::abs(x) < pot.width / 2 ? -pot.depth : 0.0;
    }
    return 0;
}

Tridiagonal discretize(const PotentialSpec& pot, const GridSpec& grid) {
    pot.validate();
    grid.validate();
    const double h = grid.spacing();
    const double inv_h2 = 1 / (h * h);
    Tridiagonal m;
    m.diagonal.resize(grid.n_points);
    m.off_diagonal = Eigen::VectorXd::Constant(grid.n_points - 1, -inv_h2);
    for (int i = 0; i < grid.n_points; ++i) {
        const double x = -grid.half_width + (i + 1) * h;
        m.diagonal[i] = 2 * inv_h2 + potential_value(pot, x);
    }
    return m;
}

int sturm_count(const Tridiagonal& m, double x) {
    const Eigen::Index n = m.diagonal.size();
    int count = 0;
    double pivot = 1;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double coupling = i > 0 ? m.off_diagonal[i - 1] * m.off_diagonal[i - 1] : 0.0;
        pivot = (m.diagonal[i] - x) - (i > 0 ? coupling / pivot : 0.0);
        if (pivot == 0) pivot = -std::numeric_limits<double>::epsilon() * (std::abs(x) + 1);
        if (pivot < 0) ++count;
    }
    return count;
}

std::vector<double> negative_eigenvalues(const Tridiagonal& m, double tol) {
    const int count = sturm_count(m, 0.0);
    std::vector<double> eigenvalues;
    if (count == 0) return eigenvalues;
    // Gershgorin lower bound.
    double lower = 0;
    const Eigen::Index n = m.diagonal.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        double radius = 0;
        if (i > 0) radius += std::abs(m.off_diagonal[i - 1]);
        if (i + 1 < n) radius += std::abs(m.off_diagonal[i]);
        lower = std::min(lower, m.diagonal[i] - radius);
    }
    eigenvalues.reserve(count);
    for (int k = 0; k < count; ++k) {
        // k-th smallest: smallest x with sturm_count(x) > k.
        double lo = lower;
        double hi = 0;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (sturm_count(m, mid) > k) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        eigenvalues.push_back(0.5 * (lo + hi));
    }
    return eigenvalues;
}

double potential_integral(const PotentialSpec& pot, const QuadSpec& quad) {
    pot.validate();
    auto integrand = [&](double x) {
        const double v = -potential_value(pot, x);
        return v > 0 ? v * std::sqrt(v) : 0.0;
    };
    // Every built-in potential is even.
    QuadResult half;
    if (pot.kind == PotentialKind::square_well) {
        half = integrate(integrand, 0.0, pot.width / 2, quad);
    } else {
        const QuadResult core = integrate(integrand, 0.0, pot.width, quad);
        const QuadResult tail = integrate(integrand, pot.width, std::numeric_limits<double>::infinity(), quad);
        half.value = core.value + tail.value;
        half.converged = core.converged && tail.converged;
    }
    if (!half.converged) throw DivergentError("potential_integral: quadrature did not converge");
    return 2 * half.value;
}

SpectrumResult discretize_and_solve(const PotentialSpec& pot, const GridSpec& grid, bool check_refinement) {
    SpectrumResult result;
    auto ascending = negative_eigenvalues(discretize(pot, grid));
    double sum = 0;
    for (double e : ascending) sum -= e;
    result.negative_eigenvalues.assign(ascending.rbegin(), ascending.rend());
    result.sum_negative = sum;
    result.potential_integral = potential_integral(pot);
    if (check_refinement) {
        GridSpec fine = grid;
        fine.n_points = 2 * grid.n_points + 1;
        double fine_sum = 0;
        for (double e : negative_eigenvalues(discretize(pot, fine))) fine_sum -= e;
        const double scale = std::max(std::abs(fine_sum), std::numeric_limits<double>::min());
        const double change = fine_sum == sum ? 0.0 : std::abs(fine_sum - sum) / scale;
        result.refinement_change = change;
        result.grid_too_coarse = change > 1e-2;
    }
    return result;
}

InequalityCheck check_inequality(const SpectrumResult& result, double l_ratio) {
    InequalityCheck check;
    check.lhs = result.sum_negative;
    check.rhs = l_ratio * l_cl({1, 1.0}) * result.potential_integral;
    check.holds = check.lhs <= check.rhs;
    check.margin = check.rhs - check.lhs;
    return check;
}

std::vector<VerifyCase> builtin_suite() {
    std::vector<VerifyCase> suite;
    auto pt = [](double nu) {
        PotentialSpec p;
        p.kind = PotentialKind::poschl_teller;
        p.nu = nu;
        return p;
    };
    auto well = [](PotentialKind kind, double depth, double width) {
        PotentialSpec p;
        p.kind = kind;
        p.depth = depth;
        p.width = width;
        return p;
    };
    const GridSpec grid{20.0, 8001};
    suite.push_back({"poschl_teller_nu1", pt(1), grid});
    suite.push_back({"poschl_teller_nu2", pt(2), grid});
    suite.push_back({"poschl_teller_nu3.5", pt(3.5), grid});
    suite.push_back({"gaussian_deep", well(PotentialKind::gaussian_well, 10, 1), grid});
    suite.push_back({"gaussian_shallow", well(PotentialKind::gaussian_well, 0.5, 2), grid});
    suite.push_back({"square_well", well(PotentialKind::square_well, 4, 2), grid});
    return suite;
}

}  // namespace ltc
