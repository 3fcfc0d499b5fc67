#pragma once

// Parametrized profile families f (momentum decomposition, int f^2 = 1) and
// weights phi (low-momentum averaging, int phi = 1, supported on (0, 1]).

#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "ltc/quad.hpp"

namespace ltc {

enum class FKind {
    rational_power,  // (1 + mu t^a)^{-p}
    indicator,       // 1 on (0, 1], 0 beyond
    lemma_optimal,   // 1 / (1 + mu t^beta), the exact minimizer of the deficit functional
};

enum class PhiKind {
    bump_simple,  // 5 (1 - t^{1/4})
    bump_rich,    // c (1 - t^q)^r / (1 + t)
    uniform,      // 1
    power_bump,   // c (1 - t^q)^r
};

struct FFamily {
    FKind kind = FKind::indicator;
    double a = 0;     // inner exponent; equals beta for lemma_optimal
    double p = 0;     // outer exponent
    double mu = 0;    // scale fixed by int f^2 = 1
    double beta = 0;  // lemma_optimal only

    /// Right end of the support; f vanishes beyond it.
    double support_end() const {
        return kind == FKind::indicator ? 1.0 : std::numeric_limits<double>::infinity();
    }

    /// Transition point: the jump for indicator, mu t^a = 1 otherwise.
    double knee() const;
};

struct PhiFamily {
    PhiKind kind = PhiKind::uniform;
    double q = 0;
    double r = 0;
    double c = 1;  // normalization constant
};

std::string_view to_string(FKind kind);
std::string_view to_string(PhiKind kind);
FKind parse_f_kind(std::string_view name);
PhiKind parse_phi_kind(std::string_view name);

/// Closed-form scale for (1 + mu t^a)^{-p}: with u = mu t^a,
/// int f^2 = mu^{-1/a} B(1/a, 2p - 1/a) / a, so mu = (B(1/a, 2p - 1/a) / a)^a.
double rational_power_scale(double a, double p);

/// Builds a normalized f. `a` is beta for lemma_optimal; `p` is ignored there.
/// Throws ConstraintViolation when 2 p a <= 1 (f not square-integrable).
FFamily normalize_f(FKind kind, double a = 0, double p = 0);

/// lemma_optimal family for exponent beta > 1.
FFamily lemma_optimal_f(double beta);

/// Finds mu for (1 + mu t^a)^{-p} by bracketing the quadrature of int f^2
/// in log(mu). Independent of the Beta closed form; used to cross-check it.
double rational_power_scale_numeric(double a, double p, const QuadSpec& quad = {});

/// Builds a normalized phi. Throws ConstraintViolation for non-positive q, r
/// or a vanishing/non-finite unnormalized mass.
PhiFamily normalize_phi(PhiKind kind, double q = 0, double r = 0, const QuadSpec& quad = {});

double eval_f(const FFamily& fam, double t);

/// 1 - f(t), evaluated without cancellation for small t.
double eval_f_deficit(const FFamily& fam, double t);

double eval_phi(const PhiFamily& phi, double t);

}  // namespace ltc
