#pragma once

#include <complex>

#include "fkpp/errors.hpp"

namespace fkpp::ml {

using cplx = std::complex<double>;

/// Order pair (alpha, rho) of the two-parameter Mittag-Leffler function
/// E_{alpha,rho}. The public surface of this artifact restricts rho to
/// {1, alpha}; evaluation itself supports any rho > 0, alpha in (0, 2].
struct MLOrder {
    double alpha;
    double rho;

    MLOrder(double alpha, double rho) : alpha(alpha), rho(rho) {
        if (!(alpha > 0.0) || !(alpha <= 1.0))
            throw validation_error("MLOrder: alpha must be in (0, 1]");
        if (!(rho >= alpha))
            throw validation_error("MLOrder: rho must satisfy rho >= alpha");
    }
};

/// E_{alpha,rho}(z) = sum_j z^j / Gamma(alpha j + rho).
///
/// alpha in (0, 2], rho > 0, z finite. Relative accuracy target 1e-12 on the
/// arguments this artifact evaluates (rays -(1 + psi/2) t^alpha); throws
/// accuracy_error carrying the achieved bound when the target is unreachable.
cplx eval(double alpha, double rho, cplx z);

/// E_{alpha,rho}(-x) for real x >= 0 (the completely monotone ray).
double eval_negreal(double alpha, double rho, double x);

/// Survival probability E_{alpha,1}(-t^alpha) of the branching clock.
/// Requires 0 < alpha <= 1 and t >= 0; strictly decreasing in t, 1 at t = 0.
double survival(double alpha, double t);

/// Branching delay density tau^{alpha-1} E_{alpha,alpha}(-tau^alpha), tau > 0.
/// Integrates to 1 - E_{alpha,1}(-t^alpha) over (0, t).
double branch_density(double alpha, double tau);

}  // namespace fkpp::ml
