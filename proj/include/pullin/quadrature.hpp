#pragma once

#include <functional>

#include "pullin/model.hpp"

namespace pullin {

struct QuadResult {
    double value;
    double abs_error_estimate;
    long evaluations;
};

/// Integrate g over [a, b] where g may behave like c*(s-a)^(+-1/2) at a
/// flagged endpoint: an inverse-square-root singularity or a square-root
/// zero, both of which defeat polynomial rules directly. A flagged end gets
/// the substitution s = a + u^2 (mirrored at b), which turns half-integer
/// powers into smooth functions of u; with both ends flagged the interval is
/// split at its midpoint. The transformed pieces are handled by an adaptive
/// Gauss-Kronrod 15(7) core driven to absolute tolerance tol.
/// g is never evaluated at a or b themselves.
/// Throws NoConvergenceError if refinement stalls or the subdivision budget
/// runs out, std::domain_error if g returns a non-finite value at a node.
QuadResult integrate_endpoint_singular(const std::function<double(double)>& g,
                                       double a, double b,
                                       bool singular_at_a, bool singular_at_b,
                                       double tol = 1e-10);

/// Time for the zero-IC trajectory to fall onto the electrode:
///   t = integral_0^1 ds / sqrt(f_envelope(s))
/// The integrand has a 1/sqrt(s) singularity at 0 and a sqrt(1-s) zero at 1;
/// both ends are rationalized before quadrature, so the computed integrand
/// is cancellation-free.
/// Requires K > kappa(alpha); throws RegimeError otherwise.
double pull_in_time(const OscParams& q, double tol = 1e-10);

/// Period of the zero-IC closed orbit:
///   T = integral_0^{x_max} 2 ds / sqrt(f_envelope(s))
/// The cubic is deflated by the amplitude root before integration, so the
/// simple-root singularity at x_max is represented exactly in the
/// substituted variable.
/// Requires 0 < K < kappa(alpha). Throws RestError at K = 0, RegimeError
/// above the threshold, and DivergentPeriodError when kappa(alpha) - K is
/// below 1e-12: the root is (numerically) double there and the integral
/// diverges, so no number would be meaningful.
double period(const OscParams& q, double tol = 1e-10);

} // namespace pullin
