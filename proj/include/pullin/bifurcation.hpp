#pragma once

#include <optional>

#include "pullin/model.hpp"

namespace pullin {

enum class RegimeKind {
    Rest,     ///< K = 0: the zero-IC motion never leaves the origin
    Periodic, ///< 0 < K <= kappa(alpha): closed orbit of amplitude x_max
    PullIn    ///< K > kappa(alpha): the plate collapses onto the electrode
};

/// Classification of a parameter pair. margin is |K - kappa(alpha)|, the
/// distance to the threshold curve; x_max is set only for Periodic.
struct Regime {
    RegimeKind kind;
    double margin;
    std::optional<double> x_max;
};

/// Exact dynamic pull-in threshold: zero-IC motion is periodic iff
/// K <= kappa(alpha). Evaluated through the cancellation-free form
///   mu = sqrt(4a^2 - 6a + 9),  s1 = 3/(2a + 3 + mu),
///   kappa = s1*(1 - ((2/3)a + 1)*s1 + (2/3)a*s1^2)/2,
/// which is stable for every alpha >= 0 and yields exactly 1/8 at alpha = 0.
/// Throws std::domain_error for alpha < 0.
double kappa(double alpha);

/// Location of the interior minimum of h_cubic: the smaller root of h'.
/// s1 = 3/(2*alpha + 3 + mu) lies in (0, 1/2]; at alpha = 0 this evaluates to
/// the limit value 1/2 exactly, so the whole range alpha >= 0 is accepted.
/// Throws std::domain_error for alpha < 0.
double critical_point_s1(double alpha);

/// Amplitude of the periodic zero-IC orbit: the smallest root of h_cubic in
/// (0, 1). Found by damped regula falsi on the bracket (0, s1]; at
/// K = kappa(alpha) exactly the root is double and equals s1.
/// Throws RegimeError if K > kappa(alpha), RestError if K = 0.
double amplitude_x_max(const OscParams& q);

/// Apply the threshold: Rest / Periodic (with amplitude) / PullIn.
/// The comparison K vs kappa(alpha) is exact, with no tolerance band; callers
/// needing robustness near the boundary should inspect margin.
Regime classify(const OscParams& q);

/// Voltage at which the device's K reaches kappa(alpha):
///   V = sqrt(2*E*A_c*d^3*kappa(alpha) / (eps0*A*L))
/// Independent of the configured V_dc.
double pull_in_voltage(const DeviceParams& p);

/// The classical static pull-in constant 4/27, for comparison reports. The
/// dynamic threshold is strictly below it for every alpha.
double static_pull_in_reference();

} // namespace pullin
