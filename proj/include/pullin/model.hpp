#pragma once

#include <limits>

namespace pullin {

/// Physical description of the device: a plate of mass m suspended over a
/// fixed electrode by a graphene strip, actuated by a DC voltage across the
/// gap. The strip's constitutive law is sigma = E*eps - D*|eps|*eps, so D
/// and the ultimate yield stress are tied by D = E^2/(4*sigma_max); exactly
/// one of the two may be left unset (NaN) and validated() derives it.
/// All quantities are SI.
struct DeviceParams {
    double E = 0;                                               ///< Young's modulus [Pa]
    double D = std::numeric_limits<double>::quiet_NaN();        ///< second-order elastic stiffness [Pa]
    double sigma_max = std::numeric_limits<double>::quiet_NaN();///< ultimate yield stress [Pa]
    double A_c = 0;                                             ///< strip cross-sectional area [m^2]
    double A = 0;                                               ///< plate area [m^2]
    double L = 0;                                               ///< strip length [m]
    double d = 0;                                               ///< capacitor gap at rest [m]
    double m = 0;                                               ///< plate mass [kg]
    double eps0 = 0;                                            ///< permittivity of the gap medium [F/m]
    double V_dc = 0;                                            ///< applied DC voltage [V]
};

/// Check all constraints on p and return a fully populated copy: whichever of
/// D / sigma_max is NaN is derived from the other. D = 0 describes a linear
/// spring and corresponds to sigma_max = +inf. If both are given they must
/// agree within 1e-12 relative. Geometry, mass and permittivity must be
/// strictly positive; D and V_dc may be zero.
/// Throws std::domain_error on any violation.
DeviceParams validated(DeviceParams p);

/// The two dimensionless parameters that drive the whole analysis:
/// alpha measures the quadratic softening of the spring, K the electrostatic
/// forcing. Both are nonnegative.
struct OscParams {
    double alpha = 0;
    double K = 0;
};

/// Dimensionless displacement/velocity pair. x is measured in units of the
/// gap, so x = 1 is contact; every dynamic operation requires x < 1.
struct State {
    double x = 0;
    double v = 0;
};

/// Result of nondimensionalize(): the parameter pair plus the scales needed
/// to map a dimensionless solution back to physical units.
struct Nondimensional {
    OscParams params;
    double time_scale;   ///< dimensionless time = physical time [s] * time_scale
    double length_scale; ///< dimensionless displacement = physical x [m] / length_scale (the gap d)
};

/// Map a physical device onto (alpha, K):
///   K     = eps0*A*L*V_dc^2 / (2*E*A_c*d^3)
///   alpha = D*d / (E*L)
/// Validates p first (see validated()).
Nondimensional nondimensionalize(const DeviceParams& p);

/// Restoring and electrostatic force on the plate at physical displacement x,
/// both in newtons. Positive x closes the gap; requires x < d.
struct Forces {
    double restoring;
    double coulomb;
};

Forces dimensional_forces(const DeviceParams& p, double x);

/// Right-hand side of the first-order system
///   x' = v
///   v' = -x + alpha*|x|*x + K/(1-x)^2
/// Throws std::domain_error at x >= 1 (electrostatic singularity) or on
/// negative alpha/K.
State rhs(const State& s, const OscParams& q);

/// First integral of the motion:
///   E = v^2/2 + x^2/2 - alpha*|x|*x^2/3 - K/(1-x)
/// Conserved exactly along solutions of rhs.
double energy(const State& s, const OscParams& q);

/// Velocity-squared envelope of the zero-initial-condition trajectory:
/// v^2 = f_envelope(x) while the motion stays on its first arc. Evaluated in
/// the factored form s*h_cubic(s)/(1-s), which is immune to the cancellation
/// that kills the expanded form near both s = 0 and s = 1.
/// Domain 0 <= s < 1.
double f_envelope(double s, const OscParams& q);

/// The cubic whose sign pattern decides everything:
///   h(s) = -(2/3)*alpha*s^3 + ((2/3)*alpha + 1)*s^2 - s + 2K
/// h(0) = h(1) = 2K; roots of h in (0,1) are turning points of the motion.
/// Defined for all s.
double h_cubic(double s, const OscParams& q);

} // namespace pullin
