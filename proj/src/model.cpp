#include "pullin/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pullin {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::domain_error(msg);
}

bool positive_finite(double x) {
    return std::isfinite(x) && x > 0.0;
}

void check_params(const OscParams& q) {
    require(std::isfinite(q.alpha) && q.alpha >= 0.0, "alpha must be >= 0");
    require(std::isfinite(q.K) && q.K >= 0.0, "K must be >= 0");
}

} // namespace

DeviceParams validated(DeviceParams p) {
    require(positive_finite(p.E), "E must be strictly positive");
    require(positive_finite(p.A_c), "A_c must be strictly positive");
    require(positive_finite(p.A), "A must be strictly positive");
    require(positive_finite(p.L), "L must be strictly positive");
    require(positive_finite(p.d), "d must be strictly positive");
    require(positive_finite(p.m), "m must be strictly positive");
    require(positive_finite(p.eps0), "eps0 must be strictly positive");
    require(std::isfinite(p.V_dc) && p.V_dc >= 0.0, "V_dc must be >= 0");

    const bool have_D = !std::isnan(p.D);
    const bool have_sigma = !std::isnan(p.sigma_max);
    require(have_D || have_sigma, "one of D or sigma_max is required");

    if (have_D) {
        require(std::isfinite(p.D) && p.D >= 0.0, "D must be >= 0");
    }
    if (have_sigma) {
        // +inf is the legitimate conjugate of D = 0.
        require(p.sigma_max > 0.0, "sigma_max must be strictly positive");
    }

    if (have_D && have_sigma) {
        const double derived = p.E * p.E / (4.0 * p.sigma_max);
        const double scale = std::max(std::abs(p.D), std::abs(derived));
        require(std::abs(p.D - derived) <= 1e-12 * scale,
                "D and sigma_max are inconsistent: expected D = E^2/(4*sigma_max)");
    } else if (have_D) {
        p.sigma_max = p.D > 0.0 ? p.E * p.E / (4.0 * p.D)
                                : std::numeric_limits<double>::infinity();
    } else {
        p.D = std::isinf(p.sigma_max) ? 0.0 : p.E * p.E / (4.0 * p.sigma_max);
    }
    return p;
}

Nondimensional nondimensionalize(const DeviceParams& raw) {
    const DeviceParams p = validated(raw);
    Nondimensional n;
    n.params.K = p.eps0 * p.A * p.L * p.V_dc * p.V_dc / (2.0 * p.E * p.A_c * p.d * p.d * p.d);
    n.params.alpha = p.D * p.d / (p.E * p.L);
    n.time_scale = std::sqrt(p.E * p.A_c / (p.m * p.L));
    n.length_scale = p.d;
    return n;
}

Forces dimensional_forces(const DeviceParams& raw, double x) {
    const DeviceParams p = validated(raw);
    require(std::isfinite(x) && x < p.d, "displacement must be below the gap");
    const double strain = x / p.L;
    Forces f;
    f.restoring = -p.E * p.A_c * strain + p.D * p.A_c * std::abs(strain) * strain;
    f.coulomb = p.eps0 * p.A * p.V_dc * p.V_dc / (2.0 * (p.d - x) * (p.d - x));
    return f;
}

State rhs(const State& s, const OscParams& q) {
    check_params(q);
    require(std::isfinite(s.x) && s.x < 1.0, "x must be < 1");
    const double g = 1.0 - s.x;
    return {s.v, -s.x + q.alpha * std::abs(s.x) * s.x + q.K / (g * g)};
}

double energy(const State& s, const OscParams& q) {
    check_params(q);
    require(std::isfinite(s.x) && s.x < 1.0, "x must be < 1");
    return 0.5 * s.v * s.v + 0.5 * s.x * s.x
         - q.alpha * std::abs(s.x) * s.x * s.x / 3.0
         - q.K / (1.0 - s.x);
}

double f_envelope(double s, const OscParams& q) {
    check_params(q);
    require(std::isfinite(s) && s >= 0.0 && s < 1.0, "s must lie in [0, 1)");
    return s * h_cubic(s, q) / (1.0 - s);
}

double h_cubic(double s, const OscParams& q) {
    check_params(q);
    const double c3 = (2.0 / 3.0) * q.alpha;
    return 2.0 * q.K + s * (-1.0 + s * ((c3 + 1.0) - s * c3));
}

} // namespace pullin
