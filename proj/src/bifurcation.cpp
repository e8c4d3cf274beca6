#include "pullin/bifurcation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pullin/errors.hpp"

namespace pullin {

namespace {

void check_alpha(double alpha) {
    if (!(std::isfinite(alpha) && alpha >= 0.0))
        throw std::domain_error("alpha must be >= 0");
}

void check_pair(const OscParams& q) {
    check_alpha(q.alpha);
    if (!(std::isfinite(q.K) && q.K >= 0.0))
        throw std::domain_error("K must be >= 0");
}

// Smallest root of h_cubic on a bracket with h(lo) > 0 > h(hi).
// Regula falsi with Illinois damping; the bracket shrinks superlinearly, so
// 200 iterations are far more than machine precision ever needs.
double h_root(const OscParams& q, double lo, double hi, double flo, double fhi) {
    for (int it = 0; it < 200; ++it) {
        double mid = flo != fhi ? lo - flo * (hi - lo) / (fhi - flo)
                                : 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
        const double fm = h_cubic(mid, q);
        if (fm == 0.0) return mid;
        if (fm > 0.0) {
            lo = mid;
            flo = fm;
            fhi *= 0.5;
        } else {
            hi = mid;
            fhi = fm;
            flo *= 0.5;
        }
        if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double critical_point_s1(double alpha) {
    check_alpha(alpha);
    const double mu = std::sqrt(4.0 * alpha * alpha - 6.0 * alpha + 9.0);
    return 3.0 / (2.0 * alpha + 3.0 + mu);
}

double kappa(double alpha) {
    check_alpha(alpha);
    const double s1 = critical_point_s1(alpha);
    const double c3 = (2.0 / 3.0) * alpha;
    // h(s1) = 0 solved for K; the bracket stays near 1/2, no cancellation.
    return 0.5 * s1 * (1.0 - s1 * ((c3 + 1.0) - s1 * c3));
}

double amplitude_x_max(const OscParams& q) {
    check_pair(q);
    if (q.K == 0.0) throw RestError("K = 0: motion is at rest, no amplitude");
    const double k = kappa(q.alpha);
    if (q.K > k) throw RegimeError("K above threshold: no turning point, the plate pulls in");

    const double s1 = critical_point_s1(q.alpha);
    if (q.K == k) return s1;

    const double f1 = h_cubic(s1, q); // equals 2*(K - kappa) up to rounding
    if (f1 >= 0.0) return s1;         // below threshold by less than rounding noise
    return h_root(q, 0.0, s1, 2.0 * q.K, f1);
}

Regime classify(const OscParams& q) {
    check_pair(q);
    const double k = kappa(q.alpha);
    if (q.K == 0.0) return {RegimeKind::Rest, k, std::nullopt};
    if (q.K > k) return {RegimeKind::PullIn, q.K - k, std::nullopt};
    return {RegimeKind::Periodic, k - q.K, amplitude_x_max(q)};
}

double pull_in_voltage(const DeviceParams& raw) {
    const DeviceParams p = validated(raw);
    const double alpha = p.D * p.d / (p.E * p.L);
    return std::sqrt(2.0 * p.E * p.A_c * p.d * p.d * p.d * kappa(alpha) / (p.eps0 * p.A * p.L));
}

double static_pull_in_reference() {
    return 4.0 / 27.0;
}

} // namespace pullin
