#include "pullin/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pullin/errors.hpp"
#include "pullin/quadrature.hpp"

namespace pullin {

namespace {

// Dormand-Prince 5(4) tableau. b is the propagated 5th-order solution;
// e = b - b_hat gives the embedded error estimate directly.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// The forcing term is singular at x = 1; stages beyond this line are treated
// as a failed step rather than evaluated.
constexpr double domain_edge = 1.0 - 1e-13;

struct Deriv {
    double dx, dv;
};

double acceleration(const OscParams& q, double x) {
    const double g = 1.0 - x;
    return -x + q.alpha * std::abs(x) * x + q.K / (g * g);
}

// Cubic Hermite value of x on a step of width h; tau in [0, 1].
double cubic_x(double tau, double h, const Sample& s0, const Sample& s1) {
    const double t2 = tau * tau, t3 = t2 * tau;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * s0.x + (t3 - 2.0 * t2 + tau) * h * s0.v
         + (-2.0 * t3 + 3.0 * t2) * s1.x + (t3 - t2) * h * s1.v;
}

double cubic_xdot(double tau, double h, const Sample& s0, const Sample& s1) {
    const double t2 = tau * tau;
    return ((6.0 * t2 - 6.0 * tau) * s0.x + (3.0 * t2 - 4.0 * tau + 1.0) * h * s0.v
          + (-6.0 * t2 + 6.0 * tau) * s1.x + (3.0 * t2 - 2.0 * tau) * h * s1.v) / h;
}

// Quintic Hermite matching x, v and the acceleration a at both step ends.
// Its derivative is accurate to O(h^5), which the period and amplitude
// refiners rely on; the cubic above is only O(h^3) there.
struct Quintic {
    double h;
    double x0, c1, c2, x1, c4, c5; // x0, h*v0, h^2*a0/?, ... in basis form

    Quintic(double h_, const Sample& s0, const Sample& s1, double a0, double a1)
        : h(h_), x0(s0.x), c1(h_ * s0.v), c2(h_ * h_ * a0), x1(s1.x),
          c4(h_ * s1.v), c5(h_ * h_ * a1) {}

    double value(double tau) const {
        const double t2 = tau * tau, t3 = t2 * tau, t4 = t3 * tau, t5 = t4 * tau;
        const double H0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
        const double H1 = tau - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
        const double H2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
        const double H3 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
        const double H4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
        const double H5 = 0.5 * t3 - t4 + 0.5 * t5;
        return H0 * x0 + H1 * c1 + H2 * c2 + H3 * x1 + H4 * c4 + H5 * c5;
    }

    double deriv(double tau) const { // dx/dt
        const double t2 = tau * tau, t3 = t2 * tau, t4 = t3 * tau;
        const double d0 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
        const double d1 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
        const double d2 = tau - 4.5 * t2 + 6.0 * t3 - 2.5 * t4;
        const double d3 = 30.0 * t2 - 60.0 * t3 + 30.0 * t4;
        const double d4 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
        const double d5 = 1.5 * t2 - 4.0 * t3 + 2.5 * t4;
        return (d0 * x0 + d1 * c1 + d2 * c2 + d3 * x1 + d4 * c4 + d5 * c5) / h;
    }
};

void validate(const SimConfig& c) {
    auto bad = [](const char* msg) { throw std::domain_error(msg); };
    if (!(std::isfinite(c.q.alpha) && c.q.alpha >= 0.0)) bad("alpha must be >= 0");
    if (!(std::isfinite(c.q.K) && c.q.K >= 0.0)) bad("K must be >= 0");
    if (!(std::isfinite(c.x0) && c.x0 < 1.0)) bad("x0 must be < 1");
    if (!std::isfinite(c.v0)) bad("v0 must be finite");
    if (!(std::isfinite(c.t_end) && c.t_end > 0.0)) bad("t_end must be positive");
    if (!(std::isfinite(c.rel_tol) && c.rel_tol > 0.0)) bad("rel_tol must be positive");
    if (!(std::isfinite(c.abs_tol) && c.abs_tol > 0.0)) bad("abs_tol must be positive");
    if (!(c.pull_in_delta > 0.0 && c.pull_in_delta < 1.0)) bad("pull_in_delta must lie in (0, 1)");
}

} // namespace

Trajectory simulate(const SimConfig& c) {
    validate(c);
    const double alpha = c.q.alpha, K = c.q.K;
    const double event_level = 1.0 - c.pull_in_delta;

    Trajectory traj;
    traj.config = c;
    traj.samples.push_back({0.0, c.x0, c.v0});

    if (c.x0 >= event_level) {
        // released at or past the event line
        traj.outcome = SimOutcome::PullInDetected;
        traj.t_event = 0.0;
        return traj;
    }

    auto deriv = [alpha, K](double x, double v) -> Deriv {
        const double g = 1.0 - x;
        return {v, -x + alpha * std::abs(x) * x + K / (g * g)};
    };

    double t = 0.0, x = c.x0, v = c.v0;
    Deriv k1 = deriv(x, v);
    ++traj.stats.rhs_evaluations;

    double h = std::min(1e-3, c.t_end / 1000.0);
    bool previous_rejected = false;

    while (t < c.t_end) {
        h = std::min(h, c.t_end - t);
        if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0))
            throw StepUnderflowError("step size underflow near the electrode singularity");

        // Stage cascade; any stage leaving the domain fails the whole step.
        Deriv k2{}, k3{}, k4{}, k5{}, k6{}, k7{};
        double x5 = 0.0, v5 = 0.0;
        bool stage_ok = true;
        auto stage = [&](double xa, double va, Deriv& out) {
            if (xa >= domain_edge) {
                stage_ok = false;
                return;
            }
            out = deriv(xa, va);
            ++traj.stats.rhs_evaluations;
        };

        stage(x + h * a21 * k1.dx, v + h * a21 * k1.dv, k2);
        if (stage_ok)
            stage(x + h * (a31 * k1.dx + a32 * k2.dx),
                  v + h * (a31 * k1.dv + a32 * k2.dv), k3);
        if (stage_ok)
            stage(x + h * (a41 * k1.dx + a42 * k2.dx + a43 * k3.dx),
                  v + h * (a41 * k1.dv + a42 * k2.dv + a43 * k3.dv), k4);
        if (stage_ok)
            stage(x + h * (a51 * k1.dx + a52 * k2.dx + a53 * k3.dx + a54 * k4.dx),
                  v + h * (a51 * k1.dv + a52 * k2.dv + a53 * k3.dv + a54 * k4.dv), k5);
        if (stage_ok)
            stage(x + h * (a61 * k1.dx + a62 * k2.dx + a63 * k3.dx + a64 * k4.dx + a65 * k5.dx),
                  v + h * (a61 * k1.dv + a62 * k2.dv + a63 * k3.dv + a64 * k4.dv + a65 * k5.dv), k6);
        if (stage_ok) {
            x5 = x + h * (b1 * k1.dx + b3 * k3.dx + b4 * k4.dx + b5 * k5.dx + b6 * k6.dx);
            v5 = v + h * (b1 * k1.dv + b3 * k3.dv + b4 * k4.dv + b5 * k5.dv + b6 * k6.dv);
            stage(x5, v5, k7); // FSAL: becomes k1 of the next step
        }

        if (!stage_ok) {
            ++traj.stats.steps_rejected;
            previous_rejected = true;
            h *= 0.5;
            continue;
        }

        const double err_x = h * (e1 * k1.dx + e3 * k3.dx + e4 * k4.dx + e5 * k5.dx
                                + e6 * k6.dx + e7 * k7.dx);
        const double err_v = h * (e1 * k1.dv + e3 * k3.dv + e4 * k4.dv + e5 * k5.dv
                                + e6 * k6.dv + e7 * k7.dv);
        const double sc_x = c.abs_tol + c.rel_tol * std::max(std::abs(x), std::abs(x5));
        const double sc_v = c.abs_tol + c.rel_tol * std::max(std::abs(v), std::abs(v5));
        const double rx = err_x / sc_x, rv = err_v / sc_v;
        const double err = std::sqrt(0.5 * (rx * rx + rv * rv));

        if (err > 1.0) {
            ++traj.stats.steps_rejected;
            previous_rejected = true;
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            continue;
        }

        const Sample prev{t, x, v};
        const double t_new = t + h;
        const Sample cur{t_new, x5, v5};
        ++traj.stats.steps_accepted;

        if (x5 >= event_level) {
            // The event level was crossed inside this step; bisect the cubic
            // interpolant for the crossing time. The interpolant matches both
            // endpoints, so the bracket is genuine.
            const double t_tol = std::max(c.abs_tol, 4.0 * std::numeric_limits<double>::epsilon()
                                                       * std::max(std::abs(t_new), 1.0));
            double lo = 0.0, hi = 1.0;
            while ((hi - lo) * h > t_tol) {
                const double mid = 0.5 * (lo + hi);
                if (cubic_x(mid, h, prev, cur) >= event_level)
                    hi = mid;
                else
                    lo = mid;
            }
            const double tau = hi;
            const double t_ev = t + tau * h;
            traj.samples.push_back({t_ev, cubic_x(tau, h, prev, cur),
                                    cubic_xdot(tau, h, prev, cur)});
            traj.outcome = SimOutcome::PullInDetected;
            traj.t_event = t_ev;
            return traj;
        }

        traj.samples.push_back(cur);
        t = t_new;
        x = x5;
        v = v5;
        k1 = k7;

        double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
        fac = std::clamp(fac, 0.2, previous_rejected ? 1.0 : 5.0);
        previous_rejected = false;
        h *= fac;
    }

    traj.outcome = SimOutcome::Completed;
    return traj;
}

double detect_period(const Trajectory& traj) {
    if (traj.outcome != SimOutcome::Completed)
        throw std::domain_error("period detection requires a completed trajectory");
    if (traj.samples.size() < 2)
        throw NoPeriodError("trajectory too short to contain a cycle");
    const Sample first = traj.samples.front();
    if (first.v != 0.0)
        throw std::domain_error("period detection requires a start from rest (v0 = 0)");
    const OscParams q = traj.config.q;

    double x_lo = first.x, x_hi = first.x;
    for (const Sample& s : traj.samples) {
        x_lo = std::min(x_lo, s.x);
        x_hi = std::max(x_hi, s.x);
    }
    const double range = x_hi - x_lo;
    if (range == 0.0) throw NoPeriodError("state never moved, no cycle to measure");

    // The release direction decides which turning point t = 0 sits on; only
    // crossings of the same direction close a full cycle. An equilibrium
    // release has zero acceleration; fall back to the first nonzero velocity.
    double dir = acceleration(q, first.x);
    for (std::size_t i = 1; i < traj.samples.size() && dir == 0.0; ++i)
        dir = traj.samples[i].v;
    if (dir == 0.0) throw NoPeriodError("velocity never left zero, no cycle to measure");
    const bool rising = dir > 0.0;

    std::vector<double> crossings;
    crossings.push_back(first.t);
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const Sample& s0 = traj.samples[i - 1];
        const Sample& s1 = traj.samples[i];
        const bool cross = rising ? (s0.v < 0.0 && s1.v >= 0.0)
                                  : (s0.v > 0.0 && s1.v <= 0.0);
        if (!cross) continue;

        const double h = s1.t - s0.t;
        const Quintic qx(h, s0, s1, acceleration(q, s0.x), acceleration(q, s1.x));
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 64; ++it) {
            const double mid = 0.5 * (lo + hi);
            const bool past = rising ? qx.deriv(mid) >= 0.0 : qx.deriv(mid) <= 0.0;
            (past ? hi : lo) = mid;
        }
        const double tau = 0.5 * (lo + hi);
        if (std::abs(qx.value(tau) - first.x) > 0.25 * range) continue; // opposite turning point
        crossings.push_back(s0.t + tau * h);
    }

    if (crossings.size() < 2)
        throw NoPeriodError("fewer than two qualifying velocity crossings");
    return (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
}

double peak_displacement(const Trajectory& traj) {
    if (traj.samples.empty()) throw std::domain_error("empty trajectory");
    const OscParams q = traj.config.q;

    double best = traj.samples.front().x;
    for (const Sample& s : traj.samples) best = std::max(best, s.x);

    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const Sample& s0 = traj.samples[i - 1];
        const Sample& s1 = traj.samples[i];
        if (!(s0.v > 0.0 && s1.v <= 0.0)) continue; // apex: v falls through zero
        const double h = s1.t - s0.t;
        const Quintic qx(h, s0, s1, acceleration(q, s0.x), acceleration(q, s1.x));
        double lo = 0.0, hi = 1.0; // deriv(lo) > 0 >= deriv(hi)
        for (int it = 0; it < 64; ++it) {
            const double mid = 0.5 * (lo + hi);
            (qx.deriv(mid) <= 0.0 ? hi : lo) = mid;
        }
        best = std::max(best, qx.value(0.5 * (lo + hi)));
    }
    return best;
}

std::vector<PortraitCurve> phase_portrait(double alpha,
                                          const std::vector<double>& K_list,
                                          const PortraitOptions& opt) {
    std::vector<PortraitCurve> curves;
    curves.reserve(K_list.size());
    for (const double K : K_list) {
        const OscParams q{alpha, K};
        PortraitCurve curve{K, classify(q), {}};
        if (curve.regime.kind == RegimeKind::Rest) {
            curve.points.push_back({0.0, 0.0, 0.0});
        } else {
            double t_end = opt.max_time;
            if (curve.regime.kind == RegimeKind::Periodic) {
                try {
                    t_end = period(q);
                } catch (const DivergentPeriodError&) {
                    // boundary orbit: run to the cap instead
                }
            }
            SimConfig c;
            c.q = q;
            c.t_end = t_end;
            c.rel_tol = opt.rel_tol;
            c.abs_tol = opt.abs_tol;
            c.pull_in_delta = opt.pull_in_delta;
            curve.points = simulate(c).samples;
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

} // namespace pullin
