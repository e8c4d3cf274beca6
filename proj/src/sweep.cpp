#include "pullin/sweep.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pullin/errors.hpp"
#include "pullin/quadrature.hpp"

namespace pullin {

namespace {

const char* regime_name(RegimeKind kind) {
    switch (kind) {
    case RegimeKind::Rest: return "Rest";
    case RegimeKind::Periodic: return "Periodic";
    default: return "PullIn";
    }
}

const char* method_name(PullinTimeMethod m) {
    return m == PullinTimeMethod::Quadrature ? "quadrature" : "simulate";
}

// Event time at the default delta, retrying with a longer horizon when the
// first run completes without pull-in (possible just above the threshold,
// where the trajectory lingers near the double root).
double simulated_pull_in_time(const OscParams& q) {
    SimConfig c;
    c.q = q;
    for (double t_end = 50.0; t_end <= 800.0; t_end *= 2.0) {
        c.t_end = t_end;
        const Trajectory traj = simulate(c);
        if (traj.outcome == SimOutcome::PullInDetected) return *traj.t_event;
    }
    throw NoConvergenceError("no pull-in event before t = 800");
}

double pull_in_time_by(const OscParams& q, PullinTimeMethod method) {
    return method == PullinTimeMethod::Quadrature ? pull_in_time(q)
                                                  : simulated_pull_in_time(q);
}

} // namespace

std::vector<double> linear_grid(double lo, double hi, int n) {
    if (!(std::isfinite(lo) && lo >= 0.0)) throw std::domain_error("grid start must be >= 0");
    if (!(std::isfinite(hi) && hi >= lo)) throw std::domain_error("grid end must be >= start");
    if (lo == hi) return {lo};
    if (n < 2) throw std::domain_error("grid needs at least 2 points");
    std::vector<double> out(static_cast<size_t>(n));
    const double span = hi - lo;
    for (int i = 0; i < n; ++i)
        out[static_cast<size_t>(i)] = lo + span * static_cast<double>(i) / static_cast<double>(n - 1);
    out.back() = hi;
    return out;
}

SweepGrid compute_sweep(const std::vector<double>& alpha_values,
                        const std::vector<double>& K_values) {
    SweepGrid grid{alpha_values, K_values, {}};
    grid.cells.reserve(alpha_values.size() * K_values.size());
    for (const double alpha : alpha_values) {
        for (const double K : K_values) {
            const OscParams q{alpha, K};
            SweepCell cell{classify(q), std::nullopt, std::nullopt, false};
            switch (cell.regime.kind) {
            case RegimeKind::Rest:
                break;
            case RegimeKind::Periodic:
                try {
                    cell.period = period(q);
                } catch (const DivergentPeriodError&) {
                    cell.divergent_period = true;
                }
                break;
            case RegimeKind::PullIn:
                cell.pull_in_time = pull_in_time(q);
                break;
            }
            grid.cells.push_back(std::move(cell));
        }
    }
    return grid;
}

Table classify_report(double alpha, double K) {
    const OscParams q{alpha, K};
    const Regime r = classify(q);

    Table t;
    t.columns = {"alpha", "K",     "kappa", "static_pull_in_K", "regime",
                 "margin", "x_max", "period", "pull_in_time"};
    std::vector<Cell> row{alpha,
                          K,
                          kappa(alpha),
                          static_pull_in_reference(),
                          regime_name(r.kind),
                          r.margin,
                          std::monostate{},
                          std::monostate{},
                          std::monostate{}};
    if (r.x_max) row[6] = *r.x_max;
    if (r.kind == RegimeKind::Periodic) {
        try {
            row[7] = period(q);
        } catch (const DivergentPeriodError&) {
            row[7] = "divergent";
        }
    } else if (r.kind == RegimeKind::PullIn) {
        row[8] = pull_in_time(q);
    }
    t.rows.push_back(std::move(row));
    return t;
}

Table kappa_curve_table(double alpha_min, double alpha_max, int n) {
    Table t;
    t.columns = {"alpha", "kappa"};
    for (const double alpha : linear_grid(alpha_min, alpha_max, n))
        t.rows.push_back({alpha, kappa(alpha)});
    return t;
}

Table trajectory_table(const Trajectory& traj) {
    const SimConfig& c = traj.config;
    Table t;
    t.params = {{"alpha", c.q.alpha}, {"K", c.q.K},           {"x0", c.x0},
                {"v0", c.v0},         {"t_end", c.t_end},     {"rel_tol", c.rel_tol},
                {"abs_tol", c.abs_tol}, {"pull_in_delta", c.pull_in_delta}};
    t.columns = {"t", "x", "v"};
    t.rows.reserve(traj.samples.size());
    for (const Sample& s : traj.samples) t.rows.push_back({s.t, s.x, s.v});
    t.outcome.emplace_back("outcome", traj.outcome == SimOutcome::PullInDetected
                                          ? "PullInDetected"
                                          : "Completed");
    if (traj.t_event) t.outcome.emplace_back("t_event", *traj.t_event);
    t.outcome.emplace_back("steps_accepted", static_cast<std::int64_t>(traj.stats.steps_accepted));
    t.outcome.emplace_back("steps_rejected", static_cast<std::int64_t>(traj.stats.steps_rejected));
    t.outcome.emplace_back("rhs_evaluations", static_cast<std::int64_t>(traj.stats.rhs_evaluations));
    return t;
}

Table period_report(double alpha, double K) {
    const OscParams q{alpha, K};
    const double x_max = amplitude_x_max(q);
    const double T = period(q);
    Table t;
    t.columns = {"alpha", "K", "x_max", "period"};
    t.rows.push_back({alpha, K, x_max, T});
    return t;
}

Table pullin_time_report(double alpha, double K, PullinTimeMethod method) {
    const OscParams q{alpha, K};
    if (classify(q).kind != RegimeKind::PullIn)
        throw RegimeError("K at or below threshold: the trajectory never pulls in");
    Table t;
    t.params = {{"method", method_name(method)}};
    t.columns = {"alpha", "K", "t_pull_in"};
    t.rows.push_back({alpha, K, pull_in_time_by(q, method)});
    return t;
}

Table pullin_time_sweep_table(double K, double alpha_min, double alpha_max,
                              int n, PullinTimeMethod method) {
    if (!(std::isfinite(K) && K >= 0.0)) throw std::domain_error("K must be >= 0");
    Table t;
    t.params = {{"K", K}, {"method", method_name(method)}};
    t.columns = {"alpha", "t_pull_in"};
    for (const double alpha : linear_grid(alpha_min, alpha_max, n)) {
        const OscParams q{alpha, K};
        Cell value = "regime-error";
        if (classify(q).kind == RegimeKind::PullIn) value = pull_in_time_by(q, method);
        t.rows.push_back({alpha, std::move(value)});
    }
    return t;
}

Table sweep_table(const SweepGrid& grid) {
    Table t;
    t.columns = {"alpha", "K", "regime", "x_max", "period", "pull_in_time"};
    const size_t K_n = grid.K_values.size();
    for (size_t i = 0; i < grid.alpha_values.size(); ++i) {
        for (size_t j = 0; j < K_n; ++j) {
            const SweepCell& cell = grid.cells[i * K_n + j];
            std::vector<Cell> row{grid.alpha_values[i],
                                  grid.K_values[j],
                                  regime_name(cell.regime.kind),
                                  std::monostate{},
                                  std::monostate{},
                                  std::monostate{}};
            if (cell.regime.x_max) row[3] = *cell.regime.x_max;
            if (cell.period) row[4] = *cell.period;
            if (cell.divergent_period) row[4] = "divergent";
            if (cell.pull_in_time) row[5] = *cell.pull_in_time;
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

Table voltage_report(const DeviceParams& device) {
    const DeviceParams p = validated(device);
    const Nondimensional nd = nondimensionalize(p);
    const double threshold = kappa(nd.params.alpha);
    const double v_pull_in = pull_in_voltage(p);

    const char* status = "at-pull-in";
    if (p.V_dc < v_pull_in) status = "below-pull-in";
    else if (p.V_dc > v_pull_in) status = "above-pull-in";

    Table t;
    t.params = {{"E_pa", p.E},
                {"D_pa", p.D},
                {"sigma_max_pa", p.sigma_max},
                {"Ac_m2", p.A_c},
                {"A_m2", p.A},
                {"L_m", p.L},
                {"d_m", p.d},
                {"m_kg", p.m},
                {"eps0_f_per_m", p.eps0},
                {"Vdc_v", p.V_dc}};
    t.columns = {"alpha", "K", "kappa", "static_pull_in_K", "V_dc", "V_pull_in", "status"};
    t.rows.push_back({nd.params.alpha, nd.params.K, threshold, static_pull_in_reference(),
                      p.V_dc, v_pull_in, status});
    return t;
}

} // namespace pullin
