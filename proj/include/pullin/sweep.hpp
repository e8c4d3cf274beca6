#pragma once

#include <vector>

#include "pullin/bifurcation.hpp"
#include "pullin/model.hpp"
#include "pullin/simulator.hpp"
#include "pullin/table.hpp"

namespace pullin {

/// How a pull-in time is obtained: the singular integral, or the ODE event
/// with the default delta. The two must agree to 1e-4 relative away from the
/// threshold, which the tests enforce.
enum class PullinTimeMethod { Quadrature, Simulate };

/// One grid point of a regime map. period carries a value only for periodic
/// cells off the threshold; divergent_period marks periodic cells whose
/// period integral diverges (K at or within 1e-12 of kappa).
struct SweepCell {
    Regime regime;
    std::optional<double> period;
    std::optional<double> pull_in_time;
    bool divergent_period = false;
};

/// Regime map over the cross product alpha_values x K_values. cells is
/// row-major: cells[i * K_values.size() + j] belongs to
/// (alpha_values[i], K_values[j]); one cell per grid point, always.
struct SweepGrid {
    std::vector<double> alpha_values;
    std::vector<double> K_values;
    std::vector<SweepCell> cells;
};

SweepGrid compute_sweep(const std::vector<double>& alpha_values,
                        const std::vector<double>& K_values);

/// Linear grid with exact endpoints; a degenerate lo == hi range collapses
/// to a single point regardless of n. Grids feed the alpha and K axes, so
/// negative starts are rejected (std::domain_error), as is n < 2 for a
/// non-degenerate range.
std::vector<double> linear_grid(double lo, double hi, int n);

/// Single-row report for one (alpha, K) pair: regime, threshold, margin, the
/// static reference 4/27, and whichever of x_max/period/pull_in_time the
/// regime admits. A divergent period renders as the marker "divergent".
Table classify_report(double alpha, double K);

/// Rows (alpha, kappa) on a linear grid. A degenerate range
/// alpha_min == alpha_max yields a single row; otherwise n >= 2 points with
/// the endpoints hit exactly.
Table kappa_curve_table(double alpha_min, double alpha_max, int n);

/// Samples of one run plus its outcome footer. params echo the full
/// configuration so the file alone reproduces the run.
Table trajectory_table(const Trajectory& traj);

/// Single-row report (alpha, K, x_max, period) for a periodic pair.
/// Regime errors propagate.
Table period_report(double alpha, double K);

/// Single-row report (alpha, K, t_pull_in) for a pair above the threshold.
Table pullin_time_report(double alpha, double K, PullinTimeMethod method);

/// Rows (alpha, t_pull_in) at fixed K over a linear alpha grid. Grid points
/// at or below the threshold get the marker "regime-error" instead of a
/// number; the sweep itself never fails on them.
Table pullin_time_sweep_table(double K, double alpha_min, double alpha_max,
                              int n, PullinTimeMethod method);

/// Rows (alpha, K, regime, x_max, period, pull_in_time) in grid order.
Table sweep_table(const SweepGrid& grid);

/// Single-row report for a device: nondimensional alpha and K, the
/// threshold, the pull-in voltage, and where the configured bias sits
/// relative to it. params echo the device in config-file keys so the output
/// can be fed back as a config.
Table voltage_report(const DeviceParams& device);

} // namespace pullin
