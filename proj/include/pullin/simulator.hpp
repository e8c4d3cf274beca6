#pragma once

#include <optional>
#include <vector>

#include "pullin/bifurcation.hpp"
#include "pullin/model.hpp"

namespace pullin {

/// Inputs for one integration run. Defaults mirror the tight tolerances the
/// analysis is validated against; pull_in_delta is the event level 1 - delta
/// at which a collapsing trajectory is stopped (the equation is singular at
/// x = 1, so the event must fire strictly before it).
struct SimConfig {
    OscParams q;
    double x0 = 0.0;
    double v0 = 0.0;
    double t_end = 50.0;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double pull_in_delta = 1e-6;
};

enum class SimOutcome {
    Completed,      ///< reached t_end with x < 1 - delta throughout
    PullInDetected  ///< crossed x = 1 - delta; t_event holds the crossing time
};

struct Sample {
    double t, x, v;
};

struct SimStats {
    long steps_accepted = 0;
    long steps_rejected = 0;
    long rhs_evaluations = 0;
};

/// One accepted sample per step, strictly increasing in t, every x < 1.
/// When pull-in is detected the final sample sits on the event level
/// (up to interpolation tolerance) and t_event is set. config echoes the
/// inputs so the result is self-describing; the crossing refiners below
/// need it to rebuild accelerations between samples.
struct Trajectory {
    std::vector<Sample> samples;
    SimOutcome outcome = SimOutcome::Completed;
    std::optional<double> t_event;
    SimStats stats;
    SimConfig config;
};

/// Integrate x' = v, v' = -x + alpha*|x|*x + K/(1-x)^2 with a Dormand-Prince
/// 5(4) embedded pair, mixed absolute/relative per-step error control and
/// FSAL reuse. After each accepted step the continuous (cubic Hermite)
/// solution is checked against the event level; a crossing is located by
/// bisection on the interpolant to within abs_tol in time.
/// Throws std::domain_error on invalid config and StepUnderflowError if the
/// controller stalls (only possible pathologically close to x = 1).
Trajectory simulate(const SimConfig& c);

/// Period measured from a completed run started from rest (first sample must
/// have v = 0): velocity zero crossings of the same direction as the release
/// are refined on a two-derivative (quintic Hermite) interpolant, crossings
/// at the opposite turning point are rejected, and the mean cycle over all
/// qualifying crossings is returned (>= 3 cycles when the run is long
/// enough). The quintic keeps the refinement error well below the solver's
/// own accuracy; the derivative of the cubic used for event location would
/// dominate it.
/// Throws std::domain_error if the trajectory did not complete or did not
/// start from rest, NoPeriodError if fewer than two qualifying crossings.
double detect_period(const Trajectory& traj);

/// Largest displacement along the trajectory, with each interior velocity
/// sign change refined through the quintic interpolant so the apex is not
/// limited by the step size.
double peak_displacement(const Trajectory& traj);

struct PortraitOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double pull_in_delta = 1e-6;
    double max_time = 200.0; ///< cap used when no finite period bounds the run
};

struct PortraitCurve {
    double K;
    Regime regime;
    std::vector<Sample> points;
};

/// One zero-IC curve per K value: periodic parameters are truncated after
/// one full period (from the period integral), pull-in parameters at the
/// event, rest at the single point (0, 0). Curves on the threshold itself
/// (divergent period) run to max_time.
std::vector<PortraitCurve> phase_portrait(double alpha,
                                          const std::vector<double>& K_list,
                                          const PortraitOptions& opt = {});

} // namespace pullin
