#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "helpers.hpp"
#include "pullin/errors.hpp"
#include "pullin/quadrature.hpp"
#include "pullin/simulator.hpp"

using namespace pullin;

namespace {

constexpr double pi = 3.14159265358979323846;

SimConfig zero_ic(double alpha, double K, double t_end = 50.0) {
    SimConfig c;
    c.q = {alpha, K};
    c.t_end = t_end;
    return c;
}

double energy_drift(const Trajectory& traj) {
    const OscParams q = traj.config.q;
    const double e0 = energy({traj.samples.front().x, traj.samples.front().v}, q);
    double worst = 0.0;
    for (const Sample& s : traj.samples)
        worst = std::max(worst, std::abs(energy({s.x, s.v}, q) - e0));
    return worst;
}

} // namespace

TEST_CASE("unforced linear oscillator reproduces the cosine solution") {
    SimConfig c = zero_ic(0.0, 0.0, 20.0);
    c.x0 = 0.1;
    const Trajectory traj = simulate(c);
    REQUIRE(traj.outcome == SimOutcome::Completed);
    for (const Sample& s : traj.samples) {
        CHECK(std::abs(s.x - 0.1 * std::cos(s.t)) < 1e-8);
        CHECK(std::abs(s.v + 0.1 * std::sin(s.t)) < 1e-8);
    }
    CHECK(std::abs(detect_period(traj) - 2.0 * pi) < 1e-8);
    CHECK(std::abs(peak_displacement(traj) - 0.1) < 1e-9);
}

TEST_CASE("trajectory structure: monotone time, bounded x, faithful endpoints") {
    const Trajectory traj = simulate(zero_ic(0.1, 0.1, 30.0));
    REQUIRE(traj.samples.size() >= 2);
    CHECK(traj.samples.front().t == 0.0);
    CHECK(traj.samples.front().x == 0.0);
    CHECK(traj.samples.front().v == 0.0);
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        CHECK(traj.samples[i].t > traj.samples[i - 1].t);
        CHECK(traj.samples[i].x < 1.0);
    }
    CHECK(traj.samples.back().t == doctest::Approx(30.0).epsilon(1e-14));
    CHECK(traj.outcome == SimOutcome::Completed);
    CHECK(!traj.t_event.has_value());

    // one sample per accepted step, FSAL costs six evaluations per attempt
    const long attempts = traj.stats.steps_accepted + traj.stats.steps_rejected;
    CHECK(traj.samples.size() == static_cast<std::size_t>(traj.stats.steps_accepted) + 1);
    CHECK(traj.stats.rhs_evaluations >= 1 + 6 * traj.stats.steps_accepted);
    CHECK(traj.stats.rhs_evaluations <= 1 + 6 * attempts);
    CHECK(traj.config.q.K == 0.1); // config echoed back
}

TEST_CASE("periodic regime: simulated period and amplitude match the integrals") {
    const Trajectory traj = simulate(zero_ic(0.0, 0.1, 40.0));
    REQUIRE(traj.outcome == SimOutcome::Completed);
    const double T = period({0.0, 0.1});
    CHECK(std::abs(detect_period(traj) - T) < 1e-6 * T);
    CHECK(std::abs(peak_displacement(traj) - amplitude_x_max({0.0, 0.1})) < 1e-8);

    const Trajectory soft = simulate(zero_ic(1.0, 0.05, 40.0));
    REQUIRE(soft.outcome == SimOutcome::Completed);
    const double Ts = period({1.0, 0.05});
    CHECK(std::abs(detect_period(soft) - Ts) < 1e-6 * Ts);
    CHECK(std::abs(peak_displacement(soft) - amplitude_x_max({1.0, 0.05})) < 1e-8);
}

TEST_CASE("orbit closes after one period") {
    const double T = period({0.0, 0.1});
    const Trajectory traj = simulate(zero_ic(0.0, 0.1, T));
    REQUIRE(traj.outcome == SimOutcome::Completed);
    CHECK(std::abs(traj.samples.back().x) < 1e-7);
    CHECK(std::abs(traj.samples.back().v) < 1e-7);
}

TEST_CASE("velocity squared follows the envelope on the opening arc") {
    const OscParams q{0.1, 0.1};
    const Trajectory traj = simulate(zero_ic(q.alpha, q.K, 30.0));
    const double xm = amplitude_x_max(q);
    const double T = period(q);
    bool checked_some = false;
    for (const Sample& s : traj.samples) {
        if (!(s.v > 0.0) || s.x < 0.05 * xm || s.x > 0.95 * xm) continue;
        if (s.t > 0.6 * T) break; // only the first rise
        CHECK(std::abs(s.v * s.v - f_envelope(s.x, q)) < 1e-8);
        checked_some = true;
    }
    CHECK(checked_some);
}

TEST_CASE("energy is conserved to the step tolerance") {
    CHECK(energy_drift(simulate(zero_ic(0.0, 0.1))) < 1e-8);
    CHECK(energy_drift(simulate(zero_ic(0.1, 0.1))) < 1e-8);
    CHECK(energy_drift(simulate(zero_ic(1.0, 0.05))) < 1e-8);
}

TEST_CASE("coarser tolerances degrade conservation proportionally") {
    SimConfig coarse = zero_ic(0.0, 0.1, 30.0);
    coarse.rel_tol = 1e-5;
    coarse.abs_tol = 1e-7;
    SimConfig fine = coarse;
    fine.rel_tol = 1e-7;
    fine.abs_tol = 1e-9;
    const double drift_coarse = energy_drift(simulate(coarse));
    const double drift_fine = energy_drift(simulate(fine));
    CHECK(drift_fine * 10.0 < drift_coarse);
}

TEST_CASE("pull-in regime: event fires and matches the singular integral") {
    const Trajectory traj = simulate(zero_ic(0.0, 0.126, 120.0));
    REQUIRE(traj.outcome == SimOutcome::PullInDetected);
    REQUIRE(traj.t_event.has_value());
    CHECK(*traj.t_event == traj.samples.back().t);
    // the event sample sits on the level, up to interpolation tolerance
    CHECK(traj.samples.back().x == doctest::Approx(1.0 - 1e-6).epsilon(1e-7));
    // delta = 1e-6 truncates the fall a few ns early; far below this bound
    CHECK(std::abs(*traj.t_event - pull_in_time({0.0, 0.126})) < 1e-6);
}

TEST_CASE("stronger forcing collapses sooner") {
    double prev = std::numeric_limits<double>::infinity();
    for (const double K : {0.2, 0.5, 1.0, 2.0}) {
        const Trajectory traj = simulate(zero_ic(0.0, K, 30.0));
        REQUIRE(traj.outcome == SimOutcome::PullInDetected);
        CHECK(*traj.t_event < prev);
        prev = *traj.t_event;
    }
}

TEST_CASE("release past the event level is pull-in at t = 0") {
    SimConfig c = zero_ic(0.0, 0.1);
    c.x0 = 1.0 - 1e-7; // above 1 - delta
    const Trajectory traj = simulate(c);
    CHECK(traj.outcome == SimOutcome::PullInDetected);
    CHECK(traj.t_event == 0.0);
    CHECK(traj.samples.size() == 1);
}

TEST_CASE("config validation") {
    auto broken = [](auto&& set) {
        SimConfig c = zero_ic(0.0, 0.1);
        set(c);
        return c;
    };
    CHECK_THROWS_AS(simulate(broken([](SimConfig& c) { c.q.alpha = -1.0; })), std::domain_error);
    CHECK_THROWS_AS(simulate(broken([](SimConfig& c) { c.q.K = -0.1; })), std::domain_error);
    CHECK_THROWS_AS(simulate(broken([](SimConfig& c) { c.x0 = 1.0; })), std::domain_error);
    CHECK_THROWS_AS(simulate(broken([](SimConfig& c) { c.v0 = std::nan(""); })), std::domain_error);
    CHECK_THROWS_AS(simulate(broken([](SimConfig& c) { c.t_end = 0.0; })), std::domain_error);
    CHECK_THROWS_AS(simulate(broken([](SimConfig& c) { c.rel_tol = 0.0; })), std::domain_error);
    CHECK_THROWS_AS(simulate(broken([](SimConfig& c) { c.abs_tol = -1e-12; })), std::domain_error);
    CHECK_THROWS_AS(simulate(broken([](SimConfig& c) { c.pull_in_delta = 0.0; })), std::domain_error);
    CHECK_THROWS_AS(simulate(broken([](SimConfig& c) { c.pull_in_delta = 1.0; })), std::domain_error);
}

TEST_CASE("an event level inside the singularity guard band cannot be reached") {
    // delta = 1e-14 places the level beyond the stage guard; the controller
    // must fail loudly instead of reporting a fake event
    SimConfig c = zero_ic(0.0, 2.0, 5.0);
    c.pull_in_delta = 1e-14;
    CHECK_THROWS_AS(simulate(c), StepUnderflowError);
}

TEST_CASE("period detection preconditions") {
    // pull-in run: no period
    const Trajectory fell = simulate(zero_ic(0.0, 1.0, 30.0));
    CHECK_THROWS_AS(detect_period(fell), std::domain_error);

    // not released from rest
    SimConfig moving = zero_ic(0.0, 0.1, 30.0);
    moving.v0 = 0.05;
    CHECK_THROWS_AS(detect_period(simulate(moving)), std::domain_error);

    // too short to close a cycle: half a period has only the opposite
    // turning point, which does not qualify
    const double T = period({0.0, 0.1});
    CHECK_THROWS_AS(detect_period(simulate(zero_ic(0.0, 0.1, 0.55 * T))), NoPeriodError);

    // nothing moves at K = 0
    CHECK_THROWS_AS(detect_period(simulate(zero_ic(0.0, 0.0, 10.0))), NoPeriodError);
}

TEST_CASE("phase portrait covers all three regimes") {
    const std::vector<double> K_list{2.0, 1.0, 0.25, 0.126, 0.124, 0.1, 0.0625, 0.03125};
    PortraitOptions opt;
    opt.max_time = 30.0;
    const auto curves = phase_portrait(0.0, K_list, opt);
    REQUIRE(curves.size() == K_list.size());

    int pulled = 0, closed = 0;
    for (const PortraitCurve& c : curves) {
        if (c.regime.kind == RegimeKind::PullIn) {
            ++pulled;
            CHECK(c.points.back().x > 0.99);
        } else if (c.regime.kind == RegimeKind::Periodic) {
            ++closed;
            // truncated after one period: back near the release point
            CHECK(c.points.back().t == doctest::Approx(period({0.0, c.K})).epsilon(1e-12));
            CHECK(std::abs(c.points.back().x) < 1e-6);
        }
    }
    CHECK(pulled == 4);
    CHECK(closed == 4);

    // degenerate rest curve
    const auto rest = phase_portrait(0.0, {0.0});
    REQUIRE(rest.size() == 1);
    CHECK(rest[0].regime.kind == RegimeKind::Rest);
    REQUIRE(rest[0].points.size() == 1);
    CHECK(rest[0].points[0].x == 0.0);

    // heavy softening pulls everything in
    for (const PortraitCurve& c : phase_portrait(10.0, {0.05, 0.1}, opt))
        CHECK(c.regime.kind == RegimeKind::PullIn);

    // on the threshold itself the period diverges; the curve runs to the cap
    const auto boundary = phase_portrait(0.0, {kappa(0.0)}, opt);
    CHECK(boundary[0].regime.kind == RegimeKind::Periodic);
    CHECK(boundary[0].points.back().t == doctest::Approx(30.0).epsilon(1e-12));
}
