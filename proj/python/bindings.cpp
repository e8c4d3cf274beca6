#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pullin/bifurcation.hpp"
#include "pullin/device_config.hpp"
#include "pullin/errors.hpp"
#include "pullin/model.hpp"
#include "pullin/quadrature.hpp"
#include "pullin/simulator.hpp"

namespace py = pybind11;
using namespace pullin;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dynamic pull-in analysis of an electrostatically actuated "
              "lumped-mass oscillator with a quadratic-softening spring";

    // Base exceptions must be registered before their subclasses so the
    // derived translators run first.
    auto regime_error = py::register_exception<RegimeError>(m, "RegimeError");
    py::register_exception<RestError>(m, "RestError", regime_error);
    py::register_exception<DivergentPeriodError>(m, "DivergentPeriodError", regime_error);
    py::register_exception<NoConvergenceError>(m, "NoConvergenceError");
    py::register_exception<NoPeriodError>(m, "NoPeriodError");
    py::register_exception<StepUnderflowError>(m, "StepUnderflowError");
    py::register_exception<ConfigParseError>(m, "ConfigParseError");
    py::register_exception<IoError>(m, "IoError");

    py::class_<DeviceParams>(m, "DeviceParams")
        .def(py::init<>())
        .def_readwrite("E", &DeviceParams::E)
        .def_readwrite("D", &DeviceParams::D)
        .def_readwrite("sigma_max", &DeviceParams::sigma_max)
        .def_readwrite("A_c", &DeviceParams::A_c)
        .def_readwrite("A", &DeviceParams::A)
        .def_readwrite("L", &DeviceParams::L)
        .def_readwrite("d", &DeviceParams::d)
        .def_readwrite("m", &DeviceParams::m)
        .def_readwrite("eps0", &DeviceParams::eps0)
        .def_readwrite("V_dc", &DeviceParams::V_dc);

    py::class_<OscParams>(m, "OscParams")
        .def(py::init<>())
        .def(py::init([](double alpha, double K) { return OscParams{alpha, K}; }),
             py::arg("alpha"), py::arg("K"))
        .def_readwrite("alpha", &OscParams::alpha)
        .def_readwrite("K", &OscParams::K);

    py::class_<State>(m, "State")
        .def(py::init<>())
        .def(py::init([](double x, double v) { return State{x, v}; }),
             py::arg("x"), py::arg("v"))
        .def_readwrite("x", &State::x)
        .def_readwrite("v", &State::v);

    py::class_<Nondimensional>(m, "Nondimensional")
        .def_readonly("params", &Nondimensional::params)
        .def_readonly("time_scale", &Nondimensional::time_scale)
        .def_readonly("length_scale", &Nondimensional::length_scale);

    py::class_<Forces>(m, "Forces")
        .def_readonly("restoring", &Forces::restoring)
        .def_readonly("coulomb", &Forces::coulomb);

    m.def("validated", &validated, py::arg("p"));
    m.def("nondimensionalize", &nondimensionalize, py::arg("p"));
    m.def("dimensional_forces", &dimensional_forces, py::arg("p"), py::arg("x"));
    m.def("rhs", &rhs, py::arg("s"), py::arg("q"));
    m.def("energy", &energy, py::arg("s"), py::arg("q"));
    m.def("f_envelope", &f_envelope, py::arg("s"), py::arg("q"));
    m.def("h_cubic", &h_cubic, py::arg("s"), py::arg("q"));

    py::enum_<RegimeKind>(m, "RegimeKind")
        .value("Rest", RegimeKind::Rest)
        .value("Periodic", RegimeKind::Periodic)
        .value("PullIn", RegimeKind::PullIn);

    py::class_<Regime>(m, "Regime")
        .def_readonly("kind", &Regime::kind)
        .def_readonly("margin", &Regime::margin)
        .def_readonly("x_max", &Regime::x_max);

    m.def("kappa", &kappa, py::arg("alpha"));
    m.def("critical_point_s1", &critical_point_s1, py::arg("alpha"));
    m.def("amplitude_x_max", &amplitude_x_max, py::arg("q"));
    m.def("classify", &classify, py::arg("q"));
    m.def("pull_in_voltage", &pull_in_voltage, py::arg("p"));
    m.def("static_pull_in_reference", &static_pull_in_reference);

    py::class_<QuadResult>(m, "QuadResult")
        .def_readonly("value", &QuadResult::value)
        .def_readonly("abs_error_estimate", &QuadResult::abs_error_estimate)
        .def_readonly("evaluations", &QuadResult::evaluations);

    m.def("integrate_endpoint_singular", &integrate_endpoint_singular,
          py::arg("g"), py::arg("a"), py::arg("b"),
          py::arg("singular_at_a"), py::arg("singular_at_b"),
          py::arg("tol") = 1e-10);
    m.def("pull_in_time", &pull_in_time, py::arg("q"), py::arg("tol") = 1e-10);
    m.def("period", &period, py::arg("q"), py::arg("tol") = 1e-10);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("q", &SimConfig::q)
        .def_readwrite("x0", &SimConfig::x0)
        .def_readwrite("v0", &SimConfig::v0)
        .def_readwrite("t_end", &SimConfig::t_end)
        .def_readwrite("rel_tol", &SimConfig::rel_tol)
        .def_readwrite("abs_tol", &SimConfig::abs_tol)
        .def_readwrite("pull_in_delta", &SimConfig::pull_in_delta);

    py::enum_<SimOutcome>(m, "SimOutcome")
        .value("Completed", SimOutcome::Completed)
        .value("PullInDetected", SimOutcome::PullInDetected);

    py::class_<Sample>(m, "Sample")
        .def_readonly("t", &Sample::t)
        .def_readonly("x", &Sample::x)
        .def_readonly("v", &Sample::v);

    py::class_<SimStats>(m, "SimStats")
        .def_readonly("steps_accepted", &SimStats::steps_accepted)
        .def_readonly("steps_rejected", &SimStats::steps_rejected)
        .def_readonly("rhs_evaluations", &SimStats::rhs_evaluations);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("samples", &Trajectory::samples)
        .def_readonly("outcome", &Trajectory::outcome)
        .def_readonly("t_event", &Trajectory::t_event)
        .def_readonly("stats", &Trajectory::stats)
        .def_readonly("config", &Trajectory::config);

    m.def("simulate", &simulate, py::arg("config"));
    m.def("detect_period", &detect_period, py::arg("trajectory"));
    m.def("peak_displacement", &peak_displacement, py::arg("trajectory"));

    py::class_<PortraitOptions>(m, "PortraitOptions")
        .def(py::init<>())
        .def_readwrite("rel_tol", &PortraitOptions::rel_tol)
        .def_readwrite("abs_tol", &PortraitOptions::abs_tol)
        .def_readwrite("pull_in_delta", &PortraitOptions::pull_in_delta)
        .def_readwrite("max_time", &PortraitOptions::max_time);

    py::class_<PortraitCurve>(m, "PortraitCurve")
        .def_readonly("K", &PortraitCurve::K)
        .def_readonly("regime", &PortraitCurve::regime)
        .def_readonly("points", &PortraitCurve::points);

    m.def("phase_portrait", &phase_portrait,
          py::arg("alpha"), py::arg("K_list"),
          py::arg("options") = PortraitOptions{});

    m.def("load_device_config", &load_device_config, py::arg("path"));
    m.def(
        "parse_device_config",
        [](const std::string& text) {
            std::istringstream in(text);
            return parse_device_config(in);
        },
        py::arg("text"));
}
