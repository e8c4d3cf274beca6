#pragma once

#include <stdexcept>
#include <string>

namespace pullin {

/// The requested quantity is undefined in the regime the parameters fall in,
/// e.g. a pull-in time for a configuration that oscillates.
class RegimeError : public std::runtime_error {
public:
    explicit RegimeError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// K = 0: the zero-initial-condition motion is identically at rest, so
/// amplitude and period are degenerate.
class RestError : public RegimeError {
public:
    explicit RestError(const std::string& what_arg) : RegimeError(what_arg) {}
};

/// K sits on the threshold curve: the orbit is a degenerate boundary orbit
/// and its period is unbounded.
class DivergentPeriodError : public RegimeError {
public:
    explicit DivergentPeriodError(const std::string& what_arg) : RegimeError(what_arg) {}
};

/// Adaptive refinement exhausted its subdivision budget before reaching the
/// requested tolerance.
class NoConvergenceError : public std::runtime_error {
public:
    explicit NoConvergenceError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// The trajectory contains too few qualifying velocity crossings to measure
/// a period.
class NoPeriodError : public std::runtime_error {
public:
    explicit NoPeriodError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// The step controller drove the step size below the representable minimum.
class StepUnderflowError : public std::runtime_error {
public:
    explicit StepUnderflowError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

} // namespace pullin
