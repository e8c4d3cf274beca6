#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "pullin/model.hpp"

namespace pullin {

/// Content of a device description file is malformed: unknown, duplicate or
/// missing key, or a value that does not parse as a number. Distinct from
/// std::domain_error, which validated() raises for a well-formed file whose
/// values violate a constraint.
class ConfigParseError : public std::runtime_error {
public:
    explicit ConfigParseError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// A file or stream could not be read or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// Parse a flat "key = value" device description. Recognized keys:
///   E_pa, D_pa, sigma_max_pa, Ac_m2, A_m2, L_m, d_m, m_kg,
///   eps0_f_per_m, Vdc_v
/// At least one of D_pa / sigma_max_pa must be present (both only if they
/// are consistent). Blank lines and lines starting with '#' are skipped.
/// The result is passed through validated().
DeviceParams parse_device_config(std::istream& in);

/// parse_device_config on a file; throws IoError if it cannot be opened.
DeviceParams load_device_config(const std::string& path);

} // namespace pullin
