#include "pullin/device_config.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace pullin {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    // strtod accepts the full numeric syntax including inf (sigma_max_pa of
    // a linear-spring device); reject trailing junk ourselves.
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || value != value)
        throw ConfigParseError("value for '" + key + "' is not a number: '" + text + "'");
    return value;
}

} // namespace

DeviceParams parse_device_config(std::istream& in) {
    std::map<std::string, double> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
        if (seen.count(key))
            throw ConfigParseError("duplicate key '" + key + "'");
        seen[key] = parse_number(key, value);
    }

    static const std::array<std::string, 8> required = {
        "E_pa", "Ac_m2", "A_m2", "L_m", "d_m", "m_kg", "eps0_f_per_m", "Vdc_v"};
    static const std::array<std::string, 10> known = {
        "E_pa", "D_pa", "sigma_max_pa", "Ac_m2", "A_m2", "L_m", "d_m", "m_kg",
        "eps0_f_per_m", "Vdc_v"};

    for (const auto& [key, value] : seen) {
        (void)value;
        bool ok = false;
        for (const auto& k : known) ok = ok || k == key;
        if (!ok) throw ConfigParseError("unknown key '" + key + "'");
    }
    for (const auto& k : required)
        if (!seen.count(k)) throw ConfigParseError("missing key '" + k + "'");
    if (!seen.count("D_pa") && !seen.count("sigma_max_pa"))
        throw ConfigParseError("one of 'D_pa' or 'sigma_max_pa' is required");

    DeviceParams p;
    p.E = seen["E_pa"];
    if (seen.count("D_pa")) p.D = seen["D_pa"];
    if (seen.count("sigma_max_pa")) p.sigma_max = seen["sigma_max_pa"];
    p.A_c = seen["Ac_m2"];
    p.A = seen["A_m2"];
    p.L = seen["L_m"];
    p.d = seen["d_m"];
    p.m = seen["m_kg"];
    p.eps0 = seen["eps0_f_per_m"];
    p.V_dc = seen["Vdc_v"];
    return validated(p);
}

DeviceParams load_device_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open device config '" + path + "'");
    return parse_device_config(in);
}

} // namespace pullin
