#pragma once

#include <cstdint>
#include <random>

#include "pullin/model.hpp"

namespace testing {

// Deterministic uniform doubles built from 53 fresh mt19937 bits, so every
// run and platform draws the same sequence.
class Uniform {
public:
    explicit Uniform(std::uint32_t seed) : gen_(seed) {}

    double next() {
        const double hi = static_cast<double>(gen_() >> 5); // 27 bits
        const double lo = static_cast<double>(gen_() >> 6); // 26 bits
        return (hi * 67108864.0 + lo) / 9007199254740992.0;
    }

    double in(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
    std::mt19937 gen_;
};

// A plausible graphene device; every field strictly positive, D given.
inline pullin::DeviceParams graphene_device() {
    pullin::DeviceParams p;
    p.E = 1.0e12;
    p.D = 2.0e12;
    p.A_c = 3.35e-16;
    p.A = 1.0e-12;
    p.L = 1.0e-6;
    p.d = 5.0e-8;
    p.m = 1.0e-15;
    p.eps0 = 8.8541878128e-12;
    p.V_dc = 1.0;
    return p;
}

} // namespace testing
