#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "wlab/catalog.hpp"
#include "wlab/chart.hpp"

namespace wtest {

inline constexpr double kPi = std::numbers::pi;

inline wlab::Vec v3(double a, double b, double c) {
    wlab::Vec v(3);
    v << a, b, c;
    return v;
}

inline wlab::Vec origin3() { return wlab::Vec::Zero(3); }

// Uniform interior parameter point, away from the domain edges.
inline std::pair<double, double> random_interior(const wlab::SurfaceChart& c,
                                                 std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    return {c.u0 + c.du() * uni(rng), c.v0 + c.dv() * uni(rng)};
}

} // namespace wtest
