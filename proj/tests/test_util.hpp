// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "sicsim/types.hpp"

namespace testutil {

inline sicsim::RealSignal tone(double freq_hz, double amplitude, double rate_hz,
                               std::size_t n, double phase = 0.0) {
    sicsim::RealSignal s{rate_hz, std::vector<double>(n)};
    const double w = 2.0 * std::numbers::pi * freq_hz / rate_hz;
    for (std::size_t i = 0; i < n; ++i)
        s.samples[i] = amplitude * std::cos(w * static_cast<double>(i) + phase);
    return s;
}

inline sicsim::RealSignal white_noise(double rate_hz, std::size_t n, std::uint64_t seed,
                                      double sigma = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, sigma);
    sicsim::RealSignal s{rate_hz, std::vector<double>(n)};
    for (double& v : s.samples) v = g(rng);
    return s;
}

inline double rms_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(acc / static_cast<double>(a.size()));
}

inline double rms_of(const std::vector<double>& a) {
    double acc = 0.0;
    for (double v : a) acc += v * v;
    return std::sqrt(acc / static_cast<double>(a.size()));
}

} // namespace testutil
