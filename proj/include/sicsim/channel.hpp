// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "sicsim/types.hpp"

namespace sicsim {

/// One propagation tap: delay plus linear gain in dB.
struct Tap {
    double delay_s = 0.0;
    double gain_db = 0.0;
};

/// Per-antenna self-interference channel: a direct path (absolute delay and
/// gain) plus multipaths whose delay/gain are relative to that direct path.
struct AntennaPaths {
    Tap direct;
    std::vector<Tap> multipaths;
};

struct PathSet {
    std::vector<AntennaPaths> antennas;
    std::size_t antenna_count() const { return antennas.size(); }
};

struct SirSpec {
    double sir_db = 0.0; // SOI power minus total SI power, dB
};

/// Sum over antennas and taps of delayed, gain-scaled copies of each
/// antenna's transmit waveform.
RealSignal apply_paths(const std::vector<RealSignal>& tx, const PathSet& paths);

/// Rescale the SOI so its power sits sir_db above the SI power, then sum.
RealSignal add_soi(const RealSignal& rx_si, const RealSignal& soi, const SirSpec& sir);

/// White Gaussian noise with total power = signal power * 10^(-snr/10).
/// snr_db = +inf is the noiseless identity. Deterministic per seed.
RealSignal add_noise(const RealSignal& sig, double snr_db, std::uint64_t seed);

/// Fiber remoting model: pure delay plus attenuation. `atten_db_per_km` is
/// optical power attenuation; the field is scaled by 10^(-A/20). Dispersion
/// is deliberately not modeled. The delay is circular over the frame.
OpticalEnvelope fiber_link(const OpticalEnvelope& env, double length_km,
                           double atten_db_per_km, double delay_per_km_s);
RealSignal fiber_link(const RealSignal& sig, double length_km,
                      double atten_db_per_km, double delay_per_km_s);

} // namespace sicsim
