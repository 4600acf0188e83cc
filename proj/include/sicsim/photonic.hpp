// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sicsim/types.hpp"

namespace sicsim {

/// Bias point of a dual-drive MZM: phase offset between the two arms.
enum class Bias { MITP, QUAD, MATP };

struct ModulatorConfig {
    double v_pi_volts = 5.0;
    Bias bias_upper = Bias::MITP; // DD-MZM carrying received + reference
    Bias bias_lower = Bias::MITP; // DD-MZM carrying the LO
    double bias_offset_rad = 0.0; // drift knob for robustness tests
};

struct PdConfig {
    double responsivity = 1.0; // A/W
    double if_center_hz = 1e9;
    double if_width_hz = 1.05e9;
    double capture_rate_hz = 10e9; // oscilloscope rate after extraction
};

/// Exact dual-drive MZM field (no Bessel truncation):
///   env = 1/2 exp(j*pi*a/Vpi) + 1/2 exp(j*(pi*b/Vpi + bias)).
/// bias = pi at MITP, pi/2 at QUAD, 0 at MATP (plus bias_offset_rad).
OpticalEnvelope ddmzm_full(const RealSignal& drive_a, const RealSignal& drive_b,
                           const ModulatorConfig& cfg);

/// Full DP-MZM: the received signal and the reference drive the two arms of
/// the upper DD-MZM, the LO drives one arm of the lower DD-MZM (other arm
/// unmodulated). The parent combiner weights each child by 1/2.
OpticalEnvelope dpmzm(const RealSignal& received, const RealSignal& reference,
                      const RealSignal& lo, const ModulatorConfig& cfg);

/// Square-law detection: current = responsivity * |envelope|^2. The full
/// baseband beat spectrum is retained; extract_if does the filtering.
RealSignal photodetect(const OpticalEnvelope& env, const PdConfig& cfg);

/// Band-pass around the IF (linear-phase FIR, applied zero-phase so the
/// group delay is already compensated), then resample to the capture rate.
RealSignal extract_if(const RealSignal& pd_out, const PdConfig& cfg);

/// Modulation index m = pi * A / Vpi for a drive amplitude A in volts.
double modulation_index(double amplitude_volts, double v_pi_volts);

/// First-order small-signal prediction of the downconverted IF tone
/// amplitude for tone drives with modulation indices m_soi and m_lo, under
/// this artifact's envelope convention (1/2-weighted parent combiner):
/// predicted amplitude = R * m_soi * m_lo / 16, i.e. (R/4) J1 J1 with the
/// J1(m) ~ m/2 linearization. Valid for m << 1.
double smallsignal_if_amplitude(double m_soi, double m_lo, double responsivity);

} // namespace sicsim
