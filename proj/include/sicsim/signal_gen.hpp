// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "sicsim/types.hpp"

namespace sicsim {

/// 16-QAM (or 4/64-QAM) OFDM waveform parameters. The occupied bandwidth of
/// the generated signal equals baud_rate_hz: subcarrier spacing is
/// baud_rate_hz / occupied_subcarriers.
struct OfdmConfig {
    int fft_size = 256;
    int occupied_subcarriers = 200; // must be even, <= fft_size - 2
    double cp_fraction = 1.0 / 16.0;
    int qam_order = 16; // 4, 16 or 64
    double baud_rate_hz = 1e9;
    // Zero-padded OFDM: silent gap after each symbol, as a fraction of the
    // symbol-plus-gap period.
    double zero_padding_fraction = 0.0;
    double frame_duration_s = 4e-6;
    std::uint64_t seed = 1;
};

/// Root-raised-cosine QPSK parameters for the signal of interest.
struct SoiConfig {
    double baud_rate_hz = 0.5e9;
    double rolloff = 0.35;
    double frame_duration_s = 4e-6;
    std::uint64_t seed = 7;
};

/// Silent guard at each frame edge, as a fraction of the frame duration.
/// Absorbs circular-delay wrap and filter transients.
inline constexpr double kFrameGuardFraction = 0.02;

/// Complex baseband OFDM frame, unit RMS over the full frame, deterministic
/// for a fixed config.
ComplexBaseband gen_ofdm(const OfdmConfig& cfg, double sample_rate_hz);

/// Complex baseband RRC-shaped QPSK frame, unit RMS, deterministic.
ComplexBaseband gen_qpsk(const SoiConfig& cfg, double sample_rate_hz);

/// The QPSK symbol stream gen_qpsk(cfg, ...) embeds, for genie-aided
/// demodulation. Symbols are Gray-mapped (+-1 +-j)/sqrt(2).
std::vector<cplx> qpsk_symbols(const SoiConfig& cfg, std::size_t count);

/// Number of whole QPSK symbols a frame carries and the time of the first
/// symbol center relative to frame start.
struct QpskFrameLayout {
    std::size_t symbol_count;
    double first_symbol_time_s;
};
QpskFrameLayout qpsk_frame_layout(const SoiConfig& cfg);

/// Rescale a generator-normalized waveform to a DAC output span
/// (default 1 V peak-to-peak): peak amplitude becomes vpp/2.
RealSignal to_dac(const RealSignal& sig, double vpp = 1.0);

} // namespace sicsim
