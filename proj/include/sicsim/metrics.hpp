// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sicsim/signal_gen.hpp"
#include "sicsim/types.hpp"

namespace sicsim {

struct BandSpec {
    double center_hz = 1e9;
    double width_hz = 1.05e9;
    double lo() const { return center_hz - width_hz / 2; }
    double hi() const { return center_hz + width_hz / 2; }
};

/// Depth is capped at 80 dB so perfect-cancellation frames stay comparable;
/// `capped` records when the cap fired.
inline constexpr double kDepthCapDb = 80.0;

struct DepthReport {
    double power_before_db_rel = 0.0;
    double power_after_db_rel = 0.0;
    double depth_db = 0.0;
    bool capped = false;
};

/// In-band power from a full-frame periodogram (circular frames make this
/// exact: the integral over the full Nyquist span equals the time-domain
/// mean power to machine precision). Result in V^2 relative units.
double band_power(const RealSignal& sig, const BandSpec& band);

/// Hann-windowed single periodogram band power of a short chunk. Used for
/// per-segment residual metering where only ratios matter.
double segment_band_power(std::span<const double> chunk, double sample_rate_hz,
                          const BandSpec& band);

/// One-sided Welch PSD (Hann window, 50% overlap, default segment 2^14
/// clamped to the signal length). Returns (freq_hz, psd) pairs; psd in
/// V^2/Hz relative units.
struct PsdPoint {
    double freq_hz;
    double psd;
};
std::vector<PsdPoint> psd_welch(const RealSignal& sig, std::size_t segment_len = 1u << 14);

DepthReport sic_depth(const RealSignal& before, const RealSignal& after, const BandSpec& band);

/// Closed-form single-tone mismatch law: for reference amplitude ratio rho
/// and delay error dt at carrier f, depth = -10*log10(1 + rho^2 -
/// 2*rho*cos(2*pi*f*dt)), capped at kDepthCapDb.
std::vector<double> mismatch_depth_curve(double f_hz, const std::vector<double>& delta_tau_s,
                                         double rho);

/// Genie information for SOI demodulation: the SOI carrier after
/// downconversion and any extra bulk timing offset beyond the generator's
/// frame layout.
struct DemodGenie {
    double if_center_hz = 1e9;
    double time_offset_s = 0.0;
};

struct DemodResult {
    std::vector<cplx> symbols;   // after data-aided single-tap equalization
    double evm_percent = 0.0;    // RMS error / RMS ideal * 100
    std::size_t symbol_errors = 0;
};

/// Matched-filter QPSK demodulation at genie timing/carrier. A single
/// complex gain is fitted from the known symbols (data-aided); EVM uses the
/// RMS of the ideal constellation as reference.
DemodResult demod_and_evm(const RealSignal& if_sig, const SoiConfig& soi,
                          const DemodGenie& genie);

} // namespace sicsim
