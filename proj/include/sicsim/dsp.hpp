// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "sicsim/types.hpp"

namespace sicsim {

/// Band-limited delay via a frequency-domain linear phase ramp. Exact for
/// content strictly below Nyquist. The shift is circular over the frame;
/// frames carry silent guard padding so the wrap-around lands in silence.
RealSignal fractional_delay(const RealSignal& sig, double delay_s);

/// Round a delay to the nearest multiple of `resolution_s`.
double quantize_delay(double delay_s, double resolution_s);

/// The digital pre-matching route: quantize the delay to `resolution_s`
/// (e.g. 1 ps for a 1000 Gsa/s working rate) and apply it. Equivalent to
/// upsample / integer shift / downsample for band-limited frames; see
/// upsample_shift_downsample for the literal route.
RealSignal premirror_delay(const RealSignal& sig, double delay_s, double resolution_s);

/// The literal upsample -> integer-sample circular shift -> downsample route.
/// Kept for cross-checking against premirror_delay; much slower.
RealSignal upsample_shift_downsample(const RealSignal& sig, double delay_s, double fine_rate_hz);

/// Band-limited resampling via FFT spectrum resize. Duration preserved to
/// +-1 output sample. Downsampling discards content above the new Nyquist;
/// if that content carries more than a 1e-9 fraction of the total power the
/// call throws unless `allow_alias` is set.
RealSignal resample(const RealSignal& sig, double new_rate_hz, bool allow_alias = false);
ComplexBaseband resample(const ComplexBaseband& sig, double new_rate_hz, bool allow_alias = false);

/// Multiply every sample by `factor`.
RealSignal scale(const RealSignal& sig, double factor);

/// Real passband construction: Re{ bb(t) * exp(j*2*pi*carrier*t) }.
/// Passband power is half the complex-envelope power (convention fixed
/// project-wide: unit-RMS complex baseband -> 0.5 passband power).
RealSignal upconvert(const ComplexBaseband& bb, double carrier_hz);

/// Analytic signal (positive-frequency content doubled, DC/Nyquist kept).
std::vector<cplx> analytic(const RealSignal& sig);

/// Complex envelope relative to `carrier_hz`: analytic(sig)*exp(-j*2*pi*fc*t).
ComplexBaseband complex_envelope(const RealSignal& sig, double carrier_hz);

/// Shift all positive-frequency content down by `lo_hz` and re-take the real
/// part: the digital image of photonic downconversion. The band of interest
/// must sit entirely above `lo_hz`.
RealSignal rf_to_if(const RealSignal& sig, double lo_hz);

/// Inverse of rf_to_if: shift positive-frequency content up by `lo_hz`.
RealSignal if_to_rf(const RealSignal& sig, double lo_hz);

/// Keep only content with |f| inside [f_lo, f_hi] (brick-wall, circular).
RealSignal band_select(const RealSignal& sig, double f_lo, double f_hi);

/// Odd-length linear-phase band-pass FIR (Kaiser window design).
/// Passband [center - width/2, center + width/2], transition `transition_hz`
/// on each side, stopband attenuation `stop_db`.
std::vector<double> design_bandpass_fir(double sample_rate_hz, double center_hz,
                                        double width_hz, double transition_hz,
                                        double stop_db);

/// Apply a symmetric FIR with its group delay removed (zero-phase, circular).
RealSignal filter_zero_phase(const RealSignal& sig, const std::vector<double>& taps);

} // namespace sicsim
