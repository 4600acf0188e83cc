// SPDX-License-Identifier: Apache-2.0
#include "sicsim/sim_link.hpp"

#include <cmath>
#include <numbers>

#include "sicsim/dsp.hpp"
#include "sicsim/fft.hpp"

namespace sicsim {

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<cplx> half_arm_field(const RealSignal& drive, double v_pi) {
    std::vector<cplx> out(drive.size());
    const double k = kPi / v_pi;
    for (std::size_t i = 0; i < drive.size(); ++i) {
        const double ph = k * drive.samples[i];
        out[i] = 0.5 * cplx(std::cos(ph), std::sin(ph));
    }
    return out;
}

double bias_phase_of(Bias b, double offset) {
    switch (b) {
    case Bias::MITP: return kPi + offset;
    case Bias::QUAD: return kPi / 2 + offset;
    case Bias::MATP: return offset;
    }
    return offset;
}

} // namespace

SimulatedLink::SimulatedLink(std::vector<RealSignal> tx_dac, const PathSet& paths,
                             LinkConfig cfg, std::optional<RealSignal> soi_rf, double sir_db)
    : cfg_(cfg) {
    if (tx_dac.empty()) throw config_error("SimulatedLink: no transmit waveforms");
    rate_ = tx_dac.front().sample_rate_hz;
    n_ = tx_dac.front().size();

    received_si_only_ = apply_paths(tx_dac, paths);
    if (soi_rf.has_value()) {
        has_soi_ = true;
        received_with_soi_ = add_soi(received_si_only_, *soi_rf, SirSpec{sir_db});
    } else {
        received_with_soi_ = received_si_only_;
    }

    arm_si_only_ = half_arm_field(received_si_only_, cfg_.modulator.v_pi_volts);
    arm_with_soi_ = has_soi_ ? half_arm_field(received_with_soi_, cfg_.modulator.v_pi_volts)
                             : arm_si_only_;

    // Lower DD-MZM: LO on one arm, the other unmodulated at the bias phase.
    RealSignal lo{rate_, std::vector<double>(n_)};
    const double w = 2.0 * kPi * cfg_.lo_freq_hz / rate_;
    for (std::size_t i = 0; i < n_; ++i)
        lo.samples[i] = cfg_.lo_amplitude_v * std::cos(w * static_cast<double>(i));
    const double bias_l = bias_phase_of(cfg_.modulator.bias_lower, cfg_.modulator.bias_offset_rad);
    const cplx idle_arm = 0.5 * cplx(std::cos(bias_l), std::sin(bias_l));
    lower_child_ = half_arm_field(lo, cfg_.modulator.v_pi_volts);
    for (cplx& v : lower_child_) v += idle_arm;

    // Zero-phase IF band-pass response on the generation-rate grid, fused
    // with the decimation to the capture rate.
    const double transition = 0.2 * cfg_.pd.if_width_hz;
    const std::vector<double> taps = design_bandpass_fir(
        rate_, cfg_.pd.if_center_hz, cfg_.pd.if_width_hz, transition, 60.0);
    std::vector<double> kern(n_, 0.0);
    const std::size_t mid = (taps.size() - 1) / 2;
    for (std::size_t i = 0; i < taps.size(); ++i) {
        const long long pos = static_cast<long long>(i) - static_cast<long long>(mid);
        const std::size_t idx = static_cast<std::size_t>(
            (pos % static_cast<long long>(n_) + static_cast<long long>(n_)) %
            static_cast<long long>(n_));
        kern[idx] += taps[i];
    }
    if_response_ = fft::rforward(kern);
    capture_n_ = static_cast<std::size_t>(
        std::llround(static_cast<double>(n_) * cfg_.pd.capture_rate_hz / rate_));
    if (cfg_.pd.if_center_hz + cfg_.pd.if_width_hz / 2 >= cfg_.pd.capture_rate_hz / 2)
        throw config_error("SimulatedLink: IF band outside capture Nyquist");
}

RealSignal SimulatedLink::run_chain(const std::vector<cplx>& received_arm,
                                    const RealSignal& reference) {
    if (reference.size() != n_ || reference.sample_rate_hz != rate_)
        throw config_error("SimulatedLink: reference frame rate/length mismatch");

    const double k = kPi / cfg_.modulator.v_pi_volts;
    const double bias_u = bias_phase_of(cfg_.modulator.bias_upper, cfg_.modulator.bias_offset_rad);
    const cplx bias_rot(std::cos(bias_u), std::sin(bias_u));

    OpticalEnvelope env{rate_, std::vector<cplx>(n_)};
    for (std::size_t i = 0; i < n_; ++i) {
        const double ph = k * reference.samples[i];
        const cplx ref_arm = 0.5 * bias_rot * cplx(std::cos(ph), std::sin(ph));
        env.samples[i] = 0.5 * (received_arm[i] + ref_arm) + 0.5 * lower_child_[i];
    }

    double trigger_shift_s = 0.0;
    if (cfg_.fiber_length_km > 0) {
        env = fiber_link(env, cfg_.fiber_length_km, cfg_.fiber_atten_db_per_km,
                         cfg_.fiber_delay_per_km_s);
        trigger_shift_s = std::fmod(cfg_.fiber_delay_per_km_s * cfg_.fiber_length_km,
                                    static_cast<double>(n_) / rate_);
    }

    RealSignal pd = photodetect(env, cfg_.pd);
    if (trigger_shift_s != 0.0) pd = fractional_delay(pd, -trigger_shift_s);

    // Band-pass (zero-phase) and decimate in one spectral pass.
    std::vector<cplx> half = fft::rforward(pd.samples);
    const std::size_t out_bins = capture_n_ / 2 + 1;
    std::vector<cplx> out_half(out_bins, cplx(0.0, 0.0));
    const double gain = static_cast<double>(capture_n_) / static_cast<double>(n_);
    for (std::size_t kbin = 0; kbin < out_bins && kbin < half.size(); ++kbin)
        out_half[kbin] = gain * half[kbin] * if_response_[kbin].real();
    RealSignal captured{cfg_.pd.capture_rate_hz, fft::rinverse(out_half, capture_n_)};

    if (std::isfinite(cfg_.snr_db)) {
        captured = add_noise(captured, cfg_.snr_db, cfg_.noise_seed + captures_);
    }
    ++captures_;
    return captured;
}

RealSignal SimulatedLink::submit(const RealSignal& reference_frame) {
    return run_chain(has_soi_ ? arm_with_soi_ : arm_si_only_, reference_frame);
}

RealSignal SimulatedLink::capture(const RealSignal& reference_frame, bool mute_soi) {
    return run_chain(mute_soi ? arm_si_only_ : (has_soi_ ? arm_with_soi_ : arm_si_only_),
                     reference_frame);
}

RealSignal SimulatedLink::capture_baseline(bool mute_soi) {
    const RealSignal silence{rate_, std::vector<double>(n_, 0.0)};
    return capture(silence, mute_soi);
}

RealSignal SimulatedLink::capture_reference_only(const RealSignal& reference_frame) {
    const RealSignal silence{rate_, std::vector<double>(n_, 0.0)};
    const std::vector<cplx> idle = half_arm_field(silence, cfg_.modulator.v_pi_volts);
    return run_chain(idle, reference_frame);
}

} // namespace sicsim
