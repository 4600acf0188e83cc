// SPDX-License-Identifier: Apache-2.0
#include "sicsim/photonic.hpp"

#include <cmath>
#include <numbers>

#include "sicsim/dsp.hpp"

namespace sicsim {

namespace {

double bias_phase(Bias b, double offset) {
    switch (b) {
    case Bias::MITP: return std::numbers::pi + offset;
    case Bias::QUAD: return std::numbers::pi / 2 + offset;
    case Bias::MATP: return offset;
    }
    return offset;
}

} // namespace

OpticalEnvelope ddmzm_full(const RealSignal& drive_a, const RealSignal& drive_b,
                           const ModulatorConfig& cfg) {
    if (cfg.v_pi_volts <= 0) throw config_error("ddmzm_full: v_pi must be > 0");
    check_same_rate(drive_a, drive_b, "ddmzm_full");
    if (drive_a.size() != drive_b.size())
        throw config_error("ddmzm_full: drive length mismatch");

    const double k = std::numbers::pi / cfg.v_pi_volts;
    const double bias = bias_phase(cfg.bias_upper, cfg.bias_offset_rad);
    OpticalEnvelope env{drive_a.sample_rate_hz, std::vector<cplx>(drive_a.size())};
    for (std::size_t i = 0; i < drive_a.size(); ++i) {
        const double pa = k * drive_a.samples[i];
        const double pb = k * drive_b.samples[i] + bias;
        env.samples[i] = 0.5 * cplx(std::cos(pa), std::sin(pa)) +
                         0.5 * cplx(std::cos(pb), std::sin(pb));
    }
    return env;
}

OpticalEnvelope dpmzm(const RealSignal& received, const RealSignal& reference,
                      const RealSignal& lo, const ModulatorConfig& cfg) {
    check_same_rate(received, reference, "dpmzm");
    check_same_rate(received, lo, "dpmzm");
    if (received.size() != reference.size() || received.size() != lo.size())
        throw config_error("dpmzm: drive length mismatch");

    const double k = std::numbers::pi / cfg.v_pi_volts;
    const double bias_u = bias_phase(cfg.bias_upper, cfg.bias_offset_rad);
    const double bias_l = bias_phase(cfg.bias_lower, cfg.bias_offset_rad);
    OpticalEnvelope env{received.sample_rate_hz, std::vector<cplx>(received.size())};
    for (std::size_t i = 0; i < received.size(); ++i) {
        const double pr = k * received.samples[i];
        const double pf = k * reference.samples[i] + bias_u;
        const double pl = k * lo.samples[i];
        const cplx child1 = 0.5 * cplx(std::cos(pr), std::sin(pr)) +
                            0.5 * cplx(std::cos(pf), std::sin(pf));
        const cplx child2 = 0.5 * cplx(std::cos(pl), std::sin(pl)) +
                            0.5 * cplx(std::cos(bias_l), std::sin(bias_l));
        env.samples[i] = 0.5 * child1 + 0.5 * child2;
    }
    return env;
}

RealSignal photodetect(const OpticalEnvelope& env, const PdConfig& cfg) {
    if (cfg.responsivity <= 0) throw config_error("photodetect: responsivity must be > 0");
    RealSignal out{env.sample_rate_hz, std::vector<double>(env.size())};
    for (std::size_t i = 0; i < env.size(); ++i)
        out.samples[i] = cfg.responsivity * std::norm(env.samples[i]);
    return out;
}

RealSignal extract_if(const RealSignal& pd_out, const PdConfig& cfg) {
    if (cfg.if_width_hz <= 0) throw config_error("extract_if: band width must be > 0");
    const double f_hi = cfg.if_center_hz + cfg.if_width_hz / 2;
    const double transition = 0.2 * cfg.if_width_hz;
    if (f_hi + transition >= pd_out.sample_rate_hz / 2 ||
        f_hi >= cfg.capture_rate_hz / 2)
        throw config_error("extract_if: IF band outside Nyquist");
    if (cfg.if_center_hz - cfg.if_width_hz / 2 - transition <= 0)
        throw config_error("extract_if: IF band reaches DC");

    const std::vector<double> taps = design_bandpass_fir(
        pd_out.sample_rate_hz, cfg.if_center_hz, cfg.if_width_hz, transition, 60.0);
    RealSignal filtered = filter_zero_phase(pd_out, taps);
    // The band-pass already removed everything near and above the new
    // Nyquist; the remaining stopband residue is discarded knowingly.
    return resample(filtered, cfg.capture_rate_hz, /*allow_alias=*/true);
}

double modulation_index(double amplitude_volts, double v_pi_volts) {
    if (v_pi_volts <= 0) throw config_error("modulation_index: v_pi must be > 0");
    return std::numbers::pi * amplitude_volts / v_pi_volts;
}

double smallsignal_if_amplitude(double m_soi, double m_lo, double responsivity) {
    return responsivity * m_soi * m_lo / 16.0;
}

} // namespace sicsim
