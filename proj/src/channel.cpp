// SPDX-License-Identifier: Apache-2.0
#include "sicsim/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "sicsim/dsp.hpp"
#include "sicsim/fft.hpp"

namespace sicsim {

RealSignal apply_paths(const std::vector<RealSignal>& tx, const PathSet& paths) {
    if (tx.empty()) throw config_error("apply_paths: no transmit waveforms");
    if (tx.size() != paths.antenna_count())
        throw config_error("apply_paths: antenna count mismatch");
    for (const RealSignal& s : tx) check_same_rate(tx.front(), s, "apply_paths");

    RealSignal out{tx.front().sample_rate_hz,
                   std::vector<double>(tx.front().size(), 0.0)};
    for (std::size_t j = 0; j < tx.size(); ++j) {
        const AntennaPaths& ap = paths.antennas[j];
        std::vector<Tap> absolute;
        absolute.push_back(ap.direct);
        for (const Tap& mp : ap.multipaths)
            absolute.push_back(Tap{ap.direct.delay_s + mp.delay_s,
                                   ap.direct.gain_db + mp.gain_db});
        for (const Tap& t : absolute) {
            if (t.delay_s < 0) throw config_error("apply_paths: negative tap delay");
            const double g = db_to_linear_field(t.gain_db);
            RealSignal d = fractional_delay(tx[j], t.delay_s);
            for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] += g * d.samples[i];
        }
    }
    return out;
}

RealSignal add_soi(const RealSignal& rx_si, const RealSignal& soi, const SirSpec& sir) {
    check_same_rate(rx_si, soi, "add_soi");
    if (!std::isfinite(sir.sir_db)) throw config_error("add_soi: SIR must be finite");
    const double p_si = mean_power(rx_si);
    const double p_soi = mean_power(soi);
    if (p_soi <= 0) throw config_error("add_soi: zero-power SOI");
    const double g = std::sqrt(p_si * db_to_linear_power(sir.sir_db) / p_soi);
    RealSignal out = rx_si;
    for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] += g * soi.samples[i];
    return out;
}

RealSignal add_noise(const RealSignal& sig, double snr_db, std::uint64_t seed) {
    if (std::isinf(snr_db) && snr_db > 0) return sig;
    if (!std::isfinite(snr_db)) throw config_error("add_noise: invalid SNR");
    const double p = mean_power(sig);
    const double sigma = std::sqrt(p * db_to_linear_power(-snr_db));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    RealSignal out = sig;
    for (double& v : out.samples) v += gauss(rng);
    return out;
}

OpticalEnvelope fiber_link(const OpticalEnvelope& env, double length_km,
                           double atten_db_per_km, double delay_per_km_s) {
    if (length_km < 0) throw config_error("fiber_link: negative length");
    if (length_km == 0) return env;
    const double field_gain = db_to_linear_field(-atten_db_per_km * length_km);
    const double delay = delay_per_km_s * length_km;

    std::vector<cplx> spec = fft::forward(env.samples);
    const std::size_t n = spec.size();
    const double df = env.sample_rate_hz / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double f = (k <= n / 2) ? df * static_cast<double>(k)
                                      : df * (static_cast<double>(k) - static_cast<double>(n));
        const double ph = -2.0 * std::numbers::pi * f * delay;
        spec[k] *= field_gain * cplx(std::cos(ph), std::sin(ph));
    }
    auto filtered = fft::inverse(spec);
    return OpticalEnvelope{env.sample_rate_hz, std::move(filtered)};
}

RealSignal fiber_link(const RealSignal& sig, double length_km,
                      double atten_db_per_km, double delay_per_km_s) {
    if (length_km < 0) throw config_error("fiber_link: negative length");
    if (length_km == 0) return sig;
    const double field_gain = db_to_linear_field(-atten_db_per_km * length_km);
    // Long fiber delays wrap circularly over the frame; the capture side
    // re-triggers on the known bulk delay.
    const double delay = std::fmod(delay_per_km_s * length_km, sig.duration_s());
    RealSignal delayed = delay != 0.0 ? fractional_delay(sig, delay) : sig;
    return scale(delayed, field_gain);
}

} // namespace sicsim
