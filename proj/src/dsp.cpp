// SPDX-License-Identifier: Apache-2.0
#include "sicsim/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sicsim/fft.hpp"

namespace sicsim {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double bessel_i0(double x) {
    // Series evaluation, converges quickly for the |x| <= ~20 used here.
    double sum = 1.0, term = 1.0;
    const double q = x * x / 4.0;
    for (int k = 1; k < 60; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}
} // namespace

RealSignal fractional_delay(const RealSignal& sig, double delay_s) {
    if (sig.samples.empty()) throw config_error("fractional_delay: empty signal");
    if (std::abs(delay_s) >= sig.duration_s())
        throw config_error("fractional_delay: |delay| exceeds signal duration");
    if (delay_s == 0.0) return sig;

    const std::size_t n = sig.size();
    std::vector<cplx> half = fft::rforward(sig.samples);
    const double df = sig.sample_rate_hz / static_cast<double>(n);
    for (std::size_t k = 1; k < half.size(); ++k) {
        const double phase = -kTwoPi * df * static_cast<double>(k) * delay_s;
        if (n % 2 == 0 && k == half.size() - 1) {
            // Nyquist bin must stay real; band-limited frames carry no energy here.
            half[k] *= std::cos(phase);
        } else {
            half[k] *= cplx(std::cos(phase), std::sin(phase));
        }
    }
    RealSignal out{sig.sample_rate_hz, fft::rinverse(half, n)};
    return out;
}

double quantize_delay(double delay_s, double resolution_s) {
    if (resolution_s <= 0) throw config_error("quantize_delay: resolution must be > 0");
    return std::round(delay_s / resolution_s) * resolution_s;
}

RealSignal premirror_delay(const RealSignal& sig, double delay_s, double resolution_s) {
    return fractional_delay(sig, quantize_delay(delay_s, resolution_s));
}

RealSignal upsample_shift_downsample(const RealSignal& sig, double delay_s, double fine_rate_hz) {
    if (fine_rate_hz < sig.sample_rate_hz)
        throw config_error("upsample_shift_downsample: fine rate below signal rate");
    RealSignal up = resample(sig, fine_rate_hz);
    const long long shift = std::llround(delay_s * fine_rate_hz);
    const std::size_t n = up.size();
    std::vector<double> shifted(n);
    for (std::size_t i = 0; i < n; ++i) {
        long long src = static_cast<long long>(i) - shift;
        src %= static_cast<long long>(n);
        if (src < 0) src += static_cast<long long>(n);
        shifted[i] = up.samples[static_cast<std::size_t>(src)];
    }
    up.samples = std::move(shifted);
    return resample(up, sig.sample_rate_hz);
}

namespace {

template <typename Sig>
std::size_t resampled_length(const Sig& sig, double new_rate_hz) {
    if (new_rate_hz <= 0) throw config_error("resample: rate must be > 0");
    return static_cast<std::size_t>(
        std::llround(static_cast<double>(sig.size()) * new_rate_hz / sig.sample_rate_hz));
}

} // namespace

RealSignal resample(const RealSignal& sig, double new_rate_hz, bool allow_alias) {
    if (sig.samples.empty()) throw config_error("resample: empty signal");
    if (new_rate_hz == sig.sample_rate_hz) return sig;
    const std::size_t n = sig.size();
    const std::size_t m = resampled_length(sig, new_rate_hz);
    std::vector<cplx> half = fft::rforward(sig.samples);
    std::vector<cplx> out_half(m / 2 + 1, cplx(0.0, 0.0));
    const std::size_t keep = std::min(half.size(), out_half.size());
    for (std::size_t k = 0; k < keep; ++k) out_half[k] = half[k];

    if (m < n && !allow_alias) {
        double discarded = 0.0, total = 0.0;
        for (std::size_t k = 0; k < half.size(); ++k) {
            const double w = (k == 0 || (n % 2 == 0 && k == half.size() - 1)) ? 1.0 : 2.0;
            const double p = w * std::norm(half[k]);
            total += p;
            if (k >= keep) discarded += p;
        }
        if (total > 0 && discarded / total > 1e-9)
            throw config_error("resample: content above new Nyquist (pass allow_alias to discard)");
    }

    const double gain = static_cast<double>(m) / static_cast<double>(n);
    for (cplx& v : out_half) v *= gain;
    return RealSignal{new_rate_hz, fft::rinverse(out_half, m)};
}

ComplexBaseband resample(const ComplexBaseband& sig, double new_rate_hz, bool allow_alias) {
    if (sig.samples.empty()) throw config_error("resample: empty signal");
    if (new_rate_hz == sig.sample_rate_hz) return sig;
    const std::size_t n = sig.size();
    const std::size_t m = resampled_length(sig, new_rate_hz);
    std::vector<cplx> spec = fft::forward(sig.samples);
    std::vector<cplx> out(m, cplx(0.0, 0.0));
    // Copy low half and high (negative-frequency) half separately.
    const std::size_t half_lo = std::min(n / 2 + 1, m / 2 + 1);
    const std::size_t half_hi = std::min((n - 1) / 2, (m - 1) / 2);
    for (std::size_t k = 0; k < half_lo; ++k) out[k] = spec[k];
    for (std::size_t k = 1; k <= half_hi; ++k) out[m - k] = spec[n - k];

    if (m < n && !allow_alias) {
        double total = 0.0;
        for (const cplx& v : spec) total += std::norm(v);
        double kept = 0.0;
        for (std::size_t k = 0; k < half_lo; ++k) kept += std::norm(spec[k]);
        for (std::size_t k = 1; k <= half_hi; ++k) kept += std::norm(spec[n - k]);
        if (total > 0 && (total - kept) / total > 1e-9)
            throw config_error("resample: content above new Nyquist (pass allow_alias to discard)");
    }

    const double gain = static_cast<double>(m) / static_cast<double>(n);
    for (cplx& v : out) v *= gain;
    auto res = fft::inverse(out);
    return ComplexBaseband{new_rate_hz, std::move(res)};
}

RealSignal scale(const RealSignal& sig, double factor) {
    if (!std::isfinite(factor)) throw config_error("scale: non-finite factor");
    RealSignal out = sig;
    for (double& v : out.samples) v *= factor;
    return out;
}

RealSignal upconvert(const ComplexBaseband& bb, double carrier_hz) {
    if (carrier_hz <= 0 || carrier_hz >= bb.sample_rate_hz / 2)
        throw config_error("upconvert: carrier outside (0, Nyquist)");
    RealSignal out{bb.sample_rate_hz, std::vector<double>(bb.size())};
    const double w = kTwoPi * carrier_hz / bb.sample_rate_hz;
    for (std::size_t i = 0; i < bb.size(); ++i) {
        const double ph = w * static_cast<double>(i);
        out.samples[i] = bb.samples[i].real() * std::cos(ph) - bb.samples[i].imag() * std::sin(ph);
    }
    return out;
}

std::vector<cplx> analytic(const RealSignal& sig) {
    const std::size_t n = sig.size();
    std::vector<cplx> half = fft::rforward(sig.samples);
    std::vector<cplx> spec(n, cplx(0.0, 0.0));
    spec[0] = half[0];
    const std::size_t nyq = (n % 2 == 0) ? n / 2 : 0;
    for (std::size_t k = 1; k < half.size(); ++k) {
        if (k == nyq)
            spec[k] = half[k];
        else
            spec[k] = 2.0 * half[k];
    }
    return fft::inverse(spec);
}

ComplexBaseband complex_envelope(const RealSignal& sig, double carrier_hz) {
    std::vector<cplx> a = analytic(sig);
    const double w = kTwoPi * carrier_hz / sig.sample_rate_hz;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ph = -w * static_cast<double>(i);
        a[i] *= cplx(std::cos(ph), std::sin(ph));
    }
    return ComplexBaseband{sig.sample_rate_hz, std::move(a)};
}

namespace {

RealSignal shift_analytic(const RealSignal& sig, double shift_hz) {
    std::vector<cplx> a = analytic(sig);
    const double w = kTwoPi * shift_hz / sig.sample_rate_hz;
    RealSignal out{sig.sample_rate_hz, std::vector<double>(sig.size())};
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ph = w * static_cast<double>(i);
        out.samples[i] = a[i].real() * std::cos(ph) - a[i].imag() * std::sin(ph);
    }
    return out;
}

} // namespace

RealSignal rf_to_if(const RealSignal& sig, double lo_hz) {
    if (lo_hz <= 0) throw config_error("rf_to_if: LO must be > 0");
    return shift_analytic(sig, -lo_hz);
}

RealSignal if_to_rf(const RealSignal& sig, double lo_hz) {
    if (lo_hz <= 0) throw config_error("if_to_rf: LO must be > 0");
    if (lo_hz >= sig.sample_rate_hz / 2)
        throw config_error("if_to_rf: shifted band exceeds Nyquist");
    return shift_analytic(sig, lo_hz);
}

RealSignal band_select(const RealSignal& sig, double f_lo, double f_hi) {
    if (!(f_lo >= 0 && f_hi > f_lo)) throw config_error("band_select: invalid band");
    const std::size_t n = sig.size();
    std::vector<cplx> half = fft::rforward(sig.samples);
    const double df = sig.sample_rate_hz / static_cast<double>(n);
    for (std::size_t k = 0; k < half.size(); ++k) {
        const double f = df * static_cast<double>(k);
        if (f < f_lo || f > f_hi) half[k] = 0.0;
    }
    return RealSignal{sig.sample_rate_hz, fft::rinverse(half, n)};
}

std::vector<double> design_bandpass_fir(double sample_rate_hz, double center_hz,
                                        double width_hz, double transition_hz,
                                        double stop_db) {
    if (width_hz <= 0 || transition_hz <= 0)
        throw config_error("design_bandpass_fir: invalid band");
    if (center_hz + width_hz / 2 + transition_hz >= sample_rate_hz / 2)
        throw config_error("design_bandpass_fir: band outside Nyquist");
    if (center_hz - width_hz / 2 - transition_hz < 0)
        throw config_error("design_bandpass_fir: band reaches below DC");

    const double a = stop_db;
    const double beta = a > 50 ? 0.1102 * (a - 8.7)
                               : (a >= 21 ? 0.5842 * std::pow(a - 21.0, 0.4) + 0.07886 * (a - 21.0)
                                          : 0.0);
    const double dw = kTwoPi * transition_hz / sample_rate_hz;
    std::size_t ntaps = static_cast<std::size_t>(std::ceil((a - 7.95) / (2.285 * dw))) + 1;
    if (ntaps % 2 == 0) ++ntaps;

    const std::size_t mid = (ntaps - 1) / 2;
    // Low-pass prototype with cutoff at mid-transition, modulated to center_hz.
    const double fc = (width_hz / 2 + transition_hz / 2) / sample_rate_hz;
    const double i0b = bessel_i0(beta);
    std::vector<double> taps(ntaps);
    for (std::size_t i = 0; i < ntaps; ++i) {
        const double k = static_cast<double>(i) - static_cast<double>(mid);
        double lp;
        if (k == 0)
            lp = 2.0 * fc;
        else
            lp = std::sin(kTwoPi * fc * k) / (kPi * k);
        const double r = k / static_cast<double>(mid);
        const double win = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0b;
        taps[i] = 2.0 * lp * win * std::cos(kTwoPi * center_hz / sample_rate_hz * k);
    }
    return taps;
}

RealSignal filter_zero_phase(const RealSignal& sig, const std::vector<double>& taps) {
    const std::size_t n = sig.size();
    if (taps.size() >= n) throw config_error("filter_zero_phase: kernel longer than frame");
    if (taps.size() % 2 == 0) throw config_error("filter_zero_phase: kernel must be odd-length");

    // Place the symmetric kernel circularly with its center tap at index 0 so
    // the frequency response is purely real (group delay already removed).
    std::vector<double> kern(n, 0.0);
    const std::size_t mid = (taps.size() - 1) / 2;
    for (std::size_t i = 0; i < taps.size(); ++i) {
        const long long pos = static_cast<long long>(i) - static_cast<long long>(mid);
        const std::size_t idx = static_cast<std::size_t>((pos % static_cast<long long>(n) +
                                                          static_cast<long long>(n)) %
                                                         static_cast<long long>(n));
        kern[idx] += taps[i];
    }
    std::vector<cplx> hk = fft::rforward(kern);
    std::vector<cplx> half = fft::rforward(sig.samples);
    for (std::size_t k = 0; k < half.size(); ++k) half[k] *= hk[k].real();
    return RealSignal{sig.sample_rate_hz, fft::rinverse(half, n)};
}

} // namespace sicsim
