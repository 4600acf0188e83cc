// SPDX-License-Identifier: Apache-2.0
#include "sicsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sicsim/dsp.hpp"
#include "sicsim/fft.hpp"

namespace sicsim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_band(const BandSpec& band, double sample_rate_hz, const char* what) {
    if (band.width_hz <= 0) throw config_error(std::string(what) + ": band width must be > 0");
    if (band.lo() < 0 || band.hi() > sample_rate_hz / 2)
        throw config_error(std::string(what) + ": band outside [0, Nyquist]");
}
} // namespace

double band_power(const RealSignal& sig, const BandSpec& band) {
    check_band(band, sig.sample_rate_hz, "band_power");
    const std::size_t n = sig.size();
    if (n == 0) return 0.0;
    const std::vector<cplx> half = fft::rforward(sig.samples);
    const double df = sig.sample_rate_hz / static_cast<double>(n);
    const double inv_n2 = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    double acc = 0.0;
    for (std::size_t k = 0; k < half.size(); ++k) {
        const double f = df * static_cast<double>(k);
        if (f < band.lo() || f > band.hi()) continue;
        const bool edge_bin = (k == 0) || (n % 2 == 0 && k == half.size() - 1);
        acc += (edge_bin ? 1.0 : 2.0) * std::norm(half[k]) * inv_n2;
    }
    return acc;
}

double segment_band_power(std::span<const double> chunk, double sample_rate_hz,
                          const BandSpec& band) {
    const std::size_t n = chunk.size();
    if (n < 8) throw config_error("segment_band_power: chunk too short");
    std::vector<double> w(n);
    double wpow = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n - 1));
        wpow += w[i] * w[i];
        w[i] *= chunk[i];
    }
    wpow /= static_cast<double>(n);
    const std::vector<cplx> half = fft::rforward(w);
    const double df = sample_rate_hz / static_cast<double>(n);
    const double norm = 1.0 / (wpow * static_cast<double>(n) * static_cast<double>(n));
    double acc = 0.0;
    for (std::size_t k = 0; k < half.size(); ++k) {
        const double f = df * static_cast<double>(k);
        if (f < band.lo() || f > band.hi()) continue;
        const bool edge_bin = (k == 0) || (n % 2 == 0 && k == half.size() - 1);
        acc += (edge_bin ? 1.0 : 2.0) * std::norm(half[k]) * norm;
    }
    return acc;
}

std::vector<PsdPoint> psd_welch(const RealSignal& sig, std::size_t segment_len) {
    std::size_t n = sig.size();
    if (n == 0) return {};
    std::size_t seg = segment_len;
    while (seg > n) seg /= 2;
    seg = std::max<std::size_t>(seg, 8);
    const std::size_t hop = seg / 2;

    std::vector<double> win(seg);
    double u = 0.0;
    for (std::size_t i = 0; i < seg; ++i) {
        win[i] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(seg - 1));
        u += win[i] * win[i];
    }

    std::vector<double> acc(seg / 2 + 1, 0.0);
    std::size_t count = 0;
    std::vector<double> buf(seg);
    for (std::size_t start = 0; start + seg <= n; start += hop) {
        for (std::size_t i = 0; i < seg; ++i) buf[i] = win[i] * sig.samples[start + i];
        const std::vector<cplx> half = fft::rforward(buf);
        for (std::size_t k = 0; k < half.size(); ++k) acc[k] += std::norm(half[k]);
        ++count;
    }
    if (count == 0) return {};

    const double df = sig.sample_rate_hz / static_cast<double>(seg);
    const double norm = 1.0 / (static_cast<double>(count) * sig.sample_rate_hz * u);
    std::vector<PsdPoint> out(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) {
        const bool edge_bin = (k == 0) || (seg % 2 == 0 && k == acc.size() - 1);
        out[k] = PsdPoint{df * static_cast<double>(k), (edge_bin ? 1.0 : 2.0) * acc[k] * norm};
    }
    return out;
}

DepthReport sic_depth(const RealSignal& before, const RealSignal& after, const BandSpec& band) {
    check_same_rate(before, after, "sic_depth");
    const double pb = band_power(before, band);
    const double pa = band_power(after, band);
    DepthReport rep;
    rep.power_before_db_rel = pb > 0 ? power_to_db(pb) : -kDepthCapDb * 4;
    if (pa <= 0.0 || pb / pa > db_to_linear_power(kDepthCapDb)) {
        rep.power_after_db_rel = pa > 0 ? power_to_db(pa) : -kDepthCapDb * 4;
        rep.depth_db = kDepthCapDb;
        rep.capped = true;
        return rep;
    }
    rep.power_after_db_rel = power_to_db(pa);
    rep.depth_db = rep.power_before_db_rel - rep.power_after_db_rel;
    return rep;
}

std::vector<double> mismatch_depth_curve(double f_hz, const std::vector<double>& delta_tau_s,
                                         double rho) {
    if (rho < 0) throw config_error("mismatch_depth_curve: rho must be >= 0");
    std::vector<double> out;
    out.reserve(delta_tau_s.size());
    for (double dt : delta_tau_s) {
        const double resid = 1.0 + rho * rho - 2.0 * rho * std::cos(kTwoPi * f_hz * dt);
        double depth = resid > 0 ? -power_to_db(resid) : kDepthCapDb;
        out.push_back(std::min(depth, kDepthCapDb));
    }
    return out;
}

DemodResult demod_and_evm(const RealSignal& if_sig, const SoiConfig& soi,
                          const DemodGenie& genie) {
    const ComplexBaseband bb = complex_envelope(if_sig, genie.if_center_hz);
    const double rate = bb.sample_rate_hz;

    // Matched RRC filter at the capture rate, +-10 symbol span.
    const double sps = rate / soi.baud_rate_hz;
    const int span = 10;
    const int klen = 2 * static_cast<int>(std::ceil(span * sps)) + 1;
    const int mid = (klen - 1) / 2;
    const double a = soi.rolloff;
    std::vector<double> kern(static_cast<std::size_t>(klen));
    double ksum = 0.0;
    for (int i = 0; i < klen; ++i) {
        const double t = static_cast<double>(i - mid) / sps;
        double v;
        if (std::abs(t) < 1e-12) {
            v = 1.0 - a + 4.0 * a / std::numbers::pi;
        } else if (a > 0 && std::abs(std::abs(t) - 1.0 / (4.0 * a)) < 1e-9) {
            v = a / std::sqrt(2.0) *
                ((1.0 + 2.0 / std::numbers::pi) * std::sin(std::numbers::pi / (4.0 * a)) +
                 (1.0 - 2.0 / std::numbers::pi) * std::cos(std::numbers::pi / (4.0 * a)));
        } else {
            const double pit = std::numbers::pi * t;
            v = (std::sin(pit * (1.0 - a)) + 4.0 * a * t * std::cos(pit * (1.0 + a))) /
                (pit * (1.0 - std::pow(4.0 * a * t, 2.0)));
        }
        kern[static_cast<std::size_t>(i)] = v;
        ksum += v * v;
    }
    for (double& v : kern) v /= ksum; // unity gain through TX-RRC * RX-RRC at symbol centers

    // Circular matched filtering on both I and Q.
    const std::size_t n = bb.size();
    std::vector<cplx> kpad(n, cplx(0.0, 0.0));
    for (int i = 0; i < klen; ++i) {
        const long long pos = static_cast<long long>(i) - mid;
        const std::size_t idx = static_cast<std::size_t>(
            (pos % static_cast<long long>(n) + static_cast<long long>(n)) %
            static_cast<long long>(n));
        kpad[idx] += kern[static_cast<std::size_t>(i)];
    }
    std::vector<cplx> fs = fft::forward(bb.samples);
    const std::vector<cplx> fk = fft::forward(kpad);
    for (std::size_t i = 0; i < n; ++i) fs[i] *= fk[i];
    const std::vector<cplx> mf = fft::inverse(fs);

    const QpskFrameLayout layout = qpsk_frame_layout(soi);
    const std::vector<cplx> ideal = qpsk_symbols(soi, layout.symbol_count);

    std::vector<cplx> raw(layout.symbol_count);
    for (std::size_t k = 0; k < layout.symbol_count; ++k) {
        const double t = layout.first_symbol_time_s + genie.time_offset_s +
                         static_cast<double>(k) / soi.baud_rate_hz;
        const std::size_t idx = static_cast<std::size_t>(std::llround(t * rate));
        raw[k] = idx < n ? mf[idx] : cplx(0.0, 0.0);
    }

    // Data-aided single complex gain (genie carrier phase / amplitude).
    cplx num(0.0, 0.0);
    double den = 0.0;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        num += raw[k] * std::conj(ideal[k]);
        den += std::norm(ideal[k]);
    }
    const cplx gain = den > 0 ? num / den : cplx(1.0, 0.0);
    const cplx inv = std::abs(gain) > 0 ? 1.0 / gain : cplx(1.0, 0.0);

    DemodResult res;
    res.symbols.resize(raw.size());
    double err_acc = 0.0, ref_acc = 0.0;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        const cplx eq = raw[k] * inv;
        res.symbols[k] = eq;
        err_acc += std::norm(eq - ideal[k]);
        ref_acc += std::norm(ideal[k]);
        if ((eq.real() >= 0) != (ideal[k].real() >= 0) ||
            (eq.imag() >= 0) != (ideal[k].imag() >= 0))
            ++res.symbol_errors;
    }
    res.evm_percent = ref_acc > 0 ? 100.0 * std::sqrt(err_acc / ref_acc) : 0.0;
    return res;
}

} // namespace sicsim
