// SPDX-License-Identifier: Apache-2.0
#include "sicsim/signal_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sicsim/dsp.hpp"
#include "sicsim/fft.hpp"

namespace sicsim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate(const OfdmConfig& cfg, double sample_rate_hz) {
    if (cfg.fft_size < 8) throw config_error("gen_ofdm: fft_size too small");
    if (cfg.occupied_subcarriers <= 0 || cfg.occupied_subcarriers > cfg.fft_size - 2)
        throw config_error("gen_ofdm: occupied_subcarriers must be in [1, fft_size-2]");
    if (cfg.occupied_subcarriers % 2 != 0)
        throw config_error("gen_ofdm: occupied_subcarriers must be even");
    if (cfg.qam_order != 4 && cfg.qam_order != 16 && cfg.qam_order != 64)
        throw config_error("gen_ofdm: qam_order must be 4, 16 or 64");
    if (cfg.baud_rate_hz <= 0 || cfg.frame_duration_s <= 0)
        throw config_error("gen_ofdm: baud rate and frame duration must be > 0");
    if (cfg.cp_fraction < 0 || cfg.cp_fraction >= 1)
        throw config_error("gen_ofdm: cp_fraction out of [0,1)");
    if (cfg.zero_padding_fraction < 0 || cfg.zero_padding_fraction >= 1)
        throw config_error("gen_ofdm: zero_padding_fraction out of [0,1)");
    if (sample_rate_hz < 2.0 * cfg.baud_rate_hz)
        throw config_error("gen_ofdm: sample rate below 2x baud rate");
}

double qam_level(std::uint32_t bits2) {
    static const double lv[4] = {-3.0, -1.0, 1.0, 3.0};
    return lv[bits2 & 3];
}

cplx draw_qam(std::mt19937_64& rng, int order) {
    if (order == 4) {
        std::uniform_int_distribution<int> d(0, 3);
        const int v = d(rng);
        const double s = 1.0 / std::sqrt(2.0);
        return cplx((v & 1) ? s : -s, (v & 2) ? s : -s);
    }
    if (order == 16) {
        std::uniform_int_distribution<int> d(0, 15);
        const int v = d(rng);
        return cplx(qam_level(v & 3), qam_level((v >> 2) & 3)) / std::sqrt(10.0);
    }
    std::uniform_int_distribution<int> d(0, 63);
    const int v = d(rng);
    static const double lv8[8] = {-7, -5, -3, -1, 1, 3, 5, 7};
    return cplx(lv8[v & 7], lv8[(v >> 3) & 7]) / std::sqrt(42.0);
}

void normalize_rms(std::vector<cplx>& v) {
    double acc = 0.0;
    for (const cplx& x : v) acc += std::norm(x);
    if (acc == 0.0) return;
    const double g = 1.0 / std::sqrt(acc / static_cast<double>(v.size()));
    for (cplx& x : v) x *= g;
}

} // namespace

ComplexBaseband gen_ofdm(const OfdmConfig& cfg, double sample_rate_hz) {
    validate(cfg, sample_rate_hz);

    const double df = cfg.baud_rate_hz / cfg.occupied_subcarriers;
    const double native_rate = df * cfg.fft_size;
    const std::size_t n_native = static_cast<std::size_t>(
        std::llround(cfg.frame_duration_s * native_rate));
    if (n_native < static_cast<std::size_t>(cfg.fft_size))
        throw config_error("gen_ofdm: frame shorter than one OFDM symbol");

    const int cp_len = static_cast<int>(std::lround(cfg.cp_fraction * cfg.fft_size));
    const int sym_len = cfg.fft_size + cp_len;

    const double guard_s = kFrameGuardFraction * cfg.frame_duration_s;
    const std::size_t guard_n = static_cast<std::size_t>(std::llround(guard_s * native_rate));
    const std::size_t usable_n = n_native > 2 * guard_n ? n_native - 2 * guard_n : 0;
    // Zero-padded OFDM: a silent gap follows each symbol so that the gap
    // occupies zero_padding_fraction of the symbol-plus-gap period.
    const int gap_len = static_cast<int>(std::lround(
        sym_len * cfg.zero_padding_fraction / (1.0 - cfg.zero_padding_fraction)));
    const int unit_len = sym_len + gap_len;
    const std::size_t n_sym = usable_n / static_cast<std::size_t>(unit_len);
    if (n_sym == 0) throw config_error("gen_ofdm: no room for OFDM symbols in frame");

    std::mt19937_64 rng(cfg.seed);
    std::vector<cplx> frame(n_native, cplx(0.0, 0.0));
    std::vector<cplx> bins(cfg.fft_size);
    const int half_occ = cfg.occupied_subcarriers / 2;

    for (std::size_t s = 0; s < n_sym; ++s) {
        std::fill(bins.begin(), bins.end(), cplx(0.0, 0.0));
        for (int k = 1; k <= half_occ; ++k) {
            bins[static_cast<std::size_t>(k)] = draw_qam(rng, cfg.qam_order);
            bins[static_cast<std::size_t>(cfg.fft_size - k)] = draw_qam(rng, cfg.qam_order);
        }
        std::vector<cplx> td = fft::inverse(bins);
        const std::size_t base = guard_n + s * static_cast<std::size_t>(unit_len);
        for (int i = 0; i < cp_len; ++i)
            frame[base + static_cast<std::size_t>(i)] =
                td[static_cast<std::size_t>(cfg.fft_size - cp_len + i)];
        for (int i = 0; i < cfg.fft_size; ++i)
            frame[base + static_cast<std::size_t>(cp_len + i)] = td[static_cast<std::size_t>(i)];
    }

    normalize_rms(frame);
    ComplexBaseband native{native_rate, std::move(frame)};
    if (native_rate == sample_rate_hz) return native;
    return resample(native, sample_rate_hz);
}

std::vector<cplx> qpsk_symbols(const SoiConfig& cfg, std::size_t count) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> d(0, 3);
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<cplx> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const int v = d(rng);
        out[i] = cplx((v & 1) ? s : -s, (v & 2) ? s : -s);
    }
    return out;
}

QpskFrameLayout qpsk_frame_layout(const SoiConfig& cfg) {
    const double guard_s = kFrameGuardFraction * cfg.frame_duration_s;
    const double usable_s = cfg.frame_duration_s - 2.0 * guard_s;
    const double tsym = 1.0 / cfg.baud_rate_hz;
    const std::size_t n_sym = static_cast<std::size_t>(std::floor(usable_s / tsym));
    return QpskFrameLayout{n_sym, guard_s + tsym / 2.0};
}

ComplexBaseband gen_qpsk(const SoiConfig& cfg, double sample_rate_hz) {
    if (cfg.baud_rate_hz <= 0 || cfg.frame_duration_s <= 0)
        throw config_error("gen_qpsk: baud rate and frame duration must be > 0");
    if (cfg.rolloff < 0 || cfg.rolloff > 1)
        throw config_error("gen_qpsk: rolloff out of [0,1]");
    if (sample_rate_hz < 2.0 * cfg.baud_rate_hz * (1.0 + cfg.rolloff))
        throw config_error("gen_qpsk: sample rate below Nyquist for shaped signal");

    // Build at an integer 8 samples/symbol native rate, then band-limited
    // resample to the requested rate.
    const int sps = 8;
    const double native_rate = cfg.baud_rate_hz * sps;
    const std::size_t n_native =
        static_cast<std::size_t>(std::llround(cfg.frame_duration_s * native_rate));

    const QpskFrameLayout layout = qpsk_frame_layout(cfg);
    const std::vector<cplx> syms = qpsk_symbols(cfg, layout.symbol_count);

    std::vector<cplx> impulses(n_native, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < syms.size(); ++i) {
        const double t = layout.first_symbol_time_s + static_cast<double>(i) / cfg.baud_rate_hz;
        const std::size_t idx = static_cast<std::size_t>(std::llround(t * native_rate));
        if (idx < n_native) impulses[idx] = syms[i];
    }

    // Root-raised-cosine kernel, +-10 symbol span.
    const int span = 10;
    const int klen = 2 * span * sps + 1;
    std::vector<double> kern(static_cast<std::size_t>(klen));
    const double a = cfg.rolloff;
    for (int i = 0; i < klen; ++i) {
        const double t = static_cast<double>(i - span * sps) / sps; // in symbol periods
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
    }

    // Circular convolution via FFT; the frame guard absorbs the wrap.
    std::vector<cplx> kpad(n_native, cplx(0.0, 0.0));
    for (int i = 0; i < klen; ++i) {
        const long long pos = static_cast<long long>(i) - span * sps;
        const std::size_t idx = static_cast<std::size_t>(
            (pos % static_cast<long long>(n_native) + static_cast<long long>(n_native)) %
            static_cast<long long>(n_native));
        kpad[idx] += kern[static_cast<std::size_t>(i)];
    }
    std::vector<cplx> fa = fft::forward(impulses);
    std::vector<cplx> fb = fft::forward(kpad);
    for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
    std::vector<cplx> shaped = fft::inverse(fa);

    normalize_rms(shaped);
    ComplexBaseband native{native_rate, std::move(shaped)};
    if (native_rate == sample_rate_hz) return native;
    return resample(native, sample_rate_hz);
}

RealSignal to_dac(const RealSignal& sig, double vpp) {
    if (vpp <= 0) throw config_error("to_dac: vpp must be > 0");
    double peak = 0.0;
    for (double v : sig.samples) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return sig;
    return scale(sig, vpp / (2.0 * peak));
}

} // namespace sicsim
