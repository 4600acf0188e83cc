// SPDX-License-Identifier: Apache-2.0
#include "sicsim/delay_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sicsim/dsp.hpp"
#include "sicsim/fft.hpp"

namespace sicsim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSegmentEdgeDiscard = 0.01; // per edge, before power measurement
} // namespace

CorrelationResult xcorr_rough_delay(const RealSignal& known_tx, const RealSignal& captured,
                                    double min_peak_separation_s) {
    check_same_rate(known_tx, captured, "xcorr_rough_delay");
    if (known_tx.samples.empty() || captured.samples.empty())
        throw config_error("xcorr_rough_delay: empty input");

    const std::size_t n1 = known_tx.size();
    const std::size_t n2 = captured.size();
    std::size_t m = 1;
    while (m < n1 + n2 - 1) m <<= 1;

    std::vector<double> a(m, 0.0), b(m, 0.0);
    std::copy(known_tx.samples.begin(), known_tx.samples.end(), a.begin());
    std::copy(captured.samples.begin(), captured.samples.end(), b.begin());
    std::vector<cplx> fa = fft::rforward(a);
    const std::vector<cplx> fb = fft::rforward(b);
    for (std::size_t k = 0; k < fa.size(); ++k) fa[k] = std::conj(fa[k]) * fb[k];
    const std::vector<double> corr = fft::rinverse(fa, m);

    double e1 = 0.0, e2 = 0.0;
    for (double v : known_tx.samples) e1 += v * v;
    for (double v : captured.samples) e2 += v * v;
    const double norm = std::sqrt(e1 * e2);
    if (norm == 0.0) throw estimation_error("xcorr_rough_delay: zero-energy input");

    // Lags run from -(n1-1) to n2-1; circular index (lag mod m).
    const double ts = 1.0 / known_tx.sample_rate_hz;
    const long long lag_lo = -static_cast<long long>(n1) + 1;
    const long long lag_hi = static_cast<long long>(n2) - 1;
    CorrelationResult res;
    res.lags_s.reserve(static_cast<std::size_t>(lag_hi - lag_lo + 1));
    res.values.reserve(res.lags_s.capacity());
    for (long long l = lag_lo; l <= lag_hi; ++l) {
        const std::size_t idx = static_cast<std::size_t>(
            (l % static_cast<long long>(m) + static_cast<long long>(m)) %
            static_cast<long long>(m));
        res.lags_s.push_back(static_cast<double>(l) * ts);
        res.values.push_back(corr[idx] / norm);
    }

    // Detect peaks on the correlation envelope so the IF-carrier oscillation
    // inside each peak does not spawn sidelobe detections. Local maxima
    // above 0.3x the global max, tallest-first, with a minimum mutual
    // separation of half the symbol period.
    const RealSignal corr_sig{known_tx.sample_rate_hz, res.values};
    const std::vector<cplx> an = analytic(corr_sig);
    std::vector<double> env(an.size());
    for (std::size_t i = 0; i < an.size(); ++i) env[i] = std::abs(an[i]);

    double vmax = 0.0;
    for (double v : env) vmax = std::max(vmax, v);
    if (vmax <= 0.0) throw estimation_error("xcorr_rough_delay: no correlation peaks");
    const double thresh = 0.3 * vmax;

    std::vector<std::size_t> maxima;
    for (std::size_t i = 1; i + 1 < env.size(); ++i)
        if (env[i] >= thresh && env[i] >= env[i - 1] && env[i] >= env[i + 1])
            maxima.push_back(i);
    std::stable_sort(maxima.begin(), maxima.end(),
                     [&](std::size_t x, std::size_t y) { return env[x] > env[y]; });
    for (std::size_t idx : maxima) {
        bool clear = true;
        for (double kept : res.peak_lags_s)
            if (std::abs(res.lags_s[idx] - kept) < min_peak_separation_s) {
                clear = false;
                break;
            }
        if (clear) res.peak_lags_s.push_back(res.lags_s[idx]);
    }
    if (res.peak_lags_s.empty())
        throw estimation_error("xcorr_rough_delay: no correlation peaks above threshold");
    return res;
}

double rough_delay(const CorrelationResult& corr) {
    if (corr.peak_lags_s.empty())
        throw estimation_error("rough_delay: no peaks in correlation result");
    // Two peaks: SI minus unadjusted-reference lag. A single peak means the
    // reference either merged with the SI or was muted; its lag is the
    // estimate (0 in the merged case).
    if (corr.peak_lags_s.size() == 1) return std::abs(corr.peak_lags_s[0]);
    return std::abs(corr.peak_lags_s[0] - corr.peak_lags_s[1]);
}

double amplitude_from_power(double si_power, double ref_power_unattenuated) {
    if (si_power < 0 || ref_power_unattenuated <= 0)
        throw config_error("amplitude_from_power: powers must be positive");
    return std::clamp(std::sqrt(si_power / ref_power_unattenuated), 0.0, 1.0);
}

SegmentComposer::SegmentComposer(std::vector<RealSignal> base_references, SegmentPlan plan,
                                 double delay_resolution_s)
    : plan_(plan), delay_resolution_s_(delay_resolution_s) {
    if (base_references.empty()) throw config_error("SegmentComposer: no reference waveforms");
    if (plan.segments <= 0 || plan.guard_segments < 0 || plan.usable() <= 0)
        throw config_error("SegmentComposer: invalid segment plan");
    if (delay_resolution_s <= 0)
        throw config_error("SegmentComposer: delay resolution must be > 0");
    for (const RealSignal& r : base_references)
        check_same_rate(base_references.front(), r, "SegmentComposer");

    sample_rate_hz_ = base_references.front().sample_rate_hz;
    n_ = base_references.front().size();
    n_refs_ = base_references.size();
    const double dur = base_references.front().duration_s();
    if (std::abs(dur - plan.total_duration_s) > 0.5 / sample_rate_hz_)
        throw config_error("SegmentComposer: frame duration does not match plan");

    ref_spectra_.reserve(n_refs_);
    for (const RealSignal& r : base_references) {
        if (r.size() != n_) throw config_error("SegmentComposer: reference length mismatch");
        ref_spectra_.push_back(fft::rforward(r.samples));
    }
}

RealSignal SegmentComposer::compose(const std::vector<Candidate>& batch,
                                    const std::vector<std::size_t>* segment_ids) const {
    if (batch.size() > static_cast<std::size_t>(plan_.usable()))
        throw config_error("SegmentComposer: batch larger than usable segments");
    if (segment_ids && segment_ids->size() < batch.size())
        throw config_error("SegmentComposer: segment map shorter than batch");

    RealSignal frame{sample_rate_hz_, std::vector<double>(n_, 0.0)};
    const std::size_t half = ref_spectra_.front().size();
    std::vector<cplx> acc(half);
    const double df = sample_rate_hz_ / static_cast<double>(n_);

    for (std::size_t b = 0; b < batch.size(); ++b) {
        const Candidate& c = batch[b];
        if (c.delays_s.size() != n_refs_ || c.amplitudes.size() != n_refs_)
            throw config_error("SegmentComposer: candidate dimensionality mismatch");

        std::fill(acc.begin(), acc.end(), cplx(0.0, 0.0));
        for (std::size_t j = 0; j < n_refs_; ++j) {
            const double tau = quantize_delay(c.delays_s[j], delay_resolution_s_);
            const double amp = c.amplitudes[j];
            const std::vector<cplx>& spec = ref_spectra_[j];
            for (std::size_t k = 0; k < half; ++k) {
                const double ph = -kTwoPi * df * static_cast<double>(k) * tau;
                if (n_ % 2 == 0 && k == half - 1)
                    acc[k] += amp * spec[k] * std::cos(ph);
                else
                    acc[k] += amp * spec[k] * cplx(std::cos(ph), std::sin(ph));
            }
        }
        const std::vector<double> delayed = fft::rinverse(acc, n_);

        const std::size_t gi = segment_ids
            ? (*segment_ids)[b]
            : static_cast<std::size_t>(plan_.guard_head()) + b;
        if (gi >= static_cast<std::size_t>(plan_.segments))
            throw config_error("SegmentComposer: segment index out of range");
        const std::size_t s0 = gi * n_ / static_cast<std::size_t>(plan_.segments);
        const std::size_t s1 = (gi + 1) * n_ / static_cast<std::size_t>(plan_.segments);
        for (std::size_t i = s0; i < s1; ++i) frame.samples[i] = delayed[i];
    }
    return frame;
}

RealSignal SegmentComposer::compose_uniform(const Candidate& c) const {
    if (c.delays_s.size() != n_refs_ || c.amplitudes.size() != n_refs_)
        throw config_error("SegmentComposer: candidate dimensionality mismatch");
    RealSignal frame{sample_rate_hz_, std::vector<double>(n_, 0.0)};
    const std::size_t half = ref_spectra_.front().size();
    std::vector<cplx> acc(half, cplx(0.0, 0.0));
    const double df = sample_rate_hz_ / static_cast<double>(n_);
    for (std::size_t j = 0; j < n_refs_; ++j) {
        const double tau = quantize_delay(c.delays_s[j], delay_resolution_s_);
        for (std::size_t k = 0; k < half; ++k) {
            const double ph = -kTwoPi * df * static_cast<double>(k) * tau;
            if (n_ % 2 == 0 && k == half - 1)
                acc[k] += c.amplitudes[j] * ref_spectra_[j][k] * std::cos(ph);
            else
                acc[k] += c.amplitudes[j] * ref_spectra_[j][k] * cplx(std::cos(ph), std::sin(ph));
        }
    }
    frame.samples = fft::rinverse(acc, n_);
    return frame;
}

SegmentedBatchEvaluator::SegmentedBatchEvaluator(ResidualEvaluator& link,
                                                 SegmentComposer composer, BandSpec band)
    : link_(link), composer_(std::move(composer)), band_(band) {
    // Baseline capture with the reference muted: per-segment uncancelled
    // in-band power used to normalize residuals. Segments without SI power
    // (frame guards or zero-padding gaps of the interferer itself) cannot
    // rank candidates and are left out of the assignment.
    const std::vector<Candidate> empty;
    RealSignal zero_frame = composer_.compose(empty);
    RealSignal captured = link_.submit(zero_frame);
    ++captures_;
    baseline_ = segment_powers(captured);

    const SegmentPlan& plan = composer_.plan();
    const std::size_t head = static_cast<std::size_t>(plan.guard_head());
    const std::size_t stop = static_cast<std::size_t>(plan.segments - plan.guard_tail());
    std::vector<double> candidates_pool(baseline_.begin() + static_cast<std::ptrdiff_t>(head),
                                        baseline_.begin() + static_cast<std::ptrdiff_t>(stop));
    std::sort(candidates_pool.begin(), candidates_pool.end());
    const double median = candidates_pool[candidates_pool.size() / 2];
    if (median <= 0.0)
        throw estimation_error("SegmentedBatchEvaluator: no baseline power in any segment");
    for (std::size_t gi = head; gi < stop; ++gi)
        if (baseline_[gi] > 1e-3 * median) live_segments_.push_back(gi);
    if (live_segments_.empty())
        throw estimation_error("SegmentedBatchEvaluator: no usable segments");
}

std::vector<double> SegmentedBatchEvaluator::segment_powers(const RealSignal& captured) const {
    const SegmentPlan& plan = composer_.plan();
    const std::size_t n = captured.size();
    std::vector<double> powers(static_cast<std::size_t>(plan.segments));
    for (std::size_t gi = 0; gi < powers.size(); ++gi) {
        std::size_t s0 = gi * n / static_cast<std::size_t>(plan.segments);
        std::size_t s1 = (gi + 1) * n / static_cast<std::size_t>(plan.segments);
        const std::size_t trim = static_cast<std::size_t>(
            std::ceil(kSegmentEdgeDiscard * static_cast<double>(s1 - s0)));
        s0 += trim;
        s1 -= trim;
        powers[gi] = segment_band_power(
            std::span<const double>(captured.samples.data() + s0, s1 - s0),
            captured.sample_rate_hz, band_);
    }
    return powers;
}

std::vector<double> SegmentedBatchEvaluator::residual_ratios(const std::vector<Candidate>& batch) {
    if (batch.size() > max_batch())
        throw config_error("SegmentedBatchEvaluator: batch exceeds usable segments");
    const std::vector<std::size_t> ids(live_segments_.begin(),
                                       live_segments_.begin() +
                                           static_cast<std::ptrdiff_t>(batch.size()));
    const RealSignal frame = composer_.compose(batch, &ids);
    const RealSignal captured = link_.submit(frame);
    ++captures_;
    const std::vector<double> powers = segment_powers(captured);
    std::vector<double> ratios(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i)
        ratios[i] = powers[ids[i]] / baseline_[ids[i]];
    return ratios;
}

SegmentedSearchResult segmented_search(BatchEvaluator& evaluator,
                                       const std::vector<Candidate>& grid) {
    if (grid.empty()) throw config_error("segmented_search: empty grid");
    SegmentedSearchResult res;
    res.residual_ratios.reserve(grid.size());
    const std::size_t chunk = evaluator.max_batch();
    for (std::size_t start = 0; start < grid.size(); start += chunk) {
        const std::size_t stop = std::min(grid.size(), start + chunk);
        const std::vector<Candidate> batch(grid.begin() + static_cast<std::ptrdiff_t>(start),
                                           grid.begin() + static_cast<std::ptrdiff_t>(stop));
        const std::vector<double> ratios = evaluator.residual_ratios(batch);
        res.residual_ratios.insert(res.residual_ratios.end(), ratios.begin(), ratios.end());
    }
    const std::size_t best = static_cast<std::size_t>(
        std::min_element(res.residual_ratios.begin(), res.residual_ratios.end()) -
        res.residual_ratios.begin());
    res.best = grid[best];
    return res;
}

} // namespace sicsim
