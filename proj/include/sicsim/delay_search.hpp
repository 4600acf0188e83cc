// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "sicsim/metrics.hpp"
#include "sicsim/types.hpp"

namespace sicsim {

struct CorrelationResult {
    std::vector<double> lags_s;
    std::vector<double> values;      // normalized cross-correlation, |v| <= 1
    std::vector<double> peak_lags_s; // detected peaks, descending height
};

/// A point in the joint (delays, amplitudes) space. One entry per reference
/// component.
struct Candidate {
    std::vector<double> delays_s;
    std::vector<double> amplitudes;
    bool operator==(const Candidate&) const = default;
};

/// How one reference frame is split for segmented searching. The guard
/// segments (synchronization mirror) carry no candidate; they are split
/// between the frame edges so they also absorb the silent frame guards.
struct SegmentPlan {
    double total_duration_s = 4e-6;
    int segments = 160;
    int guard_segments = 8;
    int usable() const { return segments - guard_segments; }
    int guard_head() const { return (guard_segments + 1) / 2; }
    int guard_tail() const { return guard_segments / 2; }
};

/// The capture seam: one outstanding capture at a time, mirroring a single
/// AWG/OSC pair. Implementations submit a reference frame into the analog
/// chain and return the captured IF frame.
class ResidualEvaluator {
public:
    virtual ~ResidualEvaluator() = default;
    virtual RealSignal submit(const RealSignal& reference_frame) = 0;
};

/// Normalized cross-correlation between the known transmitted waveform and a
/// captured frame. Peaks above 0.3x the maximum with at least
/// `min_peak_separation_s` spacing are reported tallest-first.
CorrelationResult xcorr_rough_delay(const RealSignal& known_tx, const RealSignal& captured,
                                    double min_peak_separation_s = 0.5e-9);

/// Difference between the two tallest correlation peaks; 0 when the peaks
/// merged into one.
double rough_delay(const CorrelationResult& corr);

/// Attenuation factor from the power ratio of the SI and the unattenuated
/// reference, clamped to [0, 1].
double amplitude_from_power(double si_power, double ref_power_unattenuated);

/// Builds segmented reference frames: each non-guard segment carries one
/// candidate's delayed, amplitude-scaled sum of the base reference
/// waveforms. Delays snap to `delay_resolution_s` (the digital upsampling
/// accuracy mirror).
class SegmentComposer {
public:
    SegmentComposer(std::vector<RealSignal> base_references, SegmentPlan plan,
                    double delay_resolution_s);

    /// Candidate i fills segment segment_ids[i] (default: guard + i);
    /// unassigned segments are muted.
    RealSignal compose(const std::vector<Candidate>& batch,
                       const std::vector<std::size_t>* segment_ids = nullptr) const;

    /// A single candidate applied to the whole frame (no segmentation).
    RealSignal compose_uniform(const Candidate& c) const;

    const SegmentPlan& plan() const { return plan_; }
    std::size_t component_count() const { return n_refs_; }

private:
    SegmentPlan plan_;
    double delay_resolution_s_;
    double sample_rate_hz_;
    std::size_t n_;
    std::size_t n_refs_;
    std::vector<std::vector<cplx>> ref_spectra_; // r2c half spectra
};

/// Residual per candidate, normalized by the uncancelled in-band power of
/// the same segment (lower is better; 1.0 means no cancellation). The
/// segmented implementation packs batches into capture frames; synthetic
/// implementations back the optimizer oracles.
class BatchEvaluator {
public:
    virtual ~BatchEvaluator() = default;
    virtual std::vector<double> residual_ratios(const std::vector<Candidate>& batch) = 0;
    virtual std::size_t max_batch() const = 0;
    virtual std::size_t capture_count() const { return 0; }
};

/// Segment-packed evaluation through a ResidualEvaluator. Measures one
/// baseline capture (reference muted) at construction for per-segment
/// normalization; 1% of the samples at each segment edge are discarded
/// before power measurement. Segments whose baseline power is negligible
/// (silent frame guards, zero-padding gaps) carry no candidates.
class SegmentedBatchEvaluator : public BatchEvaluator {
public:
    SegmentedBatchEvaluator(ResidualEvaluator& link, SegmentComposer composer, BandSpec band);

    std::vector<double> residual_ratios(const std::vector<Candidate>& batch) override;
    std::size_t max_batch() const override { return live_segments_.size(); }
    std::size_t capture_count() const override { return captures_; }

private:
    std::vector<double> segment_powers(const RealSignal& captured) const;

    ResidualEvaluator& link_;
    SegmentComposer composer_;
    BandSpec band_;
    std::vector<double> baseline_;            // per non-guard segment
    std::vector<std::size_t> live_segments_;  // global segment indices
    std::size_t captures_ = 0;
};

struct SegmentedSearchResult {
    Candidate best;
    std::vector<double> residual_ratios; // aligned with the input grid
};

/// Evaluate every grid candidate through segment-packed captures and return
/// the argmin. Capture events = ceil(grid / usable segments).
SegmentedSearchResult segmented_search(BatchEvaluator& evaluator,
                                       const std::vector<Candidate>& grid);

} // namespace sicsim
