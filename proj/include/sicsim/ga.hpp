// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sicsim/delay_search.hpp"
#include "sicsim/types.hpp"

#include <nlohmann/json_fwd.hpp>

namespace sicsim {

/// A box in the joint (delays, amplitudes) space with quantization steps.
struct SearchSpace {
    std::vector<std::pair<double, double>> delay_ranges_s;
    std::vector<std::pair<double, double>> amplitude_ranges;
    double delay_resolution_s = 1e-12;
    double amplitude_resolution = 0.01;

    std::size_t components() const { return delay_ranges_s.size(); }
};

struct GaConfig {
    int population = 152;
    double mutation_rate = 0.1;
    int iterations = 11;
    double elite_fraction = 0.5;
    std::uint64_t seed = 1;
    std::optional<double> target_depth_db; // early stop; disabled by default
};

struct GaIteration {
    Candidate best;
    double best_depth_db = 0.0;
    std::vector<Candidate> population;
    std::vector<double> depths_db;
};

struct GaHistory {
    std::vector<GaIteration> iterations;
};

/// Search-range estimation from the rough cross-correlation delays and the
/// pooled SI/reference power ratio: delays rough +- 200 ps, amplitude pooled
/// estimate +- 0.25 clamped to [0, 1] at 0.01 resolution.
SearchSpace stage1_ranges(const std::vector<CorrelationResult>& xcorr_results,
                          double si_total_power, double ref_power_unattenuated);

/// Elitist genetic algorithm over the quantized space. Each iteration costs
/// ceil(population / usable segments) capture events through the evaluator.
/// Fitness is the measured SIC depth (dB) of each candidate's segment.
std::pair<Candidate, GaHistory> ga_run(BatchEvaluator& evaluator, const SearchSpace& space,
                                       const GaConfig& cfg);

/// Range reduction for the refinement stage: recenter on the converged best
/// with half the original widths; delay resolution halves, amplitude
/// resolution stays at 0.01.
SearchSpace stage3_refine(const SearchSpace& space, const GaHistory& converged);

nlohmann::json ga_history_to_json(const GaHistory& history);

} // namespace sicsim
