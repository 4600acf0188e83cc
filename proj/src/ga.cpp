// SPDX-License-Identifier: Apache-2.0
#include "sicsim/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "sicsim/dsp.hpp"
#include "sicsim/metrics.hpp"

namespace sicsim {

namespace {

struct Axis {
    double lo, hi, res;
    long long steps; // grid points = steps + 1
};

std::vector<Axis> axes_of(const SearchSpace& space) {
    if (space.components() == 0 || space.amplitude_ranges.size() != space.components())
        throw config_error("ga: degenerate search space");
    std::vector<Axis> axes;
    for (const auto& [lo, hi] : space.delay_ranges_s) {
        if (!(lo < hi)) throw config_error("ga: empty delay range");
        axes.push_back({lo, hi, space.delay_resolution_s,
                        std::llround((hi - lo) / space.delay_resolution_s)});
    }
    for (const auto& [lo, hi] : space.amplitude_ranges) {
        if (!(lo < hi)) throw config_error("ga: empty amplitude range");
        axes.push_back({lo, hi, space.amplitude_resolution,
                        std::llround((hi - lo) / space.amplitude_resolution)});
    }
    for (const Axis& a : axes)
        if (a.steps < 1) throw config_error("ga: range narrower than resolution");
    return axes;
}

std::vector<double> genes_of(const Candidate& c) {
    std::vector<double> g = c.delays_s;
    g.insert(g.end(), c.amplitudes.begin(), c.amplitudes.end());
    return g;
}

Candidate candidate_of(const std::vector<double>& genes, std::size_t components) {
    Candidate c;
    c.delays_s.assign(genes.begin(), genes.begin() + static_cast<std::ptrdiff_t>(components));
    c.amplitudes.assign(genes.begin() + static_cast<std::ptrdiff_t>(components), genes.end());
    return c;
}

double draw_gene(const Axis& axis, std::mt19937_64& rng) {
    std::uniform_int_distribution<long long> d(0, axis.steps);
    return axis.lo + static_cast<double>(d(rng)) * axis.res;
}

double depth_of_ratio(double ratio) {
    if (ratio <= 0) return kDepthCapDb;
    return std::min(-power_to_db(ratio), kDepthCapDb);
}

} // namespace

SearchSpace stage1_ranges(const std::vector<CorrelationResult>& xcorr_results,
                          double si_total_power, double ref_power_unattenuated) {
    if (xcorr_results.empty()) throw config_error("stage1_ranges: no correlation results");

    SearchSpace space;
    space.delay_resolution_s = 1e-12;
    space.amplitude_resolution = 0.01;
    for (const CorrelationResult& corr : xcorr_results) {
        const double rough = rough_delay(corr); // throws when peaks are missing
        const double center = quantize_delay(rough, space.delay_resolution_s);
        const double lo = std::max(0.0, center - 200e-12);
        space.delay_ranges_s.emplace_back(lo, center + 200e-12);
    }

    const double pooled = amplitude_from_power(si_total_power, ref_power_unattenuated);
    const double snapped = std::round(pooled / 0.01) * 0.01;
    double lo = std::max(0.0, snapped - 0.25);
    double hi = std::min(1.0, snapped + 0.25);
    lo = std::round(lo / 0.01) * 0.01;
    hi = std::round(hi / 0.01) * 0.01;
    for (std::size_t i = 0; i < xcorr_results.size(); ++i)
        space.amplitude_ranges.emplace_back(lo, hi);
    return space;
}

std::pair<Candidate, GaHistory> ga_run(BatchEvaluator& evaluator, const SearchSpace& space,
                                       const GaConfig& cfg) {
    if (cfg.population < 2) throw config_error("ga_run: population must be > 1");
    if (cfg.mutation_rate < 0 || cfg.mutation_rate > 1)
        throw config_error("ga_run: mutation rate out of [0,1]");
    if (cfg.iterations < 1) throw config_error("ga_run: need at least one iteration");

    const std::vector<Axis> axes = axes_of(space);
    const std::size_t comps = space.components();
    const std::size_t np = static_cast<std::size_t>(cfg.population);
    std::mt19937_64 rng(cfg.seed);

    struct Scored {
        std::vector<double> genes;
        double depth;
    };

    auto evaluate = [&](const std::vector<std::vector<double>>& genomes) {
        std::vector<Candidate> cands;
        cands.reserve(genomes.size());
        for (const auto& g : genomes) cands.push_back(candidate_of(g, comps));
        std::vector<double> depths;
        depths.reserve(genomes.size());
        const std::size_t chunk = evaluator.max_batch();
        for (std::size_t start = 0; start < cands.size(); start += chunk) {
            const std::size_t stop = std::min(cands.size(), start + chunk);
            const std::vector<Candidate> batch(
                cands.begin() + static_cast<std::ptrdiff_t>(start),
                cands.begin() + static_cast<std::ptrdiff_t>(stop));
            for (double r : evaluator.residual_ratios(batch))
                depths.push_back(depth_of_ratio(r));
        }
        return depths;
    };

    // Stable sort by depth descending; insertion order breaks ties.
    auto sort_indices = [](const std::vector<Scored>& pool) {
        std::vector<std::size_t> idx(pool.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return pool[a].depth > pool[b].depth;
        });
        return idx;
    };

    GaHistory history;
    std::vector<Scored> gen;

    // Step 1: uniform random initialization over the quantized space.
    {
        std::vector<std::vector<double>> genomes(np);
        for (std::size_t i = 0; i < np; ++i) {
            genomes[i].resize(axes.size());
            for (std::size_t k = 0; k < axes.size(); ++k) genomes[i][k] = draw_gene(axes[k], rng);
        }
        const std::vector<double> depths = evaluate(genomes);
        gen.resize(np);
        for (std::size_t i = 0; i < np; ++i) gen[i] = Scored{genomes[i], depths[i]};
    }

    auto record = [&](const std::vector<Scored>& g) {
        const Scored* best = &g.front();
        for (const Scored& s : g)
            if (s.depth > best->depth) best = &s;
        GaIteration it;
        it.best = candidate_of(best->genes, comps);
        it.best_depth_db = best->depth;
        it.population.reserve(g.size());
        it.depths_db.reserve(g.size());
        for (const Scored& s : g) {
            it.population.push_back(candidate_of(s.genes, comps));
            it.depths_db.push_back(s.depth);
        }
        history.iterations.push_back(std::move(it));
    };
    record(gen);

    for (int iter = 2; iter <= cfg.iterations; ++iter) {
        if (cfg.target_depth_db && history.iterations.back().best_depth_db >= *cfg.target_depth_db)
            break;

        // Step 2: crossover among the best solution and the top half.
        const std::vector<std::size_t> order = sort_indices(gen);
        const std::size_t elite_n = std::max<std::size_t>(
            2, static_cast<std::size_t>(std::ceil(static_cast<double>(np) * cfg.elite_fraction)));
        std::uniform_int_distribution<std::size_t> pick(0, elite_n - 1);
        std::uniform_real_distribution<double> coin(0.0, 1.0);

        std::vector<std::vector<double>> offspring(np);
        for (std::size_t i = 0; i < np; ++i) {
            const Scored& pa = (coin(rng) < 0.5) ? gen[order[0]] : gen[order[pick(rng)]];
            const Scored& pb = gen[order[pick(rng)]];
            std::vector<double> child(axes.size());
            for (std::size_t k = 0; k < axes.size(); ++k)
                child[k] = (coin(rng) < 0.5) ? pa.genes[k] : pb.genes[k];
            // Step 3: per-gene mutation re-draws the gene uniformly.
            for (std::size_t k = 0; k < axes.size(); ++k)
                if (coin(rng) < cfg.mutation_rate) child[k] = draw_gene(axes[k], rng);
            offspring[i] = std::move(child);
        }

        // Step 4: fitness of the offspring (one segmented capture per batch).
        const std::vector<double> depths = evaluate(offspring);

        // Step 5: elitist truncation of parents + offspring.
        std::vector<Scored> pool = gen;
        pool.reserve(gen.size() + np);
        for (std::size_t i = 0; i < np; ++i) pool.push_back(Scored{offspring[i], depths[i]});
        const std::vector<std::size_t> sel = sort_indices(pool);
        std::vector<Scored> next;
        next.reserve(np);
        for (std::size_t i = 0; i < np; ++i) next.push_back(pool[sel[i]]);
        gen = std::move(next);
        record(gen);
    }

    const GaIteration& last = history.iterations.back();
    return {last.best, history};
}

SearchSpace stage3_refine(const SearchSpace& space, const GaHistory& converged) {
    if (converged.iterations.empty()) throw config_error("stage3_refine: empty history");
    const Candidate& best = converged.iterations.back().best;
    if (best.delays_s.size() != space.components())
        throw config_error("stage3_refine: history does not match space");

    SearchSpace out;
    out.delay_resolution_s = space.delay_resolution_s / 2;
    out.amplitude_resolution = space.amplitude_resolution;
    for (std::size_t i = 0; i < space.components(); ++i) {
        const double w = space.delay_ranges_s[i].second - space.delay_ranges_s[i].first;
        const double lo = std::max(0.0, best.delays_s[i] - w / 4);
        out.delay_ranges_s.emplace_back(lo, lo + w / 2);
    }
    for (std::size_t i = 0; i < space.components(); ++i) {
        const double w = space.amplitude_ranges[i].second - space.amplitude_ranges[i].first;
        double lo = std::max(0.0, best.amplitudes[i] - w / 4);
        double hi = std::min(1.0, best.amplitudes[i] + w / 4);
        lo = std::round(lo / out.amplitude_resolution) * out.amplitude_resolution;
        hi = std::round(hi / out.amplitude_resolution) * out.amplitude_resolution;
        out.amplitude_ranges.emplace_back(lo, hi);
    }
    return out;
}

nlohmann::json ga_history_to_json(const GaHistory& history) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t g = 0; g < history.iterations.size(); ++g) {
        const GaIteration& it = history.iterations[g];
        nlohmann::json pop = nlohmann::json::array();
        for (std::size_t i = 0; i < it.population.size(); ++i) {
            std::vector<double> delays_ps;
            for (double d : it.population[i].delays_s) delays_ps.push_back(d * 1e12);
            pop.push_back({{"delays_ps", delays_ps},
                           {"amplitudes", it.population[i].amplitudes},
                           {"depth_db", it.depths_db[i]}});
        }
        std::vector<double> best_ps;
        for (double d : it.best.delays_s) best_ps.push_back(d * 1e12);
        arr.push_back({{"iteration", g + 1},
                       {"best_delays_ps", best_ps},
                       {"best_amplitudes", it.best.amplitudes},
                       {"depth_db", it.best_depth_db},
                       {"population", pop}});
    }
    return arr;
}

} // namespace sicsim
