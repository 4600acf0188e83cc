// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>

#include "sicsim/dsp.hpp"
#include "sicsim/ga.hpp"
#include "sicsim/io.hpp"
#include "sicsim/ls.hpp"
#include "sicsim/metrics.hpp"
#include "sicsim/scenario.hpp"
#include "sicsim/sim_link.hpp"

namespace sicsim {

namespace {

namespace fs = std::filesystem;

struct Built {
    Scenario sc;
    BandSpec band;
    std::vector<RealSignal> tx_dac;
    std::optional<RealSignal> soi_rf;
    std::unique_ptr<SimulatedLink> link;
};

LinkConfig link_config(const Scenario& sc) {
    LinkConfig lc;
    lc.modulator = sc.modulator;
    lc.pd.responsivity = sc.pd_responsivity;
    lc.pd.if_center_hz = sc.if_center_hz();
    lc.pd.if_width_hz = sc.if_width();
    lc.pd.capture_rate_hz = sc.capture_rate_hz;
    lc.lo_freq_hz = sc.lo_hz;
    lc.lo_amplitude_v = sc.lo_amplitude_v;
    lc.fiber_length_km = sc.fiber_length_km;
    lc.fiber_atten_db_per_km = sc.fiber_atten_db_per_km;
    lc.fiber_delay_per_km_s = sc.fiber_delay_per_km_s;
    if (sc.snr_db) lc.snr_db = *sc.snr_db;
    lc.noise_seed = sc.seed * 977 + 3;
    return lc;
}

Built build(const Scenario& sc) {
    Built b;
    b.sc = sc;
    b.band = BandSpec{sc.if_center_hz(), sc.if_width()};
    for (std::size_t j = 0; j < sc.paths.antenna_count(); ++j) {
        OfdmConfig c = sc.si;
        c.seed = sc.si.seed + j;
        const ComplexBaseband bb = gen_ofdm(c, sc.generation_rate_hz);
        b.tx_dac.push_back(to_dac(upconvert(bb, sc.carrier_hz), sc.dac_vpp));
    }
    if (sc.soi_enabled) {
        const ComplexBaseband bb = gen_qpsk(sc.soi, sc.generation_rate_hz);
        b.soi_rf = upconvert(bb, sc.carrier_hz);
    }
    b.link = std::make_unique<SimulatedLink>(b.tx_dac, sc.paths, link_config(sc), b.soi_rf,
                                             sc.sir_db);
    return b;
}

RealSignal make_tx_if(const RealSignal& tx_rf, const Scenario& sc, const BandSpec& band) {
    // Digital downconversion with the same LO, shaped by the same IF
    // extraction filter as the captures so that filtering commutes out of
    // the estimated channel.
    PdConfig pd;
    pd.if_center_hz = band.center_hz;
    pd.if_width_hz = band.width_hz;
    pd.capture_rate_hz = sc.capture_rate_hz;
    return extract_if(rf_to_if(tx_rf, sc.lo_hz), pd);
}

std::vector<Candidate> delay_grid(double start_ps, double stop_ps, double step_ps,
                                  double amplitude) {
    std::vector<Candidate> grid;
    for (double t = start_ps; t <= stop_ps + 1e-9; t += step_ps)
        grid.push_back(Candidate{{t * 1e-12}, {amplitude}});
    return grid;
}

double depth_of_ratio(double ratio) {
    if (ratio <= 0) return kDepthCapDb;
    return std::min(-power_to_db(ratio), kDepthCapDb);
}

struct Artifacts {
    fs::path dir;
    std::vector<std::string> files;

    std::string path(const std::string& name) {
        files.push_back(name);
        return (dir / name).string();
    }
};

// ---------------------------------------------------------------------------
// mismatch-sweep: closed-form vs full-pipeline depth per (carrier, baud, dt)
// ---------------------------------------------------------------------------
nlohmann::json run_mismatch_sweep(const Scenario& base, Artifacts& art) {
    const nlohmann::json& alg = base.algorithm;
    const double rho = alg.value("rho", 1.0);
    std::vector<std::vector<double>> rows;
    for (const auto& entry : alg.at("entries")) {
        Scenario sc = base;
        sc.carrier_hz = entry.at("carrier_hz").get<double>();
        sc.lo_hz = sc.carrier_hz - base.if_center_hz();
        sc.si.baud_rate_hz = entry.value("baud_hz", sc.si.baud_rate_hz);
        Built b = build(sc);

        const double tau0 = sc.paths.antennas[0].direct.delay_s;
        const double amp = db_to_linear_field(sc.paths.antennas[0].direct.gain_db);
        const RealSignal before = b.link->capture_baseline(true);

        for (double dt_ps : entry.at("delta_tau_ps").get<std::vector<double>>()) {
            const double dt = dt_ps * 1e-12;
            const double closed = mismatch_depth_curve(sc.carrier_hz, {dt}, rho)[0];
            const RealSignal ref = scale(
                fractional_delay(b.tx_dac[0], quantize_delay(tau0 + dt, 0.5e-12)), amp * rho);
            const RealSignal after = b.link->capture(ref, true);
            const DepthReport rep = sic_depth(before, after, b.band);
            rows.push_back({sc.carrier_hz, sc.si.baud_rate_hz, dt_ps, closed, rep.depth_db});
        }
    }
    write_rows_csv(art.path("sweep.csv"),
                   "carrier_hz,baud_hz,delta_tau_ps,depth_closed_form_db,depth_pipeline_db",
                   rows);
    nlohmann::json out;
    out["points"] = rows.size();
    return out;
}

// ---------------------------------------------------------------------------
// segmented: rough xcorr + amplitude from power + segmented delay grid
// ---------------------------------------------------------------------------
nlohmann::json run_segmented(Built& b, Artifacts& art) {
    const Scenario& sc = b.sc;
    const nlohmann::json& alg = sc.algorithm;
    const RealSignal& ref_base = b.tx_dac[0];

    const RealSignal captured_unadj = b.link->submit(ref_base);
    const RealSignal tx_if = make_tx_if(ref_base, sc, b.band);
    const CorrelationResult corr =
        xcorr_rough_delay(tx_if, captured_unadj, 0.5 / sc.si.baud_rate_hz);
    const double rough_ps = rough_delay(corr) * 1e12;

    const RealSignal baseline = b.link->capture_baseline(true);
    const double p_si = band_power(baseline, b.band);
    const double p_ref = band_power(b.link->capture_reference_only(ref_base), b.band);
    const double amplitude = amplitude_from_power(p_si, p_ref);

    const SegmentPlan plan{sc.si.frame_duration_s, alg.value("segments", 400),
                           alg.value("guard_segments", 0)};
    const std::vector<Candidate> grid =
        delay_grid(alg.at("grid_start_ps").get<double>(), alg.at("grid_stop_ps").get<double>(),
                   alg.value("grid_step_ps", 1.0), amplitude);

    SegmentComposer fine_composer({ref_base}, plan, 0.5e-12);
    SegmentedBatchEvaluator fine_eval(*b.link, fine_composer, b.band);
    const SegmentedSearchResult res = segmented_search(fine_eval, grid);

    const RealSignal after = b.link->capture(fine_composer.compose_uniform(res.best), true);
    const DepthReport depth = sic_depth(baseline, after, b.band);

    std::vector<std::vector<double>> curve;
    for (std::size_t i = 0; i < grid.size(); ++i)
        curve.push_back({grid[i].delays_s[0] * 1e12, res.residual_ratios[i],
                         depth_of_ratio(res.residual_ratios[i])});
    write_rows_csv(art.path("search_curve.csv"), "delay_ps,residual_ratio,depth_db", curve);
    write_psd_csv(art.path("psd_no_sic.csv"), psd_welch(baseline));
    write_psd_csv(art.path("psd_with_sic.csv"), psd_welch(after));

    nlohmann::json out;
    out["rough_delay_ps"] = rough_ps;
    out["amplitude"] = amplitude;
    out["best_delay_ps"] = res.best.delays_s[0] * 1e12;
    out["depth_db"] = depth.depth_db;
    out["depth_capped"] = depth.capped;

    if (alg.value("coarse_comparison", false)) {
        // Delay adjustment at the raw generator rate, the no-upsampling case.
        SegmentComposer coarse_composer({ref_base}, plan, 1.0 / sc.generation_rate_hz);
        SegmentedBatchEvaluator coarse_eval(*b.link, coarse_composer, b.band);
        const SegmentedSearchResult res_c = segmented_search(coarse_eval, grid);
        const RealSignal after_c =
            b.link->capture(coarse_composer.compose_uniform(res_c.best), true);
        const DepthReport depth_c = sic_depth(baseline, after_c, b.band);
        out["coarse_best_delay_ps"] = res_c.best.delays_s[0] * 1e12;
        out["coarse_depth_db"] = depth_c.depth_db;
    }
    out["captures"] = b.link->capture_count();
    return out;
}

// ---------------------------------------------------------------------------
// fixed: known delays/amplitudes applied to the whole frame
// ---------------------------------------------------------------------------
nlohmann::json run_fixed(Built& b, Artifacts& art) {
    const nlohmann::json& alg = b.sc.algorithm;
    Candidate cand;
    for (double d : alg.at("delays_ps").get<std::vector<double>>())
        cand.delays_s.push_back(d * 1e-12);
    cand.amplitudes = alg.at("amplitudes").get<std::vector<double>>();

    const SegmentPlan plan{b.sc.si.frame_duration_s, 1, 0};
    SegmentComposer composer(b.tx_dac, plan, 0.5e-12);
    const RealSignal baseline = b.link->capture_baseline(true);
    const RealSignal after = b.link->capture(composer.compose_uniform(cand), true);
    const DepthReport depth = sic_depth(baseline, after, b.band);

    write_psd_csv(art.path("psd_no_sic.csv"), psd_welch(baseline));
    write_psd_csv(art.path("psd_with_sic.csv"), psd_welch(after));

    nlohmann::json out;
    out["depth_db"] = depth.depth_db;
    out["depth_capped"] = depth.capped;
    out["power_before_db"] = depth.power_before_db_rel;
    out["power_after_db"] = depth.power_after_db_rel;
    return out;
}

// ---------------------------------------------------------------------------
// ga: Stage 1 range estimation, Stage 2 coarse GA, Stage 3 refined GA
// ---------------------------------------------------------------------------
nlohmann::json run_ga(Built& b, Artifacts& art) {
    const Scenario& sc = b.sc;
    const nlohmann::json& alg = sc.algorithm;

    // Stage 1: rough delays from cross-correlation, pooled amplitude from
    // the SI / unattenuated-reference power ratio.
    Candidate unadjusted;
    unadjusted.delays_s.assign(b.tx_dac.size(), 0.0);
    unadjusted.amplitudes.assign(b.tx_dac.size(), 1.0);
    const SegmentPlan plan{sc.si.frame_duration_s, alg.value("segments", 160),
                           alg.value("guard_segments", 8)};
    SegmentComposer composer(b.tx_dac, plan, 0.5e-12);
    const RealSignal captured_unadj = b.link->submit(composer.compose_uniform(unadjusted));

    std::vector<CorrelationResult> corrs;
    for (const RealSignal& tx : b.tx_dac)
        corrs.push_back(xcorr_rough_delay(make_tx_if(tx, sc, b.band), captured_unadj,
                                          0.5 / sc.si.baud_rate_hz));
    const RealSignal baseline = b.link->capture_baseline(true);
    const double p_si = band_power(baseline, b.band);
    const double p_ref = band_power(
        b.link->capture_reference_only(composer.compose_uniform(unadjusted)), b.band);
    const SearchSpace space = stage1_ranges(corrs, p_si, p_ref);

    nlohmann::json out;
    {
        nlohmann::json ranges = nlohmann::json::array();
        for (const auto& [lo, hi] : space.delay_ranges_s)
            ranges.push_back({{"lo_ps", lo * 1e12}, {"hi_ps", hi * 1e12}});
        out["stage1"] = {{"delay_ranges", ranges},
                         {"amplitude_range",
                          {{"lo", space.amplitude_ranges[0].first},
                           {"hi", space.amplitude_ranges[0].second}}},
                         {"rough_delays_ps",
                          {rough_delay(corrs[0]) * 1e12, rough_delay(corrs[1]) * 1e12}}};
    }

    SegmentedBatchEvaluator eval(*b.link, composer, b.band);
    GaConfig cfg;
    cfg.population = alg.value("population", 152);
    cfg.mutation_rate = alg.value("mutation_rate", 0.1);
    cfg.iterations = alg.value("iterations", 11);

    std::vector<int> seeds = alg.value("seeds", std::vector<int>{1});
    nlohmann::json per_seed = nlohmann::json::array();
    for (int seed : seeds) {
        nlohmann::json entry;
        entry["seed"] = seed;

        cfg.seed = static_cast<std::uint64_t>(seed);
        const std::size_t c0 = eval.capture_count();
        auto [best2, hist2] = ga_run(eval, space, cfg);
        const std::size_t c1 = eval.capture_count();

        const SearchSpace space3 = stage3_refine(space, hist2);
        cfg.seed = static_cast<std::uint64_t>(seed) + 1000003;
        auto [best3, hist3] = ga_run(eval, space3, cfg);
        const std::size_t c2 = eval.capture_count();

        const RealSignal after = b.link->capture(composer.compose_uniform(best3), true);
        const DepthReport depth = sic_depth(baseline, after, b.band);

        {
            std::ofstream os(art.path("ga_stage2_seed" + std::to_string(seed) + ".json"));
            os << ga_history_to_json(hist2).dump(1) << '\n';
        }
        {
            std::ofstream os(art.path("ga_stage3_seed" + std::to_string(seed) + ".json"));
            os << ga_history_to_json(hist3).dump(1) << '\n';
        }

        auto cand_json = [](const Candidate& c) {
            std::vector<double> ps;
            for (double d : c.delays_s) ps.push_back(d * 1e12);
            return nlohmann::json{{"delays_ps", ps}, {"amplitudes", c.amplitudes}};
        };
        entry["stage2"] = {{"best", cand_json(best2)},
                           {"depth_db", hist2.iterations.back().best_depth_db},
                           {"captures", c1 - c0}};
        entry["stage3"] = {{"best", cand_json(best3)},
                           {"depth_db", hist3.iterations.back().best_depth_db},
                           {"captures", c2 - c1}};
        entry["final_depth_db"] = depth.depth_db;
        entry["final_depth_capped"] = depth.capped;
        per_seed.push_back(entry);

        if (seed == seeds.front()) {
            write_psd_csv(art.path("psd_no_sic.csv"), psd_welch(baseline));
            write_psd_csv(art.path("psd_with_sic.csv"), psd_welch(after));
        }
    }
    out["runs"] = per_seed;
    out["captures"] = b.link->capture_count();
    return out;
}

// ---------------------------------------------------------------------------
// ls: LS estimation, reference construction, global delay/amplitude fit
// ---------------------------------------------------------------------------
struct LsOutcome {
    nlohmann::json summary;
    LsModel model;
    RealSignal baseline_soi_muted;
    RealSignal after_soi_muted;
    std::optional<DemodResult> demod_no_sic;
    std::optional<DemodResult> demod_with_sic;
};

LsOutcome ls_flow(Built& b) {
    const Scenario& sc = b.sc;
    const nlohmann::json& alg = sc.algorithm;

    // Estimation capture runs with the reference arm muted; the SOI stays in
    // whatever state the scenario configures.
    const RealSignal y_est = b.link->capture_baseline(false);

    std::vector<RealSignal> tx_if;
    for (const RealSignal& tx : b.tx_dac) tx_if.push_back(make_tx_if(tx, sc, b.band));

    double max_delay = 0.0;
    for (const AntennaPaths& ap : sc.paths.antennas) {
        max_delay = std::max(max_delay, ap.direct.delay_s);
        for (const Tap& mp : ap.multipaths)
            max_delay = std::max(max_delay, ap.direct.delay_s + mp.delay_s);
    }
    const int order = alg.contains("order") && !alg.at("order").is_null()
                          ? alg.at("order").get<int>()
                          : default_ls_order(max_delay, sc.capture_rate_hz);
    const std::size_t n_samples =
        alg.contains("n_samples") && !alg.at("n_samples").is_null()
            ? alg.at("n_samples").get<std::size_t>()
            : y_est.size() - static_cast<std::size_t>(order);

    const LsModel model = ls_estimate(y_est, tx_if, order, n_samples);
    const RealSignal ref_if = construct_reference(model, tx_if);
    const RealSignal ref_rf =
        to_dac(if_to_rf(resample(ref_if, sc.generation_rate_hz), sc.lo_hz), sc.dac_vpp);

    const double p_si = band_power(y_est, b.band);
    const double p_ref = band_power(b.link->capture_reference_only(ref_rf), b.band);
    const double amplitude = amplitude_from_power(p_si, p_ref);

    const RealSignal captured_unadj = b.link->submit(ref_rf);
    const RealSignal ref_if_meas = resample(ref_if, sc.capture_rate_hz);
    double rough_ps = 0.0;
    try {
        rough_ps =
            rough_delay(xcorr_rough_delay(ref_if_meas, captured_unadj,
                                          0.5 / sc.si.baud_rate_hz)) * 1e12;
    } catch (const estimation_error&) {
        rough_ps = 0.0;
    }

    const double halfwidth = alg.value("grid_halfwidth_ps", 200.0);
    const double step = alg.value("grid_step_ps", 1.0);
    const SegmentPlan plan{sc.si.frame_duration_s, alg.value("segments", 400),
                           alg.value("guard_segments", 0)};
    SegmentComposer composer({ref_rf}, plan, 0.5e-12);
    SegmentedBatchEvaluator eval(*b.link, composer, b.band);
    std::vector<Candidate> grid =
        delay_grid(rough_ps - halfwidth, rough_ps + halfwidth, step, amplitude);
    SegmentedSearchResult res = segmented_search(eval, grid);
    double best_ps = res.best.delays_s[0] * 1e12;

    if (alg.value("refine", true) && step > 0.5) {
        const std::vector<Candidate> fine =
            delay_grid(best_ps - 2.0, best_ps + 2.0, 0.5, amplitude);
        const SegmentedSearchResult res2 = segmented_search(eval, fine);
        best_ps = res2.best.delays_s[0] * 1e12;
        res.best = res2.best;
    }

    LsOutcome oc;
    oc.model = model;
    oc.baseline_soi_muted = b.link->capture_baseline(true);
    oc.after_soi_muted = b.link->capture(composer.compose_uniform(res.best), true);
    const DepthReport depth = sic_depth(oc.baseline_soi_muted, oc.after_soi_muted, b.band);

    oc.summary["order"] = order;
    oc.summary["n_samples"] = n_samples;
    oc.summary["amplitude"] = amplitude;
    oc.summary["rough_delay_ps"] = rough_ps;
    oc.summary["best_delay_ps"] = best_ps;
    oc.summary["depth_db"] = depth.depth_db;
    oc.summary["depth_capped"] = depth.capped;

    if (sc.soi_enabled) {
        const DemodGenie genie{sc.if_center_hz(), 0.0};
        const RealSignal no_sic = b.link->capture_baseline(false);
        const RealSignal with_sic = b.link->capture(composer.compose_uniform(res.best), false);
        oc.demod_no_sic = demod_and_evm(no_sic, sc.soi, genie);
        oc.demod_with_sic = demod_and_evm(with_sic, sc.soi, genie);
        oc.summary["evm_no_sic_percent"] = oc.demod_no_sic->evm_percent;
        oc.summary["evm_with_sic_percent"] = oc.demod_with_sic->evm_percent;
        oc.summary["symbol_errors_no_sic"] = oc.demod_no_sic->symbol_errors;
        oc.summary["symbol_errors_with_sic"] = oc.demod_with_sic->symbol_errors;
        const double resid_after = band_power(with_sic, b.band);
        oc.summary["soi_present_residual_db"] = power_to_db(resid_after);
    }
    return oc;
}

nlohmann::json run_ls(Built& b, Artifacts& art) {
    const Scenario& sc = b.sc;
    const nlohmann::json& alg = sc.algorithm;

    if (alg.contains("sir_sweep")) {
        nlohmann::json points = nlohmann::json::array();
        std::vector<std::vector<double>> rows;
        for (double sir : alg.at("sir_sweep").get<std::vector<double>>()) {
            Scenario s2 = sc;
            s2.sir_db = sir;
            Built b2 = build(s2);
            LsOutcome oc = ls_flow(b2);
            oc.summary["sir_db"] = sir;
            points.push_back(oc.summary);
            rows.push_back({sir, oc.summary["depth_db"].get<double>(),
                            oc.summary["evm_with_sic_percent"].get<double>(),
                            static_cast<double>(
                                oc.summary["symbol_errors_with_sic"].get<std::size_t>())});
            if (oc.demod_with_sic)
                write_constellation_csv(
                    art.path("constellation_sir_" + std::to_string(sir) + ".csv"),
                    oc.demod_with_sic->symbols);
        }
        write_rows_csv(art.path("sir_sweep.csv"),
                       "sir_db,depth_db,evm_with_sic_percent,symbol_errors", rows);
        return nlohmann::json{{"sir_points", points}};
    }

    if (alg.contains("frequency_pairs")) {
        nlohmann::json points = nlohmann::json::array();
        std::vector<std::vector<double>> rows;
        for (const auto& pair : alg.at("frequency_pairs")) {
            Scenario s2 = sc;
            s2.carrier_hz = pair.at("carrier_hz").get<double>();
            s2.lo_hz = pair.at("lo_hz").get<double>();
            Built b2 = build(s2);
            LsOutcome oc = ls_flow(b2);
            oc.summary["carrier_hz"] = s2.carrier_hz;
            oc.summary["lo_hz"] = s2.lo_hz;
            points.push_back(oc.summary);
            rows.push_back({s2.carrier_hz, s2.lo_hz, oc.summary["depth_db"].get<double>(),
                            sc.soi_enabled ? oc.summary["evm_with_sic_percent"].get<double>()
                                           : 0.0});
        }
        write_rows_csv(art.path("freq_tunability.csv"),
                       "carrier_hz,lo_hz,depth_db,evm_with_sic_percent", rows);
        return nlohmann::json{{"frequency_points", points}};
    }

    if (alg.value("fiber_compare", false)) {
        LsOutcome with_fiber = ls_flow(b);
        Scenario s2 = sc;
        s2.fiber_length_km = 0.0;
        Built b2 = build(s2);
        LsOutcome no_fiber = ls_flow(b2);

        const double p_fiber = band_power(with_fiber.baseline_soi_muted, b.band);
        const double p_plain = band_power(no_fiber.baseline_soi_muted, b2.band);
        nlohmann::json out;
        out["with_fiber"] = with_fiber.summary;
        out["without_fiber"] = no_fiber.summary;
        out["optical_attenuation_db"] = sc.fiber_length_km * sc.fiber_atten_db_per_km;
        out["if_power_drop_db"] = power_to_db(p_plain / p_fiber);
        out["depth_delta_db"] = with_fiber.summary["depth_db"].get<double>() -
                                no_fiber.summary["depth_db"].get<double>();
        write_psd_csv(art.path("psd_no_sic.csv"), psd_welch(with_fiber.baseline_soi_muted));
        write_psd_csv(art.path("psd_with_sic.csv"), psd_welch(with_fiber.after_soi_muted));
        return out;
    }

    LsOutcome oc = ls_flow(b);
    {
        std::ofstream os(art.path("ls_model.json"));
        os << ls_model_to_json(oc.model).dump() << '\n';
    }
    write_psd_csv(art.path("psd_no_sic.csv"), psd_welch(oc.baseline_soi_muted));
    write_psd_csv(art.path("psd_with_sic.csv"), psd_welch(oc.after_soi_muted));
    if (oc.demod_with_sic)
        write_constellation_csv(art.path("constellation.csv"), oc.demod_with_sic->symbols);
    oc.summary["captures"] = b.link->capture_count();
    return oc.summary;
}

// ---------------------------------------------------------------------------
// xcorr-study: rough-delay accuracy across IF center / baud combinations
// ---------------------------------------------------------------------------
nlohmann::json run_xcorr_study(const Scenario& base, Artifacts& art) {
    const nlohmann::json& alg = base.algorithm;
    const double true_delay_ps = alg.value("true_delay_ps", 4768.0);
    std::vector<std::vector<double>> rows;
    for (const auto& c : alg.at("cases")) {
        Scenario sc = base;
        const double if_hz = c.at("if_hz").get<double>();
        sc.si.baud_rate_hz = c.at("baud_hz").get<double>();
        sc.carrier_hz = sc.lo_hz + if_hz;
        sc.paths.antennas[0].direct.delay_s = true_delay_ps * 1e-12;
        if (alg.contains("snr_db") && !alg.at("snr_db").is_null())
            sc.snr_db = alg.at("snr_db").get<double>();
        Built b = build(sc);

        const RealSignal captured = b.link->submit(b.tx_dac[0]);
        const RealSignal tx_if = make_tx_if(b.tx_dac[0], sc, b.band);
        double est_ps = 0.0;
        try {
            est_ps = rough_delay(xcorr_rough_delay(tx_if, captured,
                                                   0.5 / sc.si.baud_rate_hz)) * 1e12;
        } catch (const estimation_error&) {
            est_ps = std::nan("");
        }
        rows.push_back({if_hz, sc.si.baud_rate_hz, true_delay_ps, est_ps,
                        est_ps - true_delay_ps});
    }
    write_rows_csv(art.path("xcorr_study.csv"),
                   "if_hz,baud_hz,true_delay_ps,estimated_delay_ps,error_ps", rows);
    return nlohmann::json{{"cases", rows.size()}};
}

// ---------------------------------------------------------------------------
// zero-padding-study: search-curve noise vs zero-padding fraction
// ---------------------------------------------------------------------------
nlohmann::json run_zero_padding(const Scenario& base, Artifacts& art) {
    const nlohmann::json& alg = base.algorithm;
    std::vector<std::vector<double>> curve_rows;
    nlohmann::json variances = nlohmann::json::array();
    for (double zp : alg.at("fractions").get<std::vector<double>>()) {
        for (int segments : alg.at("segments").get<std::vector<int>>()) {
            Scenario sc = base;
            sc.si.zero_padding_fraction = zp;
            Built b = build(sc);
            const RealSignal& ref_base = b.tx_dac[0];
            const double p_si = band_power(b.link->capture_baseline(true), b.band);
            const double p_ref =
                band_power(b.link->capture_reference_only(ref_base), b.band);
            const double amplitude = amplitude_from_power(p_si, p_ref);

            const SegmentPlan plan{sc.si.frame_duration_s, segments, 0};
            SegmentComposer composer({ref_base}, plan, 0.5e-12);
            SegmentedBatchEvaluator eval(*b.link, composer, b.band);
            const std::vector<Candidate> grid = delay_grid(
                alg.at("grid_start_ps").get<double>(), alg.at("grid_stop_ps").get<double>(),
                alg.value("grid_step_ps", 1.0), amplitude);
            const SegmentedSearchResult res = segmented_search(eval, grid);
            for (std::size_t i = 0; i < grid.size(); ++i)
                curve_rows.push_back({zp, static_cast<double>(segments),
                                      grid[i].delays_s[0] * 1e12, res.residual_ratios[i]});

            // Constant-candidate spread: the same mismatched candidate in
            // every segment isolates content nonstationarity.
            const double true_ps = sc.paths.antennas[0].direct.delay_s * 1e12;
            const std::vector<Candidate> constant(
                static_cast<std::size_t>(plan.usable()),
                Candidate{{(true_ps + 3.0) * 1e-12}, {amplitude}});
            const std::vector<double> ratios = eval.residual_ratios(constant);
            double mean = 0.0;
            for (double r : ratios) mean += r;
            mean /= static_cast<double>(ratios.size());
            double var = 0.0;
            for (double r : ratios) var += (r - mean) * (r - mean);
            var /= static_cast<double>(ratios.size());
            variances.push_back({{"zero_padding_fraction", zp},
                                 {"segments", segments},
                                 {"best_delay_ps", res.best.delays_s[0] * 1e12},
                                 {"residual_ratio_mean", mean},
                                 {"residual_ratio_variance", var}});
        }
    }
    write_rows_csv(art.path("zero_padding.csv"),
                   "zero_padding_fraction,segments,delay_ps,residual_ratio", curve_rows);
    return nlohmann::json{{"spread", variances}};
}

} // namespace

RunReport run_scenario(const nlohmann::json& cfg, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();

    const std::vector<Diagnostic> diags = validate_config(cfg);
    for (const Diagnostic& d : diags)
        if (d.severity == Diagnostic::Severity::error)
            throw config_error(d.key_path + ": " + d.message);

    const Scenario sc = parse_scenario(cfg);
    Artifacts art;
    art.dir = out_dir;
    fs::create_directories(art.dir);

    const std::string type = sc.algorithm.at("type").get<std::string>();
    nlohmann::json results;
    if (type == "mismatch-sweep") {
        results = run_mismatch_sweep(sc, art);
    } else if (type == "segmented") {
        Built b = build(sc);
        results = run_segmented(b, art);
    } else if (type == "fixed") {
        Built b = build(sc);
        results = run_fixed(b, art);
    } else if (type == "ga") {
        Built b = build(sc);
        results = run_ga(b, art);
    } else if (type == "ls") {
        Built b = build(sc);
        results = run_ls(b, art);
    } else if (type == "xcorr-study") {
        results = run_xcorr_study(sc, art);
    } else if (type == "zero-padding-study") {
        results = run_zero_padding(sc, art);
    } else {
        throw config_error("algorithm.type: unknown driver '" + type + "'");
    }

    RunReport rep;
    rep.scenario_name = sc.name;
    rep.seed = sc.seed;
    rep.summary["scenario"] = sc.name;
    rep.summary["seed"] = sc.seed;
    rep.summary["algorithm"] = type;
    rep.summary["results"] = results;

    const auto t1 = std::chrono::steady_clock::now();
    rep.wall_clock_s = std::chrono::duration<double>(t1 - t0).count();

    nlohmann::json file_json = rep.summary;
    rep.files = art.files;
    rep.files.push_back("summary.json");
    file_json["files"] = rep.files;
    file_json["timing"] = {{"wall_clock_s", rep.wall_clock_s}};
    std::ofstream os((art.dir / "summary.json").string());
    os << file_json.dump(1) << '\n';

    return rep;
}

} // namespace sicsim
