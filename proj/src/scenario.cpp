// SPDX-License-Identifier: Apache-2.0
#include "sicsim/scenario.hpp"

#include <cmath>

namespace sicsim {

namespace {

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    return j.at(key).get<T>();
}

Bias parse_bias(const std::string& s, const char* path) {
    if (s == "MITP") return Bias::MITP;
    if (s == "QUAD") return Bias::QUAD;
    if (s == "MATP") return Bias::MATP;
    throw config_error(std::string(path) + ": unknown bias point '" + s + "'");
}

Tap parse_tap(const nlohmann::json& j, const char* path) {
    if (!j.contains("delay_ps"))
        throw config_error(std::string(path) + ".delay_ps: missing");
    Tap t;
    t.delay_s = j.at("delay_ps").get<double>() * 1e-12;
    t.gain_db = get_or<double>(j, "gain_db", 0.0);
    return t;
}

} // namespace

Scenario parse_scenario(const nlohmann::json& cfg) {
    if (!cfg.is_object()) throw config_error("config: expected a JSON object");
    Scenario s;
    s.name = get_or<std::string>(cfg, "name", "unnamed");
    s.seed = get_or<std::uint64_t>(cfg, "seed", 1);

    if (cfg.contains("rates")) {
        const auto& r = cfg.at("rates");
        s.generation_rate_hz = get_or<double>(r, "generation_hz", s.generation_rate_hz);
        s.capture_rate_hz = get_or<double>(r, "capture_hz", s.capture_rate_hz);
    }
    s.carrier_hz = get_or<double>(cfg, "carrier_hz", s.carrier_hz);
    s.lo_hz = get_or<double>(cfg, "lo_hz", s.lo_hz);
    s.lo_amplitude_v = get_or<double>(cfg, "lo_amplitude_v", s.lo_amplitude_v);
    s.dac_vpp = get_or<double>(cfg, "dac_vpp", s.dac_vpp);

    if (cfg.contains("si")) {
        const auto& j = cfg.at("si");
        s.si.fft_size = get_or<int>(j, "fft_size", s.si.fft_size);
        s.si.occupied_subcarriers = get_or<int>(j, "occupied_subcarriers", s.si.occupied_subcarriers);
        s.si.cp_fraction = get_or<double>(j, "cp_fraction", s.si.cp_fraction);
        s.si.qam_order = get_or<int>(j, "qam_order", s.si.qam_order);
        s.si.baud_rate_hz = get_or<double>(j, "baud_rate_hz", s.si.baud_rate_hz);
        s.si.zero_padding_fraction =
            get_or<double>(j, "zero_padding_fraction", s.si.zero_padding_fraction);
        s.si.frame_duration_s = get_or<double>(j, "frame_duration_s", s.si.frame_duration_s);
        s.si.seed = get_or<std::uint64_t>(j, "seed", s.seed * 11 + 1);
    } else {
        s.si.seed = s.seed * 11 + 1;
    }

    if (!cfg.contains("paths") || !cfg.at("paths").contains("antennas") ||
        cfg.at("paths").at("antennas").empty())
        throw config_error("paths.antennas: at least one antenna required");
    for (const auto& a : cfg.at("paths").at("antennas")) {
        AntennaPaths ap;
        if (!a.contains("direct")) throw config_error("paths.antennas[].direct: missing");
        ap.direct = parse_tap(a.at("direct"), "paths.antennas[].direct");
        if (a.contains("multipaths"))
            for (const auto& mp : a.at("multipaths"))
                ap.multipaths.push_back(parse_tap(mp, "paths.antennas[].multipaths[]"));
        s.paths.antennas.push_back(std::move(ap));
    }

    if (cfg.contains("soi")) {
        const auto& j = cfg.at("soi");
        s.soi_enabled = get_or<bool>(j, "enabled", true);
        s.soi.baud_rate_hz = get_or<double>(j, "baud_rate_hz", s.si.baud_rate_hz / 2);
        s.soi.rolloff = get_or<double>(j, "rolloff", 0.35);
        s.soi.frame_duration_s = s.si.frame_duration_s;
        s.soi.seed = get_or<std::uint64_t>(j, "seed", s.seed * 13 + 5);
        s.sir_db = get_or<double>(j, "sir_db", 0.0);
    } else {
        s.soi.baud_rate_hz = s.si.baud_rate_hz / 2;
        s.soi.frame_duration_s = s.si.frame_duration_s;
        s.soi.seed = s.seed * 13 + 5;
    }

    if (cfg.contains("modulator")) {
        const auto& j = cfg.at("modulator");
        s.modulator.v_pi_volts = get_or<double>(j, "v_pi_volts", 5.0);
        s.modulator.bias_upper =
            parse_bias(get_or<std::string>(j, "bias_upper", "MITP"), "modulator.bias_upper");
        s.modulator.bias_lower =
            parse_bias(get_or<std::string>(j, "bias_lower", "MITP"), "modulator.bias_lower");
        s.modulator.bias_offset_rad = get_or<double>(j, "bias_offset_rad", 0.0);
    }
    if (cfg.contains("pd")) {
        const auto& j = cfg.at("pd");
        s.pd_responsivity = get_or<double>(j, "responsivity", 1.0);
        if (j.contains("if_width_hz") && !j.at("if_width_hz").is_null())
            s.if_band_width_hz = j.at("if_width_hz").get<double>();
    }
    if (cfg.contains("noise") && cfg.at("noise").contains("snr_db") &&
        !cfg.at("noise").at("snr_db").is_null())
        s.snr_db = cfg.at("noise").at("snr_db").get<double>();
    if (cfg.contains("fiber")) {
        const auto& j = cfg.at("fiber");
        s.fiber_length_km = get_or<double>(j, "length_km", 0.0);
        s.fiber_atten_db_per_km = get_or<double>(j, "atten_db_per_km", 0.1825);
        s.fiber_delay_per_km_s = get_or<double>(j, "delay_per_km_s", 4.9e-6);
    }

    if (!cfg.contains("algorithm") || !cfg.at("algorithm").contains("type"))
        throw config_error("algorithm.type: missing");
    s.algorithm = cfg.at("algorithm");
    return s;
}

std::vector<Diagnostic> validate_config(const nlohmann::json& cfg) {
    std::vector<Diagnostic> diags;
    auto err = [&](const std::string& path, const std::string& msg) {
        diags.push_back({Diagnostic::Severity::error, path, msg});
    };
    auto warn = [&](const std::string& path, const std::string& msg) {
        diags.push_back({Diagnostic::Severity::warning, path, msg});
    };

    Scenario s;
    try {
        s = parse_scenario(cfg);
    } catch (const config_error& e) {
        err("(schema)", e.what());
        return diags;
    }

    const double nyq = s.generation_rate_hz / 2;
    const double f_hi = s.carrier_hz + s.si.baud_rate_hz / 2;
    if (f_hi >= nyq)
        err("carrier_hz", "occupied band reaches " + std::to_string(f_hi / 1e9) +
                              " GHz, at or above the generation Nyquist " +
                              std::to_string(nyq / 1e9) + " GHz");
    else if (f_hi > 0.9 * nyq)
        warn("carrier_hz", "occupied band within 10% of the generation Nyquist");

    const double if_hi = s.if_center_hz() + s.if_width() / 2;
    if (s.if_center_hz() <= 0)
        err("lo_hz", "LO must sit below the carrier (IF = carrier - LO)");
    else {
        if (if_hi >= s.capture_rate_hz / 2)
            err("pd.if_width_hz", "IF band exceeds the capture Nyquist");
        if (s.if_center_hz() - s.if_width() / 2 - 0.2 * s.if_width() <= 0)
            err("pd.if_width_hz", "IF band (with filter transition) reaches DC");
    }

    const std::string type = s.algorithm.value("type", "");
    if (type == "ga" || type == "segmented") {
        const int segments = s.algorithm.value("segments", type == "ga" ? 160 : 400);
        const int guard = s.algorithm.value("guard_segments", type == "ga" ? 8 : 0);
        if (segments <= guard) {
            err("algorithm.segments", "no usable segments after guard");
        } else if (type == "ga") {
            const int pop = s.algorithm.value("population", 152);
            const int usable = segments - guard;
            if (usable < pop)
                warn("algorithm.population",
                     "population " + std::to_string(pop) + " needs " +
                         std::to_string((pop + usable - 1) / usable) + " captures per iteration");
        }
    }
    if (s.algorithm.contains("amplitude_range")) {
        const auto& r = s.algorithm.at("amplitude_range");
        if (r.size() == 2) {
            const double lo = r.at(0).get<double>(), hi = r.at(1).get<double>();
            if (lo < 0 || hi > 1 || lo >= hi)
                err("algorithm.amplitude_range", "attenuation factors must lie inside [0, 1]");
        }
    }
    for (std::size_t i = 0; i < s.paths.antennas.size(); ++i) {
        const AntennaPaths& ap = s.paths.antennas[i];
        const double frame = s.si.frame_duration_s;
        double max_delay = ap.direct.delay_s;
        for (const Tap& mp : ap.multipaths) max_delay = std::max(max_delay, ap.direct.delay_s + mp.delay_s);
        if (max_delay > kFrameGuardFraction * frame)
            warn("paths.antennas[" + std::to_string(i) + "]",
                 "path delays exceed the frame guard; circular wrap lands in content");
    }
    return diags;
}

} // namespace sicsim
