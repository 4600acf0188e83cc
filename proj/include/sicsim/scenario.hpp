// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sicsim/channel.hpp"
#include "sicsim/photonic.hpp"
#include "sicsim/signal_gen.hpp"
#include "sicsim/types.hpp"

namespace sicsim {

/// Parsed scenario configuration. All knobs carry paper-experiment defaults:
/// 64 Gsa/s generation, 10 Gsa/s capture, 9 GHz carrier, 8 GHz LO.
struct Scenario {
    std::string name;
    std::uint64_t seed = 1;

    double generation_rate_hz = 64e9;
    double capture_rate_hz = 10e9;
    double carrier_hz = 9e9;
    double lo_hz = 8e9;
    double lo_amplitude_v = 1.0;
    double dac_vpp = 1.0;

    OfdmConfig si;          // per-antenna seeds derived as si.seed + antenna index
    PathSet paths;

    bool soi_enabled = false;
    SoiConfig soi;
    double sir_db = 0.0;

    ModulatorConfig modulator;
    double pd_responsivity = 1.0;
    std::optional<double> if_band_width_hz; // default: 1.05 x SI baud

    std::optional<double> snr_db; // absent = noiseless
    double fiber_length_km = 0.0;
    double fiber_atten_db_per_km = 0.1825;
    double fiber_delay_per_km_s = 4.9e-6;

    nlohmann::json algorithm; // driver-specific block, "type" selects

    double if_center_hz() const { return carrier_hz - lo_hz; }
    double if_width() const {
        return if_band_width_hz.value_or(1.05 * si.baud_rate_hz);
    }
};

struct Diagnostic {
    enum class Severity { error, warning };
    Severity severity;
    std::string key_path;
    std::string message;
};

struct RunReport {
    std::string scenario_name;
    std::uint64_t seed = 0;
    nlohmann::json summary;    // deterministic content (no timing)
    std::vector<std::string> files; // everything written, absolute or out-relative
    double wall_clock_s = 0.0;
};

/// Parse (with defaults) and structurally validate a scenario JSON object.
/// Throws config_error on schema violations, with the offending key path.
Scenario parse_scenario(const nlohmann::json& cfg);

/// Schema plus physics checks (Nyquist, band placement, segment budget).
std::vector<Diagnostic> validate_config(const nlohmann::json& cfg);

struct PresetInfo {
    std::string name;
    std::string description;
};
std::vector<PresetInfo> list_presets();
nlohmann::json preset_config(const std::string& name);
bool is_preset(const std::string& name);

/// Execute a scenario and write its artifacts (CSV/JSON) under out_dir.
RunReport run_scenario(const nlohmann::json& cfg, const std::string& out_dir);

} // namespace sicsim
