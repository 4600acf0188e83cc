// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sicsim/scenario.hpp"
#include "sicsim/types.hpp"

namespace {

nlohmann::json load_config(const std::string& source) {
    if (sicsim::is_preset(source)) return sicsim::preset_config(source);
    std::ifstream is(source);
    if (!is) {
        std::cerr << "error: cannot open config '" << source << "'\n";
        std::exit(2);
    }
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Map the byte offset to a line number for the diagnostic.
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        std::cerr << source << ":" << line << ": " << e.what() << "\n";
        std::exit(2);
    }
}

void apply_override(nlohmann::json& cfg, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos) {
        std::cerr << "error: --set expects key=value, got '" << assignment << "'\n";
        std::exit(2);
    }
    const std::string key = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);

    nlohmann::json* node = &cfg;
    std::stringstream ss(key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &(*node)[parts[i]];

    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(value);
    } catch (const nlohmann::json::parse_error&) {
        parsed = value; // plain string
    }
    (*node)[parts.back()] = parsed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"photonics-assisted self-interference cancellation simulator"};
    app.require_subcommand(1);

    std::string source;
    std::string out_dir;
    std::vector<std::string> overrides;
    long long seed_override = -1;

    const char* env_out = std::getenv("SICSIM_OUT");
    const std::string default_out = env_out ? env_out : "out";

    CLI::App* run = app.add_subcommand("run", "run a scenario config or preset");
    run->add_option("config", source, "preset name or config JSON path")->required();
    run->add_option("--out", out_dir, "output directory (default $SICSIM_OUT or ./out)");
    run->add_option("--seed", seed_override, "override the scenario seed");
    run->add_option("--set", overrides, "override a config key, dot-path=value");

    CLI::App* list = app.add_subcommand("list-presets", "list built-in scenario presets");

    std::string validate_source;
    CLI::App* validate = app.add_subcommand("validate", "validate a config or preset");
    validate->add_option("config", validate_source, "preset name or config JSON path")
        ->required();

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        for (const sicsim::PresetInfo& p : sicsim::list_presets())
            std::cout << p.name << "  -  " << p.description << "\n";
        return 0;
    }

    if (validate->parsed()) {
        nlohmann::json cfg = load_config(validate_source);
        const std::vector<sicsim::Diagnostic> diags = sicsim::validate_config(cfg);
        bool bad = false;
        for (const sicsim::Diagnostic& d : diags) {
            const bool err = d.severity == sicsim::Diagnostic::Severity::error;
            bad = bad || err;
            std::cout << (err ? "error" : "warning") << ": " << d.key_path << ": "
                      << d.message << "\n";
        }
        if (!bad) std::cout << "ok\n";
        return bad ? 2 : 0;
    }

    nlohmann::json cfg = load_config(source);
    for (const std::string& ov : overrides) apply_override(cfg, ov);
    if (seed_override >= 0) cfg["seed"] = seed_override;
    const std::string dir = out_dir.empty() ? default_out : out_dir;

    try {
        const sicsim::RunReport rep = sicsim::run_scenario(cfg, dir);
        std::cout << "scenario " << rep.scenario_name << " done in " << rep.wall_clock_s
                  << " s, outputs in " << dir << "\n";
        return 0;
    } catch (const sicsim::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
