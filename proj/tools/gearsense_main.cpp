#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gearsense/errors.hpp"
#include "gearsense/presets.hpp"
#include "gearsense/run_commands.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

gearsense::sim::RunConfig resolve_config(const std::string& config_path,
                                         const std::string& preset_name,
                                         std::string& config_ref) {
    using gearsense::ConfigError;
    if (!config_path.empty() && !preset_name.empty())
        throw ConfigError("give either --config or --preset, not both");
    if (!config_path.empty()) {
        config_ref = config_path;
        return gearsense::sim::load_run_config(config_path);
    }
    if (!preset_name.empty()) {
        config_ref = "<preset:" + preset_name + ">";
        return gearsense::cli::preset(preset_name);
    }
    throw ConfigError("need --config FILE or --preset NAME");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon rotation-sensing simulator and estimation pipeline"};
    app.require_subcommand(1);
    app.set_version_flag("--version", gearsense::cli::kToolVersion);

    std::string config_path, preset_name, out_dir = ".", mode = "fringe";
    std::string dump_field;
    std::vector<std::string> inputs;
    std::optional<std::uint64_t> seed;

    CLI::App* simulate = app.add_subcommand("simulate", "Generate count records");
    simulate->add_option("--config", config_path, "Config JSON file");
    simulate->add_option("--preset", preset_name, "Bundled preset name");
    simulate->add_option("--out", out_dir, "Output directory")->required();
    simulate->add_option("--seed", seed, "Override the config RNG seed");

    CLI::App* fit = app.add_subcommand("fit", "Fit fringe or chirp records");
    fit->add_option("--mode", mode, "fringe or chirp")->check(CLI::IsMember({"fringe", "chirp"}));
    fit->add_option("--records", inputs, "Record CSV files")->required()->expected(-1);
    fit->add_option("--out", out_dir, "Output directory")->required();

    CLI::App* gear = app.add_subcommand("gear-check", "Plate-pair phase residual check");
    gear->add_option("--config", config_path, "Config JSON file (mode gear)");
    gear->add_option("--preset", preset_name, "Bundled preset name");
    gear->add_option("--out", out_dir, "Output directory")->required();
    gear->add_option("--dump-field", dump_field, "Also dump the output beam to this path");

    CLI::App* report = app.add_subcommand("report", "Emit plot-data CSV bundles from fits");
    report->add_option("--fits", inputs, "Fit report JSON files")->required()->expected(-1);
    report->add_option("--out", out_dir, "Output directory")->required();

    CLI::App* presets = app.add_subcommand("presets", "List or show bundled presets");
    std::string presets_action = "list", presets_name;
    presets->add_option("action", presets_action, "list or show")
        ->check(CLI::IsMember({"list", "show"}));
    presets->add_option("name", presets_name, "Preset name (for show)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            std::string config_ref;
            gearsense::sim::RunConfig cfg = resolve_config(config_path, preset_name, config_ref);
            if (seed) cfg.experiment.rng_seed = *seed;
            gearsense::cli::cmd_simulate(cfg, config_ref, out_dir);
        } else if (fit->parsed()) {
            gearsense::cli::cmd_fit(inputs, mode, out_dir);
        } else if (gear->parsed()) {
            std::string config_ref;
            gearsense::sim::RunConfig cfg = resolve_config(config_path, preset_name, config_ref);
            if (cfg.mode != "gear" || !cfg.gear)
                throw gearsense::ConfigError("gear-check needs a mode=gear config");
            gearsense::cli::cmd_gear_check(*cfg.gear, out_dir, dump_field);
        } else if (report->parsed()) {
            gearsense::cli::cmd_report(inputs, out_dir);
        } else if (presets->parsed()) {
            if (presets_action == "list") {
                for (const std::string& name : gearsense::cli::preset_names())
                    std::cout << name << "\n";
            } else {
                if (presets_name.empty())
                    throw gearsense::ConfigError("presets show needs a preset name");
                std::cout << gearsense::sim::to_json(gearsense::cli::preset(presets_name)).dump(2)
                          << "\n";
            }
        }
    } catch (const gearsense::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const gearsense::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const gearsense::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
