#ifndef GEARSENSE_RUN_COMMANDS_HPP
#define GEARSENSE_RUN_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gearsense/experiment_config.hpp"

namespace gearsense::cli {

inline constexpr const char* kToolVersion = "gearsense 1.0.0";

// Every command drops a manifest next to its outputs; sidecars and fit
// reports point back at it, so each artifact can be traced to the exact
// config, seed and tool version that produced it. Timing lives only in the
// manifest, keeping data files byte-identical across reruns at fixed seed.
struct RunManifest {
    std::string command;
    std::string config_ref;  // config file path or "<preset:NAME>"
    std::string config_hash; // fnv1a-64 of the canonical config JSON, hex
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
    std::string tool_version = kToolVersion;
    double wall_seconds = 0.0;
};

std::string fnv1a_hex(const std::string& bytes);
void write_manifest(const RunManifest& manifest, const std::string& path);

struct SimulateResult {
    std::vector<std::string> record_csvs;
    std::string manifest_path;
};

// Runs the config's sweep or chirp simulation and writes run_###.csv plus
// sidecar per repeat, a copy of the resolved config, and the manifest.
SimulateResult cmd_simulate(const sim::RunConfig& cfg, const std::string& config_ref,
                            const std::string& out_dir);

struct FitResult {
    nlohmann::json report;
    std::string report_path;
    std::string uncertainty_path; // fringe mode only, else empty
};

// mode "fringe": align all records, fit, write fringe_fit.json and
// uncertainty.csv. mode "chirp": fit the single record, write
// chirp_fit.json. Prints a one-line summary per quantity of interest.
FitResult cmd_fit(const std::vector<std::string>& record_csvs, const std::string& mode,
                  const std::string& out_dir);

// Plate-pair phase check over the configured rotation sweep; writes
// gear_report.json (+ optional field dump of the final output beam).
nlohmann::json cmd_gear_check(const sim::GearPlan& plan, const std::string& out_dir,
                              const std::string& dump_field_path = "");

// Turns fit reports into plot-ready CSV series (fringe curves per second,
// uncertainty curves, chirp fit overlays). All inputs must be the same
// model kind. Returns the emitted paths.
std::vector<std::string> cmd_report(const std::vector<std::string>& fit_reports,
                                    const std::string& out_dir);

} // namespace gearsense::cli

#endif
