#include "gearsense/presets.hpp"

#include <algorithm>

#include "gearsense/errors.hpp"

namespace gearsense::cli {

namespace {

sim::ExperimentConfig base_experiment() {
    sim::ExperimentConfig cfg;
    cfg.pair_rate = 44900.0;
    cfg.singles1_rate = 500000.0;
    cfg.singles2_rate = 490000.0;
    cfg.coincidence_window = 0.5e-9;
    cfg.acq_time = 0.1;
    cfg.visibility = 0.957;
    cfg.photon_number = 2;
    cfg.charge = 1;
    cfg.repeats = 20;
    cfg.drift_std_deg = 0.0;
    cfg.rng_seed = 20240901;
    cfg.randomize_offset = true;
    return cfg;
}

sim::RunConfig sweep_l1() {
    sim::RunConfig cfg;
    cfg.mode = "sweep";
    cfg.experiment = base_experiment();
    sim::SweepPlan plan;
    plan.start_deg = 0.0;
    plan.step_deg = 3.0;
    plan.count = 120; // 0..360 half-open: two full fringe periods at N=2, l=1
    plan.offset_c0_deg = 0.0;
    cfg.sweep = plan;
    return cfg;
}

sim::RunConfig sweep_l16() {
    sim::RunConfig cfg;
    cfg.mode = "sweep";
    cfg.experiment = base_experiment();
    cfg.experiment.pair_rate = 42700.0;
    cfg.experiment.visibility = 0.976;
    cfg.experiment.charge = 16;
    sim::SweepPlan plan;
    plan.start_deg = 0.0;
    plan.step_deg = 0.15;
    plan.count = 150; // 0..22.5 half-open: two fringe periods at N=2, l=16
    plan.offset_c0_deg = 0.0;
    cfg.sweep = plan;
    return cfg;
}

sim::RunConfig chirp_preset(int charge) {
    sim::RunConfig cfg;
    cfg.mode = "chirp";
    cfg.experiment = base_experiment();
    cfg.experiment.acq_time = 0.01;
    if (charge == 16) {
        cfg.experiment.pair_rate = 42700.0;
        cfg.experiment.visibility = 0.976;
    }
    cfg.experiment.charge = charge;
    cfg.experiment.repeats = 1;
    sim::ChirpPlan plan;
    plan.theta0 = 0.0;
    plan.speed_start = 0.0;
    plan.accel = 1.0;
    plan.duration = 10.0;
    plan.bins = 1000;
    cfg.chirp = plan;
    return cfg;
}

sim::RunConfig gear_preset() {
    sim::RunConfig cfg;
    cfg.mode = "gear";
    cfg.gear = sim::GearPlan{}; // defaults are the experiment geometry
    return cfg;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig2_l1", "fig2_l16", "fig3", "fig3_l16", "fig4_l1", "fig4_l16",
            "gear_paper_geometry"};
}

bool is_preset(const std::string& name) {
    const auto names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

sim::RunConfig preset(const std::string& name) {
    if (name == "fig2_l1") return sweep_l1();
    if (name == "fig2_l16") return sweep_l16();
    if (name == "fig3") {
        // Matched amplitude and offset across charges: same rates and
        // visibility as the l=1 run, so uncertainty minima compare 1:1.
        sim::RunConfig cfg = sweep_l1();
        return cfg;
    }
    if (name == "fig3_l16") {
        sim::RunConfig cfg = sweep_l16();
        cfg.experiment.pair_rate = 44900.0;
        cfg.experiment.visibility = 0.957;
        return cfg;
    }
    if (name == "fig4_l1") return chirp_preset(1);
    if (name == "fig4_l16") return chirp_preset(16);
    if (name == "gear_paper_geometry") return gear_preset();
    throw ConfigError("unknown preset: " + name);
}

} // namespace gearsense::cli
