#include "gearsense/simulate.hpp"

#include <cmath>
#include <numbers>

#include "gearsense/errors.hpp"
#include "gearsense/fringe_model.hpp"

namespace gearsense::sim {

std::vector<double> apply_drift(double c0_deg, double std_per_bin_deg, int bins,
                                RandomStream& rng) {
    if (std_per_bin_deg < 0.0) throw ConfigError("drift std must be >= 0");
    if (bins < 1) throw ConfigError("drift needs at least one bin");
    std::vector<double> walk(static_cast<size_t>(bins), c0_deg);
    if (std_per_bin_deg == 0.0) return walk;
    for (int j = 1; j < bins; ++j)
        walk[static_cast<size_t>(j)] = walk[static_cast<size_t>(j) - 1] +
                                       std_per_bin_deg * rng.normal();
    return walk;
}

std::vector<CountRecord> simulate_sweep(const ExperimentConfig& cfg,
                                        const std::vector<double>& angles_deg,
                                        double c0_deg) {
    cfg.validate();
    if (angles_deg.empty()) throw ConfigError("simulate_sweep needs at least one angle");
    for (size_t i = 1; i < angles_deg.size(); ++i)
        if (!(angles_deg[i] > angles_deg[i - 1]))
            throw ConfigError("sweep angles must be strictly increasing");

    const double amplitude = cfg.amplitude_counts();
    const double offset = cfg.offset_counts();
    const double singles1_mean = cfg.singles1_rate * cfg.acq_time;
    const double singles2_mean = cfg.singles2_rate * cfg.acq_time;
    const int bins = static_cast<int>(angles_deg.size());

    std::vector<CountRecord> records;
    records.reserve(static_cast<size_t>(cfg.repeats));
    for (int m = 0; m < cfg.repeats; ++m) {
        RandomStream rng(cfg.rng_seed, static_cast<std::uint64_t>(m));
        const double c_start =
            c0_deg + (cfg.randomize_offset ? 360.0 * rng.uniform() : 0.0);
        const std::vector<double> fringe_offset =
            apply_drift(c_start, cfg.drift_std_deg, bins, rng);

        CountRecord record;
        record.kind = CountRecord::Kind::Angle;
        record.config = cfg;
        record.run_index = m;
        record.realized_offset_deg = c_start;
        record.abscissa = angles_deg;
        record.coincidences.resize(static_cast<size_t>(bins));
        record.singles1.resize(static_cast<size_t>(bins));
        record.singles2.resize(static_cast<size_t>(bins));

        quantum::FringeModel model;
        model.amplitude = amplitude;
        model.offset = offset;
        model.photon_number = cfg.photon_number;
        model.charge = cfg.charge;
        for (int j = 0; j < bins; ++j) {
            model.phase_deg = fringe_offset[static_cast<size_t>(j)];
            const double mean = quantum::fringe_rate(angles_deg[static_cast<size_t>(j)], model);
            record.coincidences[static_cast<size_t>(j)] = rng.poisson(mean);
            record.singles1[static_cast<size_t>(j)] = rng.poisson(singles1_mean);
            record.singles2[static_cast<size_t>(j)] = rng.poisson(singles2_mean);
        }
        records.push_back(std::move(record));
    }
    return records;
}

CountRecord simulate_chirp(const ExperimentConfig& cfg, const ChirpModel& chirp, int bins) {
    cfg.validate();
    chirp.validate();
    if (bins < 1) throw ConfigError("simulate_chirp needs at least one bin");
    if (chirp.photon_number != cfg.photon_number || chirp.charge != cfg.charge)
        throw ConfigError("chirp model and experiment config disagree on N or l");
    if (bins * cfg.acq_time > chirp.duration * (1.0 + 1e-9))
        throw ConfigError("bins * acq_time exceeds the chirp duration");

    const double amplitude = cfg.amplitude_counts();
    const double offset = cfg.offset_counts();
    const double singles1_mean = cfg.singles1_rate * cfg.acq_time;
    const double singles2_mean = cfg.singles2_rate * cfg.acq_time;
    const double omega = chirp.omega();

    CountRecord record;
    record.kind = CountRecord::Kind::Time;
    record.config = cfg;
    record.run_index = 0;
    record.realized_offset_deg = chirp.theta0 * 180.0 / std::numbers::pi;
    record.chirp_truth = chirp;
    record.abscissa.resize(static_cast<size_t>(bins));
    record.coincidences.resize(static_cast<size_t>(bins));
    record.singles1.resize(static_cast<size_t>(bins));
    record.singles2.resize(static_cast<size_t>(bins));

    RandomStream rng(cfg.rng_seed, 0);
    for (int j = 0; j < bins; ++j) {
        const double t = (j + 0.5) * cfg.acq_time;
        const double phase = chirp.theta0 + omega * chirp.speed_start * t + 0.5 * chirp.k * t * t;
        const double mean = 0.5 * amplitude * (1.0 - std::cos(phase)) + offset;
        record.abscissa[static_cast<size_t>(j)] = t;
        record.coincidences[static_cast<size_t>(j)] = rng.poisson(mean);
        record.singles1[static_cast<size_t>(j)] = rng.poisson(singles1_mean);
        record.singles2[static_cast<size_t>(j)] = rng.poisson(singles2_mean);
    }
    return record;
}

} // namespace gearsense::sim
