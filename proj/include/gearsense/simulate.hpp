#ifndef GEARSENSE_SIMULATE_HPP
#define GEARSENSE_SIMULATE_HPP

#include <vector>

#include "gearsense/count_record.hpp"
#include "gearsense/experiment_config.hpp"
#include "gearsense/rng.hpp"

namespace gearsense::sim {

// Gaussian random walk of the fringe offset. out[0] = c0, each later bin
// adds N(0, std_per_bin). std 0 returns a constant sequence and consumes
// no randomness.
std::vector<double> apply_drift(double c0_deg, double std_per_bin_deg, int bins,
                                RandomStream& rng);

// M repeated angle sweeps. Repeat m uses RandomStream(seed, m) and draws,
// in order: the starting offset (one uniform, if randomize_offset), the
// drift walk (bins-1 normals, if drift_std_deg > 0), then per bin one
// Poisson coincidence and two Poisson singles. Means follow the fringe
// model built from the config's amplitude decomposition.
std::vector<CountRecord> simulate_sweep(const ExperimentConfig& cfg,
                                        const std::vector<double>& angles_deg,
                                        double c0_deg);

// Single accelerating-rotation record; bin j is centered at t = (j+0.5)*acq.
// Drift is not applied (chirp acquisitions are short); the chirp truth is
// embedded in the record for downstream comparison.
CountRecord simulate_chirp(const ExperimentConfig& cfg, const ChirpModel& chirp, int bins);

} // namespace gearsense::sim

#endif
