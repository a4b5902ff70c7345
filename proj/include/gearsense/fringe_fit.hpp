#ifndef GEARSENSE_FRINGE_FIT_HPP
#define GEARSENSE_FRINGE_FIT_HPP

#include <vector>

#include <json.hpp>

#include "gearsense/count_record.hpp"
#include "gearsense/fringe_model.hpp"

namespace gearsense::est {

// Per-angle statistics across a set of aligned repeats: mean counts, sample
// variance of a single measurement, and the weight of the mean point
// (repeats / variance, with the Poisson floor max(mean, 1) where the sample
// variance vanishes or only one repeat exists).
struct AngleStats {
    std::vector<double> angles_deg;
    std::vector<double> mean;
    std::vector<double> variance;     // of a single measurement
    std::vector<double> weight;       // reciprocal variance of the mean
    int repeats = 0;
    double acq_time = 0.0;
    int photon_number = 2;
    int charge = 1;
};

AngleStats per_angle_stats(const std::vector<sim::CountRecord>& aligned_runs);

// Weighted least-squares fringe fit with the frequency fixed by (N, l).
// The model is linear after reparameterizing to
//   y = p0 + p1 cos(omega theta) + p2 sin(omega theta),
// from which A = 2 sqrt(p1^2 + p2^2), C = atan2(-p2, -p1), B = p0 - A/2.
// Parameter errors come from the reparameterization Jacobian applied to
// (X^T W X)^{-1}.
struct FringeFit {
    quantum::FringeModel model;
    double err_amplitude = 0.0;
    double err_offset = 0.0;
    double err_phase_deg = 0.0;
    double visibility = 0.0;
    double err_visibility = 0.0;
    double rss = 0.0;            // weighted residual sum of squares
    int iterations = 1;
    double final_step_norm = 0.0;
    bool offset_clamped = false; // B recovered negative and clamped to 0
};

// Core fit on (angles, values, weights). Preconditions: >= 3 distinct
// angles spanning more than half a fringe period; positive weights.
// Throws IllConditionedError when the span is too small or the fitted
// amplitude is indistinguishable from zero.
FringeFit fit_fringe(const std::vector<double>& angles_deg,
                     const std::vector<double>& values,
                     const std::vector<double>& weights,
                     int photon_number, int charge);

FringeFit fit_fringe(const AngleStats& stats);

// Diagnostic fit with the fringe frequency free: scans omega over
// [lo, hi] * nominal, solving the linear subproblem at each candidate, then
// refines the best by golden-section search on the weighted RSS.
struct FreeFrequencyFit {
    FringeFit fit;
    double omega = 0.0;          // [rad per degree of rotation]
    double oscillations_per_turn = 0.0; // omega * 360 / (2 pi), ideally N*l
};

FreeFrequencyFit fit_fringe_free_frequency(const std::vector<double>& angles_deg,
                                           const std::vector<double>& values,
                                           const std::vector<double>& weights,
                                           int photon_number, int charge,
                                           double lo_factor = 0.5, double hi_factor = 1.5,
                                           int scan_steps = 2001);

nlohmann::json to_json(const FringeFit& fit);

} // namespace gearsense::est

#endif
