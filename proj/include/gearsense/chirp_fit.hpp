#ifndef GEARSENSE_CHIRP_FIT_HPP
#define GEARSENSE_CHIRP_FIT_HPP

#include <json.hpp>

#include "gearsense/count_record.hpp"

namespace gearsense::est {

// Multi-start weighted least squares for the accelerating fringe
//   m(t) = A/2 [1 - cos(theta0 + omega w0 t + k/2 t^2)] + B.
// Starts form a grid over (w0, acceleration); at each start the remaining
// parameters (A, B, theta0) come from a linear solve, then the best starts
// are refined with damped (Levenberg-Marquardt) least squares over all
// five parameters. Refined optima are clustered in (w0, a) to count how
// many distinct local minima compete within rss_cluster_factor of the best
// objective - the fit-ambiguity diagnostic for short or low-charge records.
struct ChirpFitOptions {
    double speed_max = 20.0;          // start box for w0 [deg/s]
    double accel_max = 5.0;           // start box for acceleration [deg/s^2]
    int grid_speed = 50;
    int grid_accel = 50;
    int refine_top = 12;              // how many best starts get LM refinement
    int max_iterations = 120;
    double rss_cluster_factor = 1.05;
    double cluster_speed_tol = 0.2;   // [deg/s] minima closer than this merge
    double cluster_accel_tol = 0.05;  // [deg/s^2]
};

struct ChirpLandscape {
    int starts = 0;
    int converged = 0;
    int distinct_minima = 0;   // competitive clusters, see rss_cluster_factor
    double best_rss = 0.0;
    double runner_up_rss = 0.0; // NaN when only one cluster
};

struct ChirpFit {
    sim::ChirpModel model;      // fitted; speed_final derived from w0 + a*T
    double amplitude = 0.0;     // A [counts/bin]
    double offset = 0.0;        // B [counts/bin]
    double err_amplitude = 0.0;
    double err_offset = 0.0;
    double err_theta0 = 0.0;
    double err_speed_start = 0.0;
    double err_k = 0.0;
    double acceleration_deg_s2 = 0.0;
    double err_acceleration_deg_s2 = 0.0;
    double rss = 0.0;
    int iterations = 0;
    double final_step_norm = 0.0;
    ChirpLandscape landscape;
};

// Weights are reciprocal Poisson variances 1/max(count, 1). Requires a
// time-kind record; when the record embeds its chirp truth the sampling
// precondition (>= 10 bins per fringe at the true final speed) is checked.
// Throws DegenerateInputError for flat records, FitError when no start
// converges.
ChirpFit fit_chirp(const sim::CountRecord& record, int photon_number, int charge,
                   const ChirpFitOptions& options = {});

nlohmann::json to_json(const ChirpFit& fit);

} // namespace gearsense::est

#endif
