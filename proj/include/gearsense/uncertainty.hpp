#ifndef GEARSENSE_UNCERTAINTY_HPP
#define GEARSENSE_UNCERTAINTY_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "gearsense/fringe_model.hpp"

namespace gearsense::est {

// Angular uncertainty from error propagation through the fringe:
//   dtheta(theta) = dM(theta) / (A * N*l*pi/360 * |sin(omega*theta - c)|)
// in degrees. The Poisson column uses dM = sqrt(model mean); the measured
// column uses the per-angle sample std of a single measurement. Angles
// where |sin| < sin_epsilon sit at fringe extrema where the propagation
// diverges; they are excluded (NaN).
struct UncertaintyCurve {
    std::vector<double> angles_deg;
    std::vector<double> measured_deg;  // NaN where excluded or no spread given
    std::vector<double> poisson_deg;   // NaN where excluded
    double min_measured_deg = 0.0;     // NaN if no measured column
    double min_measured_angle_deg = 0.0;
    double min_poisson_deg = 0.0;
    double min_poisson_angle_deg = 0.0;
    double sin_epsilon = 0.05;
};

// measured_std may be empty (Poisson column only). Throws
// DegenerateInputError if every angle is excluded.
UncertaintyCurve uncertainty_curve(const quantum::FringeModel& model,
                                   const std::vector<double>& angles_deg,
                                   const std::vector<double>& measured_std = {},
                                   double sin_epsilon = 0.05);

// CSV: theta_deg, dtheta_measured_deg, dtheta_poisson_deg ("nan" where excluded).
void write_uncertainty_csv(const UncertaintyCurve& curve, std::ostream& out);
void write_uncertainty_csv_file(const UncertaintyCurve& curve, const std::string& path);

} // namespace gearsense::est

#endif
