#ifndef GEARSENSE_FRINGE_MODEL_HPP
#define GEARSENSE_FRINGE_MODEL_HPP

#include <functional>

namespace gearsense::quantum {

// Coincidence fringe versus rotation angle,
//   rate(theta) = A/2 * [1 - cos(omega * theta - C * pi/180)] + B,
// with theta in degrees and omega = pi * N * l / 180 per degree, so the
// fringe completes N*l oscillations per 360 degrees of rotation. A and B
// are counts per bin; the offset C is fringe phase expressed in degrees
// (period 360).
struct FringeModel {
    double amplitude = 0.0;   // A [counts/bin]
    double offset = 0.0;      // B [counts/bin]
    double phase_deg = 0.0;   // C [deg of fringe phase]
    int photon_number = 2;    // N
    int charge = 1;           // l

    double omega() const; // [rad per degree of rotation]
    double visibility() const { return amplitude / (amplitude + 2.0 * offset); }
    bool valid() const { return amplitude > 0.0 && offset >= 0.0; }
};

// Expected counts per bin at rotation angle theta_deg.
double fringe_rate(double theta_deg, const FringeModel& model);

// d(rate)/d(theta) in counts per degree.
double fringe_slope(double theta_deg, const FringeModel& model);

// Local maxima of a 360-degree-periodic curve, counted by derivative sign
// changes on a dense grid (samples_per_degree defaults high enough for
// N*l <= 64).
int count_fringe_maxima(const std::function<double(double)>& curve, int samples = 23040);

int count_fringe_maxima(const FringeModel& model);

} // namespace gearsense::quantum

#endif
