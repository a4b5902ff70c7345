#include "gearsense/uncertainty.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>

#include "gearsense/errors.hpp"

namespace gearsense::est {

UncertaintyCurve uncertainty_curve(const quantum::FringeModel& model,
                                   const std::vector<double>& angles_deg,
                                   const std::vector<double>& measured_std,
                                   double sin_epsilon) {
    if (!model.valid()) throw DataError("uncertainty_curve: invalid fringe model");
    if (angles_deg.empty()) throw DataError("uncertainty_curve: empty angle grid");
    if (!measured_std.empty() && measured_std.size() != angles_deg.size())
        throw DataError("uncertainty_curve: spread/angle size mismatch");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double omega = model.omega();
    const double phase_rad = model.phase_deg * std::numbers::pi / 180.0;
    // A * N*l*pi/360 = A * omega / 2: the magnitude of d(mean)/d(theta).
    const double slope_scale = 0.5 * model.amplitude * omega;

    UncertaintyCurve curve;
    curve.sin_epsilon = sin_epsilon;
    curve.angles_deg = angles_deg;
    curve.measured_deg.assign(angles_deg.size(), nan);
    curve.poisson_deg.assign(angles_deg.size(), nan);
    curve.min_measured_deg = nan;
    curve.min_measured_angle_deg = nan;
    curve.min_poisson_deg = nan;
    curve.min_poisson_angle_deg = nan;

    size_t included = 0;
    for (size_t i = 0; i < angles_deg.size(); ++i) {
        const double s = std::sin(omega * angles_deg[i] - phase_rad);
        if (std::abs(s) < sin_epsilon) continue;
        ++included;
        const double denom = slope_scale * std::abs(s);
        const double mean = quantum::fringe_rate(angles_deg[i], model);
        const double poisson = std::sqrt(std::max(mean, 0.0)) / denom;
        curve.poisson_deg[i] = poisson;
        if (std::isnan(curve.min_poisson_deg) || poisson < curve.min_poisson_deg) {
            curve.min_poisson_deg = poisson;
            curve.min_poisson_angle_deg = angles_deg[i];
        }
        if (!measured_std.empty()) {
            if (!(measured_std[i] >= 0.0))
                throw DataError("uncertainty_curve: spread must be nonnegative");
            const double measured = measured_std[i] / denom;
            curve.measured_deg[i] = measured;
            if (std::isnan(curve.min_measured_deg) || measured < curve.min_measured_deg) {
                curve.min_measured_deg = measured;
                curve.min_measured_angle_deg = angles_deg[i];
            }
        }
    }
    if (included == 0)
        throw DegenerateInputError(
            "uncertainty_curve: every angle sits within sin_epsilon of a fringe extremum");
    return curve;
}

namespace {

void print_value(std::ostream& out, double v) {
    if (std::isnan(v)) {
        out << "nan";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

} // namespace

void write_uncertainty_csv(const UncertaintyCurve& curve, std::ostream& out) {
    out << "theta_deg,dtheta_measured_deg,dtheta_poisson_deg\n";
    for (size_t i = 0; i < curve.angles_deg.size(); ++i) {
        print_value(out, curve.angles_deg[i]);
        out << ",";
        print_value(out, curve.measured_deg[i]);
        out << ",";
        print_value(out, curve.poisson_deg[i]);
        out << "\n";
    }
}

void write_uncertainty_csv_file(const UncertaintyCurve& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    write_uncertainty_csv(curve, out);
}

} // namespace gearsense::est
