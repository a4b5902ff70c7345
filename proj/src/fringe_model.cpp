#include "gearsense/fringe_model.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace gearsense::quantum {

double FringeModel::omega() const {
    return std::numbers::pi * photon_number * charge / 180.0;
}

double fringe_rate(double theta_deg, const FringeModel& model) {
    const double arg = model.omega() * theta_deg - model.phase_deg * std::numbers::pi / 180.0;
    return 0.5 * model.amplitude * (1.0 - std::cos(arg)) + model.offset;
}

double fringe_slope(double theta_deg, const FringeModel& model) {
    const double arg = model.omega() * theta_deg - model.phase_deg * std::numbers::pi / 180.0;
    return 0.5 * model.amplitude * model.omega() * std::sin(arg);
}

int count_fringe_maxima(const std::function<double(double)>& curve, int samples) {
    std::vector<double> values(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i)
        values[static_cast<size_t>(i)] = curve(360.0 * i / samples);
    int maxima = 0;
    for (int i = 0; i < samples; ++i) {
        const double prev = values[static_cast<size_t>((i + samples - 1) % samples)];
        const double next = values[static_cast<size_t>((i + 1) % samples)];
        const double here = values[static_cast<size_t>(i)];
        if (here > prev && here > next) ++maxima;
    }
    return maxima;
}

int count_fringe_maxima(const FringeModel& model) {
    return count_fringe_maxima([&](double theta) { return fringe_rate(theta, model); });
}

} // namespace gearsense::quantum
