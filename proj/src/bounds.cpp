#include "gearsense/bounds.hpp"

#include <cmath>
#include <cstdlib>

#include "gearsense/errors.hpp"

namespace gearsense::est {

double heisenberg_limit(int measurements, int photon_number, int charge) {
    if (measurements < 1 || photon_number < 1 || charge < 1)
        throw ConfigError("heisenberg_limit needs M, N, l >= 1");
    return 1.0 / (std::sqrt(static_cast<double>(measurements)) * photon_number * charge);
}

ViolationFigure violation_figure(const EfficiencyBudget& budget) {
    if (budget.eta <= 0.0 || budget.eta > 1.0)
        throw ConfigError("eta must lie in (0, 1]");
    if (budget.visibility < 0.0 || budget.visibility > 1.0)
        throw ConfigError("visibility must lie in [0, 1]");
    if (budget.photon_number < 1) throw ConfigError("photon number must be >= 1");
    ViolationFigure result;
    result.figure = std::pow(budget.eta, budget.photon_number) * budget.visibility *
                    budget.visibility * budget.photon_number;
    result.violated = result.figure > 1.0;
    return result;
}

double eta_threshold(double visibility, int photon_number) {
    if (visibility <= 0.0 || visibility > 1.0)
        throw ConfigError("visibility must lie in (0, 1]");
    if (photon_number < 1) throw ConfigError("photon number must be >= 1");
    const auto figure = [&](double eta) {
        return std::pow(eta, photon_number) * visibility * visibility * photon_number - 1.0;
    };
    if (figure(1.0) < 0.0)
        throw NumericError("criterion unreachable: eta^N V^2 N < 1 even at eta = 1");
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (figure(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace gearsense::est
