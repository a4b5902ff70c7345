#include "gearsense/gear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gearsense/errors.hpp"
#include "gearsense/fresnel.hpp"
#include "gearsense/spiral_plate.hpp"

namespace gearsense::optics {

double wrap_angle(double angle) {
    const double two_pi = 2.0 * std::numbers::pi;
    double w = std::remainder(angle, two_pi);
    if (w <= -std::numbers::pi) w += two_pi;
    return w;
}

GearReport gear_residual(const FieldGrid& psi0, const FieldGrid& psi2,
                         double theta, int charge,
                         const PixelExclusions& excluded) {
    if (!psi0.same_geometry(psi2))
        throw GeometryError("gear_residual: fields do not share grid geometry");

    const double expected = theta * static_cast<double>(charge);
    const cplx rotate_back = std::polar(1.0, -expected);

    double weight_sum = 0.0;
    cplx resultant{0.0, 0.0};
    for (size_t i = 0; i < psi0.samples.size(); ++i) {
        if (std::find(excluded.begin(), excluded.end(), i) != excluded.end()) continue;
        const double weight = std::norm(psi0.samples[i]);
        if (weight == 0.0) continue;
        const cplx u = psi2.samples[i] * std::conj(psi0.samples[i]) * rotate_back;
        const double mag = std::abs(u);
        if (mag == 0.0) continue;
        resultant += weight * (u / mag);
        weight_sum += weight;
    }
    if (weight_sum <= 0.0)
        throw DegenerateInputError("gear_residual: zero total intensity");

    const double r = std::min(std::abs(resultant) / weight_sum, 1.0);
    GearReport report;
    report.residual_mean = std::arg(resultant); // in (-pi, pi]
    report.residual_std = r > 0.0 ? std::sqrt(-2.0 * std::log(r)) : std::numeric_limits<double>::infinity();
    report.expected = wrap_angle(expected);
    report.weight_sum = weight_sum;
    return report;
}

namespace {

std::vector<GearReport> run_gear_sweep_impl(const GearScenario& sc,
                                            const std::vector<double>& thetas,
                                            bool subtract_expected) {
    const FieldGrid psi0 = make_gaussian(sc.waist, sc.offset_x, sc.offset_y, sc.grid);
    const SpiralPlate first{sc.charge, 0.0, 0.0, 0.0};

    FieldGrid after_first = apply_spiral_plate(psi0, first);
    FieldGrid reference = psi0;
    if (sc.separation > 0.0) {
        after_first = propagate_fresnel(after_first, sc.separation);
        reference = propagate_fresnel(psi0, sc.separation);
    }

    const auto [sx, sy] = singularity_pixel(first, psi0);
    const PixelExclusions excluded{static_cast<size_t>(sy) * psi0.n + sx};

    std::vector<GearReport> reports;
    reports.reserve(thetas.size());
    for (double theta : thetas) {
        const SpiralPlate second{-sc.charge, 0.0, 0.0, theta};
        const FieldGrid beam = apply_spiral_plate(after_first, second);
        const double subtract_theta = subtract_expected ? theta : 0.0;
        const int subtract_charge = subtract_expected ? sc.charge : 0;
        reports.push_back(gear_residual(reference, beam, subtract_theta, subtract_charge,
                                        excluded));
    }
    return reports;
}

} // namespace

std::vector<GearReport> run_gear_sweep(const GearScenario& scenario,
                                       const std::vector<double>& thetas) {
    return run_gear_sweep_impl(scenario, thetas, true);
}

GearReport run_gear(const GearScenario& scenario) {
    return run_gear_sweep_impl(scenario, {scenario.theta}, true).front();
}

GearReport run_gear_raw(const GearScenario& scenario) {
    return run_gear_sweep_impl(scenario, {scenario.theta}, false).front();
}

} // namespace gearsense::optics
