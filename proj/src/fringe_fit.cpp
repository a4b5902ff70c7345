#include "gearsense/fringe_fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "gearsense/errors.hpp"

namespace gearsense::est {

AngleStats per_angle_stats(const std::vector<sim::CountRecord>& aligned_runs) {
    if (aligned_runs.empty()) throw DataError("no runs to aggregate");
    const size_t bins = aligned_runs.front().size();
    const sim::ExperimentConfig& front_cfg = aligned_runs.front().config;
    for (const auto& run : aligned_runs) {
        if (run.size() != bins) throw DataError("runs have mismatched bin counts");
        if (run.config.photon_number != front_cfg.photon_number ||
            run.config.charge != front_cfg.charge ||
            run.config.acq_time != front_cfg.acq_time)
            throw DataError("runs were recorded with different N, l or bin time");
        for (size_t i = 0; i < bins; ++i)
            if (std::abs(run.abscissa[i] - aligned_runs.front().abscissa[i]) > 1e-9)
                throw DataError("runs have mismatched angle grids");
    }

    const auto m = static_cast<double>(aligned_runs.size());
    AngleStats stats;
    stats.repeats = static_cast<int>(aligned_runs.size());
    stats.acq_time = aligned_runs.front().config.acq_time;
    stats.photon_number = aligned_runs.front().config.photon_number;
    stats.charge = aligned_runs.front().config.charge;
    stats.angles_deg = aligned_runs.front().abscissa;
    stats.mean.resize(bins);
    stats.variance.resize(bins);
    stats.weight.resize(bins);
    for (size_t i = 0; i < bins; ++i) {
        double sum = 0.0;
        for (const auto& run : aligned_runs) sum += static_cast<double>(run.coincidences[i]);
        const double mean = sum / m;
        double ss = 0.0;
        for (const auto& run : aligned_runs) {
            const double d = static_cast<double>(run.coincidences[i]) - mean;
            ss += d * d;
        }
        double variance = m > 1.0 ? ss / (m - 1.0) : 0.0;
        if (!(variance > 0.0)) variance = std::max(mean, 1.0); // Poisson floor
        stats.mean[i] = mean;
        stats.variance[i] = variance;
        stats.weight[i] = m / variance;
    }
    return stats;
}

namespace {

struct LinearFringeSolution {
    Eigen::Vector3d p;
    Eigen::Matrix3d covariance;
    double rss = 0.0;
};

LinearFringeSolution solve_linear_fringe(const std::vector<double>& angles_deg,
                                         const std::vector<double>& values,
                                         const std::vector<double>& weights,
                                         double omega) {
    const size_t count = angles_deg.size();
    Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (size_t i = 0; i < count; ++i) {
        const Eigen::Vector3d basis{1.0, std::cos(omega * angles_deg[i]),
                                    std::sin(omega * angles_deg[i])};
        normal += weights[i] * basis * basis.transpose();
        rhs += weights[i] * values[i] * basis;
    }
    Eigen::FullPivLU<Eigen::Matrix3d> lu(normal);
    if (!lu.isInvertible())
        throw IllConditionedError("fringe fit normal equations are singular");
    LinearFringeSolution sol;
    sol.p = lu.solve(rhs);
    sol.covariance = lu.inverse();
    for (size_t i = 0; i < count; ++i) {
        const Eigen::Vector3d basis{1.0, std::cos(omega * angles_deg[i]),
                                    std::sin(omega * angles_deg[i])};
        const double r = values[i] - basis.dot(sol.p);
        sol.rss += weights[i] * r * r;
    }
    return sol;
}

void check_fit_inputs(const std::vector<double>& angles_deg,
                      const std::vector<double>& values,
                      const std::vector<double>& weights, double omega) {
    if (angles_deg.size() != values.size() || angles_deg.size() != weights.size())
        throw DataError("fringe fit inputs have mismatched lengths");
    std::set<double> distinct(angles_deg.begin(), angles_deg.end());
    if (distinct.size() < 3)
        throw IllConditionedError("fringe fit needs at least 3 distinct angles");
    const auto [lo, hi] = std::minmax_element(angles_deg.begin(), angles_deg.end());
    if ((*hi - *lo) * omega <= std::numbers::pi)
        throw IllConditionedError("angle span covers less than half a fringe period");
    for (double w : weights)
        if (!(w > 0.0)) throw DataError("fringe fit weights must be positive");
}

FringeFit assemble_fringe_fit(const LinearFringeSolution& sol, int photon_number, int charge) {
    const double p0 = sol.p(0), p1 = sol.p(1), p2 = sol.p(2);
    const double half_amp = std::hypot(p1, p2);
    const double amplitude = 2.0 * half_amp;

    FringeFit fit;
    fit.model.photon_number = photon_number;
    fit.model.charge = charge;
    fit.model.amplitude = amplitude;
    const double phase_rad = std::atan2(-p2, -p1);
    fit.model.phase_deg = phase_rad * 180.0 / std::numbers::pi;
    if (fit.model.phase_deg < 0.0) fit.model.phase_deg += 360.0;
    const double raw_offset = p0 - 0.5 * amplitude;
    fit.model.offset = std::max(raw_offset, 0.0);
    fit.rss = sol.rss;

    // Jacobian of (A, B, C_deg) with respect to (p0, p1, p2).
    if (half_amp > 0.0) {
        Eigen::Matrix3d jac = Eigen::Matrix3d::Zero();
        jac(0, 1) = 2.0 * p1 / half_amp;
        jac(0, 2) = 2.0 * p2 / half_amp;
        jac(1, 0) = 1.0;
        jac(1, 1) = -p1 / half_amp;
        jac(1, 2) = -p2 / half_amp;
        const double s2 = half_amp * half_amp;
        jac(2, 1) = (-p2 / s2) * 180.0 / std::numbers::pi;
        jac(2, 2) = (p1 / s2) * 180.0 / std::numbers::pi;
        const Eigen::Matrix3d cov = jac * sol.covariance * jac.transpose();
        fit.err_amplitude = std::sqrt(std::max(cov(0, 0), 0.0));
        fit.err_offset = std::sqrt(std::max(cov(1, 1), 0.0));
        fit.err_phase_deg = std::sqrt(std::max(cov(2, 2), 0.0));

        const double a = fit.model.amplitude, b = fit.model.offset;
        const double denom = (a + 2.0 * b) * (a + 2.0 * b);
        const Eigen::Vector3d grad_v{2.0 * b / denom, -2.0 * a / denom, 0.0};
        fit.visibility = fit.model.visibility();
        fit.err_visibility = std::sqrt(std::max(double(grad_v.transpose() * cov * grad_v), 0.0));
    }
    fit.offset_clamped = raw_offset < -fit.err_offset;

    if (!(fit.model.amplitude > 2.0 * fit.err_amplitude) || fit.model.amplitude <= 0.0)
        throw IllConditionedError("fitted fringe amplitude is indistinguishable from zero");
    return fit;
}

} // namespace

FringeFit fit_fringe(const std::vector<double>& angles_deg,
                     const std::vector<double>& values,
                     const std::vector<double>& weights,
                     int photon_number, int charge) {
    quantum::FringeModel nominal;
    nominal.photon_number = photon_number;
    nominal.charge = charge;
    const double omega = nominal.omega();
    check_fit_inputs(angles_deg, values, weights, omega);
    const LinearFringeSolution sol = solve_linear_fringe(angles_deg, values, weights, omega);
    return assemble_fringe_fit(sol, photon_number, charge);
}

FringeFit fit_fringe(const AngleStats& stats) {
    return fit_fringe(stats.angles_deg, stats.mean, stats.weight, stats.photon_number,
                      stats.charge);
}

FreeFrequencyFit fit_fringe_free_frequency(const std::vector<double>& angles_deg,
                                           const std::vector<double>& values,
                                           const std::vector<double>& weights,
                                           int photon_number, int charge,
                                           double lo_factor, double hi_factor,
                                           int scan_steps) {
    quantum::FringeModel nominal;
    nominal.photon_number = photon_number;
    nominal.charge = charge;
    const double omega0 = nominal.omega();
    check_fit_inputs(angles_deg, values, weights, omega0 * lo_factor);

    const auto rss_at = [&](double omega) {
        return solve_linear_fringe(angles_deg, values, weights, omega).rss;
    };

    double best_omega = omega0;
    double best_rss = std::numeric_limits<double>::infinity();
    const double lo = omega0 * lo_factor, hi = omega0 * hi_factor;
    for (int i = 0; i < scan_steps; ++i) {
        const double omega = lo + (hi - lo) * i / (scan_steps - 1);
        const double rss = rss_at(omega);
        if (rss < best_rss) {
            best_rss = rss;
            best_omega = omega;
        }
    }
    // Golden-section refinement one scan step around the best candidate.
    const double step = (hi - lo) / (scan_steps - 1);
    double a = best_omega - step, b = best_omega + step;
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
    double f1 = rss_at(x1), f2 = rss_at(x2);
    for (int iter = 0; iter < 80; ++iter) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - golden * (b - a);
            f1 = rss_at(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + golden * (b - a);
            f2 = rss_at(x2);
        }
    }
    const double omega = 0.5 * (a + b);

    FreeFrequencyFit result;
    const LinearFringeSolution sol = solve_linear_fringe(angles_deg, values, weights, omega);
    result.fit = assemble_fringe_fit(sol, photon_number, charge);
    result.omega = omega;
    result.oscillations_per_turn = omega * 360.0 / (2.0 * std::numbers::pi);
    return result;
}

nlohmann::json to_json(const FringeFit& fit) {
    return {
        {"model", "fringe"},
        {"amplitude_counts", fit.model.amplitude},
        {"offset_counts", fit.model.offset},
        {"phase_c_deg", fit.model.phase_deg},
        {"photon_number_n", fit.model.photon_number},
        {"topological_charge_l", fit.model.charge},
        {"err_amplitude", fit.err_amplitude},
        {"err_offset", fit.err_offset},
        {"err_phase_deg", fit.err_phase_deg},
        {"visibility", fit.visibility},
        {"err_visibility", fit.err_visibility},
        {"rss", fit.rss},
        {"iterations", fit.iterations},
        {"final_step_norm", fit.final_step_norm},
        {"offset_clamped", fit.offset_clamped},
    };
}

} // namespace gearsense::est
