#include "gearsense/chirp_fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gearsense/errors.hpp"

namespace gearsense::est {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct ChirpData {
    std::vector<double> t;
    std::vector<double> y;
    std::vector<double> w;
    double omega = 0.0;    // pi N l / 180
    double duration = 0.0; // T
};

// Parameter vector x = (A, B, theta0, w0, k).
double model_at(const ChirpData& d, const Eigen::Matrix<double, 5, 1>& x, size_t j) {
    const double phase = x(2) + d.omega * x(3) * d.t[j] + 0.5 * x(4) * d.t[j] * d.t[j];
    return 0.5 * x(0) * (1.0 - std::cos(phase)) + x(1);
}

double rss_of(const ChirpData& d, const Eigen::Matrix<double, 5, 1>& x) {
    double acc = 0.0;
    for (size_t j = 0; j < d.t.size(); ++j) {
        const double r = model_at(d, x, j) - d.y[j];
        acc += d.w[j] * r * r;
    }
    return acc;
}

// Linear solve for (A, B, theta0) at fixed (w0, k) via the basis
// y = p0 + p1 cos(phi) + p2 sin(phi), phi = omega w0 t + k/2 t^2.
struct LinearStart {
    Eigen::Matrix<double, 5, 1> x;
    double rss = std::numeric_limits<double>::infinity();
    bool ok = false;
};

LinearStart linear_start(const ChirpData& d, double w0, double k) {
    Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (size_t j = 0; j < d.t.size(); ++j) {
        const double phi = d.omega * w0 * d.t[j] + 0.5 * k * d.t[j] * d.t[j];
        const Eigen::Vector3d basis{1.0, std::cos(phi), std::sin(phi)};
        normal += d.w[j] * basis * basis.transpose();
        rhs += d.w[j] * d.y[j] * basis;
    }
    Eigen::FullPivLU<Eigen::Matrix3d> lu(normal);
    LinearStart start;
    if (!lu.isInvertible()) return start;
    const Eigen::Vector3d p = lu.solve(rhs);
    const double half_amp = std::hypot(p(1), p(2));
    start.x << 2.0 * half_amp, p(0) - half_amp, std::atan2(p(2), -p(1)), w0, k;
    start.rss = rss_of(d, start.x);
    start.ok = true;
    return start;
}

struct Refined {
    Eigen::Matrix<double, 5, 1> x;
    double rss = std::numeric_limits<double>::infinity();
    bool converged = false;
    int iterations = 0;
    double final_step_norm = 0.0;
};

Refined refine_lm(const ChirpData& d, Eigen::Matrix<double, 5, 1> x, int max_iterations) {
    using Vec5 = Eigen::Matrix<double, 5, 1>;
    using Mat5 = Eigen::Matrix<double, 5, 5>;

    Refined out;
    double rss = rss_of(d, x);
    double lambda = 1e-3;
    for (int iter = 0; iter < max_iterations; ++iter) {
        Mat5 jtj = Mat5::Zero();
        Vec5 jtr = Vec5::Zero();
        for (size_t j = 0; j < d.t.size(); ++j) {
            const double t = d.t[j];
            const double phase = x(2) + d.omega * x(3) * t + 0.5 * x(4) * t * t;
            const double s = std::sin(phase);
            Vec5 grad;
            grad << 0.5 * (1.0 - std::cos(phase)),
                    1.0,
                    0.5 * x(0) * s,
                    0.5 * x(0) * s * d.omega * t,
                    0.25 * x(0) * s * t * t;
            const double r = 0.5 * x(0) * (1.0 - std::cos(phase)) + x(1) - d.y[j];
            jtj += d.w[j] * grad * grad.transpose();
            jtr += d.w[j] * r * grad;
        }

        bool stepped = false;
        for (int attempt = 0; attempt < 25; ++attempt) {
            Mat5 damped = jtj;
            for (int i = 0; i < 5; ++i) damped(i, i) += lambda * std::max(jtj(i, i), 1e-12);
            const Vec5 step = damped.ldlt().solve(-jtr);
            const Vec5 candidate = x + step;
            const double candidate_rss = rss_of(d, candidate);
            if (std::isfinite(candidate_rss) && candidate_rss <= rss) {
                const double improvement = rss - candidate_rss;
                x = candidate;
                out.final_step_norm = step.norm();
                stepped = true;
                lambda = std::max(lambda * 0.3, 1e-12);
                const bool tiny_step = step.norm() < 1e-10 * (1.0 + x.norm());
                const bool tiny_gain = improvement < 1e-12 * (rss + 1e-30);
                rss = candidate_rss;
                if (tiny_step || tiny_gain) {
                    out.converged = true;
                    out.iterations = iter + 1;
                    out.x = x;
                    out.rss = rss;
                    return out;
                }
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped) {
            // Damping saturated: the current point is (numerically) a minimum.
            out.converged = true;
            out.iterations = iter + 1;
            break;
        }
        out.iterations = iter + 1;
    }
    out.x = x;
    out.rss = rss;
    return out;
}

// Canonical form: A >= 0, theta0 in (-pi, pi].
void normalize_parameters(Eigen::Matrix<double, 5, 1>& x) {
    if (x(0) < 0.0) {
        x(0) = -x(0);
        x(2) += std::numbers::pi;
    }
    x(2) = std::remainder(x(2), 2.0 * std::numbers::pi);
    if (x(2) <= -std::numbers::pi) x(2) += 2.0 * std::numbers::pi;
}

} // namespace

ChirpFit fit_chirp(const sim::CountRecord& record, int photon_number, int charge,
                   const ChirpFitOptions& options) {
    if (record.kind != sim::CountRecord::Kind::Time)
        throw DataError("fit_chirp needs a time-abscissa record");
    if (record.size() < 10) throw DataError("fit_chirp needs at least 10 bins");
    if (photon_number < 1 || charge == 0) throw ConfigError("fit_chirp needs N >= 1, l != 0");

    ChirpData d;
    d.omega = std::numbers::pi * photon_number * charge / 180.0;
    d.t.resize(record.size());
    d.y.resize(record.size());
    d.w.resize(record.size());
    double peak = 1.0;
    for (size_t j = 0; j < record.size(); ++j)
        peak = std::max(peak, static_cast<double>(record.coincidences[j]));
    // Counts are normalized by the peak so the amplitude parameter is O(1);
    // the weighted objective is unchanged (weights carry scale^2) and the
    // normal matrix stays well conditioned at any photon flux.
    const double scale = peak;
    for (size_t j = 0; j < record.size(); ++j) {
        d.t[j] = record.abscissa[j];
        const double counts = static_cast<double>(record.coincidences[j]);
        d.y[j] = counts / scale;
        d.w[j] = scale * scale / std::max(counts, 1.0);
    }
    d.duration = record.abscissa.back() + 0.5 * record.config.acq_time;

    if (record.chirp_truth) {
        const double final_freq_hz =
            std::abs(d.omega * record.chirp_truth->speed_final) / (2.0 * std::numbers::pi);
        if (final_freq_hz > 0.0 && 1.0 / (final_freq_hz * record.config.acq_time) < 10.0)
            throw ConfigError("record is undersampled: fewer than 10 bins per fringe "
                              "at the final speed");
    }

    // Multi-start over the (w0, acceleration) box.
    std::vector<LinearStart> starts;
    starts.reserve(static_cast<size_t>(options.grid_speed) * options.grid_accel);
    for (int iw = 0; iw < options.grid_speed; ++iw) {
        const double w0 = options.speed_max * iw / std::max(options.grid_speed - 1, 1);
        for (int ia = 0; ia < options.grid_accel; ++ia) {
            const double accel = options.accel_max * ia / std::max(options.grid_accel - 1, 1);
            LinearStart s = linear_start(d, w0, d.omega * accel);
            if (s.ok) starts.push_back(std::move(s));
        }
    }
    if (starts.empty()) throw FitError("fit_chirp: every start was singular");

    std::sort(starts.begin(), starts.end(),
              [](const LinearStart& a, const LinearStart& b) { return a.rss < b.rss; });
    const size_t refine_count = std::min(starts.size(), static_cast<size_t>(options.refine_top));

    std::vector<Refined> minima;
    for (size_t i = 0; i < refine_count; ++i) {
        Refined r = refine_lm(d, starts[i].x, options.max_iterations);
        if (r.converged) {
            normalize_parameters(r.x);
            minima.push_back(std::move(r));
        }
    }
    if (minima.empty()) {
        throw FitError("fit_chirp: no start converged; best objective " +
                       std::to_string(starts.front().rss) + " over " +
                       std::to_string(starts.size()) + " starts");
    }
    std::sort(minima.begin(), minima.end(),
              [](const Refined& a, const Refined& b) { return a.rss < b.rss; });

    // Cluster competitive minima by (w0, acceleration).
    const double rss_cut = minima.front().rss * options.rss_cluster_factor;
    std::vector<const Refined*> clusters;
    double runner_up = kNan;
    for (const Refined& m : minima) {
        if (m.rss > rss_cut) continue;
        bool merged = false;
        for (const Refined* c : clusters) {
            if (std::abs(m.x(3) - c->x(3)) < options.cluster_speed_tol &&
                std::abs(m.x(4) - c->x(4)) / d.omega < options.cluster_accel_tol) {
                merged = true;
                break;
            }
        }
        if (!merged) {
            if (clusters.size() == 1) runner_up = m.rss;
            clusters.push_back(&m);
        }
    }

    const Refined& best = minima.front();
    const Eigen::Matrix<double, 5, 1>& x = best.x;

    ChirpFit fit;
    fit.amplitude = x(0) * scale;
    fit.offset = std::max(x(1), 0.0) * scale;
    fit.rss = best.rss;
    fit.iterations = best.iterations;
    fit.final_step_norm = best.final_step_norm;
    fit.landscape.starts = static_cast<int>(starts.size());
    fit.landscape.converged = static_cast<int>(minima.size());
    fit.landscape.distinct_minima = static_cast<int>(clusters.size());
    fit.landscape.best_rss = minima.front().rss;
    fit.landscape.runner_up_rss = runner_up;

    fit.model.theta0 = x(2);
    fit.model.speed_start = x(3);
    fit.model.k = x(4);
    fit.model.duration = d.duration;
    fit.model.photon_number = photon_number;
    fit.model.charge = charge;
    fit.model.speed_final = x(3) + x(4) / d.omega * d.duration;
    fit.acceleration_deg_s2 = x(4) / d.omega;

    // Errors from the weighted Gauss-Newton covariance at the optimum.
    Eigen::Matrix<double, 5, 5> jtj = Eigen::Matrix<double, 5, 5>::Zero();
    for (size_t j = 0; j < d.t.size(); ++j) {
        const double t = d.t[j];
        const double phase = x(2) + d.omega * x(3) * t + 0.5 * x(4) * t * t;
        const double s = std::sin(phase);
        Eigen::Matrix<double, 5, 1> grad;
        grad << 0.5 * (1.0 - std::cos(phase)), 1.0, 0.5 * x(0) * s,
                0.5 * x(0) * s * d.omega * t, 0.25 * x(0) * s * t * t;
        jtj += d.w[j] * grad * grad.transpose();
    }
    const Eigen::Matrix<double, 5, 5> cov =
        jtj.fullPivLu().isInvertible() ? jtj.inverse().eval()
                                       : Eigen::Matrix<double, 5, 5>::Constant(kNan);
    fit.err_amplitude = std::sqrt(std::max(cov(0, 0), 0.0)) * scale;
    fit.err_offset = std::sqrt(std::max(cov(1, 1), 0.0)) * scale;
    fit.err_theta0 = std::sqrt(std::max(cov(2, 2), 0.0));
    fit.err_speed_start = std::sqrt(std::max(cov(3, 3), 0.0));
    fit.err_k = std::sqrt(std::max(cov(4, 4), 0.0));
    fit.err_acceleration_deg_s2 = fit.err_k / d.omega;

    if (!(fit.amplitude > 2.0 * fit.err_amplitude))
        throw DegenerateInputError("fit_chirp: record is flat (amplitude indistinguishable "
                                   "from zero)");
    return fit;
}

nlohmann::json to_json(const ChirpFit& fit) {
    return {
        {"model", "chirp"},
        {"amplitude_counts", fit.amplitude},
        {"offset_counts", fit.offset},
        {"theta0_rad", fit.model.theta0},
        {"speed_start_deg_per_s", fit.model.speed_start},
        {"speed_final_deg_per_s", fit.model.speed_final},
        {"k_rad_per_s2", fit.model.k},
        {"duration_s", fit.model.duration},
        {"photon_number_n", fit.model.photon_number},
        {"topological_charge_l", fit.model.charge},
        {"acceleration_deg_s2", fit.acceleration_deg_s2},
        {"err_acceleration_deg_s2", fit.err_acceleration_deg_s2},
        {"err_amplitude", fit.err_amplitude},
        {"err_offset", fit.err_offset},
        {"err_theta0", fit.err_theta0},
        {"err_speed_start", fit.err_speed_start},
        {"err_k", fit.err_k},
        {"rss", fit.rss},
        {"iterations", fit.iterations},
        {"final_step_norm", fit.final_step_norm},
        {"landscape",
         {{"starts", fit.landscape.starts},
          {"converged", fit.landscape.converged},
          {"distinct_minima", fit.landscape.distinct_minima},
          {"best_rss", fit.landscape.best_rss},
          {"runner_up_rss", fit.landscape.runner_up_rss}}},
    };
}

} // namespace gearsense::est
