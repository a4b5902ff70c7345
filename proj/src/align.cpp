#include "gearsense/align.hpp"

#include <cmath>
#include <numeric>

#include "gearsense/errors.hpp"

namespace gearsense::est {

namespace {

std::vector<double> centered_counts(const sim::CountRecord& run) {
    std::vector<double> x(run.size());
    for (size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(run.coincidences[i]);
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    for (double& v : x) v -= mean;
    return x;
}

double norm2(const std::vector<double>& x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc);
}

} // namespace

Alignment align_runs(const std::vector<sim::CountRecord>& runs, size_t reference_index,
                     double min_peak_correlation) {
    if (runs.empty()) throw DataError("align_runs: no runs");
    if (reference_index >= runs.size()) throw DataError("align_runs: bad reference index");
    const size_t bins = runs.front().size();
    if (bins < 3) throw DataError("align_runs: too few bins");
    for (const auto& run : runs) {
        if (run.size() != bins) throw DataError("align_runs: runs have different bin counts");
        for (size_t i = 0; i < bins; ++i)
            if (std::abs(run.abscissa[i] - runs.front().abscissa[i]) > 1e-9)
                throw DataError("align_runs: runs have different angle grids");
    }

    const std::vector<double> reference = centered_counts(runs[reference_index]);
    const double ref_norm = norm2(reference);
    const double step_deg = bins > 1 ? runs.front().abscissa[1] - runs.front().abscissa[0] : 0.0;
    // Fringe phase advances N*l degrees per degree of rotation.
    const int phase_per_rotation_deg =
        runs.front().config.photon_number * runs.front().config.charge;

    Alignment result;
    for (size_t r = 0; r < runs.size(); ++r) {
        const std::vector<double> x = centered_counts(runs[r]);
        const double x_norm = norm2(x);
        if (!(x_norm > 0.0) || !(ref_norm > 0.0)) {
            result.failed.push_back(static_cast<int>(r));
            continue;
        }

        std::vector<double> corr(bins);
        for (size_t lag = 0; lag < bins; ++lag) {
            double acc = 0.0;
            for (size_t j = 0; j < bins; ++j) acc += x[(j + lag) % bins] * reference[j];
            corr[lag] = acc / (x_norm * ref_norm);
        }
        size_t best = 0;
        for (size_t lag = 1; lag < bins; ++lag)
            if (corr[lag] > corr[best]) best = lag;

        if (corr[best] < min_peak_correlation) {
            result.failed.push_back(static_cast<int>(r));
            continue;
        }

        const double before = corr[(best + bins - 1) % bins];
        const double after = corr[(best + 1) % bins];
        const double denom = before - 2.0 * corr[best] + after;
        const double frac = denom != 0.0 ? 0.5 * (before - after) / denom : 0.0;

        sim::CountRecord shifted = runs[r];
        for (size_t j = 0; j < bins; ++j) {
            const size_t src = (j + best) % bins;
            shifted.coincidences[j] = runs[r].coincidences[src];
            shifted.singles1[j] = runs[r].singles1[src];
            shifted.singles2[j] = runs[r].singles2[src];
        }

        result.aligned.push_back(std::move(shifted));
        result.source_index.push_back(static_cast<int>(r));
        result.lag.push_back(static_cast<int>(best));
        result.fractional_lag.push_back(frac);
        result.phase_shift_deg.push_back(phase_per_rotation_deg * step_deg *
                                         (static_cast<double>(best) + frac));
        result.peak_correlation.push_back(corr[best]);
    }

    if (result.aligned.empty())
        throw AlignmentError("no run reached the correlation significance threshold");
    return result;
}

} // namespace gearsense::est
