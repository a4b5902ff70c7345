#ifndef GEARSENSE_ALIGN_HPP
#define GEARSENSE_ALIGN_HPP

#include <vector>

#include "gearsense/count_record.hpp"

namespace gearsense::est {

// Cross-correlation alignment of repeated sweeps that started at distinct
// fringe offsets. Each run is correlated (mean-subtracted, normalized,
// circular in the angle index) against the reference run; the best integer
// lag re-indexes the run and a parabolic fit through the three samples
// around the correlation peak supplies the sub-sample remainder. Circular
// correlation assumes the sweep spans a whole number of fringe periods on a
// half-open grid, which all bundled presets satisfy.
struct Alignment {
    std::vector<sim::CountRecord> aligned;  // successfully aligned runs, shifted
    std::vector<int> source_index;          // position of each aligned run in the input
    std::vector<int> lag;                   // integer grid steps applied
    std::vector<double> fractional_lag;     // sub-sample remainder [grid steps]
    std::vector<double> phase_shift_deg;    // total fringe-phase shift [deg], = N*l*step*(lag+frac)
    std::vector<double> peak_correlation;   // normalized, in [-1, 1]
    std::vector<int> failed;                // input indices whose peak fell below threshold
};

// min_peak_correlation is the significance threshold; runs whose normalized
// correlation peak falls below it land in `failed` instead of `aligned`.
// Throws DataError on mismatched grids, AlignmentError if nothing aligns.
Alignment align_runs(const std::vector<sim::CountRecord>& runs, size_t reference_index = 0,
                     double min_peak_correlation = 0.5);

} // namespace gearsense::est

#endif
