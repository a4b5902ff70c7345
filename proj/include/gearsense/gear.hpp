#ifndef GEARSENSE_GEAR_HPP
#define GEARSENSE_GEAR_HPP

#include <utility>
#include <vector>

#include "gearsense/field_grid.hpp"

namespace gearsense::optics {

// Circular statistics of phase(psi2) - phase(psi0) - theta*l, weighted by
// |psi0|^2. Computed from the weighted resultant vector R of the unit
// residual phasors: mean = arg(R), std = sqrt(-2 ln |R|).
struct GearReport {
    double residual_mean = 0.0; // [rad], in (-pi, pi]
    double residual_std = 0.0;  // [rad], >= 0
    double expected = 0.0;      // theta * l wrapped to (-pi, pi]
    double weight_sum = 0.0;    // total intensity that entered the statistics
};

// Pixels to drop from the statistics (singularity cells). Each entry is a
// flat index iy * n + ix.
using PixelExclusions = std::vector<size_t>;

// Residual phase statistics between a reference field and the output of the
// two-plate chain, with the geometric phase theta*l subtracted. All phase
// arithmetic is done on complex phasors so branch cuts never enter.
// Throws GeometryError if the grids differ, DegenerateInputError if no
// intensity survives the exclusions.
GearReport gear_residual(const FieldGrid& psi0, const FieldGrid& psi2,
                         double theta, int charge,
                         const PixelExclusions& excluded = {});

// One pass through the rotation-sensing optical chain:
//   psi0 -> plate(+l, rot 0) -> Fresnel(separation) -> plate(-l, rot theta)
// compared against the reference beam propagated through the same distance,
// so the report isolates the plate-pair phase from free-space Gouy phase
// and wavefront curvature. Both plates sit on the optical axis; the beam is
// displaced from their common singularity.
struct GearScenario {
    GridSpec grid;
    double waist = 0.5e-3;     // [m]
    double offset_x = 2e-3;    // [m] beam displacement from the singularity
    double offset_y = 0.0;     // [m]
    double separation = 0.05;  // [m] plate-to-plate distance
    int charge = 16;
    double theta = 0.0;        // [rad] rotation of the second plate
};

GearReport run_gear(const GearScenario& scenario);

// Sweep over second-plate rotations. The reference propagation and the
// first plate do not depend on theta, so they are computed once.
std::vector<GearReport> run_gear_sweep(const GearScenario& scenario,
                                       const std::vector<double>& thetas);

// Same chain without subtracting theta*l from the residual: the raw mean
// equals theta*l mod 2pi (gear linearity).
GearReport run_gear_raw(const GearScenario& scenario);

double wrap_angle(double angle); // to (-pi, pi]

} // namespace gearsense::optics

#endif
