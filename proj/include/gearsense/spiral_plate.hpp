#ifndef GEARSENSE_SPIRAL_PLATE_HPP
#define GEARSENSE_SPIRAL_PLATE_HPP

#include <utility>

#include "gearsense/field_grid.hpp"

namespace gearsense::optics {

// Spiral phase plate. A plate of charge q whose azimuthal ramp is rotated
// by `rotation` about its own center imprints the phase
//     q * (atan2(y - cy, x - cx) - rotation),
// so a flipped plate (charge -l) rotated by theta adds -l*phi + theta*l.
// The sample nearest the center is the singularity pixel: it gets phase 0
// and is excluded from downstream residual statistics.
struct SpiralPlate {
    int charge = 0;          // topological charge, nonzero for a useful plate
    double center_x = 0.0;   // [m]
    double center_y = 0.0;   // [m]
    double rotation = 0.0;   // [rad]
};

// Grid index (ix, iy) of the sample nearest the plate center.
std::pair<int, int> singularity_pixel(const SpiralPlate& plate, const FieldGrid& grid);

// Pointwise phase mask exp(i * q * (phi - rotation)). Amplitude unchanged;
// power conserved to machine precision. Throws ConfigError for charge 0 and
// GeometryError if the plate center falls off the grid.
FieldGrid apply_spiral_plate(const FieldGrid& field, const SpiralPlate& plate);

} // namespace gearsense::optics

#endif
