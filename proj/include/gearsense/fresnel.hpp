#ifndef GEARSENSE_FRESNEL_HPP
#define GEARSENSE_FRESNEL_HPP

#include "gearsense/field_grid.hpp"

namespace gearsense::optics {

// Largest distance the transfer-function propagator handles without
// aliasing the quadratic phase at the current sampling: the chirp
// exp(-i pi lambda z f^2) must advance by less than pi between adjacent
// frequency samples at f_max = 1/(2 dx), which gives z <= n * dx^2 / lambda.
double max_propagation_distance(const FieldGrid& field);

// Fresnel transfer-function propagation:
//   U(f) -> U(f) * exp(i k z) * exp(-i pi lambda z |f|^2)
// via forward/inverse FFT. Unitary (|H| = 1), exact identity at z = 0.
// Throws AliasingError with a suggested minimum n (at the current sample
// spacing) when z exceeds max_propagation_distance.
FieldGrid propagate_fresnel(const FieldGrid& field, double distance);

} // namespace gearsense::optics

#endif
