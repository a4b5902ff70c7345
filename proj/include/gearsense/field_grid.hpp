#ifndef GEARSENSE_FIELD_GRID_HPP
#define GEARSENSE_FIELD_GRID_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace gearsense::optics {

using cplx = std::complex<double>;

// Square grid of complex field samples. The grid covers
// [-extent, extent) per axis with spacing 2*extent/n; sample (ix, iy)
// sits at x = (ix - n/2) * dx, y = (iy - n/2) * dx. Row-major storage,
// iy outer, ix inner.
struct FieldGrid {
    int n = 0;              // samples per axis
    double extent = 0.0;    // physical half-width per axis [m]
    double wavelength = 0.0; // [m]
    std::vector<cplx> samples;

    double spacing() const { return 2.0 * extent / n; }
    double cell_area() const { return spacing() * spacing(); }
    double coord(int i) const { return (i - n / 2) * spacing(); }
    cplx& at(int ix, int iy) { return samples[static_cast<size_t>(iy) * n + ix]; }
    const cplx& at(int ix, int iy) const { return samples[static_cast<size_t>(iy) * n + ix]; }

    // Sum of |amplitude|^2 times cell area.
    double total_power() const;

    bool same_geometry(const FieldGrid& other) const {
        return n == other.n && extent == other.extent && wavelength == other.wavelength;
    }
};

struct GridSpec {
    int n = 1024;
    double extent = 8e-3;
    double wavelength = 1064e-9;
};

// Flat-phase Gaussian, unit total power, centered at (offset_x, offset_y).
// Throws BoundaryError if the offset leaves less than 3 waists of clearance
// to the grid edge on either axis.
FieldGrid make_gaussian(double waist, double offset_x, double offset_y, const GridSpec& spec);

// Intensity-weighted second-moment width per axis, 2 * sqrt(<x^2> - <x>^2).
// Equals the 1/e^2 radius for a Gaussian beam.
double beam_width_x(const FieldGrid& field);

// Text export/import: header (n, extent, wavelength) + one "re im" pair per
// sample, row-major. Round-trips doubles exactly (printed with %.17g).
void write_field(const FieldGrid& field, std::ostream& out);
void write_field_file(const FieldGrid& field, const std::string& path);
FieldGrid read_field(std::istream& in);
FieldGrid read_field_file(const std::string& path);

} // namespace gearsense::optics

#endif
