#include "gearsense/field_grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gearsense/errors.hpp"

namespace gearsense::optics {

double FieldGrid::total_power() const {
    double acc = 0.0;
    for (const cplx& s : samples) acc += std::norm(s);
    return acc * cell_area();
}

FieldGrid make_gaussian(double waist, double offset_x, double offset_y, const GridSpec& spec) {
    if (spec.n < 2) throw ConfigError("grid needs at least 2 samples per axis");
    if (spec.extent <= 0.0) throw ConfigError("grid extent must be positive");
    if (spec.wavelength <= 0.0) throw ConfigError("wavelength must be positive");
    if (waist <= 0.0) throw ConfigError("waist must be positive");

    const double clearance = spec.extent - 3.0 * waist;
    if (std::abs(offset_x) > clearance || std::abs(offset_y) > clearance) {
        std::ostringstream msg;
        msg << "beam at (" << offset_x << ", " << offset_y << ") m with waist " << waist
            << " m is clipped by the grid edge at +/-" << spec.extent
            << " m (need 3 waists of clearance)";
        throw BoundaryError(msg.str());
    }

    FieldGrid field;
    field.n = spec.n;
    field.extent = spec.extent;
    field.wavelength = spec.wavelength;
    field.samples.resize(static_cast<size_t>(spec.n) * spec.n);

    const double inv_w2 = 1.0 / (waist * waist);
    for (int iy = 0; iy < field.n; ++iy) {
        const double dy = field.coord(iy) - offset_y;
        for (int ix = 0; ix < field.n; ++ix) {
            const double dx = field.coord(ix) - offset_x;
            field.at(ix, iy) = std::exp(-(dx * dx + dy * dy) * inv_w2);
        }
    }

    const double power = field.total_power();
    if (!(power > 0.0)) throw DegenerateInputError("gaussian has zero power on this grid");
    const double scale = 1.0 / std::sqrt(power);
    for (cplx& s : field.samples) s *= scale;
    return field;
}

double beam_width_x(const FieldGrid& field) {
    double w = 0.0, mx = 0.0, mxx = 0.0;
    for (int iy = 0; iy < field.n; ++iy) {
        for (int ix = 0; ix < field.n; ++ix) {
            const double inten = std::norm(field.at(ix, iy));
            const double x = field.coord(ix);
            w += inten;
            mx += inten * x;
            mxx += inten * x * x;
        }
    }
    if (!(w > 0.0)) throw DegenerateInputError("zero-intensity field");
    const double mean = mx / w;
    return 2.0 * std::sqrt(mxx / w - mean * mean);
}

namespace {

void print_double(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

} // namespace

void write_field(const FieldGrid& field, std::ostream& out) {
    out << "gearsense-field v1\n";
    out << "n " << field.n << "\n";
    out << "extent_m ";
    print_double(out, field.extent);
    out << "\nwavelength_m ";
    print_double(out, field.wavelength);
    out << "\n";
    for (const cplx& s : field.samples) {
        print_double(out, s.real());
        out << " ";
        print_double(out, s.imag());
        out << "\n";
    }
}

void write_field_file(const FieldGrid& field, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    write_field(field, out);
}

FieldGrid read_field(std::istream& in) {
    std::string magic, version;
    in >> magic >> version;
    if (magic != "gearsense-field" || version != "v1")
        throw DataError("not a gearsense field file");
    FieldGrid field;
    std::string key;
    in >> key >> field.n;
    if (key != "n" || field.n < 2) throw DataError("bad field header: n");
    in >> key >> field.extent;
    if (key != "extent_m") throw DataError("bad field header: extent_m");
    in >> key >> field.wavelength;
    if (key != "wavelength_m") throw DataError("bad field header: wavelength_m");
    const size_t count = static_cast<size_t>(field.n) * field.n;
    field.samples.resize(count);
    for (size_t i = 0; i < count; ++i) {
        double re, im;
        if (!(in >> re >> im)) throw DataError("truncated field file");
        field.samples[i] = {re, im};
    }
    return field;
}

FieldGrid read_field_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return read_field(in);
}

} // namespace gearsense::optics
