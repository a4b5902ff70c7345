#include "gearsense/spiral_plate.hpp"

#include <cmath>

#include "gearsense/errors.hpp"

namespace gearsense::optics {

std::pair<int, int> singularity_pixel(const SpiralPlate& plate, const FieldGrid& grid) {
    const double step = grid.spacing();
    const int ix = static_cast<int>(std::lround(plate.center_x / step)) + grid.n / 2;
    const int iy = static_cast<int>(std::lround(plate.center_y / step)) + grid.n / 2;
    return {ix, iy};
}

FieldGrid apply_spiral_plate(const FieldGrid& field, const SpiralPlate& plate) {
    if (plate.charge == 0) throw ConfigError("spiral plate charge must be nonzero");
    const auto [sx, sy] = singularity_pixel(plate, field);
    if (sx < 0 || sx >= field.n || sy < 0 || sy >= field.n)
        throw GeometryError("spiral plate center falls outside the grid");

    FieldGrid out = field;
    const double q = static_cast<double>(plate.charge);
    for (int iy = 0; iy < out.n; ++iy) {
        const double dy = out.coord(iy) - plate.center_y;
        for (int ix = 0; ix < out.n; ++ix) {
            if (ix == sx && iy == sy) continue; // singularity pixel: phase 0
            const double dx = out.coord(ix) - plate.center_x;
            const double phase = q * (std::atan2(dy, dx) - plate.rotation);
            out.at(ix, iy) *= std::polar(1.0, phase);
        }
    }
    return out;
}

} // namespace gearsense::optics
