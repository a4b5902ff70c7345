#ifndef GEARSENSE_PRESETS_HPP
#define GEARSENSE_PRESETS_HPP

#include <string>
#include <vector>

#include "gearsense/experiment_config.hpp"

namespace gearsense::cli {

// Bundled experiment presets:
//   fig2_l1   - l=1 sweep, 44.9k pairs/s, V=0.957, 0..360 deg in 3-deg steps
//   fig2_l16  - l=16 sweep, 42.7k pairs/s, V=0.976, 0..22.5 deg in 0.15-deg steps
//   fig3      - matched-rate sweep pair used for the uncertainty-ratio study
//               (returns the l=1 member; fig3_l16 is the l=16 member)
//   fig4_l1   - l=1 chirp, 1 deg/s^2 for 10 s at 0.01 s bins
//   fig4_l16  - l=16 chirp, same motion profile
//   gear_paper_geometry - 1024^2 grid, 8 mm half-width, 1064 nm, 0.5 mm waist,
//               2 mm beam offset, 5 cm plate separation, l=16
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
sim::RunConfig preset(const std::string& name); // throws ConfigError for unknown names

} // namespace gearsense::cli

#endif
