#ifndef GEARSENSE_COUNT_RECORD_HPP
#define GEARSENSE_COUNT_RECORD_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gearsense/experiment_config.hpp"

namespace gearsense::sim {

// One simulated acquisition: counts per bin against rotation angle (sweep)
// or time (chirp). CSV column one is "angle_deg" or "time_s" accordingly.
struct CountRecord {
    enum class Kind { Angle, Time };

    Kind kind = Kind::Angle;
    std::vector<double> abscissa;             // strictly increasing
    std::vector<std::int64_t> coincidences;
    std::vector<std::int64_t> singles1;
    std::vector<std::int64_t> singles2;
    ExperimentConfig config;                  // snapshot
    double realized_offset_deg = 0.0;         // fringe offset C this run started at
    int run_index = 0;
    std::optional<ChirpModel> chirp_truth;    // present for chirp records

    size_t size() const { return abscissa.size(); }
    void validate() const; // nonnegative counts, strictly increasing abscissa
};

// CSV body: header row + one line per bin. Doubles print as %.17g so the
// round trip is bit-exact.
void write_record_csv(const CountRecord& record, std::ostream& out);
void write_record_csv_file(const CountRecord& record, const std::string& path);

// The sidecar carries everything the CSV cannot: config snapshot, seed,
// run index, realized offset, and a back-reference to the run manifest.
nlohmann::json sidecar_json(const CountRecord& record, const std::string& manifest_ref);
void write_sidecar_file(const CountRecord& record, const std::string& manifest_ref,
                        const std::string& path);

// Reads a record from a CSV plus its sidecar.
CountRecord read_record(const std::string& csv_path, const std::string& sidecar_path);
// Convention: sidecar path = CSV path with ".csv" replaced by ".json".
std::string sidecar_path_for(const std::string& csv_path);
CountRecord read_record(const std::string& csv_path);

} // namespace gearsense::sim

#endif
