#include "gearsense/count_record.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gearsense/errors.hpp"

namespace gearsense::sim {

void CountRecord::validate() const {
    const size_t count = abscissa.size();
    if (coincidences.size() != count || singles1.size() != count || singles2.size() != count)
        throw DataError("count record columns have mismatched lengths");
    for (size_t i = 0; i < count; ++i) {
        if (coincidences[i] < 0 || singles1[i] < 0 || singles2[i] < 0)
            throw DataError("count record has negative counts");
        if (i > 0 && !(abscissa[i] > abscissa[i - 1]))
            throw DataError("count record abscissa must be strictly increasing");
    }
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void write_record_csv(const CountRecord& record, std::ostream& out) {
    record.validate();
    out << (record.kind == CountRecord::Kind::Angle ? "angle_deg" : "time_s")
        << ",coincidences,singles1,singles2\n";
    for (size_t i = 0; i < record.size(); ++i) {
        out << format_double(record.abscissa[i]) << "," << record.coincidences[i] << ","
            << record.singles1[i] << "," << record.singles2[i] << "\n";
    }
}

void write_record_csv_file(const CountRecord& record, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    write_record_csv(record, out);
}

nlohmann::json sidecar_json(const CountRecord& record, const std::string& manifest_ref) {
    nlohmann::json j{
        {"schema_version", 1},
        {"kind", record.kind == CountRecord::Kind::Angle ? "angle" : "time"},
        {"experiment", to_json(record.config)},
        {"run_index", record.run_index},
        {"realized_offset_c_deg", record.realized_offset_deg},
        {"manifest", manifest_ref},
    };
    if (record.chirp_truth) {
        const ChirpModel& c = *record.chirp_truth;
        j["chirp_truth"] = {{"theta0_rad", c.theta0},
                            {"speed_start_deg_per_s", c.speed_start},
                            {"speed_final_deg_per_s", c.speed_final},
                            {"duration_s", c.duration},
                            {"k_rad_per_s2", c.k},
                            {"photon_number_n", c.photon_number},
                            {"topological_charge_l", c.charge}};
    }
    return j;
}

void write_sidecar_file(const CountRecord& record, const std::string& manifest_ref,
                        const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    out << sidecar_json(record, manifest_ref).dump(2) << "\n";
}

std::string sidecar_path_for(const std::string& csv_path) {
    if (csv_path.size() >= 4 && csv_path.ends_with(".csv"))
        return csv_path.substr(0, csv_path.size() - 4) + ".json";
    return csv_path + ".json";
}

CountRecord read_record(const std::string& csv_path, const std::string& sidecar_path) {
    std::ifstream sidecar(sidecar_path);
    if (!sidecar) throw DataError("cannot open sidecar " + sidecar_path);
    nlohmann::json j;
    try {
        sidecar >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("sidecar parse error in " + sidecar_path + ": " + e.what());
    }

    CountRecord record;
    const std::string kind = j.at("kind").get<std::string>();
    record.kind = kind == "time" ? CountRecord::Kind::Time : CountRecord::Kind::Angle;
    record.config = experiment_from_json(j.at("experiment"));
    record.run_index = j.at("run_index").get<int>();
    record.realized_offset_deg = j.at("realized_offset_c_deg").get<double>();
    if (j.contains("chirp_truth")) {
        const auto& c = j.at("chirp_truth");
        ChirpModel chirp;
        chirp.theta0 = c.at("theta0_rad").get<double>();
        chirp.speed_start = c.at("speed_start_deg_per_s").get<double>();
        chirp.speed_final = c.at("speed_final_deg_per_s").get<double>();
        chirp.duration = c.at("duration_s").get<double>();
        chirp.k = c.at("k_rad_per_s2").get<double>();
        chirp.photon_number = c.at("photon_number_n").get<int>();
        chirp.charge = c.at("topological_charge_l").get<int>();
        record.chirp_truth = chirp;
    }

    std::ifstream csv(csv_path);
    if (!csv) throw DataError("cannot open " + csv_path);
    std::string line;
    if (!std::getline(csv, line)) throw DataError("empty record file " + csv_path);
    const std::string expected_head =
        std::string(record.kind == CountRecord::Kind::Angle ? "angle_deg" : "time_s") +
        ",coincidences,singles1,singles2";
    if (line != expected_head)
        throw DataError("unexpected CSV header in " + csv_path + ": " + line);
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        try {
            if (!std::getline(row, cell, ',')) throw DataError("bad CSV row: " + line);
            record.abscissa.push_back(std::stod(cell));
            if (!std::getline(row, cell, ',')) throw DataError("bad CSV row: " + line);
            record.coincidences.push_back(std::stoll(cell));
            if (!std::getline(row, cell, ',')) throw DataError("bad CSV row: " + line);
            record.singles1.push_back(std::stoll(cell));
            if (!std::getline(row, cell, ',')) throw DataError("bad CSV row: " + line);
            record.singles2.push_back(std::stoll(cell));
        } catch (const std::logic_error&) {
            throw DataError("unparsable CSV cell in " + csv_path + ": " + line);
        }
    }
    record.validate();
    return record;
}

CountRecord read_record(const std::string& csv_path) {
    return read_record(csv_path, sidecar_path_for(csv_path));
}

} // namespace gearsense::sim
