#include "homsim/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "homsim/constants.hpp"
#include "homsim/errors.hpp"

namespace homsim::io {

std::string format_double(double x) {
    char buf[64];
    const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::filesystem::path resolve_output_path(const std::string& path) {
    std::filesystem::path p(path);
    const char* dir = std::getenv("HOMSIM_OUTPUT_DIR");
    if (dir != nullptr && *dir != '\0' && p.is_relative())
        return std::filesystem::path(dir) / p;
    return p;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream file(path);
    if (!file) throw file_error("cannot open " + path.string() + " for writing");
    for (const std::string& c : comments) file << "# " << c << "\n";
    for (size_t i = 0; i < columns.size(); ++i)
        file << (i ? "," : "") << columns[i];
    file << "\n";
    for (const std::vector<double>& row : rows) {
        for (size_t i = 0; i < row.size(); ++i)
            file << (i ? "," : "") << format_double(row[i]);
        file << "\n";
    }
    if (!file.good()) throw file_error("failed while writing " + path.string());
}

namespace {

std::string strip(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(strip(field));
    return out;
}

double parse_double(const std::string& s, int line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw parse_error("line " + std::to_string(line_no) + ": '" + s + "' is not a number");
    return v;
}

long long parse_count(const std::string& s, int line_no) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw parse_error("line " + std::to_string(line_no) + ": '" + s + "' is not an integer count");
    if (v < 0) throw parse_error("line " + std::to_string(line_no) + ": counts must be nonnegative");
    return v;
}

}  // namespace

analysis::DipDataset read_dip_csv(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) throw file_error("cannot open " + path.string());
    analysis::DipDataset data;
    data.label = path.filename().string();
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    while (std::getline(file, line)) {
        ++line_no;
        const std::string body = strip(line);
        if (body.empty() || body[0] == '#') continue;
        if (!saw_header) {
            std::string squeezed;
            for (char c : body)
                if (c != ' ' && c != '\t') squeezed += c;
            if (squeezed != "delay_um,counts,duration_s")
                throw parse_error("line " + std::to_string(line_no) +
                                  ": expected header 'delay_um,counts,duration_s'");
            saw_header = true;
            continue;
        }
        const std::vector<std::string> fields = split_fields(body);
        if (fields.size() != 3)
            throw parse_error("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                              std::to_string(fields.size()));
        const double delay_um = parse_double(fields[0], line_no);
        const long long counts = parse_count(fields[1], line_no);
        const double duration = parse_double(fields[2], line_no);
        if (!(duration > 0.0))
            throw parse_error("line " + std::to_string(line_no) + ": duration must be positive");
        data.points.push_back({um_to_m(delay_um), counts, duration});
    }
    if (!saw_header) throw parse_error(path.string() + ": missing header line");
    return data;
}

void write_dip_csv(const std::filesystem::path& path, const analysis::DipDataset& data) {
    std::ofstream file(path);
    if (!file) throw file_error("cannot open " + path.string() + " for writing");
    if (!data.label.empty()) file << "# dataset: " << data.label << "\n";
    file << "delay_um,counts,duration_s\n";
    for (const analysis::DipPoint& p : data.points)
        file << format_double(m_to_um(p.delay_m)) << "," << p.counts << ","
             << format_double(p.duration_s) << "\n";
    if (!file.good()) throw file_error("failed while writing " + path.string());
}

namespace {

using nlohmann::json;

const json& require_key(const json& j, const std::string& key) {
    if (!j.contains(key)) throw parse_error("config: missing key '" + key + "'");
    return j.at(key);
}

double require_number(const json& j, const std::string& key) {
    const json& v = require_key(j, key);
    if (!v.is_number()) throw parse_error("config: '" + key + "' must be a number");
    return v.get<double>();
}

}  // namespace

montecarlo::PulseExperimentConfig load_pulse_config(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) throw file_error("cannot open " + path.string());
    const json j = json::parse(file, nullptr, false);
    if (j.is_discarded()) throw parse_error(path.string() + ": not valid JSON");
    if (!j.is_object()) throw parse_error(path.string() + ": config must be a JSON object");

    const json& mode_v = require_key(j, "mode");
    if (!mode_v.is_string()) throw parse_error("config: 'mode' must be a string");
    const std::string mode = mode_v.get<std::string>();

    std::vector<std::string> allowed{"mode", "pulses", "seed", "workers", "r_sq", "eta1", "eta2"};
    if (mode == "quantum") {
        allowed.insert(allowed.end(), {"input_a", "alpha_sq", "cutoff"});
    } else if (mode == "classical") {
        allowed.insert(allowed.end(), {"intensity_a", "intensity_b"});
    } else {
        throw parse_error("config: mode must be 'quantum' or 'classical'");
    }
    for (const auto& item : j.items())
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw parse_error("config: unknown key '" + item.key() + "'");

    montecarlo::PulseExperimentConfig config;
    const json& pulses_v = require_key(j, "pulses");
    if (!pulses_v.is_number_integer() || pulses_v.get<long long>() < 1)
        throw parse_error("config: 'pulses' must be a positive integer");
    config.pulses = pulses_v.get<long long>();
    const json& seed_v = require_key(j, "seed");
    if (!seed_v.is_number_integer() ||
        (!seed_v.is_number_unsigned() && seed_v.get<long long>() < 0))
        throw parse_error("config: 'seed' must be a nonnegative integer");
    config.seed = seed_v.get<std::uint64_t>();
    if (j.contains("workers")) {
        const json& w = j.at("workers");
        if (!w.is_number_integer() || w.get<long long>() < 1)
            throw parse_error("config: 'workers' must be a positive integer");
        config.workers = static_cast<int>(w.get<long long>());
    }

    const double r_sq = require_number(j, "r_sq");
    if (!(r_sq >= 0.0 && r_sq <= 1.0)) throw parse_error("config: 'r_sq' must lie in [0, 1]");
    const double eta1 = require_number(j, "eta1");
    const double eta2 = require_number(j, "eta2");
    if (!(eta1 >= 0.0 && eta1 <= 1.0) || !(eta2 >= 0.0 && eta2 <= 1.0))
        throw parse_error("config: efficiencies must lie in [0, 1]");

    if (mode == "quantum") {
        montecarlo::QuantumSource src;
        src.bs = fock::BeamsplitterParams::from_reflectance(r_sq);
        src.det = detection::DetectorPair(eta1, eta2);
        const json& input_v = require_key(j, "input_a");
        if (!input_v.is_string()) throw parse_error("config: 'input_a' must be a string");
        const std::string input_a = input_v.get<std::string>();
        if (input_a == "single_photon") {
            src.single_photon_a = true;
            if (j.contains("alpha_sq"))
                throw parse_error("config: 'alpha_sq' does not apply to a single-photon input");
        } else if (input_a == "coherent") {
            src.single_photon_a = false;
            src.alpha_sq = require_number(j, "alpha_sq");
            if (!(src.alpha_sq >= 0.0)) throw parse_error("config: 'alpha_sq' must be nonnegative");
        } else {
            throw parse_error("config: input_a must be 'single_photon' or 'coherent'");
        }
        if (j.contains("cutoff")) {
            const json& c = j.at("cutoff");
            if (!c.is_number_integer() || c.get<long long>() < 0)
                throw parse_error("config: 'cutoff' must be a nonnegative integer");
            src.cutoff = static_cast<int>(c.get<long long>());
        }
        config.source = src;
    } else {
        montecarlo::ClassicalSource src;
        src.bs = fock::BeamsplitterParams::from_reflectance(r_sq);
        src.eta1 = eta1;
        src.eta2 = eta2;
        const double ia = require_number(j, "intensity_a");
        const double ib = require_number(j, "intensity_b");
        if (!(ia >= 0.0) || !(ib >= 0.0))
            throw parse_error("config: intensities must be nonnegative");
        src.inputs = classical::ClassicalInputs(ia, ib);
        config.source = src;
    }
    return config;
}

void write_count_record(const std::filesystem::path& path,
                        const montecarlo::PulseExperimentConfig& config,
                        const montecarlo::CountRecord& rec) {
    nlohmann::ordered_json out;
    out["mode"] = std::holds_alternative<montecarlo::QuantumSource>(config.source) ? "quantum"
                                                                                   : "classical";
    out["pulses"] = rec.pulses;
    out["seed"] = config.seed;
    out["workers"] = config.workers;
    out["clicks_c"] = rec.clicks_c;
    out["clicks_d"] = rec.clicks_d;
    out["coincidences_cd"] = rec.coincidences_cd;
    const montecarlo::RateEstimate rc = rec.rate_c();
    const montecarlo::RateEstimate rd = rec.rate_d();
    const montecarlo::RateEstimate rcd = rec.rate_cd();
    out["rate_c"] = rc.value;
    out["rate_c_se"] = rc.se;
    out["rate_d"] = rd.value;
    out["rate_d_se"] = rd.se;
    out["rate_cd"] = rcd.value;
    out["rate_cd_se"] = rcd.se;
    if (rec.clicks_c > 0 && rec.clicks_d > 0) {
        const montecarlo::RateEstimate vis = montecarlo::empirical_visibility(rec);
        out["visibility"] = vis.value;
        out["visibility_se"] = vis.se;
    }
    std::ofstream file(path);
    if (!file) throw file_error("cannot open " + path.string() + " for writing");
    file << out.dump(2) << "\n";
    if (!file.good()) throw file_error("failed while writing " + path.string());
}

void write_fit_result(const std::filesystem::path& path, const analysis::DipFitResult& result,
                      const std::string& input_label) {
    nlohmann::ordered_json out;
    out["input"] = input_label;
    out["converged"] = result.converged;
    out["degenerate"] = result.degenerate;
    out["iterations"] = result.iterations;
    out["baseline_cps"] = result.baseline_cps;
    out["baseline_sigma_cps"] = result.baseline_sigma;
    out["visibility"] = result.visibility;
    out["visibility_sigma"] = result.visibility_sigma;
    out["half_width_1e_um"] = m_to_um(result.half_width_1e_m);
    out["half_width_sigma_um"] = m_to_um(result.half_width_sigma);
    out["half_width_1e_fs"] = m_to_fs(result.half_width_1e_m);
    out["center_um"] = m_to_um(result.center_m);
    out["center_sigma_um"] = m_to_um(result.center_sigma);
    out["rss_weighted"] = result.rss;
    std::ofstream file(path);
    if (!file) throw file_error("cannot open " + path.string() + " for writing");
    file << out.dump(2) << "\n";
    if (!file.good()) throw file_error("failed while writing " + path.string());
}

}  // namespace homsim::io
