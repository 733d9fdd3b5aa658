#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "homsim/analysis.hpp"
#include "homsim/montecarlo.hpp"

namespace homsim::io {

/// Shortest decimal string that round-trips the double (std::to_chars).
std::string format_double(double x);

/// Relative paths resolve under $HOMSIM_OUTPUT_DIR when it is set; absolute
/// paths and unset environment pass through.
std::filesystem::path resolve_output_path(const std::string& path);

/// CSV with optional '#' comment lines, then one header line, then the rows,
/// every number in round-trip formatting. Throws file_error when the path
/// cannot be opened.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

/// Dataset CSV has columns delay_um, counts, duration_s; '#' lines and blank
/// lines are skipped; the header line is required. Throws file_error if the
/// file cannot be read and parse_error on malformed content.
analysis::DipDataset read_dip_csv(const std::filesystem::path& path);

void write_dip_csv(const std::filesystem::path& path, const analysis::DipDataset& data);

/// Flat JSON with explicit modes: "mode" is "quantum" or "classical"; quantum
/// takes input_a ("coherent" or "single_photon"), alpha_sq, r_sq, eta1, eta2,
/// cutoff; classical takes intensity_a, intensity_b, r_sq, eta1, eta2. Both
/// need pulses and seed; workers is optional. Throws parse_error on schema
/// violations.
montecarlo::PulseExperimentConfig load_pulse_config(const std::filesystem::path& path);

/// Counts plus derived rates and, when both singles are present, the
/// empirical visibility. Key order and number formatting are fixed, so equal
/// records serialize to identical bytes.
void write_count_record(const std::filesystem::path& path,
                        const montecarlo::PulseExperimentConfig& config,
                        const montecarlo::CountRecord& rec);

void write_fit_result(const std::filesystem::path& path, const analysis::DipFitResult& result,
                      const std::string& input_label);

}  // namespace homsim::io
