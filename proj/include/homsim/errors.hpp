#pragma once

#include <stdexcept>
#include <string>

namespace homsim {

// Truncation left too much probability mass outside the grid for the
// requested operation to be trustworthy.
struct tail_mass_error : std::runtime_error {
    explicit tail_mass_error(const std::string& what) : std::runtime_error(what) {}
};

// Input data cannot constrain the requested estimate (flat counts, too few
// points, vacuum-only sources).
struct degenerate_data_error : std::runtime_error {
    explicit degenerate_data_error(const std::string& what) : std::runtime_error(what) {}
};

// A path could not be opened or written.
struct file_error : std::runtime_error {
    explicit file_error(const std::string& what) : std::runtime_error(what) {}
};

// A file opened fine but its contents do not match the expected format.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace homsim
