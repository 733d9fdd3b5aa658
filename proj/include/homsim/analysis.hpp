#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace homsim::analysis {

struct DipPoint {
    double delay_m;
    long long counts;
    double duration_s;
};

struct DipDataset {
    std::vector<DipPoint> points;
    std::string label;
};

// rate(x) = baseline * (1 - visibility * exp(-((x - center)/half_width)^2)).
// The width parameter is the 1/e half-width directly.
struct DipModelParams {
    double baseline_cps;
    double visibility;
    double half_width_1e_m;
    double center_m;
};

double dip_model_rate(const DipModelParams& p, double delay_m);

struct DipFitResult {
    double baseline_cps = 0, baseline_sigma = 0;
    double visibility = 0, visibility_sigma = 0;
    double half_width_1e_m = 0, half_width_sigma = 0;
    double center_m = 0, center_sigma = 0;
    double rss = 0;  // weighted residual sum of squares at the optimum
    int iterations = 0;
    bool converged = false;
    // Set when the fitted visibility leaves [-0.1, 1.1] or is swamped by its
    // own uncertainty; such fits should not be quoted.
    bool degenerate = false;
};

/// Weighted least squares on observed rates counts/duration with Poisson
/// weights duration^2 / max(counts, 1), minimized by damped Gauss-Newton
/// steps (damping x10 on a rejected step, /10 on an accepted one; stop at
/// relative parameter change < 1e-10 or 200 iterations). Uncertainties come
/// from the inverse normal matrix scaled by reduced chi-square.
///
/// Without an initial guess one is built from the data: baseline from the
/// outer delays, center from the smoothed minimum, width from the half-depth
/// crossings. Throws degenerate_data_error for fewer than 6 points or
/// all-equal counts.
DipFitResult fit_dip(const DipDataset& data,
                     const std::optional<DipModelParams>& initial_guess = std::nullopt);

/// Poisson counts with mean rate * duration at each delay; deterministic per
/// seed. Validation harness for fit_dip.
DipDataset synthesize_dataset(const DipModelParams& truth, const std::vector<double>& delays_m,
                              double duration_per_point_s, std::uint64_t seed);

}  // namespace homsim::analysis
