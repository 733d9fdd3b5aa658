#pragma once

#include <limits>
#include <vector>

namespace homsim::temporal {

// Spectral widths are 1/e^2 intensity half-widths in angular frequency.
// sigma_2p describes the doubled pump; infinity means the pump correction is
// negligible, which reproduces the 83 um / 277 fs prediction for 3 nm filters
// at 815 nm.
struct TemporalParams {
    double sigma;  // rad/s, detection filter width, same for both arms
    double sigma_2p = std::numeric_limits<double>::infinity();  // rad/s
    double n_dc;   // mean downconverted pairs per pulse
    double n_p;    // mean coherent photons per pulse
    double eta_g;  // gate arm efficiency
    double eta_c;
    double eta_d;
    double rep_rate;  // pulses per second
};

/// V = (1 + sigma^2 / (2 sigma_2p^2))^(-1/2); unity when sigma << sigma_2p.
double temporal_visibility(double sigma, double sigma_2p);

/// Delay at which the Gaussian suppression factor falls to 1/e:
/// (2c/sigma) sqrt(1 + sigma^2 / (2 sigma_2p^2)), in meters.
double dip_half_width_1e(double sigma, double sigma_2p);

/// Filter FWHM in nm to sigma in rad/s: the frequency FWHM is c dl / l^2 and
/// a Gaussian's 1/e^2 intensity half-width is 2 pi FWHM / sqrt(2 ln 2).
/// Rejects fwhm_nm outside (0, center_nm / 2).
double bandwidth_nm_to_sigma(double fwhm_nm, double center_nm);

/// Inverse of bandwidth_nm_to_sigma at the same center wavelength.
double sigma_to_bandwidth_nm(double sigma, double center_nm);

/// Per-pulse triple coincidence probability at path delay delta_x (meters):
/// (1/2) n_dc n_p eta_g eta_c eta_d [1 - V exp(-dX^2 sigma^2 / (4 c^2 (1 + sigma^2/(2 sigma_2p^2))))].
/// The exponent is negative so the factor decays away from overlap.
double triple_coincidence_probability(double delta_x_m, const TemporalParams& p);

struct DipProfile {
    std::vector<double> delays_m;
    std::vector<double> rates_cps;  // per-pulse probability times rep_rate
    double baseline_cps;
    double visibility;
    double half_width_1e_m;
};

/// Pointwise triple_coincidence_probability scaled to counts per second,
/// plus the closed-form baseline, visibility and width.
DipProfile dip_profile(const std::vector<double>& delays_m, const TemporalParams& p);

}  // namespace homsim::temporal
