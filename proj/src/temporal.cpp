#include "homsim/temporal.hpp"

#include <cmath>
#include <stdexcept>

#include "homsim/constants.hpp"

namespace homsim::temporal {

namespace {

void check_widths(double sigma, double sigma_2p) {
    if (!(sigma > 0.0) || std::isinf(sigma))
        throw std::invalid_argument("temporal: sigma must be positive and finite");
    if (!(sigma_2p > 0.0)) throw std::invalid_argument("temporal: sigma_2p must be positive");
}

void check_params(const TemporalParams& p) {
    check_widths(p.sigma, p.sigma_2p);
    if (!(p.n_dc >= 0.0) || !(p.n_p >= 0.0))
        throw std::invalid_argument("temporal: mean photon numbers must be nonnegative");
    for (double eta : {p.eta_g, p.eta_c, p.eta_d})
        if (!(eta >= 0.0 && eta <= 1.0))
            throw std::invalid_argument("temporal: efficiencies must lie in [0, 1]");
    if (!(p.rep_rate > 0.0)) throw std::invalid_argument("temporal: rep_rate must be positive");
}

// sigma^2 / (2 sigma_2p^2); zero when the pump width is infinite
double pump_ratio(double sigma, double sigma_2p) {
    const double q = sigma / sigma_2p;
    return 0.5 * q * q;
}

}  // namespace

double temporal_visibility(double sigma, double sigma_2p) {
    check_widths(sigma, sigma_2p);
    return 1.0 / std::sqrt(1.0 + pump_ratio(sigma, sigma_2p));
}

double dip_half_width_1e(double sigma, double sigma_2p) {
    check_widths(sigma, sigma_2p);
    return (2.0 * speed_of_light / sigma) * std::sqrt(1.0 + pump_ratio(sigma, sigma_2p));
}

double bandwidth_nm_to_sigma(double fwhm_nm, double center_nm) {
    if (!(center_nm > 0.0))
        throw std::invalid_argument("bandwidth_nm_to_sigma: center wavelength must be positive");
    if (!(fwhm_nm > 0.0 && fwhm_nm < 0.5 * center_nm))
        throw std::invalid_argument(
            "bandwidth_nm_to_sigma: bandwidth must be positive and small against the center");
    const double lambda = center_nm * 1e-9;
    const double fwhm_hz = speed_of_light * (fwhm_nm * 1e-9) / (lambda * lambda);
    return 2.0 * pi * fwhm_hz / std::sqrt(2.0 * std::log(2.0));
}

double sigma_to_bandwidth_nm(double sigma, double center_nm) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma_to_bandwidth_nm: sigma must be positive");
    if (!(center_nm > 0.0))
        throw std::invalid_argument("sigma_to_bandwidth_nm: center wavelength must be positive");
    const double lambda = center_nm * 1e-9;
    const double fwhm_hz = sigma * std::sqrt(2.0 * std::log(2.0)) / (2.0 * pi);
    return fwhm_hz * lambda * lambda / speed_of_light * 1e9;
}

double triple_coincidence_probability(double delta_x_m, const TemporalParams& p) {
    check_params(p);
    const double base = 0.5 * p.n_dc * p.n_p * p.eta_g * p.eta_c * p.eta_d;
    const double vis = temporal_visibility(p.sigma, p.sigma_2p);
    const double denom = 1.0 + pump_ratio(p.sigma, p.sigma_2p);
    const double cs = speed_of_light;
    const double arg =
        delta_x_m * delta_x_m * p.sigma * p.sigma / (4.0 * cs * cs * denom);
    return base * (1.0 - vis * std::exp(-arg));
}

DipProfile dip_profile(const std::vector<double>& delays_m, const TemporalParams& p) {
    check_params(p);
    DipProfile prof;
    prof.delays_m = delays_m;
    prof.rates_cps.resize(delays_m.size());
    for (size_t i = 0; i < delays_m.size(); ++i)
        prof.rates_cps[i] = triple_coincidence_probability(delays_m[i], p) * p.rep_rate;
    prof.baseline_cps = 0.5 * p.n_dc * p.n_p * p.eta_g * p.eta_c * p.eta_d * p.rep_rate;
    prof.visibility = temporal_visibility(p.sigma, p.sigma_2p);
    prof.half_width_1e_m = dip_half_width_1e(p.sigma, p.sigma_2p);
    return prof;
}

}  // namespace homsim::temporal
