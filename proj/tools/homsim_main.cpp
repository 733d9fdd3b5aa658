#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "homsim/analysis.hpp"
#include "homsim/classical.hpp"
#include "homsim/constants.hpp"
#include "homsim/detection.hpp"
#include "homsim/errors.hpp"
#include "homsim/io.hpp"
#include "homsim/montecarlo.hpp"
#include "homsim/temporal.hpp"

namespace {

using namespace homsim;

std::string pretty(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

std::vector<double> log_spaced(double lo, double hi, int points) {
    if (!(lo > 0.0)) throw std::invalid_argument("alpha-sq-min must be positive");
    if (!(hi >= lo)) throw std::invalid_argument("alpha-sq-max must not be below alpha-sq-min");
    if (points < 1) throw std::invalid_argument("points must be at least 1");
    std::vector<double> grid;
    grid.reserve(points);
    if (points == 1 || hi == lo) {
        grid.push_back(lo);
        return grid;
    }
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    for (int i = 0; i < points; ++i)
        grid.push_back(std::exp(llo + (lhi - llo) * i / (points - 1)));
    return grid;
}

std::vector<double> lin_spaced(double lo, double hi, int points) {
    if (!(hi >= lo)) throw std::invalid_argument("delay-max-um must not be below delay-min-um");
    if (points < 1) throw std::invalid_argument("points must be at least 1");
    std::vector<double> grid;
    if (points == 1 || hi == lo) {
        grid.push_back(lo);
        return grid;
    }
    grid.reserve(points);
    for (int i = 0; i < points; ++i)
        grid.push_back(lo + (hi - lo) * i / (points - 1));
    return grid;
}

struct VisibilityCurveArgs {
    double alpha_sq_min = 0.01;
    double alpha_sq_max = 10.0;
    int points = 40;
    double eta1 = 1.0;
    double eta2 = 1.0;
    double r_sq = 0.5;
    int cutoff = 0;
    std::string out;
};

int run_visibility_curve(const VisibilityCurveArgs& a) {
    const std::vector<double> grid = log_spaced(a.alpha_sq_min, a.alpha_sq_max, a.points);
    const detection::DetectorPair det(a.eta1, a.eta2);
    const fock::BeamsplitterParams bs = fock::BeamsplitterParams::from_reflectance(a.r_sq);
    const std::vector<detection::VisibilityPoint> curve =
        detection::visibility_curve(grid, det, bs, a.cutoff);
    std::vector<std::vector<double>> rows;
    rows.reserve(curve.size());
    for (const detection::VisibilityPoint& pt : curve)
        rows.push_back({pt.alpha_sq, pt.visibility, classical::visibility_classical(pt.alpha_sq),
                        pt.truncation_bound});
    io::write_csv(io::resolve_output_path(a.out),
                  {"eta1=" + io::format_double(a.eta1) + " eta2=" + io::format_double(a.eta2) +
                   " r_sq=" + io::format_double(a.r_sq) + " cutoff=" + std::to_string(a.cutoff)},
                  {"alpha_sq", "V_quantum", "V_classical", "truncation_bound"}, rows);
    std::printf("wrote %zu points to %s\n", rows.size(), a.out.c_str());
    return 0;
}

struct DipProfileArgs {
    double filter_fwhm_nm = 3.0;
    double center_nm = 815.0;
    double sigma_2p = std::numeric_limits<double>::infinity();
    double n_dc = 1e-5;
    double n_p = 2.06e-3;
    double eta = 1.0;
    double rep_rate = 1e8;
    double delay_min_um = -400.0;
    double delay_max_um = 400.0;
    int points = 81;
    std::string out;
};

int run_dip_profile(const DipProfileArgs& a) {
    temporal::TemporalParams p;
    p.sigma = temporal::bandwidth_nm_to_sigma(a.filter_fwhm_nm, a.center_nm);
    p.sigma_2p = a.sigma_2p;
    p.n_dc = a.n_dc;
    p.n_p = a.n_p;
    p.eta_g = p.eta_c = p.eta_d = a.eta;
    p.rep_rate = a.rep_rate;
    const std::vector<double> grid_um = lin_spaced(a.delay_min_um, a.delay_max_um, a.points);
    std::vector<double> delays_m;
    delays_m.reserve(grid_um.size());
    for (double x : grid_um) delays_m.push_back(um_to_m(x));
    const temporal::DipProfile prof = temporal::dip_profile(delays_m, p);
    std::vector<std::vector<double>> rows;
    rows.reserve(grid_um.size());
    for (size_t i = 0; i < grid_um.size(); ++i)
        rows.push_back({grid_um[i], m_to_fs(delays_m[i]), prof.rates_cps[i]});
    io::write_csv(io::resolve_output_path(a.out),
                  {"sigma_rad_s=" + io::format_double(p.sigma),
                   "visibility=" + io::format_double(prof.visibility),
                   "half_width_1e_um=" + io::format_double(m_to_um(prof.half_width_1e_m)),
                   "half_width_1e_fs=" + io::format_double(m_to_fs(prof.half_width_1e_m)),
                   "baseline_cps=" + io::format_double(prof.baseline_cps)},
                  {"delay_um", "delay_fs", "rate_cps"}, rows);
    std::printf("visibility %s, 1/e half width %s um (%s fs), baseline %s cps\n",
                pretty(prof.visibility).c_str(), pretty(m_to_um(prof.half_width_1e_m)).c_str(),
                pretty(m_to_fs(prof.half_width_1e_m)).c_str(),
                pretty(prof.baseline_cps).c_str());
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& out) {
    const montecarlo::PulseExperimentConfig config = io::load_pulse_config(config_path);
    const montecarlo::CountRecord rec = montecarlo::simulate_counts(config);
    io::write_count_record(io::resolve_output_path(out), config, rec);
    const montecarlo::RateEstimate rc = rec.rate_c();
    const montecarlo::RateEstimate rd = rec.rate_d();
    const montecarlo::RateEstimate rcd = rec.rate_cd();
    std::printf("pulses %lld, clicks c %lld, clicks d %lld, coincidences %lld\n", rec.pulses,
                rec.clicks_c, rec.clicks_d, rec.coincidences_cd);
    std::printf("rate c %s +- %s, rate d %s +- %s, rate cd %s +- %s\n", pretty(rc.value).c_str(),
                pretty(rc.se).c_str(), pretty(rd.value).c_str(), pretty(rd.se).c_str(),
                pretty(rcd.value).c_str(), pretty(rcd.se).c_str());
    if (rec.clicks_c > 0 && rec.clicks_d > 0) {
        const montecarlo::RateEstimate vis = montecarlo::empirical_visibility(rec);
        std::printf("visibility %s +- %s\n", pretty(vis.value).c_str(), pretty(vis.se).c_str());
    } else {
        std::printf("visibility undefined (a detector never clicked)\n");
    }
    return 0;
}

struct RatesArgs {
    double rep_rate = 0.0;
    double laser_singles = 0.0;
    double dc_singles = 0.0;
    double gate_coincidence = 0.0;
};

int run_rates(const RatesArgs& a) {
    const montecarlo::RatePrediction pred =
        montecarlo::predict_rates({a.rep_rate, a.laser_singles, a.dc_singles, a.gate_coincidence});
    std::printf("laser photons per pulse before the beamsplitter: %s\n",
                pretty(pred.n_p_eta_d).c_str());
    std::printf("gated pairs per pulse: %s\n", pretty(pred.n_dc_eta_g_eta_c).c_str());
    std::printf("triple coincidence baseline: %s cps\n", pretty(pred.triple_baseline_cps).c_str());
    std::printf("ungated coincidence rate: %s cps\n", pretty(pred.ungated_cps).c_str());
    return 0;
}

int run_fit(const std::string& in, const std::string& out) {
    const analysis::DipDataset data = io::read_dip_csv(in);
    const analysis::DipFitResult fit = analysis::fit_dip(data);
    io::write_fit_result(io::resolve_output_path(out), fit, data.label);
    std::printf("baseline %s +- %s cps\n", pretty(fit.baseline_cps).c_str(),
                pretty(fit.baseline_sigma).c_str());
    std::printf("visibility %s +- %s\n", pretty(fit.visibility).c_str(),
                pretty(fit.visibility_sigma).c_str());
    std::printf("1/e half width %s +- %s um (%s fs)\n",
                pretty(m_to_um(fit.half_width_1e_m)).c_str(),
                pretty(m_to_um(fit.half_width_sigma)).c_str(),
                pretty(m_to_fs(fit.half_width_1e_m)).c_str());
    std::printf("center %s +- %s um\n", pretty(m_to_um(fit.center_m)).c_str(),
                pretty(m_to_um(fit.center_sigma)).c_str());
    if (!fit.converged) std::fprintf(stderr, "warning: fit did not converge\n");
    if (fit.degenerate) {
        std::fprintf(stderr, "error: fit is degenerate; parameters are not trustworthy\n");
        return 5;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-mode photon interference toolkit"};
    app.require_subcommand(1);

    VisibilityCurveArgs curve_args;
    CLI::App* curve = app.add_subcommand(
        "visibility-curve", "quantum and classical visibility over a log-spaced intensity grid");
    curve->add_option("--alpha-sq-min", curve_args.alpha_sq_min, "lowest mean photon number");
    curve->add_option("--alpha-sq-max", curve_args.alpha_sq_max, "highest mean photon number");
    curve->add_option("--points", curve_args.points, "grid size");
    curve->add_option("--eta1", curve_args.eta1, "detector c efficiency");
    curve->add_option("--eta2", curve_args.eta2, "detector d efficiency");
    curve->add_option("--r-sq", curve_args.r_sq, "beamsplitter reflectance");
    curve->add_option("--cutoff", curve_args.cutoff, "Fock cutoff, 0 = automatic");
    curve->add_option("--out", curve_args.out, "output CSV path")->required();

    DipProfileArgs dip_args;
    CLI::App* dip = app.add_subcommand("dip-profile",
                                       "triple coincidence rate as a function of path delay");
    dip->add_option("--filter-fwhm-nm", dip_args.filter_fwhm_nm, "detection filter FWHM");
    dip->add_option("--center-nm", dip_args.center_nm, "filter center wavelength");
    dip->add_option("--sigma2p-rad-s", dip_args.sigma_2p,
                    "doubled pump spectral width, infinite when omitted");
    dip->add_option("--n-dc", dip_args.n_dc, "detected downconverted pairs per pulse");
    dip->add_option("--n-p", dip_args.n_p, "detected laser photons per pulse");
    dip->add_option("--eta", dip_args.eta, "efficiency applied to gate, c and d");
    dip->add_option("--rep-rate-hz", dip_args.rep_rate, "pulse repetition rate");
    dip->add_option("--delay-min-um", dip_args.delay_min_um, "first delay");
    dip->add_option("--delay-max-um", dip_args.delay_max_um, "last delay");
    dip->add_option("--points", dip_args.points, "grid size");
    dip->add_option("--out", dip_args.out, "output CSV path")->required();

    std::string sim_config, sim_out;
    CLI::App* sim = app.add_subcommand("simulate", "per-pulse stochastic counting run");
    sim->add_option("--config", sim_config, "JSON configuration file")->required();
    sim->add_option("--out", sim_out, "output JSON path")->required();

    RatesArgs rates_args;
    CLI::App* rates = app.add_subcommand("rates", "predicted rates from measured count rates");
    rates->add_option("--rep-rate-hz", rates_args.rep_rate, "pulse repetition rate")->required();
    rates->add_option("--laser-singles-cps", rates_args.laser_singles,
                      "laser singles rate per detector")->required();
    rates->add_option("--dc-singles-cps", rates_args.dc_singles,
                      "downconversion singles rate per detector")->required();
    rates->add_option("--gate-coinc-cps", rates_args.gate_coincidence,
                      "gate-arm pair coincidence rate")->required();

    std::string fit_in, fit_out;
    CLI::App* fit = app.add_subcommand("fit", "least-squares Gaussian dip fit of a dataset");
    fit->add_option("--in", fit_in, "input CSV with delay_um,counts,duration_s")->required();
    fit->add_option("--out-json", fit_out, "output JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (curve->parsed()) return run_visibility_curve(curve_args);
        if (dip->parsed()) return run_dip_profile(dip_args);
        if (sim->parsed()) return run_simulate(sim_config, sim_out);
        if (rates->parsed()) return run_rates(rates_args);
        if (fit->parsed()) return run_fit(fit_in, fit_out);
    } catch (const homsim::tail_mass_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const homsim::degenerate_data_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 5;
    } catch (const homsim::file_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const homsim::parse_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
