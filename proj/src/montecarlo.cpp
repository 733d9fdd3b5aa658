#include "homsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "homsim/constants.hpp"
#include "homsim/errors.hpp"
#include "homsim/rng.hpp"

namespace homsim::montecarlo {

namespace {

RateEstimate binomial_rate(long long hits, long long trials) {
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    return {p, std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(trials)))};
}

}  // namespace

RateEstimate CountRecord::rate_c() const { return binomial_rate(clicks_c, pulses); }
RateEstimate CountRecord::rate_d() const { return binomial_rate(clicks_d, pulses); }
RateEstimate CountRecord::rate_cd() const { return binomial_rate(coincidences_cd, pulses); }

namespace {

struct QuantumTables {
    std::vector<double> cumulative;  // flattened over (n, m), row-major
    int dim = 0;
    std::vector<double> click_c;  // click probability given n photons at c
    std::vector<double> click_d;
};

QuantumTables build_quantum_tables(const QuantumSource& q) {
    int cut = q.cutoff;
    if (cut <= 0) cut = q.single_photon_a ? 4 : fock::recommended_cutoff(q.alpha_sq);
    fock::TwoModeState input(cut);
    if (q.single_photon_a) {
        input.at(1, 1) = 1.0;
    } else {
        if (!(q.alpha_sq >= 0.0))
            throw std::invalid_argument("simulate_counts: alpha_sq must be nonnegative");
        input = fock::mixed_input_state(std::sqrt(q.alpha_sq), cut);
    }
    const fock::JointDistribution joint =
        fock::joint_distribution(fock::beamsplitter_transform(input, q.bs));
    if (joint.tail > 1e-6)
        throw tail_mass_error("simulate_counts: cutoff " + std::to_string(cut) +
                              " leaves tail mass " + std::to_string(joint.tail) +
                              "; sampling would be biased");
    QuantumTables tab;
    tab.dim = cut + 1;
    tab.cumulative.resize(joint.probabilities.size());
    double acc = 0.0;
    for (size_t i = 0; i < joint.probabilities.size(); ++i) {
        acc += joint.probabilities[i];
        tab.cumulative[i] = acc;
    }
    tab.click_c.resize(tab.dim);
    tab.click_d.resize(tab.dim);
    for (int n = 0; n < tab.dim; ++n) {
        tab.click_c[n] = 1.0 - std::pow(1.0 - q.det.eta1, n);
        tab.click_d[n] = 1.0 - std::pow(1.0 - q.det.eta2, n);
    }
    return tab;
}

CountRecord quantum_worker(const QuantumTables& tab, long long pulses, std::uint64_t engine_seed) {
    std::mt19937_64 eng = rng::make_engine(engine_seed);
    CountRecord rec;
    rec.pulses = pulses;
    for (long long i = 0; i < pulses; ++i) {
        const double u1 = rng::canonical(eng);
        const double u2 = rng::canonical(eng);
        const double u3 = rng::canonical(eng);
        size_t idx = std::upper_bound(tab.cumulative.begin(), tab.cumulative.end(), u1) -
                     tab.cumulative.begin();
        if (idx >= tab.cumulative.size()) idx = tab.cumulative.size() - 1;
        const int n = static_cast<int>(idx) / tab.dim;
        const int m = static_cast<int>(idx) % tab.dim;
        const bool cc = u2 < tab.click_c[n];
        const bool dd = u3 < tab.click_d[m];
        rec.clicks_c += cc;
        rec.clicks_d += dd;
        rec.coincidences_cd += cc && dd;
    }
    return rec;
}

CountRecord classical_worker(const ClassicalSource& src, long long pulses,
                             std::uint64_t engine_seed) {
    std::mt19937_64 eng = rng::make_engine(engine_seed);
    CountRecord rec;
    rec.pulses = pulses;
    for (long long i = 0; i < pulses; ++i) {
        const double u1 = rng::canonical(eng);
        const double u2 = rng::canonical(eng);
        const double u3 = rng::canonical(eng);
        const classical::OutputIntensities oi = classical::output_intensities(
            src.inputs.mean_a, src.inputs.mean_b, 2.0 * pi * u1, src.bs);
        // a Poisson photon count with mean eta*I is nonzero with probability 1 - e^(-eta*I)
        const bool cc = u2 < -std::expm1(-src.eta1 * oi.ic);
        const bool dd = u3 < -std::expm1(-src.eta2 * oi.id);
        rec.clicks_c += cc;
        rec.clicks_d += dd;
        rec.coincidences_cd += cc && dd;
    }
    return rec;
}

void check_config(const PulseExperimentConfig& config) {
    if (config.pulses < 1) throw std::invalid_argument("simulate_counts: pulses must be positive");
    if (config.workers < 1) throw std::invalid_argument("simulate_counts: workers must be positive");
    if (const auto* cl = std::get_if<ClassicalSource>(&config.source)) {
        if (!(cl->eta1 >= 0.0 && cl->eta1 <= 1.0) || !(cl->eta2 >= 0.0 && cl->eta2 <= 1.0))
            throw std::invalid_argument("simulate_counts: efficiencies must lie in [0, 1]");
    }
}

std::vector<long long> split_pulses(long long pulses, int workers) {
    std::vector<long long> out(workers, pulses / workers);
    for (int w = 0; w < static_cast<int>(pulses % workers); ++w) ++out[w];
    return out;
}

CountRecord merge(const std::vector<CountRecord>& parts) {
    CountRecord total;
    for (const CountRecord& p : parts) {
        total.pulses += p.pulses;
        total.clicks_c += p.clicks_c;
        total.clicks_d += p.clicks_d;
        total.coincidences_cd += p.coincidences_cd;
    }
    return total;
}

template <typename WorkerFn>
CountRecord run_workers(const PulseExperimentConfig& config, WorkerFn&& fn, bool parallel) {
    const std::vector<long long> share = split_pulses(config.pulses, config.workers);
    std::vector<CountRecord> parts(config.workers);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int w = 0; w < config.workers; ++w)
            parts[w] = fn(share[w], rng::worker_seed(config.seed, w));
    } else {
        for (int w = 0; w < config.workers; ++w)
            parts[w] = fn(share[w], rng::worker_seed(config.seed, w));
    }
    return merge(parts);
}

CountRecord simulate_impl(const PulseExperimentConfig& config, bool parallel) {
    check_config(config);
    if (const auto* q = std::get_if<QuantumSource>(&config.source)) {
        const QuantumTables tab = build_quantum_tables(*q);
        return run_workers(
            config, [&tab](long long n, std::uint64_t s) { return quantum_worker(tab, n, s); },
            parallel);
    }
    const ClassicalSource& cl = std::get<ClassicalSource>(config.source);
    return run_workers(
        config, [&cl](long long n, std::uint64_t s) { return classical_worker(cl, n, s); },
        parallel);
}

}  // namespace

CountRecord simulate_counts(const PulseExperimentConfig& config) {
    return simulate_impl(config, true);
}

CountRecord simulate_counts_serial(const PulseExperimentConfig& config) {
    return simulate_impl(config, false);
}

RateEstimate empirical_visibility(const CountRecord& rec) {
    if (rec.pulses < 1) throw degenerate_data_error("empirical_visibility: no pulses");
    if (rec.clicks_c == 0 || rec.clicks_d == 0)
        throw degenerate_data_error("empirical_visibility: a detector never clicked");
    const double n = static_cast<double>(rec.pulses);
    const double mx = static_cast<double>(rec.coincidences_cd) / n;
    const double my = static_cast<double>(rec.clicks_c) / n;
    const double mz = static_cast<double>(rec.clicks_d) / n;
    const double value = 1.0 - mx / (my * mz);
    // delta method for f = 1 - x/(y z) over the per-pulse indicator triple;
    // a coincidence forces both singles, so the covariances do not vanish
    const double gx = 1.0 / (my * mz);
    const double gy = -mx / (my * my * mz);
    const double gz = -mx / (my * mz * mz);
    const double vx = mx * (1.0 - mx);
    const double vy = my * (1.0 - my);
    const double vz = mz * (1.0 - mz);
    const double cxy = mx * (1.0 - my);
    const double cxz = mx * (1.0 - mz);
    const double cyz = mx - my * mz;
    const double var = gx * gx * vx + gy * gy * vy + gz * gz * vz + 2.0 * gx * gy * cxy +
                       2.0 * gx * gz * cxz + 2.0 * gy * gz * cyz;
    return {value, std::sqrt(std::max(0.0, var / n))};
}

RatePrediction predict_rates(const RateConfig& r) {
    if (!(r.rep_rate > 0.0)) throw std::invalid_argument("predict_rates: rep_rate must be positive");
    for (double rate : {r.laser_singles, r.dc_singles, r.gate_coincidence})
        if (!(rate >= 0.0) || rate > r.rep_rate)
            throw std::invalid_argument("predict_rates: rates must lie in [0, rep_rate]");
    RatePrediction out;
    // singles are measured after the beamsplitter, so the per-pulse means
    // before it are twice the measured fractions
    out.n_p_eta_d = 2.0 * r.laser_singles / r.rep_rate;
    out.n_dc_eta_g_eta_c = 2.0 * r.gate_coincidence / r.rep_rate;
    out.triple_baseline_cps = 0.5 * out.n_dc_eta_g_eta_c * out.n_p_eta_d * r.rep_rate;
    const double per_pulse = (r.laser_singles + r.dc_singles) / r.rep_rate;
    out.ungated_cps = r.rep_rate * per_pulse * per_pulse;
    return out;
}

double nfold_rate_scaling(int n, double n_dc, double eta, double rep_rate, bool gate_all) {
    if (n < 1) throw std::invalid_argument("nfold_rate_scaling: N must be at least 1");
    if (!(n_dc > 0.0 && n_dc < 1.0))
        throw std::invalid_argument("nfold_rate_scaling: n_dc must lie in (0, 1)");
    if (!(eta > 0.0 && eta <= 1.0))
        throw std::invalid_argument("nfold_rate_scaling: eta must lie in (0, 1]");
    if (!(rep_rate > 0.0)) throw std::invalid_argument("nfold_rate_scaling: rep_rate must be positive");
    const double eta_power = gate_all ? 2.0 * n : n + 1.0;
    return rep_rate * std::pow(n_dc, n) * std::pow(eta, eta_power);
}

}  // namespace homsim::montecarlo
