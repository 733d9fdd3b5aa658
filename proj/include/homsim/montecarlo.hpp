#pragma once

#include <cstdint>
#include <variant>

#include "homsim/classical.hpp"
#include "homsim/detection.hpp"
#include "homsim/fock.hpp"

namespace homsim::montecarlo {

// Source a is either the coherent beam or a second single photon; source b is
// always the gated single photon.
struct QuantumSource {
    bool single_photon_a = false;
    double alpha_sq = 0.0;  // ignored when single_photon_a
    fock::BeamsplitterParams bs = fock::BeamsplitterParams::balanced();
    detection::DetectorPair det{1.0, 1.0};
    int cutoff = 0;  // <= 0 picks one automatically
};

struct ClassicalSource {
    classical::ClassicalInputs inputs{1.0, 1.0};
    fock::BeamsplitterParams bs = fock::BeamsplitterParams::balanced();
    double eta1 = 1.0;
    double eta2 = 1.0;
};

struct PulseExperimentConfig {
    std::variant<QuantumSource, ClassicalSource> source;
    long long pulses = 0;
    std::uint64_t seed = 0;
    int workers = 4;  // part of the reproducibility contract, so stored, not inferred
};

struct RateEstimate {
    double value;
    double se;
};

struct CountRecord {
    long long pulses = 0;
    long long clicks_c = 0;
    long long clicks_d = 0;
    long long coincidences_cd = 0;

    RateEstimate rate_c() const;   // clicks per pulse with binomial SE
    RateEstimate rate_d() const;
    RateEstimate rate_cd() const;
};

/// Per-pulse sampling. Quantum: draw (n, m) from the beamsplitter output
/// joint distribution by inverse CDF, then one Bernoulli threshold per
/// detector with click probability 1 - (1-eta)^photons. Classical: draw phi,
/// form the output intensities, click with probability 1 - exp(-eta I), the
/// chance a Poisson photon count of mean eta I is nonzero. Exactly three
/// uniforms per pulse either way.
///
/// Pulses are split across OpenMP workers with separately seeded engines and
/// the counts summed, so the record is bit-for-bit reproducible for a fixed
/// (seed, workers) regardless of scheduling. simulate_counts_serial runs the
/// same per-worker loops sequentially and must produce the identical record.
/// Throws tail_mass_error when the quantum grid leaves more than 1e-6 of
/// probability unassigned (sampling would be visibly biased).
CountRecord simulate_counts(const PulseExperimentConfig& config);
CountRecord simulate_counts_serial(const PulseExperimentConfig& config);

/// V = 1 - p11 / (pc1 pd1) from empirical click fractions, with a delta-method
/// SE that keeps the indicator covariances (a coincidence implies both
/// singles). Throws degenerate_data_error when either singles count is zero.
RateEstimate empirical_visibility(const CountRecord& rec);

// Measured-rate inputs for the desk arithmetic. Singles figures are
// per-detector rates after the beamsplitter; doubling them gives the rates
// arriving before it.
struct RateConfig {
    double rep_rate;           // pulses per second
    double laser_singles;      // cps at one detector from the coherent beam
    double dc_singles;         // cps at one detector from downconversion
    double gate_coincidence;   // cps of gate-arm pair coincidences
};

struct RatePrediction {
    double n_p_eta_d;         // mean detected laser photons per pulse, before the beamsplitter
    double n_dc_eta_g_eta_c;  // mean detected gated pairs per pulse
    double triple_baseline_cps;
    double ungated_cps;       // accidental pair coincidence rate with no gating
};

RatePrediction predict_rates(const RateConfig& r);

/// N-fold coincidence rate scaling: R n_dc^N eta^(2N) when every photon is
/// gated, R n_dc^N eta^(N+1) when one beam needs no gate detector.
double nfold_rate_scaling(int n, double n_dc, double eta, double rep_rate, bool gate_all);

}  // namespace homsim::montecarlo
