#pragma once

#include <complex>
#include <vector>

namespace homsim::fock {

using cplx = std::complex<double>;

// log(n!) from a cumulative table; factorials themselves overflow past n = 170.
double log_factorial(int n);

struct TailPolicy {
    bool strict = false;      // reject instead of warn when the tail exceeds tolerance
    double tolerance = 1e-10;
};

// Smallest cutoff keeping the coherent-state tail mass below ~1e-10.
int recommended_cutoff(double alpha_sq);

/// Single-mode state: complex amplitudes over photon numbers 0..cutoff.
struct FockVector {
    std::vector<cplx> amplitudes;
    int cutoff = 0;
    double tail = 0.0;  // squared-modulus mass lost to truncation

    double norm_sq() const;
};

/// Two-mode state: amplitudes over joint photon numbers (n, m), each 0..cutoff.
/// Modes are (a, b) before the beamsplitter and (c, d) after; the algebra is
/// label-agnostic.
struct TwoModeState {
    std::vector<cplx> amplitudes;  // row-major, (cutoff+1)^2
    int cutoff = 0;

    explicit TwoModeState(int cutoff);

    cplx& at(int n, int m) { return amplitudes[static_cast<size_t>(n) * (cutoff + 1) + m]; }
    const cplx& at(int n, int m) const {
        return amplitudes[static_cast<size_t>(n) * (cutoff + 1) + m];
    }
    double norm_sq() const;
};

// Lossless beamsplitter magnitudes, |t|^2 + |r|^2 = 1. Phase convention is
// fixed: transmission phase 0, reflection phase +pi/2, i.e. t = t_mag and
// r = i*r_mag, which satisfies r*conj(t) + conj(r)*t = 0 exactly.
struct BeamsplitterParams {
    double t_mag;
    double r_mag;

    BeamsplitterParams(double t_mag, double r_mag);
    static BeamsplitterParams from_reflectance(double r_sq);
    static BeamsplitterParams balanced();  // 50/50

    cplx t() const { return {t_mag, 0.0}; }
    cplx r() const { return {0.0, r_mag}; }
};

struct JointDistribution {
    std::vector<double> probabilities;  // row-major over (n, m)
    int cutoff = 0;
    double tail = 0.0;  // 1 - sum of grid entries, clamped at 0

    double& at(int n, int m) { return probabilities[static_cast<size_t>(n) * (cutoff + 1) + m]; }
    const double& at(int n, int m) const {
        return probabilities[static_cast<size_t>(n) * (cutoff + 1) + m];
    }
    double sum() const;
};

/// Coherent state |alpha> truncated at `cutoff`: amplitude at n is
/// exp(-|alpha|^2/2) alpha^n / sqrt(n!). The lost tail mass is reported on the
/// result; a strict policy rejects cutoffs that lose more than the tolerance.
FockVector coherent_amplitudes(cplx alpha, int cutoff, const TailPolicy& policy = {});

/// Product state |alpha>_a |1>_b. The coherent factor is truncated at
/// cutoff - 1 so every populated (n, m) keeps n + m <= cutoff and the state
/// stays inside the transform's domain.
TwoModeState mixed_input_state(cplx alpha, int cutoff, const TailPolicy& policy = {});

/// Applies the beamsplitter to every populated (n, m) component by expanding
/// (t c^ + r d^)^n (r c^ + t d^)^m on the output vacuum. Norm-preserving for
/// in-range components; throws std::invalid_argument if a populated component
/// has n + m > cutoff.
TwoModeState beamsplitter_transform(const TwoModeState& input, const BeamsplitterParams& bs);

// Same transform for an arbitrary complex (t, r); exposed so alternative
// phase conventions can be compared. Unitarity needs |t|^2 + |r|^2 = 1 and
// r*conj(t) + conj(r)*t = 0.
TwoModeState beamsplitter_transform_tr(const TwoModeState& input, cplx t, cplx r);

/// Entrywise squared moduli; tail = 1 - sum, clamped at 0.
JointDistribution joint_distribution(const TwoModeState& state);

/// Transforms |alpha>_a |1>_b and compares against the closed-form output
/// coefficients through second order in alpha. Returns the largest absolute
/// coefficient difference, which is O(|alpha|^3).
double verify_eq3_expansion(cplx alpha, const BeamsplitterParams& bs, int cutoff = 16);

}  // namespace homsim::fock
