#pragma once

#include <cstdint>

#include "homsim/fock.hpp"

namespace homsim::classical {

// Stable classical fields with a uniformly random relative phase. Only the
// first two intensity moments enter the phase-averaged coincidence, so that
// is all we carry; omitted second moments mean constant intensities.
struct ClassicalInputs {
    double mean_a;
    double mean_b;
    double second_a;  // <Ia^2>
    double second_b;  // <Ib^2>

    ClassicalInputs(double mean_a, double mean_b);
    ClassicalInputs(double mean_a, double mean_b, double second_a, double second_b);
};

/// Instantaneous output intensities for relative phase phi. Ic carries the
/// destructive cross term, Id the constructive one; Ic + Id = Ia + Ib always.
struct OutputIntensities {
    double ic;
    double id;
};
OutputIntensities output_intensities(double intensity_a, double intensity_b, double phi,
                                     const fock::BeamsplitterParams& bs);

/// Phase-averaged coincidence moment
/// <IcId> = |r|^2|t|^2 (<Ia^2> + <Ib^2>) + (|r|^4 + |t|^4 - 2|r|^2|t|^2) <Ia><Ib>.
double coincidence_phase_averaged(const ClassicalInputs& in, const fock::BeamsplitterParams& bs);

/// Interference-free reference <Ic><Id>; the random phase wipes out the cross
/// terms in each mean separately.
double mean_output_product(const ClassicalInputs& in, const fock::BeamsplitterParams& bs);

/// V = 1 - <IcId> / (<Ic><Id>). Throws degenerate_data_error when the
/// reference product vanishes (at most one source on).
double visibility_phase_averaged(const ClassicalInputs& in, const fock::BeamsplitterParams& bs);

/// Closed form for constant intensities at 50/50: V = 2 R / (R + 1)^2 with
/// R = <Ia>/<Ib>. Capped at 1/2, reached only at R = 1.
double visibility_classical(double r_ab);

struct PhaseMcResult {
    double mean;  // estimated <IcId>
    double se;    // standard error of the mean
    long long samples;
};

/// Samples phi uniform on [0, 2pi) and averages Ic*Id at the constant mean
/// intensities; oracle for coincidence_phase_averaged. Deterministic for a
/// fixed seed and worker count. phase_monte_carlo splits samples across
/// OpenMP workers; the serial variant is the reference loop and produces the
/// identical result.
PhaseMcResult phase_monte_carlo(const ClassicalInputs& in, const fock::BeamsplitterParams& bs,
                                long long samples, std::uint64_t seed, int workers = 4);
PhaseMcResult phase_monte_carlo_serial(const ClassicalInputs& in,
                                       const fock::BeamsplitterParams& bs, long long samples,
                                       std::uint64_t seed, int workers = 4);

}  // namespace homsim::classical
