#pragma once

#include <vector>

#include "homsim/fock.hpp"

namespace homsim::detection {

// Threshold detectors: a click means one or more photons survived the
// efficiency loss. Efficiency eta acts as independent Bernoulli loss per
// photon, so n photons give a click with probability 1 - (1-eta)^n.
struct DetectorPair {
    double eta1;
    double eta2;

    DetectorPair(double eta1, double eta2);
};

struct ClickWeights {
    double p00, p01, p10, p11;
};

// The four click outcomes for exactly n photons at detector 1 (mode c) and m
// at detector 2 (mode d).
ClickWeights click_weights(int n, int m, const DetectorPair& det);

struct ClickTable {
    double p00, p01, p10, p11;
    double pc1;   // p10 + p11, marginal click probability at c
    double pd1;   // p01 + p11, marginal click probability at d
    double tail;  // joint-distribution mass outside the grid; bounds the error on every entry
};

ClickTable click_table(const fock::JointDistribution& dist, const DetectorPair& det);

// Interference visibility for the |alpha>_a |1>_b input:
// V = 1 - p11 / (pc1 * pd1), all three taken from the interfering output
// distribution. cutoff <= 0 picks one automatically from alpha_sq. Throws
// degenerate_data_error when alpha_sq <= 0 or when the marginal product
// vanishes (no clicks to normalize by).
double visibility_quantum(double alpha_sq, const DetectorPair& det,
                          const fock::BeamsplitterParams& bs, int cutoff = 0,
                          const fock::TailPolicy& policy = {});

struct VisibilityPoint {
    double alpha_sq;
    double visibility;        // NaN when the point is degenerate
    double truncation_bound;  // tail mass of the click table at this point
};

// Pointwise visibility_quantum over a grid, emitted in grid order.
// Degenerate points come back with visibility = NaN instead of throwing.
// The grid is evaluated with OpenMP; visibility_curve_serial is the plain
// loop used to pin down the parallel version in tests and benchmarks.
std::vector<VisibilityPoint> visibility_curve(const std::vector<double>& alpha_sq_grid,
                                              const DetectorPair& det,
                                              const fock::BeamsplitterParams& bs, int cutoff = 0,
                                              const fock::TailPolicy& policy = {});
std::vector<VisibilityPoint> visibility_curve_serial(const std::vector<double>& alpha_sq_grid,
                                                     const DetectorPair& det,
                                                     const fock::BeamsplitterParams& bs,
                                                     int cutoff = 0,
                                                     const fock::TailPolicy& policy = {});

}  // namespace homsim::detection
