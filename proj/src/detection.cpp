#include "homsim/detection.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "homsim/errors.hpp"

namespace homsim::detection {

DetectorPair::DetectorPair(double eta1_, double eta2_) : eta1(eta1_), eta2(eta2_) {
    if (!(eta1 >= 0.0 && eta1 <= 1.0) || !(eta2 >= 0.0 && eta2 <= 1.0))
        throw std::invalid_argument("DetectorPair: efficiencies must lie in [0, 1]");
}

ClickWeights click_weights(int n, int m, const DetectorPair& det) {
    if (n < 0 || m < 0) throw std::invalid_argument("click_weights: photon numbers must be nonnegative");
    const double q1 = std::pow(1.0 - det.eta1, n);
    const double q2 = std::pow(1.0 - det.eta2, m);
    return {q1 * q2, q1 * (1.0 - q2), (1.0 - q1) * q2, (1.0 - q1) * (1.0 - q2)};
}

ClickTable click_table(const fock::JointDistribution& dist, const DetectorPair& det) {
    const int dim = dist.cutoff + 1;
    std::vector<double> q1(dim), q2(dim);
    q1[0] = q2[0] = 1.0;
    for (int i = 1; i < dim; ++i) {
        q1[i] = q1[i - 1] * (1.0 - det.eta1);
        q2[i] = q2[i - 1] * (1.0 - det.eta2);
    }
    ClickTable tab{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, dist.tail};
    for (int n = 0; n < dim; ++n) {
        for (int m = 0; m < dim; ++m) {
            const double p = dist.at(n, m);
            if (p == 0.0) continue;
            tab.p00 += p * q1[n] * q2[m];
            tab.p01 += p * q1[n] * (1.0 - q2[m]);
            tab.p10 += p * (1.0 - q1[n]) * q2[m];
            tab.p11 += p * (1.0 - q1[n]) * (1.0 - q2[m]);
        }
    }
    tab.pc1 = tab.p10 + tab.p11;
    tab.pd1 = tab.p01 + tab.p11;
    return tab;
}

namespace {

VisibilityPoint eval_point(double alpha_sq, const DetectorPair& det,
                           const fock::BeamsplitterParams& bs, int cutoff,
                           const fock::TailPolicy& policy) {
    if (!(alpha_sq >= 0.0))
        throw std::invalid_argument("visibility_quantum: alpha_sq must be nonnegative");
    if (alpha_sq == 0.0)
        throw degenerate_data_error("visibility_quantum: alpha_sq = 0 leaves a single source; "
                                    "the visibility is undefined");
    const int cut = cutoff > 0 ? cutoff : fock::recommended_cutoff(alpha_sq);
    const fock::TwoModeState in = fock::mixed_input_state(std::sqrt(alpha_sq), cut, policy);
    const fock::JointDistribution joint =
        fock::joint_distribution(fock::beamsplitter_transform(in, bs));
    const ClickTable tab = click_table(joint, det);
    if (!(tab.pc1 * tab.pd1 > 0.0))
        throw degenerate_data_error("visibility_quantum: singles probabilities vanish");
    return {alpha_sq, 1.0 - tab.p11 / (tab.pc1 * tab.pd1), tab.tail};
}

}  // namespace

double visibility_quantum(double alpha_sq, const DetectorPair& det,
                          const fock::BeamsplitterParams& bs, int cutoff,
                          const fock::TailPolicy& policy) {
    return eval_point(alpha_sq, det, bs, cutoff, policy).visibility;
}

std::vector<VisibilityPoint> visibility_curve_serial(const std::vector<double>& alpha_sq_grid,
                                                     const DetectorPair& det,
                                                     const fock::BeamsplitterParams& bs, int cutoff,
                                                     const fock::TailPolicy& policy) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<VisibilityPoint> out(alpha_sq_grid.size());
    for (size_t i = 0; i < alpha_sq_grid.size(); ++i) {
        try {
            out[i] = eval_point(alpha_sq_grid[i], det, bs, cutoff, policy);
        } catch (const std::exception&) {
            out[i] = {alpha_sq_grid[i], nan, nan};
        }
    }
    return out;
}

std::vector<VisibilityPoint> visibility_curve(const std::vector<double>& alpha_sq_grid,
                                              const DetectorPair& det,
                                              const fock::BeamsplitterParams& bs, int cutoff,
                                              const fock::TailPolicy& policy) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<VisibilityPoint> out(alpha_sq_grid.size());
    const std::int64_t count = static_cast<std::int64_t>(alpha_sq_grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            out[i] = eval_point(alpha_sq_grid[i], det, bs, cutoff, policy);
        } catch (const std::exception&) {
            out[i] = {alpha_sq_grid[i], nan, nan};
        }
    }
    return out;
}

}  // namespace homsim::detection
