#include "homsim/fock.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "homsim/errors.hpp"

namespace homsim::fock {

double log_factorial(int n) {
    if (n < 0) throw std::invalid_argument("log_factorial: n must be nonnegative");
    static const std::vector<double> table = [] {
        std::vector<double> t(1024);
        long double acc = 0.0L;
        t[0] = 0.0;
        for (int i = 1; i < static_cast<int>(t.size()); ++i) {
            acc += std::log(static_cast<long double>(i));
            t[i] = static_cast<double>(acc);
        }
        return t;
    }();
    if (n < static_cast<int>(table.size())) return table[n];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

int recommended_cutoff(double alpha_sq) {
    if (!(alpha_sq >= 0.0)) throw std::invalid_argument("recommended_cutoff: alpha_sq must be nonnegative");
    return static_cast<int>(std::ceil(alpha_sq + 10.0 * std::sqrt(alpha_sq + 1.0) + 10.0));
}

double FockVector::norm_sq() const {
    double s = 0.0;
    for (const cplx& a : amplitudes) s += std::norm(a);
    return s;
}

TwoModeState::TwoModeState(int cutoff_) : cutoff(cutoff_) {
    if (cutoff < 0) throw std::invalid_argument("TwoModeState: cutoff must be nonnegative");
    amplitudes.assign(static_cast<size_t>(cutoff + 1) * (cutoff + 1), cplx(0.0, 0.0));
}

double TwoModeState::norm_sq() const {
    double s = 0.0;
    for (const cplx& a : amplitudes) s += std::norm(a);
    return s;
}

BeamsplitterParams::BeamsplitterParams(double t_mag_, double r_mag_) : t_mag(t_mag_), r_mag(r_mag_) {
    if (!(t_mag >= 0.0 && t_mag <= 1.0) || !(r_mag >= 0.0 && r_mag <= 1.0))
        throw std::invalid_argument("BeamsplitterParams: magnitudes must lie in [0, 1]");
    if (std::abs(t_mag * t_mag + r_mag * r_mag - 1.0) > 1e-12)
        throw std::invalid_argument("BeamsplitterParams: |t|^2 + |r|^2 must equal 1");
}

BeamsplitterParams BeamsplitterParams::from_reflectance(double r_sq) {
    if (!(r_sq >= 0.0 && r_sq <= 1.0))
        throw std::invalid_argument("BeamsplitterParams: reflectance must lie in [0, 1]");
    return {std::sqrt(1.0 - r_sq), std::sqrt(r_sq)};
}

BeamsplitterParams BeamsplitterParams::balanced() { return from_reflectance(0.5); }

double JointDistribution::sum() const {
    return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

FockVector coherent_amplitudes(cplx alpha, int cutoff, const TailPolicy& policy) {
    if (cutoff < 0) throw std::invalid_argument("coherent_amplitudes: cutoff must be nonnegative");
    FockVector v;
    v.cutoff = cutoff;
    v.amplitudes.resize(cutoff + 1);
    v.amplitudes[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n <= cutoff; ++n)
        v.amplitudes[n] = v.amplitudes[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    v.tail = std::max(0.0, 1.0 - v.norm_sq());
    if (policy.strict && v.tail > policy.tolerance)
        throw tail_mass_error("coherent_amplitudes: cutoff " + std::to_string(cutoff) +
                              " leaves tail mass " + std::to_string(v.tail));
    return v;
}

TwoModeState mixed_input_state(cplx alpha, int cutoff, const TailPolicy& policy) {
    if (cutoff < 1) throw std::invalid_argument("mixed_input_state: cutoff must be at least 1");
    FockVector coh = coherent_amplitudes(alpha, cutoff - 1, policy);
    TwoModeState state(cutoff);
    for (int n = 0; n < cutoff; ++n) state.at(n, 1) = coh.amplitudes[n];
    return state;
}

namespace {

// C(n, k) through the log-factorial table; exact to a few ulp for the n <= 60
// range the cutoffs allow.
double binom(int n, int k) {
    return std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

}  // namespace

TwoModeState beamsplitter_transform_tr(const TwoModeState& input, cplx t, cplx r) {
    const int cut = input.cutoff;
    TwoModeState out(cut);
    std::vector<cplx> tp(cut + 2), rp(cut + 2);
    tp[0] = rp[0] = cplx(1.0, 0.0);
    for (int i = 1; i <= cut + 1; ++i) {
        tp[i] = tp[i - 1] * t;
        rp[i] = rp[i - 1] * r;
    }
    for (int n = 0; n <= cut; ++n) {
        for (int m = 0; m <= cut; ++m) {
            const cplx amp = input.at(n, m);
            if (amp == cplx(0.0, 0.0)) continue;
            if (n + m > cut)
                throw std::invalid_argument(
                    "beamsplitter_transform: populated component |" + std::to_string(n) + "," +
                    std::to_string(m) + "> exceeds the cutoff " + std::to_string(cut));
            // photon from a: (t c^ + r d^), photon from b: (r c^ + t d^)
            for (int j = 0; j <= n; ++j) {
                const cplx c1 = binom(n, j) * tp[j] * rp[n - j];
                for (int k = 0; k <= m; ++k) {
                    const cplx c2 = binom(m, k) * rp[k] * tp[m - k];
                    const int jc = j + k;
                    const int kd = n + m - jc;
                    const double scale =
                        std::exp(0.5 * (log_factorial(jc) + log_factorial(kd) -
                                        log_factorial(n) - log_factorial(m)));
                    out.at(jc, kd) += amp * c1 * c2 * scale;
                }
            }
        }
    }
    return out;
}

TwoModeState beamsplitter_transform(const TwoModeState& input, const BeamsplitterParams& bs) {
    return beamsplitter_transform_tr(input, bs.t(), bs.r());
}

JointDistribution joint_distribution(const TwoModeState& state) {
    JointDistribution dist;
    dist.cutoff = state.cutoff;
    dist.probabilities.resize(state.amplitudes.size());
    for (size_t i = 0; i < state.amplitudes.size(); ++i)
        dist.probabilities[i] = std::norm(state.amplitudes[i]);
    dist.tail = std::max(0.0, 1.0 - dist.sum());
    return dist;
}

double verify_eq3_expansion(cplx alpha, const BeamsplitterParams& bs, int cutoff) {
    const TwoModeState full = beamsplitter_transform(mixed_input_state(alpha, cutoff), bs);
    TwoModeState closed(cutoff);
    const cplx t = bs.t();
    const cplx r = bs.r();
    const double pref = std::exp(-0.5 * std::norm(alpha));
    const double rt2 = std::sqrt(2.0);
    const double rt6 = std::sqrt(6.0);
    closed.at(1, 0) = pref * r;
    closed.at(0, 1) = pref * t;
    closed.at(1, 1) = pref * alpha * (t * t + r * r);
    closed.at(2, 0) = pref * alpha * r * t * rt2;
    closed.at(0, 2) = pref * alpha * r * t * rt2;
    const cplx half_a2 = 0.5 * alpha * alpha;
    closed.at(3, 0) = pref * half_a2 * rt6 * r * t * t;
    closed.at(2, 1) = pref * half_a2 * rt2 * t * (t * t + 2.0 * r * r);
    closed.at(1, 2) = pref * half_a2 * rt2 * r * (2.0 * t * t + r * r);
    closed.at(0, 3) = pref * half_a2 * rt6 * t * r * r;
    double worst = 0.0;
    for (size_t i = 0; i < full.amplitudes.size(); ++i)
        worst = std::max(worst, std::abs(full.amplitudes[i] - closed.amplitudes[i]));
    return worst;
}

}  // namespace homsim::fock
