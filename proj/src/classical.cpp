#include "homsim/classical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "homsim/constants.hpp"
#include "homsim/errors.hpp"
#include "homsim/rng.hpp"

namespace homsim::classical {

namespace {

void check_moments(double mean, double second, const char* which) {
    if (!(mean >= 0.0))
        throw std::invalid_argument(std::string("ClassicalInputs: mean intensity ") + which +
                                    " must be nonnegative");
    if (second < mean * mean * (1.0 - 1e-12))
        throw std::invalid_argument(std::string("ClassicalInputs: <I^2> of ") + which +
                                    " cannot be below <I>^2");
}

}  // namespace

ClassicalInputs::ClassicalInputs(double mean_a_, double mean_b_)
    : ClassicalInputs(mean_a_, mean_b_, mean_a_ * mean_a_, mean_b_ * mean_b_) {}

ClassicalInputs::ClassicalInputs(double mean_a_, double mean_b_, double second_a_, double second_b_)
    : mean_a(mean_a_), mean_b(mean_b_), second_a(second_a_), second_b(second_b_) {
    check_moments(mean_a, second_a, "a");
    check_moments(mean_b, second_b, "b");
}

OutputIntensities output_intensities(double intensity_a, double intensity_b, double phi,
                                     const fock::BeamsplitterParams& bs) {
    if (!(intensity_a >= 0.0) || !(intensity_b >= 0.0))
        throw std::invalid_argument("output_intensities: intensities must be nonnegative");
    const double tt = bs.t_mag * bs.t_mag;
    const double rr = bs.r_mag * bs.r_mag;
    const double cross =
        2.0 * bs.r_mag * bs.t_mag * std::sqrt(intensity_a * intensity_b) * std::sin(phi);
    // the sum is formed from ic so energy conservation holds to the last bit
    const double ic = std::max(0.0, tt * intensity_a + rr * intensity_b - cross);
    return {ic, intensity_a + intensity_b - ic};
}

double coincidence_phase_averaged(const ClassicalInputs& in, const fock::BeamsplitterParams& bs) {
    const double tt = bs.t_mag * bs.t_mag;
    const double rr = bs.r_mag * bs.r_mag;
    const double diff = tt - rr;
    return rr * tt * (in.second_a + in.second_b) + diff * diff * in.mean_a * in.mean_b;
}

double mean_output_product(const ClassicalInputs& in, const fock::BeamsplitterParams& bs) {
    const double tt = bs.t_mag * bs.t_mag;
    const double rr = bs.r_mag * bs.r_mag;
    return (tt * in.mean_a + rr * in.mean_b) * (rr * in.mean_a + tt * in.mean_b);
}

double visibility_phase_averaged(const ClassicalInputs& in, const fock::BeamsplitterParams& bs) {
    const double denom = mean_output_product(in, bs);
    if (!(denom > 0.0))
        throw degenerate_data_error("visibility_phase_averaged: both output means vanish");
    return 1.0 - coincidence_phase_averaged(in, bs) / denom;
}

double visibility_classical(double r_ab) {
    if (!(r_ab >= 0.0) || !std::isfinite(r_ab))
        throw std::invalid_argument("visibility_classical: intensity ratio must be finite and nonnegative");
    const double s = r_ab + 1.0;
    return 2.0 * r_ab / (s * s);
}

namespace {

struct PartialSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

PartialSums worker_sums(const ClassicalInputs& in, const fock::BeamsplitterParams& bs,
                        long long samples, std::uint64_t engine_seed) {
    std::mt19937_64 eng = rng::make_engine(engine_seed);
    PartialSums acc;
    for (long long i = 0; i < samples; ++i) {
        const double phi = 2.0 * pi * rng::canonical(eng);
        const OutputIntensities oi = output_intensities(in.mean_a, in.mean_b, phi, bs);
        const double x = oi.ic * oi.id;
        acc.sum += x;
        acc.sum_sq += x * x;
    }
    return acc;
}

PhaseMcResult merge_sums(const std::vector<PartialSums>& parts, long long samples) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const PartialSums& p : parts) {
        sum += p.sum;
        sum_sq += p.sum_sq;
    }
    const double mean = sum / static_cast<double>(samples);
    double se = 0.0;
    if (samples > 1) {
        const double var =
            std::max(0.0, (sum_sq - samples * mean * mean) / static_cast<double>(samples - 1));
        se = std::sqrt(var / static_cast<double>(samples));
    }
    return {mean, se, samples};
}

std::vector<long long> split(long long samples, int workers) {
    std::vector<long long> out(workers, samples / workers);
    for (int w = 0; w < static_cast<int>(samples % workers); ++w) ++out[w];
    return out;
}

void check_mc_args(long long samples, int workers) {
    if (samples < 1) throw std::invalid_argument("phase_monte_carlo: samples must be positive");
    if (workers < 1) throw std::invalid_argument("phase_monte_carlo: workers must be positive");
}

}  // namespace

PhaseMcResult phase_monte_carlo_serial(const ClassicalInputs& in,
                                       const fock::BeamsplitterParams& bs, long long samples,
                                       std::uint64_t seed, int workers) {
    check_mc_args(samples, workers);
    const std::vector<long long> share = split(samples, workers);
    std::vector<PartialSums> parts(workers);
    for (int w = 0; w < workers; ++w)
        parts[w] = worker_sums(in, bs, share[w], rng::worker_seed(seed, w));
    return merge_sums(parts, samples);
}

PhaseMcResult phase_monte_carlo(const ClassicalInputs& in, const fock::BeamsplitterParams& bs,
                                long long samples, std::uint64_t seed, int workers) {
    check_mc_args(samples, workers);
    const std::vector<long long> share = split(samples, workers);
    std::vector<PartialSums> parts(workers);
#pragma omp parallel for schedule(static)
    for (int w = 0; w < workers; ++w)
        parts[w] = worker_sums(in, bs, share[w], rng::worker_seed(seed, w));
    return merge_sums(parts, samples);
}

}  // namespace homsim::classical
