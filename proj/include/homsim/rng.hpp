#pragma once

#include <cstdint>
#include <random>

namespace homsim::rng {

// splitmix64; the standard recipe for expanding one seed into well-separated
// stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for worker `index` derived from the run seed. Worker streams stay
/// fixed when the worker count changes, so a run is identified by
/// (seed, workers) alone.
std::uint64_t worker_seed(std::uint64_t run_seed, int index);

std::mt19937_64 make_engine(std::uint64_t seed);

/// Uniform on [0, 1) with exactly one engine draw: top 53 bits scaled by 2^-53.
/// std::uniform_real_distribution is implementation-defined, this is not.
double canonical(std::mt19937_64& eng);

/// Poisson sample by Knuth's product-of-uniforms method, applied to chunks of
/// mean at most 30 so the running product stays far from underflow. Sums of
/// the chunk draws are Poisson with the full mean.
long long poisson(std::mt19937_64& eng, double mean);

}  // namespace homsim::rng
