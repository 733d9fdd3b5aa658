#include "homsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace homsim::rng {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += kGamma);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t worker_seed(std::uint64_t run_seed, int index) {
    if (index < 0) throw std::invalid_argument("worker_seed: index must be nonnegative");
    std::uint64_t state = run_seed + static_cast<std::uint64_t>(index) * kGamma;
    return splitmix64(state);
}

std::mt19937_64 make_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

double canonical(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

namespace {

// Knuth: count uniforms until their product drops below e^-mean.
long long poisson_chunk(std::mt19937_64& eng, double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    long long k = 0;
    double product = 1.0;
    do {
        product *= canonical(eng);
        ++k;
    } while (product > limit);
    return k - 1;
}

}  // namespace

long long poisson(std::mt19937_64& eng, double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean))
        throw std::invalid_argument("poisson: mean must be finite and nonnegative");
    long long total = 0;
    while (mean > 30.0) {
        total += poisson_chunk(eng, 30.0);
        mean -= 30.0;
    }
    return total + poisson_chunk(eng, mean);
}

}  // namespace homsim::rng
