// Side-by-side timing of the OpenMP kernels against their serial reference
// loops. Build target `bench_kernels`; not part of the test suite.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <omp.h>

#include "homsim/classical.hpp"
#include "homsim/detection.hpp"
#include "homsim/montecarlo.hpp"

using namespace homsim;

namespace {

template <typename Fn>
double best_of(int repeats, Fn&& fn) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const double t0 = omp_get_wtime();
        fn();
        best = std::min(best, omp_get_wtime() - t0);
    }
    return best;
}

void print_row(const std::string& name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-22s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   results %s\n",
                name.c_str(), serial_s, parallel_s, serial_s / parallel_s,
                identical ? "identical" : "DIFFER");
}

void bench_simulate(int workers) {
    montecarlo::PulseExperimentConfig cfg;
    cfg.source = montecarlo::QuantumSource{.alpha_sq = 1.0};
    cfg.pulses = 2000000;
    cfg.seed = 99u;
    cfg.workers = workers;
    montecarlo::CountRecord ser{}, par{};
    const double ts = best_of(3, [&] { ser = montecarlo::simulate_counts_serial(cfg); });
    const double tp = best_of(3, [&] { par = montecarlo::simulate_counts(cfg); });
    const bool same = ser.pulses == par.pulses && ser.clicks_c == par.clicks_c &&
                      ser.clicks_d == par.clicks_d && ser.coincidences_cd == par.coincidences_cd;
    print_row("simulate_counts", ts, tp, same);
}

void bench_visibility_curve() {
    std::vector<double> grid;
    for (int i = 0; i < 64; ++i) grid.push_back(0.01 * std::pow(10.0, 3.0 * i / 63.0));
    const detection::DetectorPair det(1.0, 1.0);
    const fock::BeamsplitterParams bal = fock::BeamsplitterParams::balanced();
    std::vector<detection::VisibilityPoint> ser, par;
    const double ts = best_of(3, [&] { ser = detection::visibility_curve_serial(grid, det, bal); });
    const double tp = best_of(3, [&] { par = detection::visibility_curve(grid, det, bal); });
    bool same = ser.size() == par.size();
    for (size_t i = 0; same && i < ser.size(); ++i)
        same = ser[i].visibility == par[i].visibility;
    print_row("visibility_curve", ts, tp, same);
}

void bench_phase_monte_carlo(int workers) {
    const classical::ClassicalInputs in(1.0, 0.5);
    const fock::BeamsplitterParams bal = fock::BeamsplitterParams::balanced();
    classical::PhaseMcResult ser{}, par{};
    const double ts =
        best_of(3, [&] { ser = classical::phase_monte_carlo_serial(in, bal, 20000000, 7u, workers); });
    const double tp =
        best_of(3, [&] { par = classical::phase_monte_carlo(in, bal, 20000000, 7u, workers); });
    print_row("phase_monte_carlo", ts, tp, ser.mean == par.mean && ser.se == par.se);
}

}  // namespace

int main() {
    const int workers = omp_get_max_threads();
    std::printf("OpenMP max threads: %d, worker substreams: %d\n", workers, workers);
    bench_simulate(workers);
    bench_visibility_curve();
    bench_phase_monte_carlo(workers);
    return 0;
}
