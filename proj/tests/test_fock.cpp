#include <doctest.h>

#include <cmath>
#include <complex>

#include "homsim/errors.hpp"
#include "homsim/fock.hpp"
#include "oracles.hpp"

using namespace homsim;
using fock::cplx;

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

long long exact_binom(int n, int k) {
    long long v = 1;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v;
}

fock::TwoModeState basis_state(int n, int m, int cutoff) {
    fock::TwoModeState st(cutoff);
    st.at(n, m) = 1.0;
    return st;
}

}  // namespace

TEST_SUITE("fock_core") {

TEST_CASE("log_factorial matches exact factorials and lgamma") {
    double fact = 1.0;
    for (int n = 1; n <= 20; ++n) {
        fact *= n;
        CHECK(close(std::exp(fock::log_factorial(n)), fact, 1e-12 * fact));
    }
    CHECK(fock::log_factorial(0) == 0.0);
    CHECK(std::isfinite(fock::log_factorial(171)));
    CHECK(close(fock::log_factorial(2000), std::lgamma(2001.0), 1e-9 * std::lgamma(2001.0)));
    CHECK_THROWS_AS(fock::log_factorial(-1), std::invalid_argument);
}

TEST_CASE("coherent amplitudes carry Poisson weights and report the tail") {
    SUBCASE("vacuum") {
        const fock::FockVector v = fock::coherent_amplitudes(0.0, 4);
        CHECK(v.amplitudes.size() == 5);
        CHECK(v.amplitudes[0] == cplx(1.0, 0.0));
        for (int n = 1; n <= 4; ++n) CHECK(v.amplitudes[n] == cplx(0.0, 0.0));
        CHECK(v.tail == 0.0);
    }
    SUBCASE("unit mean photon number") {
        const fock::FockVector v = fock::coherent_amplitudes(1.0, 12);
        CHECK(close(std::norm(v.amplitudes[0]), std::exp(-1.0), 1e-12));
        CHECK(v.tail < 1e-9);
        CHECK(close(v.norm_sq() + v.tail, 1.0, 1e-12));
    }
    SUBCASE("weak beam") {
        const fock::FockVector v = fock::coherent_amplitudes(std::sqrt(0.01), 4);
        CHECK(close(std::norm(v.amplitudes[1]), 0.01 * std::exp(-0.01), 1e-12));
    }
    SUBCASE("strict policy rejects a lossy cutoff") {
        CHECK_THROWS_AS(fock::coherent_amplitudes(2.0, 3, {true, 1e-10}), tail_mass_error);
        CHECK_NOTHROW(fock::coherent_amplitudes(2.0, fock::recommended_cutoff(4.0), {true, 1e-10}));
    }
}

TEST_CASE("recommended_cutoff keeps the coherent tail below 1e-10") {
    for (double a2 : {0.01, 1.0, 10.0}) {
        const int cut = fock::recommended_cutoff(a2);
        const fock::FockVector v = fock::coherent_amplitudes(std::sqrt(a2), cut);
        CHECK(v.tail < 1e-10);
    }
}

TEST_CASE("beamsplitter parameter validation") {
    CHECK_THROWS_AS(fock::BeamsplitterParams(0.9, 0.9), std::invalid_argument);
    CHECK_THROWS_AS(fock::BeamsplitterParams::from_reflectance(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(fock::BeamsplitterParams::from_reflectance(1.1), std::invalid_argument);
    const fock::BeamsplitterParams bal = fock::BeamsplitterParams::balanced();
    CHECK(bal.t_mag == bal.r_mag);
    CHECK(bal.t().imag() == 0.0);
    CHECK(bal.r().real() == 0.0);
}

TEST_CASE("two single photons at a balanced splitter never split across ports") {
    const fock::TwoModeState out =
        fock::beamsplitter_transform(basis_state(1, 1, 4), fock::BeamsplitterParams::balanced());
    const fock::JointDistribution joint = fock::joint_distribution(out);
    CHECK(joint.at(1, 1) == 0.0);
    CHECK(joint.at(1, 1) < 1e-24);
    CHECK(close(joint.at(2, 0), 0.5, 1e-12));
    CHECK(close(joint.at(0, 2), 0.5, 1e-12));
    CHECK(close(joint.sum(), 1.0, 1e-12));
}

TEST_CASE("unbalanced splitter leaves the expected cross-port coincidence") {
    const fock::TwoModeState out = fock::beamsplitter_transform(
        basis_state(1, 1, 4), fock::BeamsplitterParams::from_reflectance(0.3));
    CHECK(close(fock::joint_distribution(out).at(1, 1), 0.16, 1e-12));
}

TEST_CASE("photons from one port partition binomially") {
    SUBCASE("two photons, balanced") {
        const fock::JointDistribution joint = fock::joint_distribution(
            fock::beamsplitter_transform(basis_state(2, 0, 4), fock::BeamsplitterParams::balanced()));
        CHECK(close(joint.at(2, 0), 0.25, 1e-12));
        CHECK(close(joint.at(1, 1), 0.5, 1e-12));
        CHECK(close(joint.at(0, 2), 0.25, 1e-12));
    }
    SUBCASE("n up to 6 over several splitting ratios") {
        for (double t_sq : {0.2, 0.5, 0.8}) {
            const fock::BeamsplitterParams bs = fock::BeamsplitterParams::from_reflectance(1.0 - t_sq);
            for (int n = 1; n <= 6; ++n) {
                const fock::JointDistribution joint =
                    fock::joint_distribution(fock::beamsplitter_transform(basis_state(n, 0, 8), bs));
                for (int j = 0; j <= n; ++j) {
                    const double expected = static_cast<double>(exact_binom(n, j)) *
                                            std::pow(t_sq, j) * std::pow(1.0 - t_sq, n - j);
                    CHECK(close(joint.at(j, n - j), expected, 1e-12));
                }
            }
        }
    }
}

TEST_CASE("transform is unitary on every in-range basis state") {
    const int cutoff = 10;
    for (double r_sq : {0.3, 0.5}) {
        const fock::BeamsplitterParams bs = fock::BeamsplitterParams::from_reflectance(r_sq);
        for (int n = 0; n <= cutoff; ++n) {
            for (int m = 0; n + m <= cutoff; ++m) {
                const fock::TwoModeState out =
                    fock::beamsplitter_transform(basis_state(n, m, cutoff), bs);
                CHECK(close(out.norm_sq(), 1.0, 1e-10));
            }
        }
    }
}

TEST_CASE("transform conserves total photon number") {
    const fock::TwoModeState out = fock::beamsplitter_transform(
        basis_state(3, 2, 8), fock::BeamsplitterParams::from_reflectance(0.3));
    for (int j = 0; j <= 8; ++j)
        for (int k = 0; k <= 8; ++k)
            if (j + k != 5) CHECK(out.at(j, k) == cplx(0.0, 0.0));
}

TEST_CASE("populated component beyond the cutoff is rejected") {
    fock::TwoModeState st(3);
    st.at(2, 2) = 1.0;
    CHECK_THROWS_AS(fock::beamsplitter_transform(st, fock::BeamsplitterParams::balanced()),
                    std::invalid_argument);
}

TEST_CASE("swapping input modes and t with r leaves the distribution unchanged") {
    const fock::BeamsplitterParams bs = fock::BeamsplitterParams::from_reflectance(0.3);
    const fock::BeamsplitterParams swapped = fock::BeamsplitterParams::from_reflectance(0.7);
    for (auto [n, m] : {std::pair{1, 2}, std::pair{3, 1}, std::pair{2, 2}}) {
        const fock::JointDistribution a =
            fock::joint_distribution(fock::beamsplitter_transform(basis_state(n, m, 6), bs));
        const fock::JointDistribution b =
            fock::joint_distribution(fock::beamsplitter_transform(basis_state(m, n, 6), swapped));
        for (int j = 0; j <= 6; ++j)
            for (int k = 0; k <= 6; ++k) CHECK(close(a.at(j, k), b.at(j, k), 1e-12));
    }
}

TEST_CASE("click statistics do not depend on the phase convention") {
    // any (t, r) with |t|^2 + |r|^2 = 1 and r t* + r* t = 0 is a valid
    // lossless splitter; probabilities must agree with the fixed convention
    const double t_mag = std::sqrt(0.7);
    const double r_mag = std::sqrt(0.3);
    const cplx t = t_mag * std::exp(cplx(0.0, 3.141592653589793 / 4.0));
    const cplx r = r_mag * std::exp(cplx(0.0, -3.141592653589793 / 4.0));
    CHECK(close(std::abs(r * std::conj(t) + std::conj(r) * t), 0.0, 1e-15));
    const fock::TwoModeState in = fock::mixed_input_state(cplx(0.4, 0.1), 8);
    const fock::JointDistribution a = fock::joint_distribution(
        fock::beamsplitter_transform(in, fock::BeamsplitterParams(t_mag, r_mag)));
    const fock::JointDistribution b =
        fock::joint_distribution(fock::beamsplitter_transform_tr(in, t, r));
    for (int j = 0; j <= 8; ++j)
        for (int k = 0; k <= 8; ++k) CHECK(close(a.at(j, k), b.at(j, k), 1e-12));
}

TEST_CASE("transform agrees with the operator-product reference") {
    for (double r_sq : {0.3, 0.5}) {
        const fock::BeamsplitterParams bs = fock::BeamsplitterParams::from_reflectance(r_sq);
        for (auto [n, m] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{3, 2}, std::pair{5, 0},
                            std::pair{4, 3}}) {
            const fock::TwoModeState out = fock::beamsplitter_transform(basis_state(n, m, 8), bs);
            const oracle::PolyGrid ref =
                oracle::transform_nm(n, m, cplx(bs.t_mag, 0.0), cplx(0.0, bs.r_mag));
            for (int j = 0; j <= n + m; ++j) {
                const int k = n + m - j;
                CHECK(std::abs(out.at(j, k) - ref[j][k]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("mixed input pairs the truncated coherent beam with one photon") {
    SUBCASE("vacuum beam") {
        const fock::TwoModeState st = fock::mixed_input_state(0.0, 4);
        CHECK(st.at(0, 1) == cplx(1.0, 0.0));
        CHECK(close(st.norm_sq(), 1.0, 1e-15));
    }
    SUBCASE("unit intensity") {
        const fock::TwoModeState st = fock::mixed_input_state(1.0, 12);
        CHECK(close(std::norm(st.at(1, 1)), std::exp(-1.0), 1e-12));
    }
    SUBCASE("closed-form amplitude at two photons") {
        const fock::TwoModeState st = fock::mixed_input_state(0.1, 6);
        CHECK(close(std::abs(st.at(2, 1)), std::exp(-0.005) * 0.01 / std::sqrt(2.0), 1e-15));
    }
    SUBCASE("only the single-photon row is populated") {
        const fock::TwoModeState st = fock::mixed_input_state(0.7, 6);
        for (int n = 0; n <= 6; ++n)
            for (int m = 0; m <= 6; ++m)
                if (m != 1) CHECK(st.at(n, m) == cplx(0.0, 0.0));
        // every populated component stays inside the transform domain
        CHECK_NOTHROW(fock::beamsplitter_transform(st, fock::BeamsplitterParams::balanced()));
    }
    CHECK_THROWS_AS(fock::mixed_input_state(0.1, 0), std::invalid_argument);
}

TEST_CASE("second-order output coefficients are exact up to three photons") {
    // photon-number conservation means truncation cannot leak into the low
    // cells, so the quadratic closed form matches the full transform there
    const fock::BeamsplitterParams bs = fock::BeamsplitterParams::balanced();
    const cplx alpha(0.17, 0.0);
    const fock::TwoModeState full =
        fock::beamsplitter_transform(fock::mixed_input_state(alpha, 12), bs);
    const double pref = std::exp(-0.5 * std::norm(alpha));
    const cplx t = bs.t();
    const cplx r = bs.r();
    CHECK(std::abs(full.at(1, 0) - pref * r) <= 1e-14);
    CHECK(std::abs(full.at(0, 1) - pref * t) <= 1e-14);
    CHECK(std::abs(full.at(1, 1) - pref * alpha * (t * t + r * r)) <= 1e-14);
    CHECK(std::abs(full.at(2, 0) - pref * alpha * r * t * std::sqrt(2.0)) <= 1e-14);
    CHECK(std::abs(full.at(2, 1) - pref * 0.5 * alpha * alpha * std::sqrt(2.0) * t *
                                       (t * t + 2.0 * r * r)) <= 1e-14);
    CHECK(std::abs(full.at(0, 3) - pref * 0.5 * alpha * alpha * std::sqrt(6.0) * t * r * r) <=
          1e-14);
}

TEST_CASE("quadratic expansion residual shrinks as the cube of the amplitude") {
    const fock::BeamsplitterParams bal = fock::BeamsplitterParams::balanced();
    CHECK(fock::verify_eq3_expansion(0.0, bal) == 0.0);
    CHECK(fock::verify_eq3_expansion(cplx(0.1, 0.0), bal) < 5e-3);
    CHECK(fock::verify_eq3_expansion(cplx(0.3, 0.0), fock::BeamsplitterParams::from_reflectance(0.3)) <
          0.05);
    for (double a : {0.05, 0.1, 0.2}) {
        const double d1 = fock::verify_eq3_expansion(cplx(a, 0.0), bal);
        const double d2 = fock::verify_eq3_expansion(cplx(a / 2.0, 0.0), bal);
        const double ratio = d1 / d2;
        CHECK(ratio > 4.0);
        CHECK(ratio < 16.0);
    }
}

TEST_CASE("joint distribution accounts for all probability") {
    const fock::TwoModeState st = fock::mixed_input_state(std::sqrt(2.0), 9);
    const fock::JointDistribution joint =
        fock::joint_distribution(fock::beamsplitter_transform(st, fock::BeamsplitterParams::balanced()));
    CHECK(close(joint.sum() + joint.tail, 1.0, 1e-12));
    for (double p : joint.probabilities) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

}  // TEST_SUITE
