#include "homsim/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "homsim/errors.hpp"
#include "homsim/rng.hpp"

namespace homsim::analysis {

double dip_model_rate(const DipModelParams& p, double delay_m) {
    const double u = (delay_m - p.center_m) / p.half_width_1e_m;
    return p.baseline_cps * (1.0 - p.visibility * std::exp(-u * u));
}

DipDataset synthesize_dataset(const DipModelParams& truth, const std::vector<double>& delays_m,
                              double duration_per_point_s, std::uint64_t seed) {
    if (!(duration_per_point_s > 0.0))
        throw std::invalid_argument("synthesize_dataset: duration must be positive");
    std::mt19937_64 eng = rng::make_engine(seed);
    DipDataset data;
    data.points.reserve(delays_m.size());
    for (double x : delays_m) {
        const double mean = std::max(0.0, dip_model_rate(truth, x)) * duration_per_point_s;
        data.points.push_back({x, rng::poisson(eng, mean), duration_per_point_s});
    }
    return data;
}

namespace {

struct Design {
    std::vector<double> x;  // delay
    std::vector<double> y;  // observed rate
    std::vector<double> w;  // inverse-variance weight
};

Design make_design(const DipDataset& data) {
    Design d;
    const size_t n = data.points.size();
    d.x.resize(n);
    d.y.resize(n);
    d.w.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const DipPoint& pt = data.points[i];
        if (pt.counts < 0) throw std::invalid_argument("fit_dip: counts must be nonnegative");
        if (!(pt.duration_s > 0.0)) throw std::invalid_argument("fit_dip: durations must be positive");
        d.x[i] = pt.delay_m;
        d.y[i] = static_cast<double>(pt.counts) / pt.duration_s;
        d.w[i] = pt.duration_s * pt.duration_s /
                 static_cast<double>(std::max<long long>(pt.counts, 1));
    }
    return d;
}

using Params = std::array<double, 4>;  // baseline, visibility, half width, center

double model_at(const Params& p, double x) {
    const double u = (x - p[3]) / p[2];
    return p[0] * (1.0 - p[1] * std::exp(-u * u));
}

std::array<double, 4> gradient_at(const Params& p, double x) {
    const double u = (x - p[3]) / p[2];
    const double e = std::exp(-u * u);
    return {1.0 - p[1] * e, -p[0] * e, -2.0 * p[0] * p[1] * u * u * e / p[2],
            -2.0 * p[0] * p[1] * u * e / p[2]};
}

double weighted_cost(const Design& d, const Params& p) {
    double cost = 0.0;
    for (size_t i = 0; i < d.x.size(); ++i) {
        const double res = d.y[i] - model_at(p, d.x[i]);
        cost += d.w[i] * res * res;
    }
    return cost;
}

// Gaussian elimination with partial pivoting; false on a vanishing pivot.
bool solve4(std::array<std::array<double, 4>, 4> a, std::array<double, 4> b, Params& out) {
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 4; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        if (std::abs(a[pivot][col]) < 1e-300) return false;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int row = col + 1; row < 4; ++row) {
            const double f = a[row][col] / a[col][col];
            for (int k = col; k < 4; ++k) a[row][k] -= f * a[col][k];
            b[row] -= f * b[col];
        }
    }
    for (int row = 3; row >= 0; --row) {
        double s = b[row];
        for (int k = row + 1; k < 4; ++k) s -= a[row][k] * out[k];
        out[row] = s / a[row][row];
    }
    return true;
}

bool invert4(const std::array<std::array<double, 4>, 4>& a, std::array<std::array<double, 4>, 4>& inv) {
    for (int col = 0; col < 4; ++col) {
        std::array<double, 4> unit{0.0, 0.0, 0.0, 0.0};
        unit[col] = 1.0;
        Params column;
        if (!solve4(a, unit, column)) return false;
        for (int row = 0; row < 4; ++row) inv[row][col] = column[row];
    }
    return true;
}

void normal_equations(const Design& d, const Params& p, std::array<std::array<double, 4>, 4>& a,
                      std::array<double, 4>& g) {
    a = {};
    g = {};
    for (size_t i = 0; i < d.x.size(); ++i) {
        const std::array<double, 4> jac = gradient_at(p, d.x[i]);
        const double res = d.y[i] - model_at(p, d.x[i]);
        for (int q = 0; q < 4; ++q) {
            g[q] += d.w[i] * jac[q] * res;
            for (int s = q; s < 4; ++s) a[q][s] += d.w[i] * jac[q] * jac[s];
        }
    }
    for (int q = 0; q < 4; ++q)
        for (int s = 0; s < q; ++s) a[q][s] = a[s][q];
}

Params initial_guess(const Design& d) {
    const size_t n = d.x.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&d](size_t a, size_t b) { return d.x[a] < d.x[b]; });

    const size_t n_outer = std::max<size_t>(1, n / 8);
    double baseline = 0.0;
    for (size_t i = 0; i < n_outer; ++i)
        baseline += d.y[order[i]] + d.y[order[n - 1 - i]];
    baseline /= static_cast<double>(2 * n_outer);

    // window-of-three smoothing before locating the minimum
    std::vector<double> smooth(n);
    for (size_t i = 0; i < n; ++i) {
        double acc = d.y[order[i]];
        int cnt = 1;
        if (i > 0) { acc += d.y[order[i - 1]]; ++cnt; }
        if (i + 1 < n) { acc += d.y[order[i + 1]]; ++cnt; }
        smooth[i] = acc / cnt;
    }
    const size_t imin = std::min_element(smooth.begin(), smooth.end()) - smooth.begin();
    const double center = d.x[order[imin]];
    const double span = d.x[order[n - 1]] - d.x[order[0]];

    double vis = 0.1;
    if (baseline > 0.0) vis = std::clamp((baseline - smooth[imin]) / baseline, 0.01, 1.0);

    const double half_level = baseline - 0.5 * (baseline - smooth[imin]);
    double left = center - span / 4.0;
    double right = center + span / 4.0;
    for (size_t i = imin; i-- > 0;)
        if (smooth[i] >= half_level) { left = d.x[order[i]]; break; }
    for (size_t i = imin + 1; i < n; ++i)
        if (smooth[i] >= half_level) { right = d.x[order[i]]; break; }
    double width = (right - left) / (2.0 * std::sqrt(std::log(2.0)));
    if (!(width > 0.0)) width = std::max(span / 4.0, 1e-12);

    return {std::max(baseline, 1e-12), vis, width, center};
}

}  // namespace

DipFitResult fit_dip(const DipDataset& data, const std::optional<DipModelParams>& guess) {
    if (data.points.size() < 6)
        throw degenerate_data_error("fit_dip: need at least 6 points for a 4-parameter fit");
    const bool flat = std::all_of(data.points.begin(), data.points.end(),
                                  [&data](const DipPoint& p) {
                                      return p.counts == data.points.front().counts;
                                  });
    if (flat) throw degenerate_data_error("fit_dip: counts are flat; nothing to fit");

    const Design d = make_design(data);
    Params p;
    if (guess) {
        p = {guess->baseline_cps, guess->visibility, guess->half_width_1e_m, guess->center_m};
        if (!(p[2] > 0.0)) throw std::invalid_argument("fit_dip: guess width must be positive");
    } else {
        p = initial_guess(d);
    }

    double cost = weighted_cost(d, p);
    double damping = 1e-3;
    DipFitResult result;
    bool converged = false;
    int iter = 0;
    for (; iter < 200 && !converged; ++iter) {
        std::array<std::array<double, 4>, 4> a;
        std::array<double, 4> g;
        normal_equations(d, p, a, g);
        std::array<std::array<double, 4>, 4> damped = a;
        for (int q = 0; q < 4; ++q) damped[q][q] *= 1.0 + damping;
        Params step;
        if (!solve4(damped, g, step)) {
            damping = std::min(damping * 10.0, 1e12);
            continue;
        }
        Params cand{p[0] + step[0], p[1] + step[1], p[2] + step[2], p[3] + step[3]};
        if (!(cand[2] > 0.0)) {
            damping = std::min(damping * 10.0, 1e12);
            continue;
        }
        const double cand_cost = weighted_cost(d, cand);
        if (cand_cost <= cost) {
            double rel = 0.0;
            for (int q = 0; q < 4; ++q)
                rel = std::max(rel, std::abs(step[q]) / (std::abs(cand[q]) + 1e-30));
            p = cand;
            cost = cand_cost;
            damping = std::max(damping / 10.0, 1e-12);
            if (rel < 1e-10) converged = true;
        } else {
            damping = std::min(damping * 10.0, 1e12);
        }
    }

    result.baseline_cps = p[0];
    result.visibility = p[1];
    result.half_width_1e_m = p[2];
    result.center_m = p[3];
    result.rss = cost;
    result.iterations = iter;
    result.converged = converged;

    std::array<std::array<double, 4>, 4> a;
    std::array<double, 4> g;
    normal_equations(d, p, a, g);
    std::array<std::array<double, 4>, 4> cov;
    const double dof = static_cast<double>(data.points.size()) - 4.0;
    if (invert4(a, cov) && dof > 0.0) {
        const double chi2_red = cost / dof;
        result.baseline_sigma = std::sqrt(std::max(0.0, cov[0][0] * chi2_red));
        result.visibility_sigma = std::sqrt(std::max(0.0, cov[1][1] * chi2_red));
        result.half_width_sigma = std::sqrt(std::max(0.0, cov[2][2] * chi2_red));
        result.center_sigma = std::sqrt(std::max(0.0, cov[3][3] * chi2_red));
    } else {
        result.degenerate = true;
    }

    if (result.visibility < -0.1 || result.visibility > 1.1 ||
        result.visibility <= 2.0 * result.visibility_sigma)
        result.degenerate = true;
    return result;
}

}  // namespace homsim::analysis
