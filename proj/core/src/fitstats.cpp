#include "loccmc/fitstats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "loccmc/error.hpp"
#include "loccmc/random.hpp"

namespace loccmc {

namespace {

struct LineFit {
    double intercept, slope;
    double var_intercept, var_slope;
    double rss;
};

// Weighted straight-line fit y = intercept + slope * x.
LineFit weighted_line(std::span<const double> x, std::span<const double> y,
                      std::span<const double> w) {
    double s = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
        sxx += w[i] * x[i] * x[i];
        sxy += w[i] * x[i] * y[i];
    }
    const double det = s * sxx - sx * sx;
    if (!(det > 0.0)) throw InvalidArgument("power-law fit needs at least two distinct n values");
    LineFit f;
    f.slope = (s * sxy - sx * sy) / det;
    f.intercept = (sxx * sy - sx * sxy) / det;
    f.var_slope = s / det;
    f.var_intercept = sxx / det;
    f.rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        f.rss += w[i] * r * r;
    }
    return f;
}

double sample_stddev(const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (v.size() - 1));
}

}  // namespace

PowerLawFit fit_power_law(std::span<const DecayPoint> points, std::size_t window,
                          std::optional<BootstrapOptions> bootstrap) {
    if (window < 2) throw InvalidArgument("fit window must contain at least two points");
    if (points.size() < 2) throw InvalidArgument("power-law fit needs at least two points");
    std::vector<DecayPoint> sorted(points.begin(), points.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const DecayPoint& a, const DecayPoint& b) { return a.n < b.n; });
    const std::size_t k = std::min(window, sorted.size());
    const std::span<const DecayPoint> used(sorted.data() + sorted.size() - k, k);

    std::vector<double> x(k), y(k), w(k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto& pt = used[i];
        if (!(pt.n > 0.0)) throw InvalidArgument("power-law fit needs n > 0");
        if (!(pt.p_hat > 0.0)) throw InvalidArgument("power-law fit needs p_hat > 0 in the window");
        if (!(pt.std_error > 0.0)) throw InvalidArgument("power-law fit needs stderr > 0 in the window");
        x[i] = std::log(pt.n);
        y[i] = std::log(pt.p_hat);
        const double rel = pt.std_error / pt.p_hat;
        w[i] = 1.0 / (rel * rel);
    }
    const LineFit line = weighted_line(x, y, w);

    PowerLawFit fit;
    fit.theta = -line.slope;
    fit.b = std::exp(line.intercept);
    fit.theta_err = std::sqrt(line.var_slope);
    fit.b_err = fit.b * std::sqrt(line.var_intercept);
    fit.residual_norm = std::sqrt(line.rss);
    for (const auto& pt : used) fit.fit_window.push_back(pt.n);

    if (bootstrap) {
        if (bootstrap->replicates < 2) throw InvalidArgument("bootstrap needs >= 2 replicates");
        RandomStream rng(bootstrap->seed, 0);
        std::vector<double> thetas, bs;
        std::vector<double> yb(k);
        for (int rep = 0; rep < bootstrap->replicates; ++rep) {
            bool valid = true;
            for (std::size_t i = 0; i < k; ++i) {
                const double p = used[i].p_hat + used[i].std_error * rng.normal();
                if (!(p > 0.0)) {
                    valid = false;
                    break;
                }
                yb[i] = std::log(p);
            }
            if (!valid) continue;
            const LineFit b = weighted_line(x, yb, w);
            thetas.push_back(-b.slope);
            bs.push_back(std::exp(b.intercept));
        }
        if (thetas.size() >= 2) {
            fit.theta_err_bootstrap = sample_stddev(thetas);
            fit.b_err_bootstrap = sample_stddev(bs);
        }
    }
    return fit;
}

double ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf) {
    if (sorted.empty()) throw InvalidArgument("KS statistic needs a nonempty sample");
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw InvalidArgument("KS statistic needs nonempty samples");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

double ks_pvalue(double d, double n_eff) {
    if (!(n_eff > 0.0)) throw InvalidArgument("KS p-value needs a positive sample size");
    const double root = std::sqrt(n_eff);
    const double lambda = (root + 0.12 + 0.11 / root) * d;
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0, sign = 1.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed,
                                std::span<const double> expected) {
    if (observed.size() != expected.size() || observed.size() < 2) {
        throw InvalidArgument("chi-square test needs matching observed/expected with >= 2 cells");
    }
    const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
    const double mass = std::accumulate(expected.begin(), expected.end(), 0.0);
    if (!(total > 0.0) || !(mass > 0.0)) throw InvalidArgument("chi-square test needs positive totals");
    ChiSquareResult r;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = total * expected[i] / mass;
        if (!(e > 0.0)) throw InvalidArgument("chi-square test needs positive expected counts");
        const double diff = static_cast<double>(observed[i]) - e;
        r.statistic += diff * diff / e;
    }
    r.dof = static_cast<int>(observed.size()) - 1;
    r.p_value = boost::math::gamma_q(0.5 * r.dof, 0.5 * r.statistic);
    return r;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw InvalidArgument("total variation needs equal lengths");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

}  // namespace loccmc
