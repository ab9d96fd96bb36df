#include "loccmc/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "loccmc/error.hpp"

namespace loccmc {

BridgeProcess build_bridge(std::span<const double> x, std::span<const double> y, bool ordered) {
    if (x.size() != y.size()) throw InvalidArgument("bridge inputs must have the same length");
    std::vector<double> xs(x.begin(), x.end());
    std::vector<double> ys(y.begin(), y.end());
    if (ordered) {
        std::sort(xs.begin(), xs.end(), std::greater<>());
        std::sort(ys.begin(), ys.end(), std::greater<>());
    }
    BridgeProcess b;
    b.steps.resize(xs.size());
    b.partial_sums.resize(xs.size());
    double s = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        b.steps[k] = ys[k] - xs[k];
        s += b.steps[k];
        b.partial_sums[k] = s;
    }
    if (!b.partial_sums.empty() && std::abs(b.partial_sums.back()) <= kBridgeEndpointTolerance) {
        b.partial_sums.back() = 0.0;
    }
    return b;
}

std::size_t occupation_count(const BridgeProcess& bridge, bool at_zero_counts, double tol) {
    if (at_zero_counts) {
        return static_cast<std::size_t>(std::count_if(
            bridge.partial_sums.begin(), bridge.partial_sums.end(),
            [tol](double s) { return s >= -tol; }));
    }
    return static_cast<std::size_t>(std::count_if(bridge.partial_sums.begin(),
                                                  bridge.partial_sums.end(),
                                                  [tol](double s) { return s > tol; }));
}

std::vector<double> sparre_andersen_pmf(int n, ReferenceProcess kind) {
    if (n < 1) throw InvalidArgument("Sparre Andersen law needs n >= 1");
    std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
    if (kind == ReferenceProcess::bridge) {
        for (int k = 1; k <= n; ++k) pmf[k] = 1.0 / n;
        return pmf;
    }
    // a_k = C(2k, k) / 4^k by the ratio recurrence; keeps rounding error at
    // O(sqrt(k) eps) where the log-gamma route loses O(k eps)
    std::vector<double> a(static_cast<std::size_t>(n) + 1);
    a[0] = 1.0;
    for (int k = 1; k <= n; ++k) a[k] = a[k - 1] * (2.0 * k - 1.0) / (2.0 * k);
    for (int k = 0; k <= n; ++k) pmf[k] = a[k] * a[n - k];
    return pmf;
}

double arcsine_cdf(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("arcsine_cdf needs t in [0, 1]");
    return 2.0 / std::numbers::pi * std::asin(std::sqrt(t));
}

}  // namespace loccmc
