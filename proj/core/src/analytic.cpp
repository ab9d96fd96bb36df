#include "loccmc/analytic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "loccmc/error.hpp"

namespace loccmc::analytic {

namespace {

double log_q2m_prefactor(int m) {
    return std::lgamma(2.0 * m) - std::lgamma(static_cast<double>(m)) - std::lgamma(m - 1.0);
}

// Up to this m, fcont_n2 expands the integral into a polynomial in p with
// 100-digit coefficients, which gives correctly rounded values. The monomial
// expansion cancels about 0.8 m digits, so larger m use quadrature.
constexpr int kExactFcontMaxM = 32;

using Wide = boost::multiprecision::cpp_bin_float_100;

// Coefficients c_j with fcont(p) = sum_j c_j p^j.
std::vector<Wide> fcont_coefficients(int m) {
    // q(s) = K sum_i a_i s^i with sum_i a_i s^i = s^{m-2} (1-s)^{m-2} (1 - 4s + 4s^2)
    const int k = m - 2;
    std::vector<Wide> binom(k + 1);
    binom[0] = 1;
    for (int i = 1; i <= k; ++i) binom[i] = binom[i - 1] * (k - i + 1) / i;
    std::vector<Wide> a(2 * k + 3, Wide(0));
    const int edge[3] = {1, -4, 4};
    for (int i = 0; i <= k; ++i) {
        const Wide term = (i % 2 ? -binom[i] : binom[i]);
        for (int e = 0; e < 3; ++e) a[k + i + e] += term * edge[e];
    }
    // K = (2m-1)! / ((m-1)! (m-2)!)
    Wide K = 1;
    for (int i = m; i <= 2 * m - 1; ++i) K *= i;
    for (int i = 2; i <= m - 2; ++i) K /= i;
    std::vector<Wide> c(a.size(), Wide(0));
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] == 0) continue;
        Wide inner = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            const int power = static_cast<int>(i + j) + 2;
            inner += a[i] / (Wide(power) * boost::multiprecision::ldexp(Wide(1), power));
        }
        c[j] = K * K * a[j] * inner;
    }
    return c;
}

const std::vector<Wide>& cached_fcont_coefficients(int m) {
    static std::mutex mutex;
    static std::map<int, std::vector<Wide>> cache;
    const std::lock_guard lock(mutex);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, fcont_coefficients(m)).first;
    return it->second;
}

}  // namespace

double q2m_density(double s, int m) {
    if (m < 2) throw InvalidArgument("q2m_density needs m >= 2");
    if (s < 0.0 || s > 0.5) return 0.0;
    const double base = s - s * s;
    const double edge = (1.0 - 2.0 * s) * (1.0 - 2.0 * s);
    if (m == 2) return std::exp(log_q2m_prefactor(m)) * edge;
    if (base == 0.0) return 0.0;
    return std::exp(log_q2m_prefactor(m) + (m - 2) * std::log(base)) * edge;
}

double fcont_n2(double p, int m) {
    if (m < 2) throw InvalidArgument("fcont_n2 needs m >= 2");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("fcont_n2 needs p in [0, 1]");
    if (m <= kExactFcontMaxM) {
        const auto& c = cached_fcont_coefficients(m);
        Wide sum = 0;
        const Wide x = p;
        for (auto it = c.rbegin(); it != c.rend(); ++it) sum = sum * x + *it;
        return static_cast<double>(sum);
    }
    auto integrand = [p, m](double t) { return t * q2m_density(t, m) * q2m_density(p * t, m); };
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 31>::integrate(integrand, 0.0, 0.5, 20, 1e-14);
}

double fmin_balanced_density(double x, int n) {
    if (n < 2) throw InvalidArgument("fmin_balanced_density needs n >= 2");
    if (x < 0.0 || x > 1.0 / n) return 0.0;
    const double nn = static_cast<double>(n) * n;
    return n * (nn - 1.0) * std::pow(1.0 - n * x, nn - 2.0);
}

double fmin_balanced_cdf(double x, int n) {
    if (n < 2) throw InvalidArgument("fmin_balanced_cdf needs n >= 2");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0 / n) return 1.0;
    const double nn = static_cast<double>(n) * n;
    return -std::expm1((nn - 1.0) * std::log1p(-n * x));
}

double fmin_balanced_moment(int k, int n) {
    if (k < 0) throw InvalidArgument("moment order must be nonnegative");
    if (n < 2) throw InvalidArgument("fmin_balanced_moment needs n >= 2");
    const double nn = static_cast<double>(n) * n;
    return std::exp(std::lgamma(nn) + std::lgamma(k + 1.0) - k * std::log(static_cast<double>(n)) -
                    std::lgamma(nn + k));
}

double fmin_balanced_variance(int n) {
    if (n < 2) throw InvalidArgument("fmin_balanced_variance needs n >= 2");
    const double nn = static_cast<double>(n) * n;
    return (nn - 1.0) / (nn + 1.0) / (nn * nn * nn);
}

std::pair<double, double> marchenko_pastur_edges(double c) {
    if (!(c >= 1.0)) throw InvalidArgument("Marchenko-Pastur ratio must satisfy c >= 1");
    const double r = 1.0 / std::sqrt(c);
    return {(1.0 - r) * (1.0 - r), (1.0 + r) * (1.0 + r)};
}

double marchenko_pastur_density(double x, double c) {
    const auto [a, b] = marchenko_pastur_edges(c);
    if (x == 0.0 && a == 0.0) throw InvalidArgument("Marchenko-Pastur density has a pole at 0 for c = 1");
    if (x < a || x > b) return 0.0;
    return c / (2.0 * std::numbers::pi * x) * std::sqrt((x - a) * (b - x));
}

double scaling_factor(int n, double c) {
    if (n < 1) throw InvalidArgument("scaling_factor needs n >= 1");
    if (!(c >= 1.0)) throw InvalidArgument("scaling_factor needs c >= 1; map c -> 1/c first");
    if (c == 1.0) return 1.0;
    return std::pow(c, 1.0 / 6.0) * std::pow(std::abs(1.0 - std::sqrt(c)), 2.0 / 3.0) *
           std::pow(static_cast<double>(n), 2.0 / 3.0);
}

LaguerreLogConstants laguerre_log_constants(int n, int m) {
    if (n < 1 || m < n) throw InvalidArgument("Laguerre constants need 1 <= n <= m");
    double log_product = 0.0;
    for (int j = 1; j <= n; ++j) {
        log_product += std::lgamma(j + 1.0) + std::lgamma(static_cast<double>(m - n + j));
    }
    const double nm = static_cast<double>(n) * m;
    return {std::lgamma(nm) - log_product, -nm * std::numbers::ln2 - log_product};
}

TracyWidomConstants tracy_widom_constants(int n, double c) {
    if (n < 1 || !(c > 1.0)) throw InvalidArgument("Tracy-Widom constants need n >= 1, c > 1");
    const double gap = std::abs(1.0 - std::sqrt(c));
    return {n * gap * gap,
            std::pow(gap, 4.0 / 3.0) / std::pow(c, 1.0 / 6.0) * std::cbrt(static_cast<double>(n))};
}

}  // namespace loccmc::analytic
