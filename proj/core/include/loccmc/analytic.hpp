#pragma once

#include <utility>

namespace loccmc::analytic {

/// Density of the smaller Schmidt weight for n = 2:
///   Gamma(2m) / (Gamma(m) Gamma(m-1)) (s - s^2)^{m-2} (1 - 2s)^2 on [0, 1/2].
/// Requires m >= 2.
double q2m_density(double s, int m);

/// Continuous part of the density of the conversion probability for n = 2,
///   int_0^{1/2} t q(t) q(p t) dt,
/// by adaptive Gauss-Kronrod quadrature. Mass 1/2 on [0, 1].
double fcont_n2(double p, int m);

/// Density of the smallest weight for m = n: n(n^2-1)(1-nx)^{n^2-2} on [0, 1/n].
double fmin_balanced_density(double x, int n);

/// CDF of the smallest weight for m = n: 1 - (1 - nx)^{n^2-1}.
double fmin_balanced_cdf(double x, int n);

/// k-th moment Gamma(n^2) Gamma(k+1) / (n^k Gamma(n^2+k)).
double fmin_balanced_moment(int k, int n);

/// Variance (1/n^6)(n^2-1)/(n^2+1).
double fmin_balanced_variance(int n);

/// Support [a, b] of the Marchenko-Pastur law for ratio c >= 1:
/// a = (1 - 1/sqrt(c))^2, b = (1 + 1/sqrt(c))^2.
std::pair<double, double> marchenko_pastur_edges(double c);

/// rho_c(x) = c / (2 pi x) sqrt((x - a)(b - x)) on [a, b]. At c = 1 the
/// density has an x^{-1/2} pole at the origin and x = 0 throws.
double marchenko_pastur_density(double x, double c);

/// Inverse relative fluctuation of the smallest weight:
/// 1 at c = 1, c^{1/6} |1 - sqrt(c)|^{2/3} n^{2/3} for c > 1.
double scaling_factor(int n, double c);

struct LaguerreLogConstants {
    double log_fixed_trace;  ///< log c_{n,m}
    double log_wishart;      ///< log C_{n,m}
};

/// Normalization constants of the fixed-trace and Wishart joint eigenvalue
/// densities, in log domain.
LaguerreLogConstants laguerre_log_constants(int n, int m);

struct TracyWidomConstants {
    double centering;  ///< n (1 - sqrt(c))^2
    double scale;      ///< |1 - sqrt(c)|^{4/3} c^{-1/6} n^{1/3}
};

/// Soft-edge centering and scale of the smallest Wishart eigenvalue for
/// m = c n, c > 1. The Tracy-Widom law itself is not evaluated.
TracyWidomConstants tracy_widom_constants(int n, double c);

}  // namespace loccmc::analytic
