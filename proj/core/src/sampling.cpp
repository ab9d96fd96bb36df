#include "loccmc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "loccmc/error.hpp"

namespace loccmc {

BidiagonalModel::BidiagonalModel(int n, int m) : n_(n), m_(m) {
    if (n < 1 || m < n) {
        throw InvalidArgument("bidiagonal model requires 1 <= n <= m");
    }
    diag_dof_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) diag_dof_[i] = 2 * m - 2 * i;
    sub_dof_.resize(static_cast<std::size_t>(n - 1));
    for (int i = 0; i + 1 < n; ++i) sub_dof_[i] = 2 * (n - 1 - i);
}

double SymTridiagonal::trace() const noexcept {
    return std::accumulate(d.begin(), d.end(), 0.0);
}

double sample_gamma(double shape, double scale, RandomStream& rng) {
    if (!(shape > 0.0) || !(scale > 0.0)) {
        throw InvalidArgument("gamma shape and scale must be positive");
    }
    if (shape < 1.0) {
        const double boost = std::pow(rng.uniform(), 1.0 / shape);
        return boost * sample_gamma(shape + 1.0, scale, rng);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

double sample_chi(double dof, RandomStream& rng) {
    if (!(dof > 0.0)) throw InvalidArgument("chi degrees of freedom must be positive");
    return std::sqrt(sample_gamma(0.5 * dof, 2.0, rng));
}

SymTridiagonal bidiagonal_gram(std::span<const double> diag, std::span<const double> sub) {
    const std::size_t n = diag.size();
    if (n == 0 || sub.size() + 1 != n) {
        throw InvalidArgument("bidiagonal factor needs n diagonal and n-1 subdiagonal entries");
    }
    SymTridiagonal t;
    t.d.resize(n);
    t.e.resize(n - 1);
    t.d[0] = diag[0] * diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        t.d[i] = diag[i] * diag[i] + sub[i - 1] * sub[i - 1];
    }
    for (std::size_t i = 0; i + 1 < n; ++i) t.e[i] = diag[i] * sub[i];
    return t;
}

SymTridiagonal sample_tridiagonal(const BidiagonalModel& model, RandomStream& rng) {
    const auto n = static_cast<std::size_t>(model.n());
    std::vector<double> x(n), y(n - 1);
    for (std::size_t i = 0; i < n; ++i) x[i] = sample_chi(model.diag_dof()[i], rng);
    for (std::size_t i = 0; i + 1 < n; ++i) y[i] = sample_chi(model.sub_dof()[i], rng);
    return bidiagonal_gram(x, y);
}

namespace {

inline double pythag(double a, double b) noexcept {
    const double aa = std::abs(a), ab = std::abs(b);
    if (aa > 1e150 || ab > 1e150) return std::hypot(a, b);
    return std::sqrt(a * a + b * b);
}

}  // namespace

std::vector<double> eigvals_symtrid(SymTridiagonal t) {
    const std::size_t n = t.d.size();
    if (n == 0 || t.e.size() + 1 != n) {
        throw InvalidArgument("tridiagonal matrix needs n diagonal and n-1 off-diagonal entries");
    }
    std::vector<double>& d = t.d;
    // Pad so e[n-1] = 0 terminates the deflation scan.
    std::vector<double> e(n, 0.0);
    std::copy(t.e.begin(), t.e.end(), e.begin());
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                if (std::abs(e[m]) <= eps * (std::abs(d[m]) + std::abs(d[m + 1]))) break;
            }
            if (m == l) break;
            if (++iter > kMaxSweeps) {
                throw NumericalFailure(
                    "tridiagonal QL failed to converge for eigenvalue " + std::to_string(l), l);
            }
            // Wilkinson shift from the leading 2x2 block.
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = pythag(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                const double b = c * e[i];
                r = pythag(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    std::sort(d.begin(), d.end());
    return std::move(d);
}

namespace {

Spectrum spectrum_from_eigenvalues(std::vector<double> eigenvalues) {
    // Rounding can push a near-zero eigenvalue of a PSD matrix below zero.
    for (double& v : eigenvalues) v = std::max(v, 0.0);
    return Spectrum::from_weights(std::move(eigenvalues));
}

}  // namespace

Spectrum sample_spectrum(int n, int m, RandomStream& rng) {
    const BidiagonalModel model(n, m);
    return spectrum_from_eigenvalues(eigvals_symtrid(sample_tridiagonal(model, rng)));
}

Spectrum sample_spectrum_dense(int n, int m, RandomStream& rng, int cap) {
    if (n < 1 || m < n) throw InvalidArgument("dense sampler requires 1 <= n <= m");
    if (n > cap) {
        throw ResourceLimit("dense sampler refuses n = " + std::to_string(n) +
                            " above cap " + std::to_string(cap));
    }
    Eigen::MatrixXcd a(n, m);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            a(i, j) = {re, im};
        }
    }
    const Eigen::MatrixXcd gram = a * a.adjoint();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("dense Hermitian eigensolver failed", 0);
    }
    const Eigen::VectorXd& ev = solver.eigenvalues();
    return spectrum_from_eigenvalues(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

}  // namespace loccmc
