#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "loccmc/random.hpp"
#include "loccmc/spectrum.hpp"

namespace loccmc {

/// Degrees of freedom of the chi-distributed entries of the n x n lower
/// bidiagonal factor A whose A A^T has Laguerre unitary (beta = 2)
/// eigenvalues with parameter m.
///
///   diag: chi_{2m}, chi_{2m-2}, ..., chi_{2m-2(n-1)}
///   sub:  chi_{2(n-1)}, ..., chi_2
class BidiagonalModel {
public:
    /// Requires 1 <= n <= m.
    BidiagonalModel(int n, int m);

    int n() const noexcept { return n_; }
    int m() const noexcept { return m_; }
    const std::vector<int>& diag_dof() const noexcept { return diag_dof_; }
    const std::vector<int>& sub_dof() const noexcept { return sub_dof_; }

private:
    int n_;
    int m_;
    std::vector<int> diag_dof_;
    std::vector<int> sub_dof_;
};

/// Symmetric tridiagonal matrix: diagonal `d` (size n), off-diagonal `e`
/// (size n - 1).
struct SymTridiagonal {
    std::vector<double> d;
    std::vector<double> e;

    std::size_t size() const noexcept { return d.size(); }
    double trace() const noexcept;
};

/// Gamma(shape, scale) by Marsaglia-Tsang; shape < 1 uses the
/// U^{1/shape} boost.
double sample_gamma(double shape, double scale, RandomStream& rng);

/// One draw of chi_dof, as the square root of a Gamma(dof/2, 2) draw.
double sample_chi(double dof, RandomStream& rng);

/// Forms A A^T for the lower bidiagonal A with diagonal `diag` and
/// subdiagonal `sub`:
///   d[0] = x0^2, d[i] = x_i^2 + y_{i-1}^2, e[i] = x_i y_i.
SymTridiagonal bidiagonal_gram(std::span<const double> diag, std::span<const double> sub);

/// Draws the bidiagonal factor for `model` and returns A A^T.
SymTridiagonal sample_tridiagonal(const BidiagonalModel& model, RandomStream& rng);

/// All eigenvalues of a symmetric tridiagonal matrix, ascending.
///
/// Implicit QL with Wilkinson shifts, eigenvalues only, O(n^2). An
/// off-diagonal entry is deflated once |e[i]| <= eps (|d[i]| + |d[i+1]|).
/// Throws NumericalFailure carrying the eigenvalue index if one eigenvalue
/// needs more than `kMaxSweeps` iterations.
std::vector<double> eigvals_symtrid(SymTridiagonal t);

inline constexpr int kMaxSweeps = 50;

/// Entanglement spectrum of a Haar-random pure state in C^n (x) C^m,
/// sampled through the tridiagonal model. Requires 1 <= n <= m.
Spectrum sample_spectrum(int n, int m, RandomStream& rng);

inline constexpr int kDefaultDenseCap = 64;

/// Same law through the ordinary route: eigenvalues of A A^dagger / Tr for
/// an n x m complex Gaussian A. Throws ResourceLimit if n > `cap`.
Spectrum sample_spectrum_dense(int n, int m, RandomStream& rng, int cap = kDefaultDenseCap);

}  // namespace loccmc
