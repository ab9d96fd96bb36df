#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "loccmc/spectrum.hpp"

namespace loccmc {

/// Absolute tolerance applied to partial sums in majorization tests.
inline constexpr double kMajorizationTolerance = 1e-12;

struct ComparisonResult {
    bool x_majorized_by_y = false;
    bool y_majorized_by_x = false;
    bool incomparable = true;
};

/// (1/n, ..., 1/n): majorized by every spectrum.
Spectrum uniform_spectrum(std::size_t n);

/// (1, 0, ..., 0): majorizes every spectrum.
Spectrum pure_spectrum(std::size_t n);

/// Suffix sums E_k = sum_{j>=k} x_j (k = 1..n) by backward accumulation.
/// E_1 is set to exactly 1.
std::vector<double> suffix_sums(const Spectrum& x);

/// Evaluates x < y and y < x in the majorization preorder. Throws
/// InvalidArgument on length mismatch.
ComparisonResult majorizes(const Spectrum& x, const Spectrum& y,
                           double tol = kMajorizationTolerance);

/// Maximal probability of converting a state with spectrum x into one with
/// spectrum y by LOCC: min_k E_k(x) / E_k(y) over k with E_k(y) > 0.
/// Returns exactly 1 whenever x is majorized by y (within `tol`).
double vidal_pi(const Spectrum& x, const Spectrum& y, double tol = kMajorizationTolerance);

/// Allocation-free variant on decreasing, normalized spans.
double vidal_pi(std::span<const double> x_desc, std::span<const double> y_desc,
                double tol = kMajorizationTolerance);

/// True iff x is majorized by p y + (1 - p) e with e = (1, 0, ..., 0).
bool convex_certificate(const Spectrum& x, const Spectrum& y, double p,
                        double tol = kMajorizationTolerance);

}  // namespace loccmc
