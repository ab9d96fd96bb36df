#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace loccmc {

/// One point of a decay curve: probability estimate at size n with its
/// standard error.
struct DecayPoint {
    double n = 0.0;
    double p_hat = 0.0;
    double std_error = 0.0;
};

/// p ~ b / n^theta fitted on a window of points.
struct PowerLawFit {
    double theta = 0.0;
    double b = 0.0;
    double theta_err = 0.0;  ///< from the weighted normal equations
    double b_err = 0.0;      ///< delta method on log b
    std::vector<double> fit_window;
    double residual_norm = 0.0;  ///< sqrt of the weighted residual sum of squares
    /// Parametric bootstrap errors; present only when requested.
    std::optional<double> theta_err_bootstrap;
    std::optional<double> b_err_bootstrap;
};

struct BootstrapOptions {
    int replicates = 1000;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kDefaultFitWindow = 4;

/// Weighted least squares of log p = log b - theta log n over the last
/// `window` points (ordered by n), with weights (p / stderr)^2. Throws
/// InvalidArgument for fewer than two points, a nonpositive p_hat or a
/// nonpositive stderr in the window.
PowerLawFit fit_power_law(std::span<const DecayPoint> points,
                          std::size_t window = kDefaultFitWindow,
                          std::optional<BootstrapOptions> bootstrap = std::nullopt);

/// One-sample Kolmogorov-Smirnov statistic of an ascending sample against `cdf`.
double ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov statistic of two ascending samples.
double ks_statistic(std::span<const double> sorted_a, std::span<const double> sorted_b);

/// Asymptotic Kolmogorov p-value for statistic `d` at effective sample size
/// `n_eff` (n for one sample, n_a n_b / (n_a + n_b) for two).
double ks_pvalue(double d, double n_eff);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

/// Pearson goodness-of-fit of `observed` counts against cell probabilities
/// `expected` (normalized internally). dof = cells - 1.
ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed,
                                std::span<const double> expected);

/// Total variation distance between two probability vectors.
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace loccmc
