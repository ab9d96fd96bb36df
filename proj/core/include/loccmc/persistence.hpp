#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace loccmc {

/// Partial-sum process S_k = S_{k-1} + delta_k, S_0 = 0, with steps
/// delta_k = y_k - x_k.
struct BridgeProcess {
    std::vector<double> steps;
    std::vector<double> partial_sums;

    std::size_t size() const noexcept { return steps.size(); }
};

/// An endpoint within this distance of zero is treated as a bridge and
/// pinned to exactly zero.
inline constexpr double kBridgeEndpointTolerance = 1e-10;

/// Builds the process from two probability vectors. With `ordered` the
/// decreasing rearrangements are used (x < y iff the process never goes
/// negative); otherwise the components are taken in the order given.
BridgeProcess build_bridge(std::span<const double> x, std::span<const double> y, bool ordered);

/// Number of k in 1..n with S_k >= -tol (`at_zero_counts`) or S_k > tol.
std::size_t occupation_count(const BridgeProcess& bridge, bool at_zero_counts = true,
                             double tol = 0.0);

enum class ReferenceProcess { walk, bridge };

/// Sparre Andersen law of the number of nonnegative partial sums among
/// S_1..S_n. `walk`: symmetric continuous i.i.d. steps,
/// P(N_n = k) = C(2k,k) C(2(n-k),n-k) / 4^n. `bridge`: exchangeable steps
/// summing to zero, uniform on {1..n} with P(N_n = 0) = 0.
std::vector<double> sparre_andersen_pmf(int n, ReferenceProcess kind);

/// Limit law of N_n / n for the walk: (2/pi) asin(sqrt(t)).
double arcsine_cdf(double t);

}  // namespace loccmc
