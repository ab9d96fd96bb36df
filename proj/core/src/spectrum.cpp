#include "loccmc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "loccmc/error.hpp"

namespace loccmc {

namespace {

void check_entries(const std::vector<double>& v) {
    if (v.empty()) throw InvalidArgument("spectrum must have at least one component");
    for (double x : v) {
        if (!std::isfinite(x) || x < 0.0) {
            throw InvalidArgument("spectrum components must be finite and nonnegative");
        }
    }
}

}  // namespace

Spectrum Spectrum::from_probabilities(std::vector<double> probabilities) {
    check_entries(probabilities);
    std::sort(probabilities.begin(), probabilities.end(), std::greater<>());
    // Summing smallest-first keeps the rounding well below the tolerance.
    const double total = std::accumulate(probabilities.rbegin(), probabilities.rend(), 0.0);
    if (std::abs(total - 1.0) > kSumTolerance) {
        throw InvalidArgument("spectrum components must sum to 1");
    }
    return Spectrum(std::move(probabilities));
}

Spectrum Spectrum::from_weights(std::vector<double> weights) {
    check_entries(weights);
    std::sort(weights.begin(), weights.end(), std::greater<>());
    const double total = std::accumulate(weights.rbegin(), weights.rend(), 0.0);
    if (!(total > 0.0)) throw InvalidArgument("spectrum weights must have positive sum");
    for (double& w : weights) w /= total;
    return Spectrum(std::move(weights));
}

}  // namespace loccmc
