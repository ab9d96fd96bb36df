#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace loccmc {

/// A probability vector on the simplex, stored in decreasing order.
///
/// This is the entanglement spectrum (squared Schmidt coefficients) of one
/// side of a bipartite pure state. Construction enforces nonnegativity,
/// ordering and unit sum (within `kSumTolerance`).
class Spectrum {
public:
    static constexpr double kSumTolerance = 1e-12;

    /// Sorts `probabilities` into decreasing order. Throws InvalidArgument if
    /// any entry is negative or non-finite, or if the entries do not sum to 1.
    static Spectrum from_probabilities(std::vector<double> probabilities);

    /// Normalizes nonnegative `weights` by their sum, then sorts decreasing.
    static Spectrum from_weights(std::vector<double> weights);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {}

    std::vector<double> values_;
};

}  // namespace loccmc
