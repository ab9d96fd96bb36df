#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "loccmc/majorization.hpp"
#include "loccmc/moments.hpp"
#include "loccmc/random.hpp"
#include "loccmc/sampling.hpp"

namespace loccmc {

enum class SamplerKind { tridiagonal, dense };

/// Parameters of a Monte Carlo run over M independent pairs of spectra.
///
/// Work is split into chunks of `chunk_size` pairs; chunk i draws from
/// RandomStream(seed, i) and partial results are merged in chunk order, so
/// outputs do not depend on `workers`. Runs with equal (seed, n, m,
/// chunk_size) see the same spectra. If n > m the two dimensions are
/// swapped (the Schmidt spectrum is symmetric under exchange of parties).
struct ExperimentConfig {
    int n = 2;
    int m = 2;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    int workers = 1;
    int histogram_bins = 50;
    std::uint64_t chunk_size = 1024;
    double tolerance = kMajorizationTolerance;
    SamplerKind sampler = SamplerKind::tridiagonal;
    int dense_cap = kDefaultDenseCap;

    /// Resolves m = round(c n).
    static ExperimentConfig with_ratio(int n, double c);

    /// Throws InvalidArgument if the configuration is unusable.
    void validate() const;

    int small_dim() const noexcept { return n < m ? n : m; }
    int large_dim() const noexcept { return n < m ? m : n; }
    /// c = large / small >= 1.
    double ratio() const noexcept {
        return static_cast<double>(large_dim()) / static_cast<double>(small_dim());
    }
};

/// Monte Carlo estimate with its standard error.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

/// Sample distribution of a scalar with a distinguished atom (the value 1
/// for conversion probabilities, 0 for their rescaled complement).
///
/// Up to `kExactSampleLimit` values are kept sorted; above that the
/// non-atom values go to a fixed `kHistogramBins`-bin histogram on [lo, hi].
class EmpiricalDistribution {
public:
    static constexpr std::uint64_t kExactSampleLimit = 1'000'000;
    static constexpr std::size_t kHistogramBins = 10'000;

    EmpiricalDistribution(double atom_value, double lo, double hi, std::uint64_t expected_count);

    void add(double value);
    /// Appends values recorded by another distribution of the same shape.
    void merge(const EmpiricalDistribution& other);
    /// Sorts the exact sample; call once after the last add/merge.
    void finalize();

    std::uint64_t count() const noexcept { return count_; }
    std::uint64_t atom_count() const noexcept { return atom_count_; }
    double atom_value() const noexcept { return atom_value_; }
    double atom_mass() const noexcept;
    double continuous_mass() const noexcept;
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double sum() const noexcept { return sum_; }
    double mean() const noexcept;
    bool is_exact() const noexcept { return exact_; }

    /// All values in ascending order (exact mode only).
    std::span<const double> sorted_samples() const;
    /// Fraction of values <= x.
    double cdf(double x) const;
    /// Counts of non-atom values in `bins` equal cells on [lo, hi].
    std::vector<std::uint64_t> continuous_histogram(std::size_t bins) const;
    /// Histogram-mode cell counts (empty in exact mode).
    const std::vector<std::uint64_t>& raw_histogram() const noexcept { return histogram_; }

    /// Rebuilds a histogram-mode distribution from stored parts.
    static EmpiricalDistribution from_histogram(double atom_value, double lo, double hi,
                                                std::uint64_t atom_count, double sum,
                                                std::vector<std::uint64_t> histogram);
    /// Rebuilds an exact-mode distribution from its ascending samples.
    static EmpiricalDistribution from_samples(double atom_value, double lo, double hi,
                                              std::vector<double> samples);

private:
    double atom_value_;
    double lo_;
    double hi_;
    bool exact_;
    std::uint64_t count_ = 0;
    std::uint64_t atom_count_ = 0;
    double sum_ = 0.0;
    std::vector<double> samples_;
    std::vector<std::uint64_t> histogram_;
};

/// Two-sample KS distance between exact-mode distributions.
double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

/// Per-order-statistic moments of the decreasing spectrum.
struct EigStats {
    std::vector<Moments> components;  ///< index k-1 holds lambda_k

    std::size_t size() const noexcept { return components.size(); }
    std::vector<double> means() const;
    std::vector<double> variances() const;
    /// sqrt(Var) / E for each component.
    std::vector<double> relative_fluctuations() const;
};

/// Counts of N_n, the number of nonnegative partial sums, over M bridges.
struct OccupationHistogram {
    std::vector<std::uint64_t> counts;  ///< index k holds #{N_n = k}, k = 0..n
    std::uint64_t total = 0;

    std::vector<double> pmf() const;
};

/// Draws one spectrum with the configured sampler and dimensions.
Spectrum draw_spectrum(const ExperimentConfig& cfg, RandomStream& rng);

/// Fraction of pairs (x, y) with x majorized by y, i.e. Pi(x, y) = 1.
Estimate estimate_conversion_probability(const ExperimentConfig& cfg);

/// Distribution of Pi(x, y) with its atom at 1.
EmpiricalDistribution pi_distribution(const ExperimentConfig& cfg);

/// Mean of Pi(x, y).
Estimate mean_pi(const ExperimentConfig& cfg);

/// Moments of each ordered component over M spectra (not pairs).
EigStats eigen_stats(const ExperimentConfig& cfg);

/// Distribution of scaling_factor(n, c) (1 - Pi(x, y)) with its atom at 0.
EmpiricalDistribution rescaled_pi_distribution(const ExperimentConfig& cfg);

/// Histogram of N_n for bridges built from pairs. With `ordered = false`
/// each spectrum is uniformly permuted first, which gives exchangeable steps.
OccupationHistogram persistence_histogram(const ExperimentConfig& cfg, bool ordered);

}  // namespace loccmc
