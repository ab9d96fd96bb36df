#include "loccmc/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "loccmc/analytic.hpp"
#include "loccmc/chunked_runner.hpp"
#include "loccmc/error.hpp"
#include "loccmc/fitstats.hpp"
#include "loccmc/persistence.hpp"

namespace loccmc {

ExperimentConfig ExperimentConfig::with_ratio(int n, double c) {
    if (n < 1 || !(c > 0.0)) throw InvalidArgument("ratio configuration needs n >= 1 and c > 0");
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.m = static_cast<int>(std::lround(c * n));
    return cfg;
}

void ExperimentConfig::validate() const {
    if (n < 1 || m < 1) throw InvalidArgument("dimensions n and m must be positive");
    if (samples < 1) throw InvalidArgument("samples must be >= 1");
    if (workers < 1) throw InvalidArgument("workers must be >= 1");
    if (histogram_bins < 2) throw InvalidArgument("histogram_bins must be >= 2");
    if (chunk_size < 1) throw InvalidArgument("chunk_size must be >= 1");
    if (!(tolerance >= 0.0)) throw InvalidArgument("tolerance must be nonnegative");
    if (sampler == SamplerKind::dense && small_dim() > dense_cap) {
        throw ResourceLimit("dense sampler is capped at n = " + std::to_string(dense_cap));
    }
}

// ---------------------------------------------------------------------------
// EmpiricalDistribution

EmpiricalDistribution::EmpiricalDistribution(double atom_value, double lo, double hi,
                                             std::uint64_t expected_count)
    : atom_value_(atom_value), lo_(lo), hi_(hi), exact_(expected_count <= kExactSampleLimit) {
    if (!(hi > lo)) throw InvalidArgument("distribution range must satisfy lo < hi");
    if (exact_) {
        samples_.reserve(expected_count);
    } else {
        histogram_.assign(kHistogramBins, 0);
    }
}

void EmpiricalDistribution::add(double value) {
    ++count_;
    sum_ += value;
    if (value == atom_value_) ++atom_count_;
    if (exact_) {
        samples_.push_back(value);
    } else if (value != atom_value_) {
        const double t = (value - lo_) / (hi_ - lo_) * static_cast<double>(kHistogramBins);
        const auto bin = static_cast<std::size_t>(
            std::clamp(t, 0.0, static_cast<double>(kHistogramBins - 1)));
        ++histogram_[bin];
    }
}

void EmpiricalDistribution::merge(const EmpiricalDistribution& other) {
    if (other.exact_ != exact_ || other.atom_value_ != atom_value_) {
        throw InvalidArgument("cannot merge distributions of different shape");
    }
    count_ += other.count_;
    atom_count_ += other.atom_count_;
    sum_ += other.sum_;
    if (exact_) {
        samples_.insert(samples_.end(), other.samples_.begin(), other.samples_.end());
    } else {
        for (std::size_t i = 0; i < histogram_.size(); ++i) histogram_[i] += other.histogram_[i];
    }
}

void EmpiricalDistribution::finalize() {
    if (exact_) std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::atom_mass() const noexcept {
    return count_ ? static_cast<double>(atom_count_) / static_cast<double>(count_) : 0.0;
}

double EmpiricalDistribution::continuous_mass() const noexcept {
    return count_ ? static_cast<double>(count_ - atom_count_) / static_cast<double>(count_) : 0.0;
}

double EmpiricalDistribution::mean() const noexcept {
    return count_ ? sum_ / static_cast<double>(count_) : 0.0;
}

std::span<const double> EmpiricalDistribution::sorted_samples() const {
    if (!exact_) throw InvalidArgument("histogram-mode distribution has no sample list");
    return samples_;
}

double EmpiricalDistribution::cdf(double x) const {
    if (count_ == 0) return 0.0;
    const double total = static_cast<double>(count_);
    if (exact_) {
        const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
        return static_cast<double>(it - samples_.begin()) / total;
    }
    double below = x >= atom_value_ ? static_cast<double>(atom_count_) : 0.0;
    const double width = (hi_ - lo_) / static_cast<double>(kHistogramBins);
    for (std::size_t i = 0; i < histogram_.size(); ++i) {
        const double left = lo_ + width * static_cast<double>(i);
        if (x >= left + width) {
            below += static_cast<double>(histogram_[i]);
        } else if (x > left) {
            below += static_cast<double>(histogram_[i]) * (x - left) / width;
        }
    }
    return below / total;
}

std::vector<std::uint64_t> EmpiricalDistribution::continuous_histogram(std::size_t bins) const {
    if (bins < 1) throw InvalidArgument("histogram needs at least one bin");
    std::vector<std::uint64_t> out(bins, 0);
    auto bin_of = [&](double v) {
        const double t = (v - lo_) / (hi_ - lo_) * static_cast<double>(bins);
        return static_cast<std::size_t>(std::clamp(t, 0.0, static_cast<double>(bins - 1)));
    };
    if (exact_) {
        for (double v : samples_) {
            if (v != atom_value_) ++out[bin_of(v)];
        }
    } else {
        if (kHistogramBins % bins != 0) {
            throw InvalidArgument("histogram-mode rebinning needs a divisor of the stored bin count");
        }
        const std::size_t group = kHistogramBins / bins;
        for (std::size_t i = 0; i < histogram_.size(); ++i) out[i / group] += histogram_[i];
    }
    return out;
}

EmpiricalDistribution EmpiricalDistribution::from_histogram(double atom_value, double lo, double hi,
                                                            std::uint64_t atom_count, double sum,
                                                            std::vector<std::uint64_t> histogram) {
    if (histogram.size() != kHistogramBins) throw InvalidArgument("histogram has the wrong bin count");
    EmpiricalDistribution d(atom_value, lo, hi, kExactSampleLimit + 1);
    d.histogram_ = std::move(histogram);
    d.atom_count_ = atom_count;
    d.count_ = atom_count;
    for (auto c : d.histogram_) d.count_ += c;
    d.sum_ = sum;
    return d;
}

EmpiricalDistribution EmpiricalDistribution::from_samples(double atom_value, double lo, double hi,
                                                          std::vector<double> samples) {
    if (samples.size() > kExactSampleLimit) throw InvalidArgument("too many samples for exact mode");
    EmpiricalDistribution d(atom_value, lo, hi, samples.size());
    for (double v : samples) d.add(v);
    d.finalize();
    return d;
}

double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    return ks_statistic(a.sorted_samples(), b.sorted_samples());
}

// ---------------------------------------------------------------------------
// EigStats / OccupationHistogram

std::vector<double> EigStats::means() const {
    std::vector<double> out;
    out.reserve(components.size());
    for (const auto& c : components) out.push_back(c.mean());
    return out;
}

std::vector<double> EigStats::variances() const {
    std::vector<double> out;
    out.reserve(components.size());
    for (const auto& c : components) out.push_back(c.variance());
    return out;
}

std::vector<double> EigStats::relative_fluctuations() const {
    std::vector<double> out;
    out.reserve(components.size());
    for (const auto& c : components) {
        out.push_back(c.mean() > 0.0 ? std::sqrt(c.variance()) / c.mean() : 0.0);
    }
    return out;
}

std::vector<double> OccupationHistogram::pmf() const {
    std::vector<double> out(counts.size(), 0.0);
    if (total == 0) return out;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        out[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Engines

Spectrum draw_spectrum(const ExperimentConfig& cfg, RandomStream& rng) {
    if (cfg.sampler == SamplerKind::dense) {
        return sample_spectrum_dense(cfg.small_dim(), cfg.large_dim(), rng, cfg.dense_cap);
    }
    return sample_spectrum(cfg.small_dim(), cfg.large_dim(), rng);
}

namespace {

struct Counter {
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
};

// Runs fn(pi) once per pair (x, y) drawn in order x then y.
template <class Make, class Each, class Merge>
void for_each_pi(const ExperimentConfig& cfg, Make make, Each each, Merge merge) {
    cfg.validate();
    run_chunked(
        cfg.samples, cfg.chunk_size, cfg.seed, cfg.workers, make,
        [&](RandomStream& rng, std::uint64_t count, auto& acc) {
            for (std::uint64_t i = 0; i < count; ++i) {
                const Spectrum x = draw_spectrum(cfg, rng);
                const Spectrum y = draw_spectrum(cfg, rng);
                each(acc, vidal_pi(x, y, cfg.tolerance));
            }
        },
        merge);
}

Estimate binomial_estimate(std::uint64_t hits, std::uint64_t trials) {
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
}

}  // namespace

Estimate estimate_conversion_probability(const ExperimentConfig& cfg) {
    Counter total;
    for_each_pi(
        cfg, [] { return Counter{}; },
        [](Counter& c, double pi) {
            ++c.trials;
            if (pi == 1.0) ++c.hits;
        },
        [&](const Counter& c) {
            total.hits += c.hits;
            total.trials += c.trials;
        });
    return binomial_estimate(total.hits, total.trials);
}

EmpiricalDistribution pi_distribution(const ExperimentConfig& cfg) {
    EmpiricalDistribution out(1.0, 0.0, 1.0, cfg.samples);
    const bool exact = out.is_exact();
    for_each_pi(
        cfg, [&] { return EmpiricalDistribution(1.0, 0.0, 1.0, exact ? cfg.chunk_size : cfg.samples); },
        [](EmpiricalDistribution& d, double pi) { d.add(pi); },
        [&](const EmpiricalDistribution& d) { out.merge(d); });
    out.finalize();
    return out;
}

Estimate mean_pi(const ExperimentConfig& cfg) {
    Moments total;
    for_each_pi(
        cfg, [] { return Moments{}; }, [](Moments& m, double pi) { m.add(pi); },
        [&](const Moments& m) { total.merge(m); });
    return {total.mean(), total.mean_std_error(), total.count()};
}

EmpiricalDistribution rescaled_pi_distribution(const ExperimentConfig& cfg) {
    cfg.validate();
    const double factor = analytic::scaling_factor(cfg.small_dim(), cfg.ratio());
    EmpiricalDistribution out(0.0, 0.0, factor, cfg.samples);
    const bool exact = out.is_exact();
    for_each_pi(
        cfg,
        [&] { return EmpiricalDistribution(0.0, 0.0, factor, exact ? cfg.chunk_size : cfg.samples); },
        [factor](EmpiricalDistribution& d, double pi) { d.add(factor * (1.0 - pi)); },
        [&](const EmpiricalDistribution& d) { out.merge(d); });
    out.finalize();
    return out;
}

EigStats eigen_stats(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto n = static_cast<std::size_t>(cfg.small_dim());
    EigStats total;
    total.components.resize(n);
    run_chunked(
        cfg.samples, cfg.chunk_size, cfg.seed, cfg.workers, [n] { return std::vector<Moments>(n); },
        [&](RandomStream& rng, std::uint64_t count, std::vector<Moments>& acc) {
            for (std::uint64_t i = 0; i < count; ++i) {
                const Spectrum x = draw_spectrum(cfg, rng);
                for (std::size_t k = 0; k < n; ++k) acc[k].add(x[k]);
            }
        },
        [&](const std::vector<Moments>& acc) {
            for (std::size_t k = 0; k < n; ++k) total.components[k].merge(acc[k]);
        });
    return total;
}

namespace {

void shuffle(std::vector<double>& v, RandomStream& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[rng.uniform_index(i)]);
    }
}

}  // namespace

OccupationHistogram persistence_histogram(const ExperimentConfig& cfg, bool ordered) {
    cfg.validate();
    const auto n = static_cast<std::size_t>(cfg.small_dim());
    OccupationHistogram total;
    total.counts.assign(n + 1, 0);
    run_chunked(
        cfg.samples, cfg.chunk_size, cfg.seed, cfg.workers,
        [n] { return std::vector<std::uint64_t>(n + 1, 0); },
        [&](RandomStream& rng, std::uint64_t count, std::vector<std::uint64_t>& acc) {
            for (std::uint64_t i = 0; i < count; ++i) {
                const Spectrum xs = draw_spectrum(cfg, rng);
                const Spectrum ys = draw_spectrum(cfg, rng);
                std::vector<double> x(xs.begin(), xs.end());
                std::vector<double> y(ys.begin(), ys.end());
                if (!ordered) {
                    shuffle(x, rng);
                    shuffle(y, rng);
                }
                const BridgeProcess bridge = build_bridge(x, y, ordered);
                ++acc[occupation_count(bridge, true, cfg.tolerance)];
            }
        },
        [&](const std::vector<std::uint64_t>& acc) {
            for (std::size_t k = 0; k <= n; ++k) total.counts[k] += acc[k];
        });
    for (auto c : total.counts) total.total += c;
    return total;
}

}  // namespace loccmc
