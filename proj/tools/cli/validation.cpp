#include "cli/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cli/commands.hpp"
#include "cli/records.hpp"
#include "loccmc/analytic.hpp"
#include "loccmc/chunked_runner.hpp"
#include "loccmc/error.hpp"
#include "loccmc/experiments.hpp"
#include "loccmc/fitstats.hpp"
#include "loccmc/persistence.hpp"

namespace loccmc::cli {

namespace {

namespace fs = std::filesystem;

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok) { passed = passed && ok; }
    template <class T>
    Outcome& operator<<(const T& v) {
        detail << v;
        return *this;
    }
};

std::string fmt(double v, int digits = 4) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

ExperimentConfig make_cfg(int n, int m, std::uint64_t samples, std::uint64_t seed, int workers) {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.m = m;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.workers = workers;
    return cfg;
}

/// Difference of two estimates in units of their combined standard error.
double sigmas(const Estimate& lo, const Estimate& hi) {
    const double se = std::hypot(lo.std_error, hi.std_error);
    return se > 0.0 ? (hi.value - lo.value) / se : 0.0;
}

void exact_n2_law(const ValidationOptions& o, Outcome& out) {
    const auto start = std::chrono::steady_clock::now();
    for (int m : {2, 4, 8}) {
        const Estimate e = estimate_conversion_probability(make_cfg(2, m, 100000, 101, o.workers));
        const double z = (e.value - 0.5) / e.std_error;
        out.require(std::abs(z) <= 4.0);
        out << "m=" << m << " p=" << fmt(e.value, 5) << " z=" << fmt(z, 3) << "; ";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(secs < 10.0);
    out << "runtime " << fmt(secs, 3) << "s";
}

void n2_continuous_density(const ValidationOptions& o, Outcome& out) {
    constexpr int kBins = 20;
    for (int m : {2, 3, 4}) {
        const EmpiricalDistribution d = pi_distribution(make_cfg(2, m, 100000, 201, o.workers));
        const auto observed = d.continuous_histogram(kBins);
        std::vector<double> expected(kBins);
        for (int b = 0; b < kBins; ++b) {
            expected[b] = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                [m](double p) { return analytic::fcont_n2(p, m); }, static_cast<double>(b) / kBins,
                static_cast<double>(b + 1) / kBins, 10, 1e-13);
        }
        const ChiSquareResult r = chi_square_test(observed, expected);
        out.require(r.p_value > 0.01);
        out << "m=" << m << " chi2=" << fmt(r.statistic) << " p=" << fmt(r.p_value, 3) << "; ";
    }
}

void smallest_eigenvalue_law(const ValidationOptions& o, Outcome& out) {
    for (int n : {2, 4, 8}) {
        const EigStats s = eigen_stats(make_cfg(n, n, 100000, 301, o.workers));
        const Moments& mom = s.components.back();
        const double n3 = std::pow(static_cast<double>(n), 3);
        const double z_mean = (mom.mean() - 1.0 / n3) / mom.mean_std_error();
        const double z_var = (mom.variance() - analytic::fmin_balanced_variance(n)) / mom.variance_std_error();
        out.require(std::abs(z_mean) <= 4.0 && std::abs(z_var) <= 4.0);
        out << "n=" << n << " z_mean=" << fmt(z_mean, 3) << " z_var=" << fmt(z_var, 3) << "; ";
    }
}

/// Component-major spectra: out[k][i] is lambda_{k+1} of the i-th draw.
std::vector<std::vector<double>> components(const ExperimentConfig& cfg) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(cfg.small_dim()));
    run_chunked(
        cfg.samples, cfg.chunk_size, cfg.seed, cfg.workers, [] { return std::vector<Spectrum>{}; },
        [&](RandomStream& rng, std::uint64_t count, std::vector<Spectrum>& acc) {
            for (std::uint64_t i = 0; i < count; ++i) acc.push_back(draw_spectrum(cfg, rng));
        },
        [&](const std::vector<Spectrum>& acc) {
            for (const auto& s : acc) {
                for (std::size_t k = 0; k < s.size(); ++k) out[k].push_back(s[k]);
            }
        });
    for (auto& c : out) std::sort(c.begin(), c.end());
    return out;
}

void oracle_equivalence(const ValidationOptions& o, Outcome& out) {
    for (auto [n, m] : {std::pair{2, 2}, std::pair{4, 6}, std::pair{8, 8}}) {
        ExperimentConfig tri = make_cfg(n, m, 100000, 401, o.workers);
        ExperimentConfig dense = make_cfg(n, m, 100000, 402, o.workers);
        dense.sampler = SamplerKind::dense;
        const auto a = components(tri);
        const auto b = components(dense);
        const double level = 0.001 / n;
        double min_p = 1.0;
        for (int k = 0; k < n; ++k) {
            const double d = ks_statistic(a[k], b[k]);
            const double p = ks_pvalue(d, a[k].size() * b[k].size() / double(a[k].size() + b[k].size()));
            min_p = std::min(min_p, p);
        }
        out.require(min_p > level);
        out << "(" << n << "," << m << ") min p=" << fmt(min_p, 3) << "; ";
    }
}

void sparre_andersen(const ValidationOptions& o, Outcome& out) {
    constexpr int n = 32;
    const OccupationHistogram h = persistence_histogram(make_cfg(n, n, 100000, 501, o.workers), false);
    const double tv = total_variation(h.pmf(), sparre_andersen_pmf(n, ReferenceProcess::bridge));
    out.require(tv < 0.02);
    out << "bridge TV=" << fmt(tv, 3) << "; ";

    const auto walk = sparre_andersen_pmf(100, ReferenceProcess::walk);
    double total = 0.0;
    for (double p : walk) total += p;
    const double limit = 1.0 / std::sqrt(std::numbers::pi * 100.0);
    const double rel = std::abs(walk.back() - limit) / limit;
    out.require(std::abs(total - 1.0) < 1e-12 && rel < 0.005);
    out << "walk sum-1=" << fmt(total - 1.0, 3) << " P(N=n) rel.err=" << fmt(rel, 3);
}

PowerLawFit decay_fit(double c, std::uint64_t seed, int workers, std::vector<DecayPoint>& pts) {
    for (int n : {32, 64, 128, 256}) {
        ExperimentConfig cfg = ExperimentConfig::with_ratio(n, c);
        cfg.samples = 20000;
        cfg.seed = seed;
        cfg.workers = workers;
        const Estimate e = estimate_conversion_probability(cfg);
        pts.push_back({static_cast<double>(n), e.value, e.std_error});
    }
    return fit_power_law(pts, 4);
}

void decay_exponents(const ValidationOptions& o, Outcome& out) {
    for (auto [c, theta, tol] : {std::tuple{2.0, 0.418, 0.10}, std::tuple{1.0, 0.795, 0.15}}) {
        std::vector<DecayPoint> pts;
        const PowerLawFit fit = decay_fit(c, 601, o.workers, pts);
        out.require(std::abs(fit.theta - theta) <= tol);
        out << "c=" << c << " theta=" << fmt(fit.theta) << "+-" << fmt(fit.theta_err, 2) << " (p:";
        for (const auto& p : pts) out << " " << fmt(p.p_hat, 3);
        out << "); ";
    }
}

void monotone_trends(const ValidationOptions& o, Outcome& out) {
    std::vector<Estimate> by_m;
    for (int m : {4, 8, 16, 64}) {
        by_m.push_back(estimate_conversion_probability(make_cfg(4, m, 100000, 701, o.workers)));
    }
    out << "n=4 p:";
    for (const auto& e : by_m) out << " " << fmt(e.value, 4);
    out << " z:";
    for (std::size_t i = 1; i < by_m.size(); ++i) {
        const double z = sigmas(by_m[i - 1], by_m[i]);
        out.require(z >= 4.0);
        out << " " << fmt(z, 3);
    }
    std::vector<Estimate> by_n;
    for (int n : {8, 16, 32, 64}) {
        by_n.push_back(estimate_conversion_probability(make_cfg(n, 2 * n, 100000, 702, o.workers)));
    }
    out << "; c=2 p:";
    for (const auto& e : by_n) out << " " << fmt(e.value, 4);
    out << " z:";
    for (std::size_t i = 1; i < by_n.size(); ++i) {
        const double z = sigmas(by_n[i], by_n[i - 1]);
        out.require(z >= 4.0);
        out << " " << fmt(z, 3);
    }
}

void concentration(const ValidationOptions& o, Outcome& out) {
    double previous = 2.0;
    double mean_256 = 0.0;
    out << "P(Pi<0.9):";
    for (int n : {16, 64, 256}) {
        const EmpiricalDistribution d = pi_distribution(make_cfg(n, 2 * n, 20000, 801, o.workers));
        const auto s = d.sorted_samples();
        const double below =
            static_cast<double>(std::lower_bound(s.begin(), s.end(), 0.9) - s.begin()) / static_cast<double>(s.size());
        out.require(below < previous);
        previous = below;
        mean_256 = d.mean();
        out << " " << fmt(below, 4);
    }
    out.require(mean_256 > 0.97);
    out << "; mean Pi(n=256)=" << fmt(mean_256, 5);
}

void scaling_collapse(const ValidationOptions& o, Outcome& out) {
    const ExperimentConfig a = make_cfg(64, 128, 50000, 901, o.workers);
    const ExperimentConfig b = make_cfg(128, 256, 50000, 902, o.workers);
    const double raw = ks_distance(pi_distribution(a), pi_distribution(b));
    const double rescaled = ks_distance(rescaled_pi_distribution(a), rescaled_pi_distribution(b));
    out.require(rescaled <= 0.5 * raw);
    out << "KS rescaled=" << fmt(rescaled, 3) << " unrescaled=" << fmt(raw, 3);
}

struct ScratchDir {
    fs::path path;
    bool owned = false;
    explicit ScratchDir(const fs::path& given) {
        if (!given.empty()) {
            path = given;
        } else {
            std::random_device rd;
            path = fs::temp_directory_path() / ("loccmc-determinism-" + std::to_string(rd()));
            owned = true;
        }
        fs::create_directories(path);
    }
    ~ScratchDir() {
        std::error_code ec;
        if (owned) fs::remove_all(path, ec);
    }
};

void determinism(const ValidationOptions& o, Outcome& out) {
    const std::vector<std::vector<std::string>> commands = {
        {"sample", "--n", "5", "--m", "9", "--samples", "3000", "--seed", "11"},
        {"convert-prob", "--n", "4,8", "--c", "1,2", "--samples", "5000", "--seed", "12", "--chunk-size", "256"},
        {"distribution", "--n", "6", "--m", "12", "--samples", "5000", "--seed", "13", "--chunk-size", "300"},
        {"distribution", "--rescale", "--n", "6", "--m", "12", "--samples", "5000", "--seed", "13"},
        {"persistence", "--unordered", "--n", "8", "--samples", "5000", "--seed", "14", "--chunk-size", "100"},
        {"eigstats", "--n", "7", "--c", "3", "--samples", "5000", "--seed", "15", "--chunk-size", "128"},
        {"convert-prob", "--dense-oracle", "--n", "3", "--m", "5", "--samples", "4000", "--seed", "16",
         "--chunk-size", "500"},
    };
    const ScratchDir scratch(o.scratch);
    const int counts[] = {1, 3, std::max(2, o.workers)};
    std::size_t compared = 0;
    for (const auto& base : commands) {
        std::vector<fs::path> dirs;
        for (int w : counts) {
            const fs::path dir = scratch.path / ("w" + std::to_string(w));
            fs::create_directories(dir);
            auto args = base;
            args.insert(args.end(), {"--workers", std::to_string(w), "--out", dir.string()});
            std::ostringstream sink_out, sink_err;
            const int code = run_cli(args, sink_out, sink_err);
            if (code != kExitOk) {
                out.require(false);
                out << base[0] << " exited " << code << ": " << sink_err.str() << "; ";
            }
            dirs.push_back(dir);
        }
        for (const auto& entry : fs::directory_iterator(dirs.front())) {
            const std::string name = entry.path().filename().string();
            if (name.ends_with(".meta.json")) continue;
            const std::string ref = read_text_file(entry.path());
            for (std::size_t i = 1; i < dirs.size(); ++i) {
                const fs::path other = dirs[i] / name;
                const bool same = fs::exists(other) && read_text_file(other) == ref;
                out.require(same);
                if (!same) out << name << " differs at workers=" << counts[i] << "; ";
                ++compared;
            }
        }
        for (const auto& d : dirs) fs::remove_all(d);
    }
    out << compared << " file comparisons across workers {1, 3, " << counts[2] << "}";
}

struct Criterion {
    int id;
    const char* title;
    void (*run)(const ValidationOptions&, Outcome&);
};

constexpr Criterion kCriteria[] = {
    {1, "n=2 conversion probability is 1/2", exact_n2_law},
    {2, "n=2 continuous density of Pi (chi-square)", n2_continuous_density},
    {3, "smallest eigenvalue mean and variance at m=n", smallest_eigenvalue_law},
    {4, "tridiagonal sampler agrees with dense oracle", oracle_equivalence},
    {5, "Sparre Andersen references", sparre_andersen},
    {6, "persistence exponents at c=2 and c=1", decay_exponents},
    {7, "monotone conversion trends in m and n", monotone_trends},
    {8, "concentration of Pi at c=2", concentration},
    {9, "scaling collapse of rescaled Pi at c=2", scaling_collapse},
    {10, "bit-identical results across worker counts", determinism},
};

}  // namespace

ValidationResult run_criterion(int id, const ValidationOptions& opts) {
    const auto it = std::find_if(std::begin(kCriteria), std::end(kCriteria),
                                 [id](const Criterion& c) { return c.id == id; });
    if (it == std::end(kCriteria)) throw InvalidArgument("no acceptance criterion " + std::to_string(id));
    ValidationResult result;
    result.id = id;
    result.title = it->title;
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        it->run(opts, out);
        result.passed = out.passed;
    } catch (const std::exception& e) {
        out << "exception: " << e.what();
        result.passed = false;
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.detail = out.detail.str();
    return result;
}

std::vector<ValidationResult> run_validation(const ValidationOptions& opts, std::ostream& log) {
    std::vector<ValidationResult> results;
    for (const auto& c : kCriteria) {
        if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), c.id) == opts.only.end()) {
            continue;
        }
        results.push_back(run_criterion(c.id, opts));
        const auto& r = results.back();
        log << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title << "  (" << fmt(r.seconds, 3)
            << "s)  " << r.detail << "\n"
            << std::flush;
    }
    return results;
}

}  // namespace loccmc::cli
