#include "cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <thread>

#include <CLI11.hpp>

#include "cli/records.hpp"
#include "cli/validation.hpp"
#include "loccmc/analytic.hpp"
#include "loccmc/chunked_runner.hpp"
#include "loccmc/error.hpp"
#include "loccmc/experiments.hpp"
#include "loccmc/fitstats.hpp"
#include "loccmc/persistence.hpp"

namespace loccmc::cli {

namespace {

namespace fs = std::filesystem;

struct CommonFlags {
    std::vector<int> n{2};
    std::vector<int> m;
    std::vector<double> c;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 1;
    int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    int bins = 50;
    std::string out = ".";
    bool dense = false;
    int dense_cap = kDefaultDenseCap;
    std::uint64_t chunk_size = 1024;
};

void add_common(CLI::App* app, CommonFlags& f, bool grid) {
    auto* n = app->add_option("--n", f.n, grid ? "Dimension(s) of party A, comma separated"
                                               : "Dimension of party A")
                  ->delimiter(',')
                  ->check(CLI::PositiveNumber);
    auto* m = app->add_option("--m", f.m, "Dimension(s) of party B")->delimiter(',')->check(CLI::PositiveNumber);
    auto* c = app->add_option("--c", f.c, "Ratio(s) c = m / n; m = round(c n)")
                  ->delimiter(',')
                  ->check(CLI::PositiveNumber);
    m->excludes(c);
    (void)n;
    app->add_option("--samples", f.samples, "Monte Carlo sample count M")->check(CLI::PositiveNumber);
    app->add_option("--seed", f.seed, "64-bit seed");
    app->add_option("--workers", f.workers, "Worker threads")->check(CLI::PositiveNumber);
    app->add_option("--bins", f.bins, "Histogram bins")->check(CLI::Range(2, 1000000));
    app->add_option("--out", f.out, "Output directory");
    app->add_flag("--dense-oracle", f.dense, "Sample through dense complex Gaussian matrices");
    app->add_option("--dense-cap", f.dense_cap, "Largest n accepted by the dense sampler");
    app->add_option("--chunk-size", f.chunk_size, "Pairs per random-stream chunk")->check(CLI::PositiveNumber);
}

struct GridPoint {
    ExperimentConfig cfg;
    double c = 1.0;  ///< ratio as given (or m / n)
};

std::vector<GridPoint> grid(const CommonFlags& f) {
    std::vector<GridPoint> points;
    auto base = [&](int n, int m) {
        ExperimentConfig cfg;
        cfg.n = n;
        cfg.m = m;
        cfg.samples = f.samples;
        cfg.seed = f.seed;
        cfg.workers = f.workers;
        cfg.histogram_bins = f.bins;
        cfg.chunk_size = f.chunk_size;
        cfg.sampler = f.dense ? SamplerKind::dense : SamplerKind::tridiagonal;
        cfg.dense_cap = f.dense_cap;
        cfg.validate();
        return cfg;
    };
    for (int n : f.n) {
        if (!f.c.empty()) {
            for (double c : f.c) {
                const ExperimentConfig r = ExperimentConfig::with_ratio(n, c);
                points.push_back({base(r.n, r.m), c});
            }
        } else if (!f.m.empty()) {
            for (int m : f.m) points.push_back({base(n, m), static_cast<double>(m) / n});
        } else {
            points.push_back({base(n, n), 1.0});
        }
    }
    return points;
}

std::string compact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

template <class T>
std::string joined(const std::vector<T>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += '_';
        if constexpr (std::is_floating_point_v<T>) {
            s += compact(v[i]);
        } else {
            s += std::to_string(v[i]);
        }
    }
    return s;
}

/// <label>-n<n>-m<m>-M<M>-s<seed>, or c<c> in place of m<m> for ratio grids.
std::string file_stem(const std::string& label, const CommonFlags& f) {
    std::string stem = label + "-n" + joined(f.n);
    if (!f.c.empty()) {
        stem += "-c" + joined(f.c);
    } else {
        stem += "-m" + (f.m.empty() ? joined(f.n) : joined(f.m));
    }
    return stem + "-M" + std::to_string(f.samples) + "-s" + std::to_string(f.seed);
}

json config_echo(const CommonFlags& f) {
    json j;
    j["n"] = f.n;
    if (!f.c.empty()) {
        j["c"] = f.c;
    } else {
        j["m"] = f.m.empty() ? f.n : f.m;
    }
    j["samples"] = f.samples;
    j["seed"] = f.seed;
    j["chunk_size"] = f.chunk_size;
    j["sampler"] = f.dense ? "dense" : "tridiagonal";
    if (f.dense) j["dense_cap"] = f.dense_cap;
    j["tolerance"] = kMajorizationTolerance;
    j["code_version"] = LOCCMC_VERSION;
    return j;
}

json point_echo(const GridPoint& p) {
    return {{"n", p.cfg.n}, {"m", p.cfg.m}, {"c", p.c}};
}

class Emitter {
public:
    Emitter(fs::path dir, std::ostream& out, int workers)
        : dir_(std::move(dir)), out_(out), workers_(workers), start_(std::chrono::steady_clock::now()) {}

    void csv(const std::string& stem, const CsvTable& table) {
        write_text_file(dir_ / (stem + ".csv"), emit_csv(table));
    }

    void record(const std::string& stem, const ResultRecord& rec) {
        const std::string text = emit_record(rec);
        write_text_file(dir_ / (stem + ".json"), text);
        RunMetadata meta;
        meta.workers = workers_;
        meta.wall_clock_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        meta.timestamp = utc_timestamp();
        write_text_file(dir_ / (stem + ".meta.json"), json(meta).dump(2) + "\n");
        out_ << text;
    }

private:
    fs::path dir_;
    std::ostream& out_;
    int workers_;
    std::chrono::steady_clock::time_point start_;
};

GridPoint single_point(const std::vector<GridPoint>& points, const std::string& command) {
    if (points.size() != 1) {
        throw InvalidArgument(command + " takes a single (n, m) pair, not a grid");
    }
    return points.front();
}

// --- subcommands -------------------------------------------------------------

void cmd_sample(const CommonFlags& f, Emitter& emit) {
    const GridPoint p = single_point(grid(f), "sample");
    const ExperimentConfig& cfg = p.cfg;
    CsvTable table{{"sample", "k", "lambda"}, {}};
    std::uint64_t index = 0;
    run_chunked(
        cfg.samples, cfg.chunk_size, cfg.seed, cfg.workers, [] { return std::vector<Spectrum>{}; },
        [&](RandomStream& rng, std::uint64_t count, std::vector<Spectrum>& acc) {
            for (std::uint64_t i = 0; i < count; ++i) acc.push_back(draw_spectrum(cfg, rng));
        },
        [&](const std::vector<Spectrum>& acc) {
            for (const auto& s : acc) {
                for (std::size_t k = 0; k < s.size(); ++k) {
                    table.rows.push_back({static_cast<double>(index), static_cast<double>(k + 1), s[k]});
                }
                ++index;
            }
        });
    const std::string stem = file_stem("sample", f);
    emit.csv(stem, table);
    emit.record(stem, {"sample", config_echo(f),
                       {{"spectra", index}, {"components", cfg.small_dim()}, {"file", stem + ".csv"}}});
}

void cmd_convert_prob(const CommonFlags& f, Emitter& emit) {
    CsvTable table{{"n", "m", "c", "samples", "seed", "p_hat", "stderr"}, {}};
    json points = json::array();
    for (const GridPoint& p : grid(f)) {
        const Estimate e = estimate_conversion_probability(p.cfg);
        table.rows.push_back({static_cast<double>(p.cfg.n), static_cast<double>(p.cfg.m), p.c,
                              static_cast<double>(p.cfg.samples), static_cast<double>(p.cfg.seed),
                              e.value, e.std_error});
        json j = point_echo(p);
        j["p_hat"] = e.value;
        j["stderr"] = e.std_error;
        j["samples"] = e.samples;
        points.push_back(j);
    }
    const std::string stem = file_stem("convert-prob", f);
    emit.csv(stem, table);
    json payload{{"points", points}, {"file", stem + ".csv"}};
    if (points.size() == 1) {
        payload["p_hat"] = points[0]["p_hat"];
        payload["stderr"] = points[0]["stderr"];
    }
    emit.record(stem, {"convert-prob", config_echo(f), payload});
}

void cmd_distribution(const CommonFlags& f, bool rescale, Emitter& emit) {
    const GridPoint p = single_point(grid(f), "distribution");
    const EmpiricalDistribution d = rescale ? rescaled_pi_distribution(p.cfg) : pi_distribution(p.cfg);
    const std::string label = rescale ? "distribution-rescaled" : "distribution";
    const std::string stem = file_stem(label, f);

    CsvTable table;
    if (d.is_exact()) {
        table.header = {"value", "ecdf"};
        const auto s = d.sorted_samples();
        const double total = static_cast<double>(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i + 1 < s.size() && s[i + 1] == s[i]) continue;  // one row per distinct value
            table.rows.push_back({s[i], (i + 1) / total});
        }
    } else {
        table.header = {"bin_lo", "bin_hi", "count"};
        const auto& h = d.raw_histogram();
        const double width = (d.hi() - d.lo()) / static_cast<double>(h.size());
        for (std::size_t i = 0; i < h.size(); ++i) {
            table.rows.push_back({d.lo() + width * i, d.lo() + width * (i + 1), static_cast<double>(h[i])});
        }
    }
    emit.csv(stem, table);

    json payload = point_echo(p);
    payload["rescaled"] = rescale;
    if (rescale) payload["scaling_factor"] = analytic::scaling_factor(p.cfg.small_dim(), p.cfg.ratio());
    payload["count"] = d.count();
    payload["atom_value"] = d.atom_value();
    payload["atom_count"] = d.atom_count();
    payload["atom_mass"] = d.atom_mass();
    payload["continuous_mass"] = d.continuous_mass();
    payload["mean"] = d.mean();
    payload["range"] = {d.lo(), d.hi()};
    payload["histogram"] = d.continuous_histogram(static_cast<std::size_t>(f.bins));
    payload["exact_ecdf"] = d.is_exact();
    payload["file"] = stem + ".csv";
    emit.record(stem, {label, config_echo(f), payload});
}

void cmd_persistence(const CommonFlags& f, bool unordered, Emitter& emit) {
    const GridPoint p = single_point(grid(f), "persistence");
    const OccupationHistogram h = persistence_histogram(p.cfg, !unordered);
    const int n = p.cfg.small_dim();
    const auto pmf = h.pmf();
    const auto bridge = sparre_andersen_pmf(n, ReferenceProcess::bridge);
    const auto walk = sparre_andersen_pmf(n, ReferenceProcess::walk);
    CsvTable table{{"k", "count", "pmf", "bridge_reference", "walk_reference"}, {}};
    for (int k = 0; k <= n; ++k) {
        table.rows.push_back({static_cast<double>(k), static_cast<double>(h.counts[k]), pmf[k], bridge[k], walk[k]});
    }
    const std::string label = unordered ? "persistence-unordered" : "persistence";
    const std::string stem = file_stem(label, f);
    emit.csv(stem, table);
    json payload = point_echo(p);
    payload["ordered"] = !unordered;
    payload["counts"] = h.counts;
    payload["total"] = h.total;
    payload["persistence_probability"] = pmf[n];
    payload["tv_to_uniform_bridge"] = total_variation(pmf, bridge);
    payload["file"] = stem + ".csv";
    emit.record(stem, {label, config_echo(f), payload});
}

void cmd_eigstats(const CommonFlags& f, Emitter& emit) {
    const GridPoint p = single_point(grid(f), "eigstats");
    const EigStats s = eigen_stats(p.cfg);
    const auto rel = s.relative_fluctuations();
    CsvTable table{{"k", "mean", "variance", "relative_fluctuation", "mean_stderr", "variance_stderr"}, {}};
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto& c = s.components[k];
        table.rows.push_back({static_cast<double>(k + 1), c.mean(), c.variance(), rel[k], c.mean_std_error(),
                              c.variance_std_error()});
    }
    const std::string stem = file_stem("eigstats", f);
    emit.csv(stem, table);
    const auto& smallest = s.components.back();
    json payload = point_echo(p);
    payload["smallest"] = {{"mean", smallest.mean()},
                           {"variance", smallest.variance()},
                           {"relative_fluctuation", rel.back()},
                           {"predicted_relative_fluctuation",
                            1.0 / analytic::scaling_factor(p.cfg.small_dim(), p.cfg.ratio())}};
    payload["file"] = stem + ".csv";
    emit.record(stem, {"eigstats", config_echo(f), payload});
}

struct FitFlags {
    std::string input;
    std::size_t window = kDefaultFitWindow;
    int bootstrap = 0;
    std::uint64_t seed = 1;
    std::string out = ".";
};

int column_of(const CsvTable& t, const std::string& name, bool required) {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (t.header[i] == name) return static_cast<int>(i);
    }
    if (required) throw InvalidArgument("input CSV lacks a '" + name + "' column");
    return -1;
}

void cmd_fit(const FitFlags& f, Emitter& emit) {
    const CsvTable table = parse_csv(read_text_file(f.input));
    const int col_n = column_of(table, "n", true);
    const int col_p = column_of(table, "p_hat", true);
    const int col_se = column_of(table, "stderr", true);
    const int col_c = column_of(table, "c", false);
    std::map<double, std::vector<DecayPoint>> groups;
    for (const auto& row : table.rows) {
        const double c = col_c >= 0 ? row[col_c] : 0.0;
        groups[c].push_back({row[col_n], row[col_p], row[col_se]});
    }
    json fits = json::array();
    for (const auto& [c, pts] : groups) {
        std::optional<BootstrapOptions> boot;
        if (f.bootstrap > 0) boot = BootstrapOptions{f.bootstrap, f.seed};
        const PowerLawFit fit = fit_power_law(pts, f.window, boot);
        json j{{"theta", fit.theta},        {"b", fit.b},
               {"theta_err", fit.theta_err}, {"b_err", fit.b_err},
               {"fit_window", fit.fit_window}, {"residual_norm", fit.residual_norm}};
        if (col_c >= 0) j["c"] = c;
        if (fit.theta_err_bootstrap) j["theta_err_bootstrap"] = *fit.theta_err_bootstrap;
        if (fit.b_err_bootstrap) j["b_err_bootstrap"] = *fit.b_err_bootstrap;
        fits.push_back(j);
    }
    const std::string stem = "fit-" + fs::path(f.input).stem().string();
    json config{{"input", fs::path(f.input).filename().string()},
                {"window", f.window},
                {"bootstrap", f.bootstrap},
                {"seed", f.seed},
                {"code_version", LOCCMC_VERSION}};
    json payload{{"fits", fits}};
    if (fits.size() == 1) {
        payload["theta"] = fits[0]["theta"];
        payload["b"] = fits[0]["b"];
    }
    emit.record(stem, {"fit", config, payload});
}

struct ExactFlags {
    std::string density;
    std::vector<double> grid;
    int n = 2;
    int m = 2;
    double c = 1.0;
    std::string out = ".";
};

void cmd_exact(const ExactFlags& f, const CLI::App& app, Emitter& emit) {
    using namespace analytic;
    CsvTable table{{"x", "value"}, {}};
    std::string stem = "exact-" + f.density;
    json config{{"density", f.density}, {"code_version", LOCCMC_VERSION}};
    auto eval_grid = [&](auto fn) {
        if (f.grid.empty()) throw InvalidArgument("--grid is required for density " + f.density);
        for (double x : f.grid) table.rows.push_back({x, fn(x)});
        config["grid"] = f.grid;
    };
    if (f.density == "q2m" || f.density == "fcont") {
        stem += "-m" + std::to_string(f.m);
        config["m"] = f.m;
        if (f.density == "q2m") {
            eval_grid([&](double s) { return q2m_density(s, f.m); });
        } else {
            eval_grid([&](double p) { return fcont_n2(p, f.m); });
        }
    } else if (f.density == "fmin") {
        stem += "-n" + std::to_string(f.n);
        config["n"] = f.n;
        eval_grid([&](double x) { return fmin_balanced_density(x, f.n); });
    } else if (f.density == "mp") {
        stem += "-c" + compact(f.c);
        config["c"] = f.c;
        eval_grid([&](double x) { return marchenko_pastur_density(x, f.c); });
    } else if (f.density == "arcsine") {
        eval_grid([&](double t) { return arcsine_cdf(t); });
    } else if (f.density == "sa-walk" || f.density == "sa-bridge") {
        stem += "-n" + std::to_string(f.n);
        config["n"] = f.n;
        const auto pmf = sparre_andersen_pmf(
            f.n, f.density == "sa-walk" ? ReferenceProcess::walk : ReferenceProcess::bridge);
        table.header = {"k", "probability"};
        for (std::size_t k = 0; k < pmf.size(); ++k) table.rows.push_back({static_cast<double>(k), pmf[k]});
    } else {
        throw CLI::ValidationError("--density", "unknown density '" + f.density + "'");
    }
    (void)app;
    emit.csv(stem, table);
    json values = json::array();
    for (const auto& row : table.rows) values.push_back(row[1]);
    emit.record(stem, {"exact", config, {{"values", values}, {"file", stem + ".csv"}}});
}

struct ValidateFlags {
    std::vector<int> only;
    int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::string out = ".";
};

int cmd_validate(const ValidateFlags& f, std::ostream& out, Emitter& emit) {
    ValidationOptions opts;
    opts.workers = f.workers;
    opts.only = f.only;
    const auto results = run_validation(opts, out);
    json items = json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        items.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
    }
    json config{{"only", f.only}, {"code_version", LOCCMC_VERSION}};
    emit.record("validate", {"validate", config, {{"criteria", items}, {"all_passed", all}}});
    return all ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte Carlo laboratory for LOCC convertibility of random bipartite pure states", "loccmc"};
    app.require_subcommand(1);

    CommonFlags sample_f, convert_f, dist_f, pers_f, eig_f;
    bool rescale = false, unordered = false;
    FitFlags fit_f;
    ExactFlags exact_f;
    ValidateFlags validate_f;

    auto* sample = app.add_subcommand("sample", "Dump sampled entanglement spectra (CSV)");
    add_common(sample, sample_f, false);
    auto* convert = app.add_subcommand("convert-prob", "Estimate P(Pi = 1) over n and m/c grids");
    add_common(convert, convert_f, true);
    auto* dist = app.add_subcommand("distribution", "Empirical distribution of Pi");
    add_common(dist, dist_f, false);
    dist->add_flag("--rescale", rescale, "Rescale 1 - Pi by the smallest-eigenvalue fluctuation scale");
    auto* pers = app.add_subcommand("persistence", "Histogram of the occupation count N_n");
    add_common(pers, pers_f, false);
    pers->add_flag("--unordered", unordered, "Use exchangeable (randomly permuted) components");
    auto* eig = app.add_subcommand("eigstats", "Mean and variance of each ordered eigenvalue");
    add_common(eig, eig_f, false);

    auto* fit = app.add_subcommand("fit", "Fit p ~ b / n^theta to a convert-prob sweep");
    fit->add_option("--input", fit_f.input, "convert-prob CSV")->required()->check(CLI::ExistingFile);
    fit->add_option("--window", fit_f.window, "Fit over the last k points")->check(CLI::Range(2, 1000));
    fit->add_option("--bootstrap", fit_f.bootstrap, "Parametric bootstrap replicates (0 = off)");
    fit->add_option("--seed", fit_f.seed, "Bootstrap seed");
    fit->add_option("--out", fit_f.out, "Output directory");

    auto* exact = app.add_subcommand("exact", "Evaluate closed-form densities on a grid");
    exact->add_option("--density", exact_f.density, "q2m | fcont | fmin | mp | arcsine | sa-walk | sa-bridge")
        ->required()
        ->check(CLI::IsMember({"q2m", "fcont", "fmin", "mp", "arcsine", "sa-walk", "sa-bridge"}));
    exact->add_option("--grid", exact_f.grid, "Evaluation points, comma separated")->delimiter(',');
    exact->add_option("--n", exact_f.n, "n parameter");
    exact->add_option("--m", exact_f.m, "m parameter");
    exact->add_option("--c", exact_f.c, "c parameter");
    exact->add_option("--out", exact_f.out, "Output directory");

    auto* validate = app.add_subcommand("validate", "Run the acceptance criteria");
    validate->add_option("--only", validate_f.only, "Criterion ids, comma separated")->delimiter(',');
    validate->add_option("--workers", validate_f.workers, "Worker threads")->check(CLI::PositiveNumber);
    validate->add_option("--out", validate_f.out, "Output directory");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "loccmc: " << e.what() << "\n" << "Run with --help for usage.\n";
        return kExitUsage;
    }

    std::string out_dir = ".";
    int workers = 1;
    auto pick = [&](const std::string& dir, int w) {
        out_dir = dir;
        workers = w;
    };
    if (sample->parsed()) pick(sample_f.out, sample_f.workers);
    if (convert->parsed()) pick(convert_f.out, convert_f.workers);
    if (dist->parsed()) pick(dist_f.out, dist_f.workers);
    if (pers->parsed()) pick(pers_f.out, pers_f.workers);
    if (eig->parsed()) pick(eig_f.out, eig_f.workers);
    if (fit->parsed()) pick(fit_f.out, 1);
    if (exact->parsed()) pick(exact_f.out, 1);
    if (validate->parsed()) pick(validate_f.out, validate_f.workers);

    std::string command = "unknown";
    try {
        Emitter emit(out_dir, out, workers);
        if (sample->parsed()) {
            command = "sample";
            cmd_sample(sample_f, emit);
        } else if (convert->parsed()) {
            command = "convert-prob";
            cmd_convert_prob(convert_f, emit);
        } else if (dist->parsed()) {
            command = "distribution";
            cmd_distribution(dist_f, rescale, emit);
        } else if (pers->parsed()) {
            command = "persistence";
            cmd_persistence(pers_f, unordered, emit);
        } else if (eig->parsed()) {
            command = "eigstats";
            cmd_eigstats(eig_f, emit);
        } else if (fit->parsed()) {
            command = "fit";
            cmd_fit(fit_f, emit);
        } else if (exact->parsed()) {
            command = "exact";
            cmd_exact(exact_f, *exact, emit);
        } else if (validate->parsed()) {
            command = "validate";
            return cmd_validate(validate_f, out, emit);
        }
        return kExitOk;
    } catch (const NumericalFailure& e) {
        const json diag{{"experiment", command}, {"error", "numerical-failure"}, {"message", e.what()},
                        {"index", e.index()}};
        err << diag.dump(2) << "\n";
        try {
            write_text_file(fs::path(out_dir) / ("error-" + command + ".json"), diag.dump(2) + "\n");
        } catch (const std::exception&) {
        }
        return kExitNumerical;
    } catch (const InvalidArgument& e) {
        err << "loccmc " << command << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceLimit& e) {
        err << "loccmc " << command << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        err << "loccmc " << command << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "loccmc " << command << ": " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace loccmc::cli
