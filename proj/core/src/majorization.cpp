#include "loccmc/majorization.hpp"

#include <algorithm>

#include "loccmc/error.hpp"

namespace loccmc {

namespace {

void require_same_length(std::size_t a, std::size_t b) {
    if (a != b) throw InvalidArgument("spectra must have the same length");
}

// x < y iff E_k(x) >= E_k(y) - tol for every k >= 2.
bool majorized_by(std::span<const double> x, std::span<const double> y, double tol) {
    double ex = 0.0, ey = 0.0;
    for (std::size_t k = x.size(); k-- > 1;) {
        ex += x[k];
        ey += y[k];
        if (ex < ey - tol) return false;
    }
    return true;
}

}  // namespace

Spectrum uniform_spectrum(std::size_t n) {
    if (n == 0) throw InvalidArgument("spectrum length must be positive");
    return Spectrum::from_weights(std::vector<double>(n, 1.0));
}

Spectrum pure_spectrum(std::size_t n) {
    if (n == 0) throw InvalidArgument("spectrum length must be positive");
    std::vector<double> v(n, 0.0);
    v[0] = 1.0;
    return Spectrum::from_probabilities(std::move(v));
}

std::vector<double> suffix_sums(const Spectrum& x) {
    const std::size_t n = x.size();
    std::vector<double> out(n);
    double acc = 0.0;
    for (std::size_t k = n; k-- > 1;) {
        acc += x[k];
        out[k] = acc;
    }
    out[0] = 1.0;
    return out;
}

ComparisonResult majorizes(const Spectrum& x, const Spectrum& y, double tol) {
    require_same_length(x.size(), y.size());
    ComparisonResult r;
    r.x_majorized_by_y = majorized_by(x.values(), y.values(), tol);
    r.y_majorized_by_x = majorized_by(y.values(), x.values(), tol);
    r.incomparable = !r.x_majorized_by_y && !r.y_majorized_by_x;
    return r;
}

double vidal_pi(std::span<const double> x, std::span<const double> y, double tol) {
    require_same_length(x.size(), y.size());
    double ex = 0.0, ey = 0.0;
    double ratio = 1.0;
    bool majorized = true;
    for (std::size_t k = x.size(); k-- > 1;) {
        ex += x[k];
        ey += y[k];
        if (ex < ey - tol) majorized = false;
        if (ey > 0.0) ratio = std::min(ratio, ex / ey);
    }
    return majorized ? 1.0 : ratio;
}

double vidal_pi(const Spectrum& x, const Spectrum& y, double tol) {
    return vidal_pi(x.values(), y.values(), tol);
}

bool convex_certificate(const Spectrum& x, const Spectrum& y, double p, double tol) {
    require_same_length(x.size(), y.size());
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("p must lie in [0, 1]");
    std::vector<double> mixed(y.begin(), y.end());
    for (double& v : mixed) v *= p;
    mixed[0] += 1.0 - p;
    // Adding mass to the first coordinate keeps the mixture decreasing.
    return majorized_by(x.values(), mixed, tol);
}

}  // namespace loccmc
