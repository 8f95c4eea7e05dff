#include "wfront/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>

namespace wfront::stats {

double lognormal_logpdf(double x, double mu_log, double var_log) {
    if (x <= 0.0) return -std::numeric_limits<double>::infinity();
    const double lx = std::log(x);
    const double d = lx - mu_log;
    return -0.5 * std::log(2.0 * M_PI * var_log) - lx - 0.5 * d * d / var_log;
}

double invgamma_logpdf(double x, double shape, double scale) {
    if (x <= 0.0) return -std::numeric_limits<double>::infinity();
    return shape * std::log(scale) - std::lgamma(shape) -
           (shape + 1.0) * std::log(x) - scale / x;
}

double normal_logpdf(double x, double mean, double var) {
    const double d = x - mean;
    return -0.5 * std::log(2.0 * M_PI * var) - 0.5 * d * d / var;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double chi2_quantile(double df, double p) {
    boost::math::chi_squared dist(df);
    return boost::math::quantile(dist, p);
}

double f_quantile(double d1, double d2, double p) {
    boost::math::fisher_f dist(d1, d2);
    return boost::math::quantile(dist, p);
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        const double fa = static_cast<double>(i) / a.size();
        const double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::fabs(fa - fb));
    }
    return d;
}

double uniform_chi2(const std::vector<double>& values, int bins) {
    if (values.empty()) throw std::invalid_argument("uniform_chi2: empty sample");
    std::vector<int> count(bins, 0);
    for (double v : values) {
        int b = static_cast<int>(v * bins);
        b = std::clamp(b, 0, bins - 1);
        ++count[b];
    }
    const double expected = static_cast<double>(values.size()) / bins;
    double chi2 = 0.0;
    for (int c : count) {
        const double d = c - expected;
        chi2 += d * d / expected;
    }
    return chi2;
}

double quantile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile: empty sample");
    std::sort(values.begin(), values.end());
    const double pos = p * (values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - lo;
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

double mean(const std::vector<double>& values) {
    double s = 0.0;
    for (double v : values) s += v;
    return s / values.size();
}

double variance(const std::vector<double>& values) {
    const double m = mean(values);
    double s = 0.0;
    for (double v : values) s += (v - m) * (v - m);
    return s / (values.size() - 1);
}

}  // namespace wfront::stats
