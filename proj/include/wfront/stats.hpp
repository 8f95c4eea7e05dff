#pragma once

#include <cstddef>
#include <vector>

namespace wfront::stats {

// Log-normal with mu, var the mean and VARIANCE of log(x).
double lognormal_logpdf(double x, double mu_log, double var_log);

// Inverse gamma in shape/scale form: pdf(x) ∝ x^{-shape-1} exp(-scale/x).
double invgamma_logpdf(double x, double shape, double scale);

double normal_logpdf(double x, double mean, double var);

// Standard normal CDF.
double normal_cdf(double z);

// Quantile of the chi-squared distribution with df degrees of freedom.
double chi2_quantile(double df, double p);

// Quantile of Fisher's F distribution.
double f_quantile(double d1, double d2, double p);

// Two-sample Kolmogorov-Smirnov distance between empirical CDFs.
double ks_distance(std::vector<double> a, std::vector<double> b);

// Pearson chi-squared statistic for uniformity of values in [0,1] over
// `bins` equal-width bins.
double uniform_chi2(const std::vector<double>& values, int bins);

// Empirical quantile (linear interpolation between order statistics).
double quantile(std::vector<double> values, double p);

double mean(const std::vector<double>& values);
double variance(const std::vector<double>& values);

}  // namespace wfront::stats
