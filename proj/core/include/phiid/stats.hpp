#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace phiid {

struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};

Moments moments(std::span<const double> xs);

/// (1/N) sum exp(-v x_k); the empirical Laplace transform at v.
double empirical_lt(std::span<const double> xs, double v);

/// (1/N) sum s^{n_k}; the empirical PGF of integer draws at s.
double empirical_pgf(std::span<const double> counts, double s);

/// Order statistic interpolation (type-7) on an unsorted sample copy.
double quantile(std::vector<double> xs, double p);

/// Survival function of the Kolmogorov distribution,
/// Q(x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_sf(double x);

struct KsResult {
  double statistic = 0.0;  // sup |F_n - F|
  double p_value = 0.0;
  std::size_t n = 0;
};

/// One-sample Kolmogorov-Smirnov test against an exact CDF.
/// p-value uses the asymptotic law with Stephens' finite-n correction.
KsResult ks_test(std::vector<double> samples,
                 const std::function<double(double)>& cdf);

/// Total variation distance (1/2 L1) between two PMFs given on the same
/// state list.
double tv_distance_pmf(std::span<const double> p, std::span<const double> q);

// Closed-form CDFs used as test oracles.
double exponential_cdf(double x, double mean);
double laplace_cdf(double x, double scale);
double normal_cdf(double x, double mean, double sd);

// Grid builders.
std::vector<double> linspace(double lo, double hi, std::size_t n);
/// Symmetric grid on [-t_max, t_max]; point count is forced odd so t = 0
/// is always present.
std::vector<double> symmetric_grid(double t_max, std::size_t n);
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

}  // namespace phiid
