#include "phiid/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phiid {

Moments moments(std::span<const double> xs) {
  Moments m;
  m.n = xs.size();
  if (m.n == 0) return m;
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / static_cast<double>(m.n);
  if (m.n < 2) return m;
  double ss = 0.0;
  for (double x : xs) {
    const double d = x - m.mean;
    ss += d * d;
  }
  m.variance = ss / static_cast<double>(m.n - 1);
  return m;
}

double empirical_lt(std::span<const double> xs, double v) {
  if (xs.empty()) throw std::invalid_argument("empirical_lt: empty sample");
  double sum = 0.0;
  for (double x : xs) sum += std::exp(-v * x);
  return sum / static_cast<double>(xs.size());
}

double empirical_pgf(std::span<const double> counts, double s) {
  if (counts.empty()) throw std::invalid_argument("empirical_pgf: empty sample");
  double sum = 0.0;
  for (double n : counts) sum += std::pow(s, n);
  return sum / static_cast<double>(counts.size());
}

double quantile(std::vector<double> xs, double p) {
  if (xs.empty()) throw std::invalid_argument("quantile: empty sample");
  std::sort(xs.begin(), xs.end());
  if (p <= 0.0) return xs.front();
  if (p >= 1.0) return xs.back();
  const double h = (static_cast<double>(xs.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return xs[lo] + frac * (xs[hi] - xs[lo]);
}

double kolmogorov_sf(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.18) return 1.0;  // series converges slowly; SF is 1 to 1e-10
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples,
                 const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_test: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  KsResult r;
  r.statistic = d;
  r.n = samples.size();
  const double sn = std::sqrt(n);
  r.p_value = kolmogorov_sf(d * (sn + 0.12 + 0.11 / sn));
  return r;
}

double tv_distance_pmf(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("tv_distance_pmf: length mismatch");
  }
  double l1 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) l1 += std::fabs(p[i] - q[i]);
  return 0.5 * l1;
}

double exponential_cdf(double x, double mean) {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-x / mean);
}

double laplace_cdf(double x, double scale) {
  if (x < 0.0) return 0.5 * std::exp(x / scale);
  return 1.0 - 0.5 * std::exp(-x / scale);
}

double normal_cdf(double x, double mean, double sd) {
  return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) throw std::invalid_argument("linspace: need at least one point");
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
  g.back() = hi;
  return g;
}

std::vector<double> symmetric_grid(double t_max, std::size_t n) {
  if (n < 3) n = 3;
  if (n % 2 == 0) ++n;
  auto g = linspace(-t_max, t_max, n);
  g[n / 2] = 0.0;  // exact center
  return g;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("log_spaced: need 0 < lo < hi");
  }
  auto g = linspace(std::log(lo), std::log(hi), n);
  for (double& x : g) x = std::exp(x);
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace phiid
