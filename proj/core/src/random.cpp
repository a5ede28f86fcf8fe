#include "phiid/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace phiid {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng make_rng(std::uint64_t seed) {
  std::uint64_t s = seed;
  return Rng(splitmix64(s));
}

Rng make_stream(std::uint64_t root_seed, std::uint64_t stream_index) {
  std::uint64_t s = root_seed;
  std::uint64_t a = splitmix64(s);
  std::uint64_t t = stream_index + 0x632be59bd9b4e019ULL;
  std::uint64_t b = splitmix64(t);
  std::uint64_t c = a ^ b;
  return Rng(splitmix64(c));
}

double uniform01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double exponential1(Rng& rng) { return -std::log(uniform01(rng)); }

double normal01(Rng& rng) {
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double gamma_shape(Rng& rng, double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw std::invalid_argument("gamma_shape: shape must be positive");
  }
  if (shape < 1.0) {
    const double boost = std::pow(uniform01(rng), 1.0 / shape);
    return gamma_shape(rng, shape + 1.0) * boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal01(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01(rng);
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

namespace {

std::uint64_t poisson_knuth(Rng& rng, double mean) {
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double prod = uniform01(rng);
  while (prod > limit) {
    ++k;
    prod *= uniform01(rng);
  }
  return k;
}

// Transformed rejection with a table-free dominating distribution
// (Hormann's PTRD). Valid for mean >= 10; acceptance rate 75-89%.
std::uint64_t poisson_ptrd(Rng& rng, double mean) {
  const double smu = std::sqrt(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    const double u = uniform01(rng) - 0.5;
    const double v = uniform01(rng);
    const double us = 0.5 - std::fabs(u);
    const double kd = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kd);
    if (kd < 0.0 || (us < 0.013 && v > us)) continue;
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = kd * log_mean - mean - std::lgamma(kd + 1.0);
    if (lhs <= rhs) return static_cast<std::uint64_t>(kd);
  }
}

}  // namespace

std::uint64_t poisson(Rng& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson: mean must be finite and >= 0");
  }
  if (mean == 0.0) return 0;
  if (mean < 10.0) return poisson_knuth(rng, mean);
  return poisson_ptrd(rng, mean);
}

}  // namespace phiid
