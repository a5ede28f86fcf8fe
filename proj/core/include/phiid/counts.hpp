#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phiid/laplace.hpp"
#include "phiid/report.hpp"

namespace phiid {

/// Count family with PGF P(s) = s^j phi{(1 - s^m)/theta}. Support lies
/// on {j, j+m, j+2m, ...}; P(0) = 0 exactly when j >= 1.
///
/// Sampling uses the mixed-Poisson identity: phi{(1-s^m)/theta} is the
/// PGF of m*K with K ~ Poisson(U/theta) and U ~ phi, so N = j + m*K is
/// exact (verified against the PGF in the test suite).
class CountModel {
 public:
  CountModel(LaplaceTransform phi, double theta, int j, int m);

  double pgf(double s) const;
  std::uint64_t sample(Rng& rng) const;

  /// E[N] = j + m * E[U] / theta.
  double mean() const;

  const LaplaceTransform& phi() const { return phi_; }
  double theta() const { return theta_; }
  int j() const { return j_; }
  int m() const { return m_; }

  /// Poisson-rate overflow guard: sample() throws std::overflow_error
  /// instead of truncating once U/theta exceeds the cap.
  double rate_cap() const { return rate_cap_; }
  void set_rate_cap(double cap);

 private:
  LaplaceTransform phi_;
  double theta_;
  int j_;
  int m_;
  double rate_cap_ = 1e9;
};

/// Harris(a, m) count law, P_a(s) = s / {a - (a-1) s^m}^{1/m}, a > 1.
struct HarrisModel {
  HarrisModel(double a, int m);
  double a;
  int m;
};

double harris_pgf(const HarrisModel& model, double s);

/// The Harris law as a member of the phi-indexed class:
/// j = 1, m unchanged, theta = m/(a-1), phi = Gamma(nu=1/m, beta=m).
/// The two PGFs agree identically; tests pin the grid error below 1e-12.
CountModel harris_as_count_model(const HarrisModel& model);

/// Scaling applied to counts in the limit check: Theta rescales to
/// theta*N (target phi(m v)); InverseA rescales to N/a with
/// a = 1 + m/theta (the Harris normalization; target phi(v)).
enum class CountScaling { kTheta, kInverseA };

struct CountLimitOptions {
  std::vector<double> theta_schedule;  // strictly decreasing
  std::vector<double> v_grid;          // positive
  std::size_t samples_per_theta = 100000;
  CountScaling scaling = CountScaling::kTheta;
  double tolerance = 1e-3;             // exact-formula gate
  double empirical_tolerance = 0.0;    // optional extra gate (0 = off)
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

/// Exact Laplace transform of c*N at v for the model (phi, theta, j, m):
/// E exp(-v c N) = exp(-v c j) * phi{(1 - exp(-v c m))/theta}.
double scaled_count_lt(const LaplaceTransform& phi, double theta, int j, int m,
                       double scale, double v);

struct CountLimitCurve {
  double theta = 0.0;
  std::vector<double> v;
  std::vector<double> target;
  std::vector<double> exact;
  std::vector<double> empirical;
};

/// Compares, along a decreasing theta schedule, (i) the exact pre-limit
/// transform of the rescaled count and (ii) its empirical estimate from
/// sampled counts, against the limit transform. The verdict is carried
/// by the exact formula; the empirical curve is reported alongside (and
/// gated too when empirical_tolerance > 0).
ConvergenceReport scaled_count_limit_check(
    const LaplaceTransform& phi, int j, int m,
    const CountLimitOptions& options,
    std::vector<CountLimitCurve>* curves = nullptr);

}  // namespace phiid
