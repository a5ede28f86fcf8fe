#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "phiid/laplace.hpp"
#include "phiid/report.hpp"

namespace phiid {

using Complex = std::complex<double>;

// Jump characteristic functions for compound-Poisson exponents.
struct SymmetricTwoPointJump {
  double x0;  // h(t) = cos(t x0)
};
struct GaussianJump {};  // h(t) = exp(-t^2/2)
struct DegenerateJump {
  double x0;  // h(t) = exp(i t x0)
};

class JumpCf {
 public:
  using Variant =
      std::variant<SymmetricTwoPointJump, GaussianJump, DegenerateJump>;
  explicit JumpCf(Variant v) : v_(std::move(v)) {}

  Complex eval(double t) const;
  double sample(Rng& rng) const;
  const Variant& value() const { return v_; }
  std::string describe() const;

 private:
  Variant v_;
};

// Exponents psi with omega(t) = exp(-psi(t)) an ID characteristic
// function. Re psi >= 0 everywhere and psi(0) = 0 for each variant.
struct StableExponent {
  double lambda;  // scale, > 0
  double alpha;   // index, (0, 2]
  double skew;    // |skew| <= min(pi*alpha/2, pi - pi*alpha/2)
};
struct CompoundPoissonExponent {
  double rate;  // > 0
  JumpCf jump;
};
// Log-periodic perturbation of a stable exponent; satisfies the scaling
// relation psi(c^{1/alpha} t) = c psi(t). Demo-grade: the CF validity
// window in eps is not known in closed form, so |eps| is capped at 0.05.
struct SemiStableExponent {
  double alpha;  // (0, 2)
  double eps;    // |eps| <= 0.05
  double c;      // period base, > 1
};

class IdExponent {
 public:
  using Variant =
      std::variant<StableExponent, CompoundPoissonExponent, SemiStableExponent>;

  static IdExponent stable(double lambda, double alpha, double skew);
  static IdExponent compound_poisson(double rate, JumpCf jump);
  static IdExponent semi_stable(double alpha, double eps, double c);

  Complex eval(double t) const;
  const Variant& value() const { return v_; }
  bool is_stable() const;
  bool is_semi_stable() const;
  /// Subordination needs either a strictly stable psi or a compound
  /// Poisson one; the log-periodic family has no sampler.
  bool supports_subordination() const { return !is_semi_stable(); }
  std::string describe() const;

 private:
  explicit IdExponent(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// The largest admissible |skew| for a stable exponent of index alpha.
double stable_skew_bound(double alpha);

/// Composed law with CF f(t) = phi{psi(t)}.
class PhiIdLaw {
 public:
  PhiIdLaw(LaplaceTransform phi, IdExponent psi);

  /// f(t) = phi(psi(t)); exactly 1 at t = 0. Throws std::domain_error
  /// if Re psi(t) < -1e-12 (an invalid exponent); smaller negative
  /// excursions are rounding and get clamped to the boundary.
  Complex cf(double t) const;

  const LaplaceTransform& phi() const { return phi_; }
  const IdExponent& psi() const { return psi_; }
  std::string describe() const;

 private:
  LaplaceTransform phi_;
  IdExponent psi_;
};

struct ZeroCheckResult {
  double min_abs = 0.0;
  double argmin_t = 0.0;
  bool pass = false;
  double zero_tol = 0.0;
};

/// Minimum of |f| over the grid. Pass means the minimum clears zero_tol;
/// the tolerance exists because a true real zero lands within rounding
/// of 0 rather than exactly on it.
ZeroCheckResult no_real_zero_check(const std::function<Complex(double)>& f,
                                   std::span<const double> t_grid,
                                   double zero_tol = 1e-12);
ZeroCheckResult no_real_zero_check(const PhiIdLaw& law,
                                   std::span<const double> t_grid,
                                   double zero_tol = 1e-12);

/// sup over the grid of |exp(-phi^{-1}(f(t))) - exp(-psi(t))|: the
/// recovered ID characteristic function must match the input exponent.
/// Mixture phi is rejected (no closed complex inverse).
double id_roundtrip(const PhiIdLaw& law, std::span<const double> t_grid);

/// One point of a triangular-array limit: evaluate
/// phi{weight * (1 - h(cf_scale * t))} and compare to phi{psi(t)}.
struct DefinettiPoint {
  double label;     // schedule label (typically n)
  double weight;    // a_n
  double cf_scale;  // h_n(t) = h(cf_scale * t)
};

/// phi{weight (1 - h(cf_scale t))}, the value compared against the limit.
Complex definetti_prelimit(const LaplaceTransform& phi, const JumpCf& h,
                           const DefinettiPoint& point, double t);

ConvergenceReport definetti_limit_eval(const LaplaceTransform& phi,
                                       const IdExponent& target,
                                       const JumpCf& h,
                                       std::span<const DefinettiPoint> schedule,
                                       std::span<const double> t_grid,
                                       double tolerance);

/// Class-L surrogate: the ratio phi(s)/phi(c s) must itself be
/// completely monotone for phi to be self-decomposable. Runs the
/// finite-difference check on the ratio.
CmCheckResult selfdecomp_ratio_check(const LaplaceTransform& phi, double c,
                                     double grid_start = 0.1,
                                     double step = 0.25, int max_order = 8,
                                     int n_points = 24);

/// (1/N) sum exp(i t X_k) on the grid. Rejects empty input.
std::vector<Complex> empirical_cf(std::span<const double> samples,
                                  std::span<const double> t_grid);

/// The 1/sqrt(N) scale of empirical-CF noise.
double empirical_cf_noise_scale(std::size_t n);

/// sup_k |f_k - g_k|; grids must have equal length.
double cf_distance(std::span<const Complex> f, std::span<const Complex> g);

}  // namespace phiid
