#pragma once

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "phiid/random.hpp"

namespace phiid {

// The supported transform universe. Each atom has a closed form for
// evaluation (real and complex on {Re z >= 0}), inversion, and sampling
// of the latent variable U, so every check in the library is exact:
//
//   Degenerate(c):        phi(s) = exp(-c s),        U == c
//   Exponential(beta):    phi(s) = 1/(1 + beta s),   U ~ Exp(mean beta)
//   Gamma(nu, beta):      phi(s) = (1+beta s)^-nu,   U ~ Gamma(nu, beta)
//
// Finite mixtures of atoms are also transforms (of the weight-mixed U);
// they invert by bisection and have no complex closed-form inverse.
struct DegenerateLt {
  double c;
};
struct ExponentialLt {
  double beta;
};
struct GammaLt {
  double nu;
  double beta;
};
using LtAtom = std::variant<DegenerateLt, ExponentialLt, GammaLt>;

class LaplaceTransform {
 public:
  static LaplaceTransform degenerate(double c);
  static LaplaceTransform exponential(double beta);
  static LaplaceTransform gamma(double nu, double beta);
  /// Components must be non-mixture transforms; weights must sum to 1
  /// within 1e-12 (they are renormalized exactly afterwards).
  static LaplaceTransform mixture(std::vector<double> weights,
                                  std::vector<LaplaceTransform> components);

  /// phi(s) for s >= 0. Equals 1 at s = 0 and stays in (0, 1].
  double eval(double s) const;

  /// Analytic continuation to {Re z >= 0}. The gamma power uses the
  /// principal branch of log(1 + beta z), which never crosses the cut
  /// because Re(1 + beta z) >= 1 there.
  std::complex<double> eval(std::complex<double> z) const;

  /// phi^{-1}(p) for p in (0, 1]. Closed form for atoms; bisection for
  /// mixtures (bracket [0, S] with S doubled until phi(S) < p).
  double inverse(double p) const;

  /// Closed-form inverse on the principal branch; mixtures are rejected
  /// (no closed complex inverse exists for them).
  std::complex<double> inverse(std::complex<double> p) const;
  bool has_closed_form_inverse() const { return !is_mixture(); }

  /// Draws the latent variable U with E[exp(-sU)] = phi(s).
  double sample_u(Rng& rng) const;

  double mean_u() const;
  bool is_mixture() const { return atoms_.size() > 1; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<LtAtom>& atoms() const { return atoms_; }
  std::string describe() const;

 private:
  LaplaceTransform() = default;
  std::vector<double> weights_;
  std::vector<LtAtom> atoms_;
};

struct CmCheckResult {
  bool pass = false;
  int first_failing_order = 0;  // 0 when the check passes
  double worst_violation = 0.0;
  double tolerance = 0.0;
  int orders_checked = 0;
};

/// Finite-difference surrogate for complete monotonicity: on the grid
/// x_i = grid_start + i*step (i < n_points) the alternating differences
/// (-1)^k Delta^k f must stay above -tolerance for k = 1..max_order,
/// with tolerance = 1e-9 * max|f| over the grid. n_points defaults to
/// max_order + 1 (the minimal stencil).
CmCheckResult complete_monotonicity_check(
    const std::function<double(double)>& f, double grid_start, double step,
    int max_order, int n_points = 0);

}  // namespace phiid
