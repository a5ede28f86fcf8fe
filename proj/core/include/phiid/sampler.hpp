#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <variant>

#include "phiid/charfn.hpp"
#include "phiid/counts.hpp"
#include "phiid/random.hpp"

namespace phiid {

/// Draws X with CF exp(-lambda |t|^alpha e^{-i skew sgn(t)}) by the
/// trigonometric (uniform + exponential) construction.
///
/// Derivation of the parameter mapping: with theta_s = skew the exponent
/// equals lambda cos(theta_s) |t|^alpha [1 - i tan(theta_s) sgn t], i.e.
/// the common asymmetric parametrization with beta tan(pi alpha/2) =
/// tan(theta_s) and scale^alpha = lambda cos(theta_s). Substituting into
/// the standard sampler collapses its auxiliary angle to theta_s/alpha
/// and its scale factor to lambda^{1/alpha}:
///
///   V ~ U(-pi/2, pi/2), W ~ Exp(1),
///   X = lambda^{1/alpha} * sin(alpha V + theta_s) / cos(V)^{1/alpha}
///       * [cos((1-alpha) V - theta_s) / W]^{(1-alpha)/alpha}.
///
/// alpha = 2 forces skew = 0 and reduces to 2 sqrt(lambda W) sin V (a
/// normal with variance 2 lambda); alpha = 1 is supported only with
/// skew = 0 (Cauchy), where the formula reduces to lambda tan V.
double sample_stable(double alpha, double lambda, double skew, Rng& rng);

// Component laws for sums, each with a closed-form CF used as the g(t)
// of convergence experiments. An optional affine map scale*X + shift is
// applied per draw (and reflected in the CF).
struct ExponentialComponent {
  double mean;
};
struct LaplaceComponent {
  double scale;  // density exp(-|x|/scale)/(2 scale); CF 1/(1+scale^2 t^2)
};
struct NormalComponent {
  double mean;
  double sd;
};
struct SymmetricStableComponent {
  double alpha;
  double scale;  // CF exp(-scale |t|^alpha)
};
struct TwoPointComponent {
  double x0;  // +-x0 with probability 1/2 each
};

class ComponentLaw {
 public:
  using Variant =
      std::variant<ExponentialComponent, LaplaceComponent, NormalComponent,
                   SymmetricStableComponent, TwoPointComponent>;

  explicit ComponentLaw(Variant v, double shift = 0.0, double scale = 1.0);

  double sample(Rng& rng) const;
  Complex cf(double t) const;
  /// Mean of the affine-mapped draw; throws for alpha <= 1 stable
  /// components, whose mean does not exist.
  double mean() const;

  ComponentLaw with_affine(double shift, double scale) const;
  const Variant& value() const { return v_; }
  double shift() const { return shift_; }
  double scale() const { return scale_; }
  std::string describe() const;

 private:
  Variant v_;
  double shift_;
  double scale_;
};

/// Exact draw from a phi-ID law by subordination. For a stable exponent
/// returns V^{1/alpha} S with V ~ phi and S stable, using the scaling
/// identity psi(c t) = c^alpha psi(t); for compound Poisson returns a
/// Poisson(rate*V) number of jumps. Semi-stable exponents are rejected.
double sample_phi_id(const PhiIdLaw& law, Rng& rng);

/// Sum of N component draws with N from the count model (empty sum = 0).
double sample_random_sum(const CountModel& count, const ComponentLaw& component,
                         Rng& rng);
double sample_random_sum(const HarrisModel& count, const ComponentLaw& component,
                         Rng& rng);

/// Sum of a fixed number of component draws (n = 0 gives 0).
double sample_deterministic_sum(std::uint64_t n, const ComponentLaw& component,
                                Rng& rng);

}  // namespace phiid
