#include "phiid/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace phiid {

namespace {
constexpr double kPi = std::numbers::pi;
}

Complex JumpCf::eval(double t) const {
  return std::visit(
      [t](const auto& v) -> Complex {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SymmetricTwoPointJump>) {
          return {std::cos(t * v.x0), 0.0};
        } else if constexpr (std::is_same_v<T, GaussianJump>) {
          return {std::exp(-0.5 * t * t), 0.0};
        } else {
          return {std::cos(t * v.x0), std::sin(t * v.x0)};
        }
      },
      v_);
}

double JumpCf::sample(Rng& rng) const {
  return std::visit(
      [&rng](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SymmetricTwoPointJump>) {
          return (rng() & 1u) ? v.x0 : -v.x0;
        } else if constexpr (std::is_same_v<T, GaussianJump>) {
          return normal01(rng);
        } else {
          return v.x0;
        }
      },
      v_);
}

std::string JumpCf::describe() const {
  std::ostringstream os;
  std::visit(
      [&os](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SymmetricTwoPointJump>) {
          os << "two-point(x0=" << v.x0 << ")";
        } else if constexpr (std::is_same_v<T, GaussianJump>) {
          os << "gaussian";
        } else {
          os << "degenerate-jump(x0=" << v.x0 << ")";
        }
      },
      v_);
  return os.str();
}

double stable_skew_bound(double alpha) {
  return std::min(kPi * alpha / 2.0, kPi - kPi * alpha / 2.0);
}

IdExponent IdExponent::stable(double lambda, double alpha, double skew) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("stable exponent: lambda must be > 0");
  }
  if (!(alpha > 0.0) || !(alpha <= 2.0)) {
    throw std::invalid_argument("stable exponent: alpha must be in (0, 2]");
  }
  if (std::fabs(skew) > stable_skew_bound(alpha) + 1e-12) {
    throw std::invalid_argument(
        "stable exponent: |skew| exceeds min(pi*alpha/2, pi - pi*alpha/2)");
  }
  return IdExponent(StableExponent{lambda, alpha, skew});
}

IdExponent IdExponent::compound_poisson(double rate, JumpCf jump) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("compound poisson exponent: rate must be > 0");
  }
  return IdExponent(CompoundPoissonExponent{rate, std::move(jump)});
}

IdExponent IdExponent::semi_stable(double alpha, double eps, double c) {
  if (!(alpha > 0.0) || !(alpha < 2.0)) {
    throw std::invalid_argument("semi-stable exponent: alpha must be in (0, 2)");
  }
  if (!(std::fabs(eps) <= 0.05)) {
    throw std::invalid_argument("semi-stable exponent: |eps| capped at 0.05");
  }
  if (!(c > 1.0)) {
    throw std::invalid_argument("semi-stable exponent: c must be > 1");
  }
  return IdExponent(SemiStableExponent{alpha, eps, c});
}

Complex IdExponent::eval(double t) const {
  return std::visit(
      [t](const auto& v) -> Complex {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, StableExponent>) {
          if (t == 0.0) return {0.0, 0.0};
          const double mod = v.lambda * std::pow(std::fabs(t), v.alpha);
          const double sgn = t > 0.0 ? 1.0 : -1.0;
          return {mod * std::cos(v.skew), -mod * sgn * std::sin(v.skew)};
        } else if constexpr (std::is_same_v<T, CompoundPoissonExponent>) {
          return v.rate * (Complex{1.0, 0.0} - v.jump.eval(t));
        } else {
          if (t == 0.0) return {0.0, 0.0};
          // Multiplicative period c^{1/alpha} in t, so that
          // psi(c^{1/alpha} t) = c psi(t) holds exactly.
          const double at = std::fabs(t);
          const double wave =
              std::cos(2.0 * kPi * v.alpha * std::log(at) / std::log(v.c));
          return {std::pow(at, v.alpha) * (1.0 + v.eps * wave), 0.0};
        }
      },
      v_);
}

bool IdExponent::is_stable() const {
  return std::holds_alternative<StableExponent>(v_);
}

bool IdExponent::is_semi_stable() const {
  return std::holds_alternative<SemiStableExponent>(v_);
}

std::string IdExponent::describe() const {
  std::ostringstream os;
  std::visit(
      [&os](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, StableExponent>) {
          os << "stable(lambda=" << v.lambda << ",alpha=" << v.alpha
             << ",skew=" << v.skew << ")";
        } else if constexpr (std::is_same_v<T, CompoundPoissonExponent>) {
          os << "compound-poisson(rate=" << v.rate << ","
             << v.jump.describe() << ")";
        } else {
          os << "semi-stable(alpha=" << v.alpha << ",eps=" << v.eps
             << ",c=" << v.c << ")";
        }
      },
      v_);
  return os.str();
}

PhiIdLaw::PhiIdLaw(LaplaceTransform phi, IdExponent psi)
    : phi_(std::move(phi)), psi_(std::move(psi)) {}

Complex PhiIdLaw::cf(double t) const {
  if (!std::isfinite(t)) throw std::invalid_argument("cf: t must be finite");
  if (t == 0.0) return {1.0, 0.0};
  Complex z = psi_.eval(t);
  if (z.real() < -1e-12) {
    throw std::domain_error("cf: exponent has negative real part");
  }
  if (z.real() < 0.0) z = {0.0, z.imag()};
  return phi_.eval(z);
}

std::string PhiIdLaw::describe() const {
  return phi_.describe() + " o " + psi_.describe();
}

ZeroCheckResult no_real_zero_check(const std::function<Complex(double)>& f,
                                   std::span<const double> t_grid,
                                   double zero_tol) {
  if (t_grid.empty()) {
    throw std::invalid_argument("no_real_zero_check: empty grid");
  }
  ZeroCheckResult r;
  r.zero_tol = zero_tol;
  r.min_abs = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    const double a = std::abs(f(t));
    if (a < r.min_abs) {
      r.min_abs = a;
      r.argmin_t = t;
    }
  }
  r.pass = r.min_abs > zero_tol;
  return r;
}

ZeroCheckResult no_real_zero_check(const PhiIdLaw& law,
                                   std::span<const double> t_grid,
                                   double zero_tol) {
  return no_real_zero_check([&law](double t) { return law.cf(t); }, t_grid,
                            zero_tol);
}

double id_roundtrip(const PhiIdLaw& law, std::span<const double> t_grid) {
  if (!law.phi().has_closed_form_inverse()) {
    throw std::invalid_argument(
        "id_roundtrip: unsupported phi variant (mixture has no closed-form "
        "complex inverse)");
  }
  double sup = 0.0;
  for (double t : t_grid) {
    const Complex f = law.cf(t);
    const Complex recovered = std::exp(-law.phi().inverse(f));
    const Complex direct = std::exp(-law.psi().eval(t));
    sup = std::max(sup, std::abs(recovered - direct));
  }
  return sup;
}

Complex definetti_prelimit(const LaplaceTransform& phi, const JumpCf& h,
                           const DefinettiPoint& point, double t) {
  Complex inner =
      point.weight * (Complex{1.0, 0.0} - h.eval(point.cf_scale * t));
  if (inner.real() < 0.0) inner = {0.0, inner.imag()};  // rounding
  return phi.eval(inner);
}

ConvergenceReport definetti_limit_eval(const LaplaceTransform& phi,
                                       const IdExponent& target,
                                       const JumpCf& h,
                                       std::span<const DefinettiPoint> schedule,
                                       std::span<const double> t_grid,
                                       double tolerance) {
  if (schedule.empty()) {
    throw std::invalid_argument("definetti: empty schedule");
  }
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (!(schedule[i].label > schedule[i - 1].label)) {
      throw std::invalid_argument("definetti: schedule must be increasing");
    }
  }
  PhiIdLaw limit(phi, target);
  ConvergenceReport report;
  report.name = "definetti-limit";
  report.parameter_name = "n";
  report.tolerance = tolerance;
  for (const auto& point : schedule) {
    double sup = 0.0;
    for (double t : t_grid) {
      const Complex value = definetti_prelimit(phi, h, point, t);
      sup = std::max(sup, std::abs(value - limit.cf(t)));
    }
    report.parameters.push_back(point.label);
    report.distances.push_back(sup);
  }
  report.finalize();
  return report;
}

CmCheckResult selfdecomp_ratio_check(const LaplaceTransform& phi, double c,
                                     double grid_start, double step,
                                     int max_order, int n_points) {
  if (!(c > 0.0) || !(c < 1.0)) {
    throw std::invalid_argument("selfdecomp check: c must be in (0, 1)");
  }
  const auto ratio = [&phi, c](double s) {
    return phi.eval(s) / phi.eval(c * s);
  };
  return complete_monotonicity_check(ratio, grid_start, step, max_order,
                                     n_points);
}

std::vector<Complex> empirical_cf(std::span<const double> samples,
                                  std::span<const double> t_grid) {
  if (samples.empty()) {
    throw std::invalid_argument("empirical_cf: empty sample");
  }
  std::vector<Complex> out(t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const double t = t_grid[k];
    double re = 0.0;
    double im = 0.0;
    for (double x : samples) {
      re += std::cos(t * x);
      im += std::sin(t * x);
    }
    const double n = static_cast<double>(samples.size());
    out[k] = {re / n, im / n};
  }
  return out;
}

double empirical_cf_noise_scale(std::size_t n) {
  if (n == 0) throw std::invalid_argument("noise scale: n must be > 0");
  return 1.0 / std::sqrt(static_cast<double>(n));
}

double cf_distance(std::span<const Complex> f, std::span<const Complex> g) {
  if (f.size() != g.size()) {
    throw std::invalid_argument("cf_distance: grid length mismatch");
  }
  double sup = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sup = std::max(sup, std::abs(f[i] - g[i]));
  }
  return sup;
}

}  // namespace phiid
