#include "phiid/laplace.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace phiid {

namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

double atom_eval(const LtAtom& a, double s) {
  return std::visit(
      [s](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DegenerateLt>) {
          return std::exp(-v.c * s);
        } else if constexpr (std::is_same_v<T, ExponentialLt>) {
          return 1.0 / (1.0 + v.beta * s);
        } else {
          return std::exp(-v.nu * std::log1p(v.beta * s));
        }
      },
      a);
}

std::complex<double> atom_eval(const LtAtom& a, std::complex<double> z) {
  return std::visit(
      [z](const auto& v) -> std::complex<double> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DegenerateLt>) {
          return std::exp(-v.c * z);
        } else if constexpr (std::is_same_v<T, ExponentialLt>) {
          return 1.0 / (1.0 + v.beta * z);
        } else {
          return std::exp(-v.nu * std::log(1.0 + v.beta * z));
        }
      },
      a);
}

double atom_inverse(const LtAtom& a, double p) {
  return std::visit(
      [p](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DegenerateLt>) {
          return -std::log(p) / v.c;
        } else if constexpr (std::is_same_v<T, ExponentialLt>) {
          return (1.0 / p - 1.0) / v.beta;
        } else {
          return std::expm1(-std::log(p) / v.nu) / v.beta;
        }
      },
      a);
}

std::complex<double> atom_inverse(const LtAtom& a, std::complex<double> p) {
  return std::visit(
      [p](const auto& v) -> std::complex<double> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DegenerateLt>) {
          return -std::log(p) / v.c;
        } else if constexpr (std::is_same_v<T, ExponentialLt>) {
          return (1.0 / p - 1.0) / v.beta;
        } else {
          return (std::exp(-std::log(p) / v.nu) - 1.0) / v.beta;
        }
      },
      a);
}

double atom_sample(const LtAtom& a, Rng& rng) {
  return std::visit(
      [&rng](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DegenerateLt>) {
          return v.c;
        } else if constexpr (std::is_same_v<T, ExponentialLt>) {
          return v.beta * exponential1(rng);
        } else {
          return v.beta * gamma_shape(rng, v.nu);
        }
      },
      a);
}

double atom_mean(const LtAtom& a) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DegenerateLt>) {
          return v.c;
        } else if constexpr (std::is_same_v<T, ExponentialLt>) {
          return v.beta;
        } else {
          return v.nu * v.beta;
        }
      },
      a);
}

std::string atom_describe(const LtAtom& a) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DegenerateLt>) {
          os << "degenerate(c=" << v.c << ")";
        } else if constexpr (std::is_same_v<T, ExponentialLt>) {
          os << "exponential(beta=" << v.beta << ")";
        } else {
          os << "gamma(nu=" << v.nu << ",beta=" << v.beta << ")";
        }
      },
      a);
  return os.str();
}

}  // namespace

LaplaceTransform LaplaceTransform::degenerate(double c) {
  require_positive(c, "degenerate c");
  LaplaceTransform lt;
  lt.weights_ = {1.0};
  lt.atoms_ = {DegenerateLt{c}};
  return lt;
}

LaplaceTransform LaplaceTransform::exponential(double beta) {
  require_positive(beta, "exponential beta");
  LaplaceTransform lt;
  lt.weights_ = {1.0};
  lt.atoms_ = {ExponentialLt{beta}};
  return lt;
}

LaplaceTransform LaplaceTransform::gamma(double nu, double beta) {
  require_positive(nu, "gamma nu");
  require_positive(beta, "gamma beta");
  LaplaceTransform lt;
  lt.weights_ = {1.0};
  lt.atoms_ = {GammaLt{nu, beta}};
  return lt;
}

LaplaceTransform LaplaceTransform::mixture(
    std::vector<double> weights, std::vector<LaplaceTransform> components) {
  if (weights.size() != components.size() || weights.empty()) {
    throw std::invalid_argument("mixture: weights/components size mismatch");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("mixture: weights must be nonnegative");
    }
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("mixture: weights must sum to 1 within 1e-12");
  }
  LaplaceTransform lt;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].is_mixture()) {
      throw std::invalid_argument("mixture: components must not be mixtures");
    }
    lt.weights_.push_back(weights[i] / sum);
    lt.atoms_.push_back(components[i].atoms_[0]);
  }
  return lt;
}

double LaplaceTransform::eval(double s) const {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw std::invalid_argument("lt eval: s must be finite and >= 0");
  }
  if (s == 0.0) return 1.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    acc += weights_[i] * atom_eval(atoms_[i], s);
  }
  return acc;
}

std::complex<double> LaplaceTransform::eval(std::complex<double> z) const {
  if (z.real() < 0.0) {
    throw std::invalid_argument("lt eval: Re z must be >= 0");
  }
  if (z == std::complex<double>(0.0, 0.0)) return {1.0, 0.0};
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    acc += weights_[i] * atom_eval(atoms_[i], z);
  }
  return acc;
}

double LaplaceTransform::inverse(double p) const {
  if (!(p > 0.0) || !(p <= 1.0)) {
    throw std::invalid_argument("lt inverse: p must be in (0, 1]");
  }
  if (p == 1.0) return 0.0;
  if (!is_mixture()) return atom_inverse(atoms_[0], p);
  // Monotone bisection: phi is continuous and strictly decreasing.
  double hi = 1.0;
  while (eval(hi) >= p) {
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("lt inverse: bracket overflow");
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) > p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, lo)) break;
  }
  return 0.5 * (lo + hi);
}

std::complex<double> LaplaceTransform::inverse(std::complex<double> p) const {
  if (is_mixture()) {
    throw std::invalid_argument(
        "lt inverse: mixtures have no closed-form complex inverse");
  }
  return atom_inverse(atoms_[0], p);
}

double LaplaceTransform::sample_u(Rng& rng) const {
  if (!is_mixture()) return atom_sample(atoms_[0], rng);
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    acc += weights_[i];
    if (u <= acc || i + 1 == atoms_.size()) {
      return atom_sample(atoms_[i], rng);
    }
  }
  return atom_sample(atoms_.back(), rng);
}

double LaplaceTransform::mean_u() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    acc += weights_[i] * atom_mean(atoms_[i]);
  }
  return acc;
}

std::string LaplaceTransform::describe() const {
  if (!is_mixture()) return atom_describe(atoms_[0]);
  std::ostringstream os;
  os << "mixture(";
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i) os << ",";
    os << weights_[i] << "*" << atom_describe(atoms_[i]);
  }
  os << ")";
  return os.str();
}

CmCheckResult complete_monotonicity_check(
    const std::function<double(double)>& f, double grid_start, double step,
    int max_order, int n_points) {
  if (!(step > 0.0)) throw std::invalid_argument("cm check: step must be > 0");
  if (max_order < 1) throw std::invalid_argument("cm check: max_order >= 1");
  if (n_points <= 0) n_points = max_order + 1;
  if (n_points < max_order + 1) {
    throw std::invalid_argument("cm check: need at least max_order+1 points");
  }

  std::vector<double> values(static_cast<std::size_t>(n_points));
  double max_abs = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double x = grid_start + step * i;
    const double y = f(x);
    if (!std::isfinite(y)) {
      throw std::domain_error("cm check: non-finite function value");
    }
    values[static_cast<std::size_t>(i)] = y;
    max_abs = std::max(max_abs, std::fabs(y));
  }

  CmCheckResult r;
  r.tolerance = 1e-9 * std::max(max_abs, std::numeric_limits<double>::min());
  r.orders_checked = max_order;
  r.pass = true;

  std::vector<double> diff = values;
  double sign = 1.0;
  for (int k = 1; k <= max_order; ++k) {
    sign = -sign;  // (-1)^k
    for (std::size_t i = 0; i + static_cast<std::size_t>(k) < values.size();
         ++i) {
      diff[i] = diff[i + 1] - diff[i];
      const double signed_value = sign * diff[i];
      if (signed_value < -r.tolerance) {
        if (r.pass) {
          r.first_failing_order = k;
          r.pass = false;
        }
        r.worst_violation = std::max(r.worst_violation, -signed_value);
      }
    }
    if (!r.pass) break;  // report the first failing order
  }
  return r;
}

}  // namespace phiid
