#include "phiid/sampler.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace phiid {

namespace {
constexpr double kPi = std::numbers::pi;
}

double sample_stable(double alpha, double lambda, double skew, Rng& rng) {
  if (!(alpha > 0.0) || !(alpha <= 2.0)) {
    throw std::invalid_argument("sample_stable: alpha must be in (0, 2]");
  }
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("sample_stable: lambda must be > 0");
  }
  if (std::fabs(skew) > stable_skew_bound(alpha) + 1e-12) {
    throw std::invalid_argument("sample_stable: skew out of range");
  }
  if (alpha == 1.0 && skew != 0.0) {
    throw std::invalid_argument(
        "sample_stable: skewed alpha = 1 is not supported");
  }
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double v = kPi * (uniform01(rng) - 0.5);
    const double w = exponential1(rng);
    const double x = std::pow(lambda, 1.0 / alpha) *
                     std::sin(alpha * v + skew) /
                     std::pow(std::cos(v), 1.0 / alpha) *
                     std::pow(std::cos((1.0 - alpha) * v - skew) / w,
                              (1.0 - alpha) / alpha);
    if (std::isfinite(x)) return x;
    // cos((1-alpha)V - skew) can round to 0 at the edge of the angle
    // range; the event has probability zero, so redraw.
  }
  throw std::runtime_error("sample_stable: repeated non-finite draws");
}

ComponentLaw::ComponentLaw(Variant v, double shift, double scale)
    : v_(std::move(v)), shift_(shift), scale_(scale) {
  if (!std::isfinite(shift) || !std::isfinite(scale)) {
    throw std::invalid_argument("component law: affine must be finite");
  }
  std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ExponentialComponent>) {
          if (!(c.mean > 0.0)) {
            throw std::invalid_argument("component law: mean must be > 0");
          }
        } else if constexpr (std::is_same_v<T, LaplaceComponent>) {
          if (!(c.scale > 0.0)) {
            throw std::invalid_argument("component law: scale must be > 0");
          }
        } else if constexpr (std::is_same_v<T, NormalComponent>) {
          if (!(c.sd > 0.0)) {
            throw std::invalid_argument("component law: sd must be > 0");
          }
        } else if constexpr (std::is_same_v<T, SymmetricStableComponent>) {
          if (!(c.alpha > 0.0) || !(c.alpha <= 2.0) || !(c.scale > 0.0)) {
            throw std::invalid_argument(
                "component law: stable needs alpha in (0,2], scale > 0");
          }
        } else {
          if (!(c.x0 > 0.0)) {
            throw std::invalid_argument("component law: x0 must be > 0");
          }
        }
      },
      v_);
}

double ComponentLaw::sample(Rng& rng) const {
  const double x = std::visit(
      [&rng](const auto& c) -> double {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ExponentialComponent>) {
          return c.mean * exponential1(rng);
        } else if constexpr (std::is_same_v<T, LaplaceComponent>) {
          // difference of two exponentials
          return c.scale * (exponential1(rng) - exponential1(rng));
        } else if constexpr (std::is_same_v<T, NormalComponent>) {
          return c.mean + c.sd * normal01(rng);
        } else if constexpr (std::is_same_v<T, SymmetricStableComponent>) {
          return sample_stable(c.alpha, c.scale, 0.0, rng);
        } else {
          return (rng() & 1u) ? c.x0 : -c.x0;
        }
      },
      v_);
  return scale_ * x + shift_;
}

Complex ComponentLaw::cf(double t) const {
  const double ts = scale_ * t;
  const Complex base = std::visit(
      [ts](const auto& c) -> Complex {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ExponentialComponent>) {
          return 1.0 / Complex{1.0, -c.mean * ts};
        } else if constexpr (std::is_same_v<T, LaplaceComponent>) {
          return {1.0 / (1.0 + c.scale * c.scale * ts * ts), 0.0};
        } else if constexpr (std::is_same_v<T, NormalComponent>) {
          const Complex i{0.0, 1.0};
          return std::exp(i * (c.mean * ts) - 0.5 * c.sd * c.sd * ts * ts);
        } else if constexpr (std::is_same_v<T, SymmetricStableComponent>) {
          return {std::exp(-c.scale * std::pow(std::fabs(ts), c.alpha)), 0.0};
        } else {
          return {std::cos(ts * c.x0), 0.0};
        }
      },
      v_);
  const Complex i{0.0, 1.0};
  return std::exp(i * (shift_ * t)) * base;
}

double ComponentLaw::mean() const {
  const double base = std::visit(
      [](const auto& c) -> double {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ExponentialComponent>) {
          return c.mean;
        } else if constexpr (std::is_same_v<T, LaplaceComponent>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, NormalComponent>) {
          return c.mean;
        } else if constexpr (std::is_same_v<T, SymmetricStableComponent>) {
          if (c.alpha <= 1.0) {
            throw std::domain_error(
                "component law: stable mean undefined for alpha <= 1");
          }
          return 0.0;
        } else {
          return 0.0;
        }
      },
      v_);
  return scale_ * base + shift_;
}

ComponentLaw ComponentLaw::with_affine(double shift, double scale) const {
  return ComponentLaw(v_, shift, scale);
}

std::string ComponentLaw::describe() const {
  std::ostringstream os;
  std::visit(
      [&os](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ExponentialComponent>) {
          os << "exponential(mean=" << c.mean << ")";
        } else if constexpr (std::is_same_v<T, LaplaceComponent>) {
          os << "laplace(scale=" << c.scale << ")";
        } else if constexpr (std::is_same_v<T, NormalComponent>) {
          os << "normal(mean=" << c.mean << ",sd=" << c.sd << ")";
        } else if constexpr (std::is_same_v<T, SymmetricStableComponent>) {
          os << "symmetric-stable(alpha=" << c.alpha << ",scale=" << c.scale
             << ")";
        } else {
          os << "two-point(x0=" << c.x0 << ")";
        }
      },
      v_);
  if (shift_ != 0.0 || scale_ != 1.0) {
    os << "[scale=" << scale_ << ",shift=" << shift_ << "]";
  }
  return os.str();
}

double sample_phi_id(const PhiIdLaw& law, Rng& rng) {
  const auto& psi = law.psi();
  if (!psi.supports_subordination()) {
    throw std::invalid_argument(
        "sample_phi_id: semi-stable exponents have no subordination sampler");
  }
  const double v = law.phi().sample_u(rng);
  if (const auto* s = std::get_if<StableExponent>(&psi.value())) {
    const double x = sample_stable(s->alpha, s->lambda, s->skew, rng);
    return std::pow(v, 1.0 / s->alpha) * x;
  }
  const auto& cp = std::get<CompoundPoissonExponent>(psi.value());
  const std::uint64_t k = poisson(rng, cp.rate * v);
  double sum = 0.0;
  for (std::uint64_t i = 0; i < k; ++i) sum += cp.jump.sample(rng);
  return sum;
}

double sample_random_sum(const CountModel& count, const ComponentLaw& component,
                         Rng& rng) {
  const std::uint64_t n = count.sample(rng);
  return sample_deterministic_sum(n, component, rng);
}

double sample_random_sum(const HarrisModel& count, const ComponentLaw& component,
                         Rng& rng) {
  const CountModel model = harris_as_count_model(count);
  return sample_random_sum(model, component, rng);
}

double sample_deterministic_sum(std::uint64_t n, const ComponentLaw& component,
                                Rng& rng) {
  double sum = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) sum += component.sample(rng);
  return sum;
}

}  // namespace phiid
