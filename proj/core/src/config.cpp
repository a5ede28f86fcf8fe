#include "phiid/config.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

namespace phiid {

Fields::Fields(const Json& j, std::string context)
    : j_(j), context_(std::move(context)) {
  if (!j.is_object()) {
    throw ConfigError(context_ + ": expected a JSON object");
  }
}

void Fields::fail(const std::string& message) const {
  throw ConfigError(context_ + ": " + message);
}

bool Fields::has(const char* key) const { return j_.contains(key); }

const Json& Fields::mark(const char* key) {
  seen_.emplace_back(key);
  auto it = j_.find(key);
  if (it == j_.end()) fail(std::string("missing required key \"") + key + "\"");
  return *it;
}

double Fields::number(const char* key) {
  const Json& v = mark(key);
  if (!v.is_number()) fail(std::string("key \"") + key + "\" must be a number");
  return v.get<double>();
}

double Fields::number_or(const char* key, double fallback) {
  seen_.emplace_back(key);
  auto it = j_.find(key);
  if (it == j_.end()) return fallback;
  if (!it->is_number()) {
    fail(std::string("key \"") + key + "\" must be a number");
  }
  return it->get<double>();
}

std::int64_t Fields::integer(const char* key) {
  const Json& v = mark(key);
  if (!v.is_number_integer()) {
    fail(std::string("key \"") + key + "\" must be an integer");
  }
  return v.get<std::int64_t>();
}

std::int64_t Fields::integer_or(const char* key, std::int64_t fallback) {
  seen_.emplace_back(key);
  auto it = j_.find(key);
  if (it == j_.end()) return fallback;
  if (!it->is_number_integer()) {
    fail(std::string("key \"") + key + "\" must be an integer");
  }
  return it->get<std::int64_t>();
}

std::uint64_t Fields::uinteger(const char* key) {
  const Json& v = mark(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fail(std::string("key \"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::uint64_t Fields::uinteger_or(const char* key, std::uint64_t fallback) {
  seen_.emplace_back(key);
  auto it = j_.find(key);
  if (it == j_.end()) return fallback;
  if (!it->is_number_unsigned() &&
      !(it->is_number_integer() && it->get<std::int64_t>() >= 0)) {
    fail(std::string("key \"") + key + "\" must be a nonnegative integer");
  }
  return it->get<std::uint64_t>();
}

bool Fields::boolean_or(const char* key, bool fallback) {
  seen_.emplace_back(key);
  auto it = j_.find(key);
  if (it == j_.end()) return fallback;
  if (!it->is_boolean()) {
    fail(std::string("key \"") + key + "\" must be a boolean");
  }
  return it->get<bool>();
}

std::string Fields::str(const char* key) {
  const Json& v = mark(key);
  if (!v.is_string()) fail(std::string("key \"") + key + "\" must be a string");
  return v.get<std::string>();
}

std::string Fields::str_or(const char* key, std::string fallback) {
  seen_.emplace_back(key);
  auto it = j_.find(key);
  if (it == j_.end()) return fallback;
  if (!it->is_string()) {
    fail(std::string("key \"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

std::vector<double> Fields::number_array(const char* key) {
  const Json& v = mark(key);
  if (!v.is_array()) {
    fail(std::string("key \"") + key + "\" must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) {
      fail(std::string("key \"") + key + "\" must contain only numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<double> Fields::number_array_or(const char* key,
                                            std::vector<double> fallback) {
  seen_.emplace_back(key);
  if (!j_.contains(key)) return fallback;
  seen_.pop_back();
  return number_array(key);
}

const Json& Fields::child(const char* key) { return mark(key); }

const Json* Fields::child_opt(const char* key) {
  seen_.emplace_back(key);
  auto it = j_.find(key);
  return it == j_.end() ? nullptr : &*it;
}

void Fields::done() const {
  for (auto it = j_.begin(); it != j_.end(); ++it) {
    if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end()) {
      throw ConfigError(context_ + ": unknown key \"" + it.key() + "\"");
    }
  }
}

LaplaceTransform lt_from_json(const Json& j, const std::string& context) {
  Fields f(j, context);
  const std::string kind = f.str("kind");
  try {
    if (kind == "degenerate") {
      const double c = f.number("c");
      f.done();
      return LaplaceTransform::degenerate(c);
    }
    if (kind == "exponential") {
      const double beta = f.number("beta");
      f.done();
      return LaplaceTransform::exponential(beta);
    }
    if (kind == "gamma") {
      const double nu = f.number("nu");
      const double beta = f.number("beta");
      f.done();
      return LaplaceTransform::gamma(nu, beta);
    }
    if (kind == "mixture") {
      const auto weights = f.number_array("weights");
      const Json& comps = f.child("components");
      f.done();
      if (!comps.is_array()) f.fail("\"components\" must be an array");
      std::vector<LaplaceTransform> components;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        components.push_back(lt_from_json(
            comps[i], context + ".components[" + std::to_string(i) + "]"));
      }
      return LaplaceTransform::mixture(weights, std::move(components));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(context + ": " + e.what());
  }
  f.fail("unknown transform kind \"" + kind + "\"");
}

Json lt_to_json(const LaplaceTransform& lt) {
  auto atom_json = [](const LtAtom& a) {
    return std::visit(
        [](const auto& v) -> Json {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, DegenerateLt>) {
            return Json{{"kind", "degenerate"}, {"c", v.c}};
          } else if constexpr (std::is_same_v<T, ExponentialLt>) {
            return Json{{"kind", "exponential"}, {"beta", v.beta}};
          } else {
            return Json{{"kind", "gamma"}, {"nu", v.nu}, {"beta", v.beta}};
          }
        },
        a);
  };
  if (!lt.is_mixture()) return atom_json(lt.atoms()[0]);
  Json comps = Json::array();
  for (const auto& a : lt.atoms()) comps.push_back(atom_json(a));
  return Json{{"kind", "mixture"},
              {"weights", lt.weights()},
              {"components", comps}};
}

JumpCf jump_from_json(const Json& j, const std::string& context) {
  Fields f(j, context);
  const std::string kind = f.str("kind");
  if (kind == "two-point") {
    const double x0 = f.number("x0");
    f.done();
    return JumpCf(SymmetricTwoPointJump{x0});
  }
  if (kind == "gaussian") {
    f.done();
    return JumpCf(GaussianJump{});
  }
  if (kind == "degenerate") {
    const double x0 = f.number("x0");
    f.done();
    return JumpCf(DegenerateJump{x0});
  }
  f.fail("unknown jump kind \"" + kind + "\"");
}

Json jump_to_json(const JumpCf& jump) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SymmetricTwoPointJump>) {
          return Json{{"kind", "two-point"}, {"x0", v.x0}};
        } else if constexpr (std::is_same_v<T, GaussianJump>) {
          return Json{{"kind", "gaussian"}};
        } else {
          return Json{{"kind", "degenerate"}, {"x0", v.x0}};
        }
      },
      jump.value());
}

IdExponent psi_from_json(const Json& j, const std::string& context) {
  Fields f(j, context);
  const std::string kind = f.str("kind");
  try {
    if (kind == "stable") {
      const double lambda = f.number_or("lambda", 1.0);
      const double alpha = f.number("alpha");
      const double skew = f.number_or("skew", 0.0);
      f.done();
      return IdExponent::stable(lambda, alpha, skew);
    }
    if (kind == "compound-poisson") {
      const double rate = f.number("rate");
      const Json& jump = f.child("jump");
      f.done();
      return IdExponent::compound_poisson(rate,
                                          jump_from_json(jump, context + ".jump"));
    }
    if (kind == "semi-stable") {
      const double alpha = f.number("alpha");
      const double eps = f.number("eps");
      const double c = f.number("c");
      f.done();
      return IdExponent::semi_stable(alpha, eps, c);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(context + ": " + e.what());
  }
  f.fail("unknown exponent kind \"" + kind + "\"");
}

Json psi_to_json(const IdExponent& psi) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, StableExponent>) {
          return Json{{"kind", "stable"},
                      {"lambda", v.lambda},
                      {"alpha", v.alpha},
                      {"skew", v.skew}};
        } else if constexpr (std::is_same_v<T, CompoundPoissonExponent>) {
          return Json{{"kind", "compound-poisson"},
                      {"rate", v.rate},
                      {"jump", jump_to_json(v.jump)}};
        } else {
          return Json{{"kind", "semi-stable"},
                      {"alpha", v.alpha},
                      {"eps", v.eps},
                      {"c", v.c}};
        }
      },
      psi.value());
}

PhiIdLaw law_from_json(const Json& j, const std::string& context) {
  Fields f(j, context);
  const Json& phi = f.child("phi");
  const Json& psi = f.child("psi");
  f.done();
  return PhiIdLaw(lt_from_json(phi, context + ".phi"),
                  psi_from_json(psi, context + ".psi"));
}

Json law_to_json(const PhiIdLaw& law) {
  return Json{{"phi", lt_to_json(law.phi())}, {"psi", psi_to_json(law.psi())}};
}

CountModel count_from_json(const Json& j, const std::string& context) {
  Fields f(j, context);
  const Json& phi = f.child("phi");
  const double theta = f.number("theta");
  const auto jj = f.integer_or("j", 0);
  const auto m = f.integer_or("m", 1);
  const double cap = f.number_or("rate_cap", 0.0);
  f.done();
  try {
    CountModel model(lt_from_json(phi, context + ".phi"), theta,
                     static_cast<int>(jj), static_cast<int>(m));
    if (cap > 0.0) model.set_rate_cap(cap);
    return model;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(context + ": " + e.what());
  }
}

Json count_to_json(const CountModel& model) {
  return Json{{"phi", lt_to_json(model.phi())},
              {"theta", model.theta()},
              {"j", model.j()},
              {"m", model.m()}};
}

HarrisModel harris_from_json(const Json& j, const std::string& context) {
  Fields f(j, context);
  const double a = f.number("a");
  const auto m = f.integer("m");
  f.done();
  try {
    return HarrisModel(a, static_cast<int>(m));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(context + ": " + e.what());
  }
}

Json harris_to_json(const HarrisModel& model) {
  return Json{{"a", model.a}, {"m", model.m}};
}

ComponentLaw component_from_json(const Json& j, const std::string& context) {
  Fields f(j, context);
  const std::string kind = f.str("kind");
  double shift = 0.0;
  double scale = 1.0;
  if (const Json* affine = f.child_opt("affine")) {
    Fields a(*affine, context + ".affine");
    shift = a.number_or("shift", 0.0);
    scale = a.number_or("scale", 1.0);
    a.done();
  }
  try {
    if (kind == "exponential") {
      const double mean = f.number("mean");
      f.done();
      return ComponentLaw(ExponentialComponent{mean}, shift, scale);
    }
    if (kind == "laplace") {
      const double s = f.number("scale");
      f.done();
      return ComponentLaw(LaplaceComponent{s}, shift, scale);
    }
    if (kind == "normal") {
      const double mean = f.number("mean");
      const double sd = f.number("sd");
      f.done();
      return ComponentLaw(NormalComponent{mean, sd}, shift, scale);
    }
    if (kind == "symmetric-stable") {
      const double alpha = f.number("alpha");
      const double s = f.number("scale");
      f.done();
      return ComponentLaw(SymmetricStableComponent{alpha, s}, shift, scale);
    }
    if (kind == "two-point") {
      const double x0 = f.number("x0");
      f.done();
      return ComponentLaw(TwoPointComponent{x0}, shift, scale);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(context + ": " + e.what());
  }
  f.fail("unknown component kind \"" + kind + "\"");
}

Json component_to_json(const ComponentLaw& component) {
  Json j = std::visit(
      [](const auto& c) -> Json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ExponentialComponent>) {
          return Json{{"kind", "exponential"}, {"mean", c.mean}};
        } else if constexpr (std::is_same_v<T, LaplaceComponent>) {
          return Json{{"kind", "laplace"}, {"scale", c.scale}};
        } else if constexpr (std::is_same_v<T, NormalComponent>) {
          return Json{{"kind", "normal"}, {"mean", c.mean}, {"sd", c.sd}};
        } else if constexpr (std::is_same_v<T, SymmetricStableComponent>) {
          return Json{{"kind", "symmetric-stable"},
                      {"alpha", c.alpha},
                      {"scale", c.scale}};
        } else {
          return Json{{"kind", "two-point"}, {"x0", c.x0}};
        }
      },
      component.value());
  if (component.shift() != 0.0 || component.scale() != 1.0) {
    j["affine"] = Json{{"shift", component.shift()},
                       {"scale", component.scale()}};
  }
  return j;
}

Json report_to_json(const ConvergenceReport& report) {
  Json extra = Json::object();
  for (const auto& [key, series] : report.extra) extra[key] = series;
  return Json{{"name", report.name},
              {"parameter", report.parameter_name},
              {"parameters", report.parameters},
              {"distances", report.distances},
              {"extra", extra},
              {"tolerance", report.tolerance},
              {"noise_allowance", report.noise_allowance},
              {"nonincreasing", report.nonincreasing},
              {"final_distance", report.final_distance()},
              {"final_below_tolerance", report.final_below_tolerance},
              {"seed", report.seed},
              {"samples", report.samples},
              {"notes", report.notes},
              {"pass", report.pass}};
}

std::string config_hash(const Json& config) {
  const std::string dump = config.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << "fnv1a:" << std::hex << h;
  return os.str();
}

}  // namespace phiid
