#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "phiid/charfn.hpp"
#include "phiid/counts.hpp"
#include "phiid/laplace.hpp"
#include "phiid/report.hpp"
#include "phiid/sampler.hpp"

namespace phiid {

using Json = nlohmann::json;

/// Malformed or rejected configuration. The CLI maps this to exit code 2
/// (scientific failures exit 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict field reader: every key must be consumed, unknown keys are
/// errors that name the offending key.
class Fields {
 public:
  Fields(const Json& j, std::string context);

  bool has(const char* key) const;

  double number(const char* key);
  double number_or(const char* key, double fallback);
  std::int64_t integer(const char* key);
  std::int64_t integer_or(const char* key, std::int64_t fallback);
  std::uint64_t uinteger(const char* key);
  std::uint64_t uinteger_or(const char* key, std::uint64_t fallback);
  bool boolean_or(const char* key, bool fallback);
  std::string str(const char* key);
  std::string str_or(const char* key, std::string fallback);
  std::vector<double> number_array(const char* key);
  std::vector<double> number_array_or(const char* key,
                                      std::vector<double> fallback);
  const Json& child(const char* key);
  const Json* child_opt(const char* key);

  /// Rejects any key that was never consumed.
  void done() const;
  [[noreturn]] void fail(const std::string& message) const;
  const std::string& context() const { return context_; }

 private:
  const Json& mark(const char* key);
  const Json& j_;
  std::string context_;
  std::vector<std::string> seen_;
};

LaplaceTransform lt_from_json(const Json& j, const std::string& context);
Json lt_to_json(const LaplaceTransform& lt);

JumpCf jump_from_json(const Json& j, const std::string& context);
Json jump_to_json(const JumpCf& jump);

IdExponent psi_from_json(const Json& j, const std::string& context);
Json psi_to_json(const IdExponent& psi);

PhiIdLaw law_from_json(const Json& j, const std::string& context);
Json law_to_json(const PhiIdLaw& law);

CountModel count_from_json(const Json& j, const std::string& context);
Json count_to_json(const CountModel& model);

HarrisModel harris_from_json(const Json& j, const std::string& context);
Json harris_to_json(const HarrisModel& model);

ComponentLaw component_from_json(const Json& j, const std::string& context);
Json component_to_json(const ComponentLaw& component);

Json report_to_json(const ConvergenceReport& report);

/// FNV-1a over the canonical (sorted-key) dump; stable across runs and
/// platforms, used to stamp reports with the config they came from.
std::string config_hash(const Json& config);

}  // namespace phiid
