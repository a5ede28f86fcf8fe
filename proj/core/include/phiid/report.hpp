#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace phiid {

/// True when the series never rises above its running minimum by more
/// than `allowance`. Comparing against the running minimum (not the
/// immediate predecessor) tolerates Monte Carlo jitter without letting a
/// genuine upward trend through.
bool nonincreasing_within(std::span<const double> xs, double allowance);

/// Distances of a convergence experiment along a schedule, plus the
/// verdict. `distances` is the verdict-bearing series; secondary curves
/// (e.g. the empirical companion of an exact formula) go to `extra`.
struct ConvergenceReport {
  std::string name;
  std::string parameter_name;  // "theta", "n", ...
  std::vector<double> parameters;
  std::vector<double> distances;
  std::map<std::string, std::vector<double>> extra;

  double tolerance = 0.0;
  double noise_allowance = 0.0;  // 0 for deterministic runs
  bool nonincreasing = false;
  bool final_below_tolerance = false;
  bool pass = false;

  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::string notes;

  double final_distance() const {
    return distances.empty() ? 0.0 : distances.back();
  }

  /// Sets the three verdict flags from the distance series.
  void finalize();
};

}  // namespace phiid
