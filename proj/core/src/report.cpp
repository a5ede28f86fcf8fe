#include "phiid/report.hpp"

#include <algorithm>
#include <limits>

namespace phiid {

bool nonincreasing_within(std::span<const double> xs, double allowance) {
  double running_min = std::numeric_limits<double>::infinity();
  for (double x : xs) {
    if (x > running_min + allowance) return false;
    running_min = std::min(running_min, x);
  }
  return true;
}

void ConvergenceReport::finalize() {
  nonincreasing = nonincreasing_within(distances, noise_allowance);
  final_below_tolerance = !distances.empty() && distances.back() < tolerance;
  pass = nonincreasing && final_below_tolerance;
}

}  // namespace phiid
