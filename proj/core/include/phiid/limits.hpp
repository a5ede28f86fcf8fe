#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "phiid/charfn.hpp"
#include "phiid/counts.hpp"
#include "phiid/report.hpp"
#include "phiid/sampler.hpp"

namespace phiid {

// Monte-Carlo replication lives in the transfer experiment; the
// attraction runs below are deterministic-CF only and reject kMonteCarlo.
enum class AttractionMode { kDeterministicCf, kMonteCarlo };

using CfFunction = std::function<Complex(double)>;

/// One attraction run: evaluate phi{n (1 - g_n(t))} along the schedule,
/// with g_n(t) = g(t/a_n) exp(-i t b_n), and compare to phi{psi(t)}.
/// When mu_schedule is set the inner expression is instead
/// n (1 - g(t/a_n)) + i t mu_n (the centered form).
struct AttractionExperiment {
  LaplaceTransform phi;
  IdExponent target_psi;
  CfFunction g;  // closed-form component CF
  std::vector<std::int64_t> n_schedule;  // strictly increasing
  std::vector<double> a_schedule;        // positive, same length
  std::vector<double> b_schedule;        // empty = zeros
  std::optional<std::vector<double>> mu_schedule;
  std::vector<double> t_grid;
  double tolerance = 1e-3;
  AttractionMode mode = AttractionMode::kDeterministicCf;
  /// Finite-schedule stand-in for liminf n_k/n_{k+1} > 0 in semi-stable
  /// partial-attraction runs.
  double ratio_floor = 0.1;

  AttractionExperiment(LaplaceTransform phi_in, IdExponent psi_in,
                       CfFunction g_in)
      : phi(std::move(phi_in)),
        target_psi(std::move(psi_in)),
        g(std::move(g_in)) {}

  AttractionExperiment(LaplaceTransform phi_in, IdExponent psi_in,
                       const ComponentLaw& component)
      : AttractionExperiment(std::move(phi_in), std::move(psi_in),
                             [component](double t) { return component.cf(t); }) {}
};

/// phi{n_k (1 - g_k(t))} (or the mu-centered form) at schedule index k.
Complex attraction_prelimit(const AttractionExperiment& exp, std::size_t k,
                            double t);

/// Full-sequence phi-attraction; the target exponent must be stable.
ConvergenceReport run_phi_attraction(const AttractionExperiment& exp);

/// Subsequence (partial) phi-attraction; any ID exponent is allowed as
/// target. Semi-stable targets run in the strict sense (b = 0) and must
/// satisfy the subsequence ratio condition.
ConvergenceReport run_partial_phi_attraction(const AttractionExperiment& exp);

struct TransferOptions {
  std::vector<double> theta_schedule;  // strictly decreasing
  int j = 0;
  int m = 1;
  /// Per-theta component: base, recentred by its mean when center is
  /// true, then scaled by theta^theta_power.
  bool center = true;
  double theta_power = 0.5;
  std::size_t replicates = 10000;  // >= 1000
  std::vector<double> t_grid;
  double tolerance = 0.03;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct TransferReport {
  ConvergenceReport deterministic;  // sum over [1/theta] terms vs exp(-psi_g)
  ConvergenceReport random;         // sum over N_theta terms vs phi(m psi_g)
  bool pass = false;
};

struct TransferCurve {
  double theta = 0.0;
  std::vector<double> t;
  std::vector<Complex> det_cf, det_target;
  std::vector<Complex> rand_cf, rand_target;
};

/// Paired random-sum / deterministic-sum experiment: for each theta,
/// `replicates` draws of sum_{i<=N_theta} X_theta,i and of
/// sum_{i<=[1/theta]} X_theta,i. The first empirical CF is compared to
/// phi{-m log g(t)} = phi{m psi_g(t)}, the second to g(t) = exp(-psi_g(t)).
/// Both must shrink along the schedule (within Monte Carlo allowance)
/// and end below tolerance.
TransferReport run_transfer_equivalence(
    const LaplaceTransform& phi, const IdExponent& psi_g,
    const ComponentLaw& component_base, const TransferOptions& options,
    std::vector<TransferCurve>* curves = nullptr);

struct ScheduleCheckResult {
  bool pass = false;
  std::size_t first_failure_index = 0;  // 1-based n; 0 when pass
};

/// Validates the strict-attraction norming condition [a_n] = n for
/// n = 1..len(a_schedule).
ScheduleCheckResult strict_stable_schedule_check(
    std::span<const double> a_schedule);

}  // namespace phiid
