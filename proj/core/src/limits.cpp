#include "phiid/limits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "phiid/parallel.hpp"

namespace phiid {

namespace {

void validate_schedules(const AttractionExperiment& exp) {
  const std::size_t len = exp.n_schedule.size();
  if (len == 0) throw std::invalid_argument("attraction: empty schedule");
  if (exp.a_schedule.size() != len) {
    throw std::invalid_argument("attraction: a_schedule length mismatch");
  }
  if (!exp.b_schedule.empty() && exp.b_schedule.size() != len) {
    throw std::invalid_argument("attraction: b_schedule length mismatch");
  }
  if (exp.mu_schedule && exp.mu_schedule->size() != len) {
    throw std::invalid_argument("attraction: mu_schedule length mismatch");
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (exp.n_schedule[i] <= 0) {
      throw std::invalid_argument("attraction: n must be positive");
    }
    if (i > 0 && exp.n_schedule[i] <= exp.n_schedule[i - 1]) {
      throw std::invalid_argument(
          "attraction: n_schedule must be strictly increasing");
    }
    if (!(exp.a_schedule[i] > 0.0)) {
      throw std::invalid_argument("attraction: a_n must be positive");
    }
  }
  if (exp.t_grid.empty()) {
    throw std::invalid_argument("attraction: empty t grid");
  }
}

ConvergenceReport evaluate_attraction(const AttractionExperiment& exp,
                                      const char* name) {
  PhiIdLaw limit(exp.phi, exp.target_psi);
  // The limit CF must itself be a valid composed law (in particular
  // zero-free on the grid) before distances against it mean anything.
  const auto zero_check = no_real_zero_check(limit, exp.t_grid);
  if (!zero_check.pass) {
    throw std::domain_error("attraction: target CF vanishes on the grid");
  }
  ConvergenceReport report;
  report.name = name;
  report.parameter_name = "n";
  report.tolerance = exp.tolerance;

  for (std::size_t k = 0; k < exp.n_schedule.size(); ++k) {
    double sup = 0.0;
    for (double t : exp.t_grid) {
      sup = std::max(sup, std::abs(attraction_prelimit(exp, k, t) - limit.cf(t)));
    }
    report.parameters.push_back(static_cast<double>(exp.n_schedule[k]));
    report.distances.push_back(sup);
  }
  report.finalize();
  return report;
}

}  // namespace

Complex attraction_prelimit(const AttractionExperiment& exp, std::size_t k,
                            double t) {
  const Complex i{0.0, 1.0};
  const double n = static_cast<double>(exp.n_schedule[k]);
  const double a = exp.a_schedule[k];
  Complex inner;
  if (exp.mu_schedule) {
    inner = n * (Complex{1.0, 0.0} - exp.g(t / a)) +
            i * (t * (*exp.mu_schedule)[k]);
  } else {
    const double b = exp.b_schedule.empty() ? 0.0 : exp.b_schedule[k];
    const Complex gn = exp.g(t / a) * std::exp(-i * (t * b));
    inner = n * (Complex{1.0, 0.0} - gn);
  }
  if (inner.real() < 0.0) inner = {0.0, inner.imag()};  // rounding
  return exp.phi.eval(inner);
}

ConvergenceReport run_phi_attraction(const AttractionExperiment& exp) {
  validate_schedules(exp);
  if (exp.mode != AttractionMode::kDeterministicCf) {
    throw std::invalid_argument(
        "phi-attraction: only the deterministic-CF mode is implemented");
  }
  if (!exp.target_psi.is_stable()) {
    throw std::invalid_argument(
        "phi-attraction: the target exponent must be stable");
  }
  return evaluate_attraction(exp, "phi-attraction");
}

ConvergenceReport run_partial_phi_attraction(const AttractionExperiment& exp) {
  validate_schedules(exp);
  if (exp.mode != AttractionMode::kDeterministicCf) {
    throw std::invalid_argument(
        "partial attraction: only the deterministic-CF mode is implemented");
  }
  if (exp.target_psi.is_semi_stable()) {
    const bool centered = !exp.b_schedule.empty() &&
                          std::any_of(exp.b_schedule.begin(),
                                      exp.b_schedule.end(),
                                      [](double b) { return b != 0.0; });
    if (centered || exp.mu_schedule) {
      throw std::invalid_argument(
          "partial attraction: semi-stable runs are strict-sense (b = 0)");
    }
    for (std::size_t k = 0; k + 1 < exp.n_schedule.size(); ++k) {
      const double ratio = static_cast<double>(exp.n_schedule[k]) /
                           static_cast<double>(exp.n_schedule[k + 1]);
      if (ratio < exp.ratio_floor) {
        throw std::invalid_argument(
            "partial attraction: subsequence ratio n_k/n_{k+1} fell below "
            "the configured floor");
      }
    }
  }
  return evaluate_attraction(exp, "partial-phi-attraction");
}

TransferReport run_transfer_equivalence(
    const LaplaceTransform& phi, const IdExponent& psi_g,
    const ComponentLaw& component_base, const TransferOptions& options,
    std::vector<TransferCurve>* curves) {
  const auto& thetas = options.theta_schedule;
  if (thetas.empty()) {
    throw std::invalid_argument("transfer: empty theta schedule");
  }
  for (std::size_t i = 1; i < thetas.size(); ++i) {
    if (!(thetas[i] < thetas[i - 1])) {
      throw std::invalid_argument(
          "transfer: theta schedule must be strictly decreasing");
    }
  }
  if (options.replicates < 1000) {
    throw std::invalid_argument(
        "transfer: fewer than 1000 replicates would leave the noise floor "
        "above any useful tolerance");
  }
  if (options.t_grid.empty()) {
    throw std::invalid_argument("transfer: empty t grid");
  }

  const double m = static_cast<double>(options.m);
  // Targets: g(t) = exp(-psi_g(t)) for the [1/theta]-sum and
  // phi(m psi_g(t)) for the N_theta-sum.
  std::vector<Complex> target_g(options.t_grid.size());
  std::vector<Complex> target_random(options.t_grid.size());
  for (std::size_t k = 0; k < options.t_grid.size(); ++k) {
    const Complex psi = psi_g.eval(options.t_grid[k]);
    target_g[k] = std::exp(-psi);
    target_random[k] = phi.eval(m * psi);
    if (std::abs(target_g[k]) <= 1e-12 || std::abs(target_random[k]) <= 1e-12) {
      throw std::domain_error("transfer: target CF vanishes on the grid");
    }
  }

  TransferReport out;
  out.deterministic.name = "transfer-deterministic-sum";
  out.random.name = "transfer-random-sum";
  for (auto* r : {&out.deterministic, &out.random}) {
    r->parameter_name = "theta";
    r->parameters = thetas;
    r->tolerance = options.tolerance;
    r->seed = options.seed;
    r->samples = options.replicates;
    r->noise_allowance =
        3.0 / std::sqrt(static_cast<double>(options.replicates));
  }

  for (std::size_t k = 0; k < thetas.size(); ++k) {
    const double theta = thetas[k];
    const double factor = std::pow(theta, options.theta_power);
    // X_theta = theta^power * (X - E X): folding the centering into the
    // affine part keeps one draw per call.
    const double shift = options.center
                             ? component_base.shift() - component_base.mean()
                             : component_base.shift();
    const ComponentLaw component = component_base.with_affine(
        factor * shift, factor * component_base.scale());

    const std::uint64_t fixed_n = static_cast<std::uint64_t>(1.0 / theta);
    CountModel count(phi, theta, options.j, options.m);

    const auto det_draws =
        sample_many(options.replicates, options.seed + 2 * k, options.threads,
                    [&](Rng& rng) {
                      return sample_deterministic_sum(fixed_n, component, rng);
                    });
    const auto rand_draws =
        sample_many(options.replicates, options.seed + 2 * k + 1,
                    options.threads, [&](Rng& rng) {
                      return sample_random_sum(count, component, rng);
                    });

    const auto det_cf = empirical_cf(det_draws, options.t_grid);
    const auto rand_cf = empirical_cf(rand_draws, options.t_grid);
    out.deterministic.distances.push_back(cf_distance(det_cf, target_g));
    out.random.distances.push_back(cf_distance(rand_cf, target_random));
    if (curves) {
      TransferCurve curve;
      curve.theta = theta;
      curve.t = options.t_grid;
      curve.det_cf = det_cf;
      curve.det_target = target_g;
      curve.rand_cf = rand_cf;
      curve.rand_target = target_random;
      curves->push_back(std::move(curve));
    }
  }

  out.deterministic.finalize();
  out.random.finalize();
  out.pass = out.deterministic.pass && out.random.pass;
  return out;
}

ScheduleCheckResult strict_stable_schedule_check(
    std::span<const double> a_schedule) {
  ScheduleCheckResult r;
  r.pass = true;
  for (std::size_t i = 0; i < a_schedule.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    if (std::floor(a_schedule[i]) != n) {
      r.pass = false;
      r.first_failure_index = i + 1;
      return r;
    }
  }
  return r;
}

}  // namespace phiid
