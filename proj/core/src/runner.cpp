#include "phiid/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "phiid/limits.hpp"
#include "phiid/parallel.hpp"
#include "phiid/stats.hpp"
#include "phiid/version.hpp"

namespace phiid {

namespace {

namespace fs = std::filesystem;

Complex complex_ipow(Complex base, std::uint64_t n) {
  Complex result{1.0, 0.0};
  while (n != 0) {
    if (n & 1u) result *= base;
    base *= base;
    n >>= 1u;
  }
  return result;
}

std::string iso8601_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RunContext {
  std::string out_dir;
  std::string name;
  bool write_files = true;
  unsigned threads = 0;
  Json verdicts = Json::array();
  Json reports = Json::array();
  std::vector<std::string> files;
  bool all_pass = true;

  void add_verdict(const std::string& label, bool pass, Json details) {
    details["name"] = label;
    details["pass"] = pass;
    verdicts.push_back(std::move(details));
    all_pass = all_pass && pass;
  }

  void add_report(const ConvergenceReport& report) {
    reports.push_back(report_to_json(report));
  }

  std::string csv_path(const std::string& suffix) const {
    return out_dir + "/" + name + "." + suffix + ".csv";
  }

  std::ofstream open_csv(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file " + path);
    files.push_back(path);
    os << std::setprecision(17);
    return os;
  }
};

// CF-curve CSV contract: t, re_f, im_f, re_target, im_target, abs_err.
void write_cf_curve(RunContext& ctx, const std::string& suffix,
                    std::span<const double> t, std::span<const Complex> f,
                    std::span<const Complex> target) {
  if (!ctx.write_files) return;
  auto os = ctx.open_csv(ctx.csv_path(suffix));
  os << "t,re_f,im_f,re_target,im_target,abs_err\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << t[i] << ',' << f[i].real() << ',' << f[i].imag() << ','
       << target[i].real() << ',' << target[i].imag() << ','
       << std::abs(f[i] - target[i]) << '\n';
  }
}

std::vector<double> grid_from(Fields& f, double default_tmax,
                              std::uint64_t default_points) {
  const double t_max = f.number_or("t_max", default_tmax);
  const auto points = f.uinteger_or("points", default_points);
  if (!(t_max > 0.0)) f.fail("t_max must be positive");
  return symmetric_grid(t_max, points);
}

// ---------------------------------------------------------------------
// lt-check
// ---------------------------------------------------------------------

void run_lt_check(Fields& top, RunContext& ctx,
                  std::optional<std::uint64_t> seed) {
  std::vector<std::pair<std::string, LaplaceTransform>> phis;
  if (const Json* one = top.child_opt("phi")) {
    phis.emplace_back("phi", lt_from_json(*one, "phi"));
  }
  if (const Json* many = top.child_opt("phis")) {
    if (!many->is_array()) top.fail("\"phis\" must be an array");
    for (std::size_t i = 0; i < many->size(); ++i) {
      const std::string label = "phi[" + std::to_string(i) + "]";
      phis.emplace_back(label, lt_from_json((*many)[i], label));
    }
  }

  if (phis.empty()) top.fail("lt-check needs \"phi\" or \"phis\"");

  if (const Json* rt = top.child_opt("roundtrip")) {
    Fields f(*rt, "roundtrip");
    const double lo = f.number_or("lo", 1e-4);
    const double hi = f.number_or("hi", 1e4);
    const auto points = f.uinteger_or("points", 41);
    const double tol = f.number_or("tolerance", 1e-10);
    f.done();
    const auto grid = log_spaced(lo, hi, points);
    for (const auto& [label, phi] : phis) {
      double worst = 0.0;
      for (double s : grid) {
        const double back = phi.inverse(phi.eval(s));
        worst = std::max(worst, std::fabs(back - s) / s);
      }
      ctx.add_verdict(label + ".roundtrip", worst < tol,
                      {{"max_relative_error", worst},
                       {"tolerance", tol},
                       {"phi", phi.describe()}});
    }
  }

  if (const Json* cm = top.child_opt("cm")) {
    Fields f(*cm, "cm");
    const double start = f.number_or("start", 0.1);
    const double step = f.number_or("step", 0.2);
    const auto order = f.integer_or("max_order", 8);
    const auto points = f.integer_or("points", 0);
    f.done();
    for (const auto& [label, phi] : phis) {
      const auto r = complete_monotonicity_check(
          [&phi](double s) { return phi.eval(s); }, start, step,
          static_cast<int>(order), static_cast<int>(points));
      ctx.add_verdict(label + ".complete_monotonicity", r.pass,
                      {{"first_failing_order", r.first_failing_order},
                       {"worst_violation", r.worst_violation},
                       {"orders_checked", r.orders_checked},
                       {"phi", phi.describe()}});
    }
  }

  if (const Json* sd = top.child_opt("selfdecomp")) {
    Fields f(*sd, "selfdecomp");
    const auto c_values = f.number_array("c_values");
    const double start = f.number_or("start", 0.1);
    const double step = f.number_or("step", 0.25);
    const auto order = f.integer_or("max_order", 8);
    const auto points = f.integer_or("points", 24);
    f.done();
    for (const auto& [label, phi] : phis) {
      for (double c : c_values) {
        const auto r = selfdecomp_ratio_check(phi, c, start, step,
                                              static_cast<int>(order),
                                              static_cast<int>(points));
        std::ostringstream vname;
        vname << label << ".selfdecomp(c=" << c << ")";
        ctx.add_verdict(vname.str(), r.pass,
                        {{"first_failing_order", r.first_failing_order},
                         {"worst_violation", r.worst_violation},
                         {"phi", phi.describe()}});
      }
    }
  }

  if (const Json* foil = top.child_opt("cm_foil")) {
    Fields f(*foil, "cm_foil");
    const double start = f.number_or("start", 0.0);
    const double step = f.number_or("step", 0.25);
    const auto order = f.integer_or("max_order", 2);
    const auto points = f.integer_or("points", 9);
    const auto expect = f.integer_or("expect_fail_order", 2);
    f.done();
    // Concave-then-flat function; not completely monotone.
    const auto r = complete_monotonicity_check(
        [](double s) { return std::max(0.0, 1.0 - s * s); }, start, step,
        static_cast<int>(order), static_cast<int>(points));
    const bool detected =
        !r.pass && r.first_failing_order == static_cast<int>(expect);
    ctx.add_verdict("cm_foil.detected", detected,
                    {{"first_failing_order", r.first_failing_order},
                     {"expected_order", expect},
                     {"worst_violation", r.worst_violation}});
  }

  if (const Json* sc = top.child_opt("sample_check")) {
    Fields f(*sc, "sample_check");
    const auto n = f.uinteger_or("n", 100000);
    const auto v_grid = f.number_array_or("v_grid", {0.5, 1.0, 2.0});
    f.done();
    if (!seed) throw ConfigError("lt-check: seed is mandatory for sample_check");
    const double bound = 5.0 / std::sqrt(static_cast<double>(n));
    std::uint64_t stream = *seed;
    for (const auto& [label, phi] : phis) {
      const auto draws =
          sample_many(n, stream++, ctx.threads,
                      [&phi](Rng& rng) { return phi.sample_u(rng); });
      double worst = 0.0;
      for (double v : v_grid) {
        worst = std::max(worst,
                         std::fabs(empirical_lt(draws, v) - phi.eval(v)));
      }
      ctx.add_verdict(label + ".empirical_lt", worst < bound,
                      {{"max_error", worst},
                       {"bound", bound},
                       {"n", n},
                       {"phi", phi.describe()}});
    }
  }
}

// ---------------------------------------------------------------------
// count-limit
// ---------------------------------------------------------------------

void run_count_limit(Fields& top, RunContext& ctx,
                     std::optional<std::uint64_t> seed) {
  if (const Json* agree = top.child_opt("harris_agreement")) {
    Fields f(*agree, "harris_agreement");
    const HarrisModel harris(f.number("a"),
                             static_cast<int>(f.integer("m")));
    const auto points = f.uinteger_or("points", 101);
    const double tol = f.number_or("tolerance", 1e-12);
    f.done();
    const CountModel as_count = harris_as_count_model(harris);
    double worst = 0.0;
    for (double s : linspace(0.0, 1.0, points)) {
      worst = std::max(worst,
                       std::fabs(harris_pgf(harris, s) - as_count.pgf(s)));
    }
    ctx.add_verdict("harris_agreement", worst < tol,
                    {{"max_error", worst},
                     {"tolerance", tol},
                     {"a", harris.a},
                     {"m", harris.m}});
  }

  LaplaceTransform phi = LaplaceTransform::degenerate(1.0);
  int j = 0;
  int m = 1;
  CountLimitOptions options;
  bool have_run = false;

  if (const Json* harris_run = top.child_opt("harris")) {
    Fields f(*harris_run, "harris");
    m = static_cast<int>(f.integer("m"));
    const auto a_schedule = f.number_array("a_schedule");
    f.done();
    if (a_schedule.empty()) top.fail("harris.a_schedule must be non-empty");
    j = 1;
    phi = LaplaceTransform::gamma(1.0 / static_cast<double>(m),
                                  static_cast<double>(m));
    for (double a : a_schedule) {
      if (!(a > 1.0)) top.fail("harris.a_schedule entries must exceed 1");
      options.theta_schedule.push_back(static_cast<double>(m) / (a - 1.0));
    }
    options.scaling = CountScaling::kInverseA;
    have_run = true;
  } else if (top.has("phi")) {
    phi = lt_from_json(top.child("phi"), "phi");
    j = static_cast<int>(top.integer_or("j", 0));
    m = static_cast<int>(top.integer_or("m", 1));
    options.theta_schedule = top.number_array("theta_schedule");
    const std::string scaling = top.str_or("scaling", "theta");
    if (scaling == "theta") {
      options.scaling = CountScaling::kTheta;
    } else if (scaling == "inverse-a") {
      options.scaling = CountScaling::kInverseA;
    } else {
      top.fail("unknown scaling \"" + scaling + "\"");
    }
    have_run = true;
  }

  if (!have_run) return;

  options.v_grid = top.number_array_or("v_grid", {0.5, 1.0, 2.0});
  options.samples_per_theta = top.uinteger_or("samples_per_theta", 100000);
  options.tolerance = top.number_or("tolerance", 1e-3);
  options.empirical_tolerance = top.number_or("empirical_tolerance", 0.0);
  options.threads = ctx.threads;
  if (!seed) throw ConfigError("count-limit: seed is mandatory");
  options.seed = *seed;

  std::vector<CountLimitCurve> curves;
  const auto report = scaled_count_limit_check(phi, j, m, options, &curves);
  ctx.add_report(report);
  ctx.add_verdict("scaled_count_limit", report.pass,
                  {{"final_distance", report.final_distance()},
                   {"tolerance", report.tolerance},
                   {"phi", phi.describe()},
                   {"j", j},
                   {"m", m}});

  if (ctx.write_files) {
    for (std::size_t k = 0; k < curves.size(); ++k) {
      auto os = ctx.open_csv(ctx.csv_path("theta" + std::to_string(k)));
      os << "v,lt_target,lt_exact,lt_empirical,err_exact,err_empirical\n";
      const auto& c = curves[k];
      for (std::size_t i = 0; i < c.v.size(); ++i) {
        os << c.v[i] << ',' << c.target[i] << ',' << c.exact[i] << ','
           << c.empirical[i] << ',' << std::fabs(c.exact[i] - c.target[i])
           << ',' << std::fabs(c.empirical[i] - c.target[i]) << '\n';
      }
    }
  }
}

// ---------------------------------------------------------------------
// cf-check
// ---------------------------------------------------------------------

void run_cf_check(Fields& top, RunContext& ctx) {
  std::vector<std::pair<std::string, PhiIdLaw>> laws;
  if (const Json* one = top.child_opt("law")) {
    laws.emplace_back("law", law_from_json(*one, "law"));
  }
  if (const Json* many = top.child_opt("laws")) {
    if (!many->is_array()) top.fail("\"laws\" must be an array");
    for (std::size_t i = 0; i < many->size(); ++i) {
      const std::string label = "law[" + std::to_string(i) + "]";
      laws.emplace_back(label, law_from_json((*many)[i], label));
    }
  }
  if (laws.empty()) top.fail("cf-check needs \"law\" or \"laws\"");

  if (const Json* nz = top.child_opt("no_zero")) {
    Fields f(*nz, "no_zero");
    const auto grid = grid_from(f, 50.0, 2001);
    const double min_abs = f.number_or("min_abs", 1e-4);
    f.done();
    for (const auto& [label, law] : laws) {
      const auto r = no_real_zero_check(law, grid);
      const bool pass = r.pass && r.min_abs > min_abs;
      ctx.add_verdict(label + ".no_real_zero", pass,
                      {{"min_abs", r.min_abs},
                       {"argmin_t", r.argmin_t},
                       {"required_min", min_abs},
                       {"law", law.describe()}});
    }
  }

  if (const Json* rt = top.child_opt("roundtrip")) {
    Fields f(*rt, "roundtrip");
    const auto grid = grid_from(f, 10.0, 101);
    const double tol = f.number_or("tolerance", 1e-10);
    f.done();
    for (const auto& [label, law] : laws) {
      if (!law.phi().has_closed_form_inverse()) {
        ctx.add_verdict(label + ".id_roundtrip", true,
                        {{"skipped", "mixture phi has no closed-form inverse"},
                         {"law", law.describe()}});
        continue;
      }
      const double sup = id_roundtrip(law, grid);
      ctx.add_verdict(label + ".id_roundtrip", sup < tol,
                      {{"sup_error", sup},
                       {"tolerance", tol},
                       {"law", law.describe()}});
      // Curve: recovered ID CF against the direct exponent.
      std::vector<Complex> recovered(grid.size()), direct(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        recovered[i] = std::exp(-law.phi().inverse(law.cf(grid[i])));
        direct[i] = std::exp(-law.psi().eval(grid[i]));
      }
      write_cf_curve(ctx, label + ".roundtrip", grid, recovered, direct);
    }
  }

  if (const Json* props = top.child_opt("properties")) {
    Fields f(*props, "properties");
    const auto grid = grid_from(f, 5.0, 101);
    const double hermitian_tol = f.number_or("hermitian_tol", 1e-14);
    f.done();
    for (const auto& [label, law] : laws) {
      double worst_h = 0.0;
      double worst_mod = 0.0;
      for (double t : grid) {
        const Complex f1 = law.cf(t);
        const Complex f2 = law.cf(-t);
        worst_h = std::max(worst_h, std::abs(f2 - std::conj(f1)));
        worst_mod = std::max(worst_mod, std::abs(f1) - 1.0);
      }
      ctx.add_verdict(label + ".hermitian", worst_h <= hermitian_tol,
                      {{"max_asymmetry", worst_h},
                       {"tolerance", hermitian_tol},
                       {"law", law.describe()}});
      ctx.add_verdict(label + ".modulus_bound", worst_mod <= 1e-12,
                      {{"max_excess", worst_mod}, {"law", law.describe()}});
    }
  }
}

// ---------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------

struct SampleLaw {
  std::function<double(Rng&)> draw;
  std::function<Complex(double)> cf;  // empty when no closed form is wired
  std::string label;
  bool integer_valued = false;
};

SampleLaw sample_law_from_json(const Json& j, const std::string& context) {
  Fields f(j, context);
  const std::string type = f.str("type");
  SampleLaw out;
  if (type == "phi-id") {
    auto law = std::make_shared<PhiIdLaw>(
        lt_from_json(f.child("phi"), context + ".phi"),
        psi_from_json(f.child("psi"), context + ".psi"));
    f.done();
    if (!law->psi().supports_subordination()) {
      throw ConfigError(context +
                        ": semi-stable exponents cannot be sampled");
    }
    out.draw = [law](Rng& rng) { return sample_phi_id(*law, rng); };
    out.cf = [law](double t) { return law->cf(t); };
    out.label = law->describe();
    return out;
  }
  if (type == "stable") {
    const double alpha = f.number("alpha");
    const double lambda = f.number_or("lambda", 1.0);
    const double skew = f.number_or("skew", 0.0);
    f.done();
    const IdExponent psi = IdExponent::stable(lambda, alpha, skew);
    out.draw = [alpha, lambda, skew](Rng& rng) {
      return sample_stable(alpha, lambda, skew, rng);
    };
    out.cf = [psi](double t) { return std::exp(-psi.eval(t)); };
    out.label = psi.describe();
    return out;
  }
  if (type == "count" || type == "random-sum") {
    std::shared_ptr<CountModel> model;
    if (const Json* harris = f.child_opt("harris")) {
      model = std::make_shared<CountModel>(
          harris_as_count_model(harris_from_json(*harris, context + ".harris")));
    } else {
      model = std::make_shared<CountModel>(
          count_from_json(f.child("count"), context + ".count"));
    }
    if (type == "count") {
      f.done();
      out.draw = [model](Rng& rng) {
        return static_cast<double>(model->sample(rng));
      };
      out.label = "count(" + model->phi().describe() + ")";
      out.integer_valued = true;
      return out;
    }
    auto component = std::make_shared<ComponentLaw>(component_from_json(
        f.child("component"), context + ".component"));
    f.done();
    out.draw = [model, component](Rng& rng) {
      return sample_random_sum(*model, *component, rng);
    };
    // Exact CF of the random sum: s^j phi{(1 - s^m)/theta} at s = g(t).
    out.cf = [model, component](double t) -> Complex {
      const Complex s = component->cf(t);
      const Complex sj = complex_ipow(s, static_cast<std::uint64_t>(model->j()));
      const Complex sm = complex_ipow(s, static_cast<std::uint64_t>(model->m()));
      return sj * model->phi().eval((1.0 - sm) / model->theta());
    };
    out.label = "random-sum(" + component->describe() + ")";
    return out;
  }
  if (type == "deterministic-sum") {
    const auto n = f.uinteger("n");
    auto component = std::make_shared<ComponentLaw>(component_from_json(
        f.child("component"), context + ".component"));
    f.done();
    out.draw = [n, component](Rng& rng) {
      return sample_deterministic_sum(n, *component, rng);
    };
    out.cf = [n, component](double t) {
      return complex_ipow(component->cf(t), n);
    };
    out.label = "deterministic-sum(n=" + std::to_string(n) + ")";
    return out;
  }
  if (type == "component") {
    auto component = std::make_shared<ComponentLaw>(component_from_json(
        f.child("component"), context + ".component"));
    f.done();
    out.draw = [component](Rng& rng) { return component->sample(rng); };
    out.cf = [component](double t) { return component->cf(t); };
    out.label = component->describe();
    return out;
  }
  throw ConfigError(context + ": unknown law type \"" + type + "\"");
}

std::function<double(double)> ks_target_from_json(const Json& j,
                                                  const std::string& context,
                                                  std::string* label) {
  Fields f(j, context);
  const std::string dist = f.str("dist");
  if (dist == "exponential") {
    const double mean = f.number_or("mean", 1.0);
    f.done();
    *label = "exponential(mean=" + std::to_string(mean) + ")";
    return [mean](double x) { return exponential_cdf(x, mean); };
  }
  if (dist == "laplace") {
    const double scale = f.number_or("scale", 1.0);
    f.done();
    *label = "laplace(scale=" + std::to_string(scale) + ")";
    return [scale](double x) { return laplace_cdf(x, scale); };
  }
  if (dist == "normal") {
    const double mean = f.number_or("mean", 0.0);
    const double sd = f.number_or("sd", 1.0);
    f.done();
    *label = "normal";
    return [mean, sd](double x) { return normal_cdf(x, mean, sd); };
  }
  throw ConfigError(context + ": unknown KS target \"" + dist + "\"");
}

void run_sample(Fields& top, RunContext& ctx,
                std::optional<std::uint64_t> seed) {
  const SampleLaw law = sample_law_from_json(top.child("law"), "law");
  const auto n = top.uinteger("n");
  if (n == 0) top.fail("n must be positive");

  std::vector<std::uint64_t> seeds;
  if (const Json* many = top.child_opt("seeds")) {
    if (!many->is_array() || many->empty()) {
      top.fail("\"seeds\" must be a non-empty array");
    }
    for (const auto& s : *many) {
      if (!s.is_number_integer() && !s.is_number_unsigned()) {
        top.fail("\"seeds\" must contain integers");
      }
      seeds.push_back(s.get<std::uint64_t>());
    }
  } else {
    if (!seed) throw ConfigError("sample: seed is mandatory");
    seeds.push_back(*seed);
  }

  const bool emit_csv = top.boolean_or("emit_csv", true);
  const Json* ks_block = top.child_opt("ks");
  const Json* cf_block = top.child_opt("cf_check");
  const Json* pmf_block = top.child_opt("pmf_check");

  for (std::size_t si = 0; si < seeds.size(); ++si) {
    const std::uint64_t run_seed = seeds[si];
    const std::string tag =
        seeds.size() == 1 ? std::string() : ".seed" + std::to_string(si);
    const auto draws = sample_many(n, run_seed, ctx.threads, law.draw);

    if (emit_csv && ctx.write_files) {
      auto os = ctx.open_csv(ctx.csv_path("samples" + tag));
      os << "# seed=" << run_seed << ", law=" << law.label << ", count=" << n
         << "\nvalue\n";
      for (double x : draws) os << x << '\n';
    }

    if (ks_block) {
      Fields f(*ks_block, "ks");
      std::string target_label;
      const auto cdf =
          ks_target_from_json(f.child("target"), "ks.target", &target_label);
      const double level = f.number_or("level", 0.01);
      f.done();
      const auto r = ks_test(draws, cdf);
      ctx.add_verdict("ks" + tag, r.p_value > level,
                      {{"statistic", r.statistic},
                       {"p_value", r.p_value},
                       {"level", level},
                       {"n", r.n},
                       {"seed", run_seed},
                       {"target", target_label},
                       {"law", law.label}});
    }

    if (cf_block) {
      Fields f(*cf_block, "cf_check");
      const auto grid = grid_from(f, 5.0, 101);
      const double tol = f.number_or("tolerance", 0.02);
      f.done();
      if (!law.cf) {
        throw ConfigError("cf_check: no closed-form CF for this law type");
      }
      const auto ecf = empirical_cf(draws, grid);
      std::vector<Complex> target(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) target[i] = law.cf(grid[i]);
      const double dist = cf_distance(ecf, target);
      ctx.add_verdict("cf_check" + tag, dist < tol,
                      {{"sup_distance", dist},
                       {"tolerance", tol},
                       {"n", n},
                       {"noise_scale", empirical_cf_noise_scale(n)},
                       {"seed", run_seed},
                       {"law", law.label}});
      write_cf_curve(ctx, "cf" + tag, grid, ecf, target);
    }

    if (pmf_block) {
      Fields f(*pmf_block, "pmf_check");
      const auto max_state = f.uinteger_or("max_state", 50);
      const std::string target = f.str("target");
      if (target != "geometric") {
        f.fail("unknown pmf target \"" + target + "\"");
      }
      const double p = f.number("p");
      const double tol = f.number_or("tolerance", 0.01);
      f.done();
      if (!law.integer_valued) {
        throw ConfigError("pmf_check: law does not produce integer draws");
      }
      std::vector<double> empirical(max_state + 1, 0.0);
      for (double x : draws) {
        const auto k = static_cast<std::uint64_t>(x);
        if (k <= max_state) empirical[k] += 1.0;
      }
      for (double& e : empirical) e /= static_cast<double>(draws.size());
      std::vector<double> exact(max_state + 1);
      for (std::size_t k = 0; k <= max_state; ++k) {
        exact[k] = p * std::pow(1.0 - p, static_cast<double>(k));
      }
      const double tv = tv_distance_pmf(empirical, exact);
      ctx.add_verdict("pmf_check" + tag, tv < tol,
                      {{"tv_distance", tv},
                       {"tolerance", tol},
                       {"n", draws.size()},
                       {"states", max_state},
                       {"seed", run_seed},
                       {"law", law.label}});
    }
  }
}

// ---------------------------------------------------------------------
// attraction / partial-attraction
// ---------------------------------------------------------------------

CfFunction g_from_json(const Json& j, const std::string& context,
                       const IdExponent& target_psi, std::string* label) {
  if (j.is_object() && j.contains("kind") && j["kind"] == "exp-neg-psi") {
    Fields f(j, context);
    f.str("kind");
    f.done();
    *label = "exp(-psi_target)";
    return [target_psi](double t) { return std::exp(-target_psi.eval(t)); };
  }
  const ComponentLaw component = component_from_json(j, context);
  *label = component.describe();
  return [component](double t) { return component.cf(t); };
}

void write_attraction_curves(RunContext& ctx, const AttractionExperiment& exp,
                             const std::string& prefix) {
  if (!ctx.write_files) return;
  PhiIdLaw limit(exp.phi, exp.target_psi);
  std::vector<Complex> target(exp.t_grid.size());
  for (std::size_t i = 0; i < exp.t_grid.size(); ++i) {
    target[i] = limit.cf(exp.t_grid[i]);
  }
  for (std::size_t k = 0; k < exp.n_schedule.size(); ++k) {
    std::vector<Complex> values(exp.t_grid.size());
    for (std::size_t i = 0; i < exp.t_grid.size(); ++i) {
      values[i] = attraction_prelimit(exp, k, exp.t_grid[i]);
    }
    write_cf_curve(ctx, prefix + ".n" + std::to_string(exp.n_schedule[k]),
                   exp.t_grid, values, target);
  }
}

void run_attraction(Fields& top, RunContext& ctx, bool partial) {
  const std::string form = top.str_or("form", "gn");

  const LaplaceTransform phi = lt_from_json(top.child("phi"), "phi");
  const IdExponent target_psi =
      psi_from_json(top.child("target_psi"), "target_psi");

  if (form == "definetti") {
    const JumpCf h = jump_from_json(top.child("h"), "h");
    const auto labels = top.number_array("n_schedule");
    const auto weights = top.number_array("weights");
    const auto scales = top.number_array("cf_scales");
    const double t_max = top.number_or("t_max", 5.0);
    const auto points = top.uinteger_or("points", 101);
    const double tol = top.number_or("tolerance", 1e-3);
    if (labels.size() != weights.size() || labels.size() != scales.size()) {
      top.fail("n_schedule, weights, cf_scales must have equal length");
    }
    std::vector<DefinettiPoint> schedule(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      schedule[i] = {labels[i], weights[i], scales[i]};
    }
    const auto grid = symmetric_grid(t_max, points);
    auto report = definetti_limit_eval(phi, target_psi, h, schedule, grid, tol);
    report.notes = "phi=" + phi.describe();
    ctx.add_report(report);
    ctx.add_verdict("definetti", report.pass,
                    {{"final_distance", report.final_distance()},
                     {"tolerance", tol},
                     {"phi", phi.describe()}});
    if (ctx.write_files) {
      PhiIdLaw limit(phi, target_psi);
      std::vector<Complex> target(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) target[i] = limit.cf(grid[i]);
      for (const auto& point : schedule) {
        std::vector<Complex> values(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
          values[i] = definetti_prelimit(phi, h, point, grid[i]);
        }
        write_cf_curve(ctx,
                       "definetti.n" +
                           std::to_string(static_cast<long long>(point.label)),
                       grid, values, target);
      }
    }
    return;
  }

  if (form != "gn" && form != "mu") {
    top.fail("unknown attraction form \"" + form + "\"");
  }

  // Optional validator for strict-attraction norming sequences: the
  // supplied weights must satisfy [a_n] = n along their whole prefix.
  if (top.has("strict_a_schedule")) {
    const auto strict = top.number_array("strict_a_schedule");
    const auto check = strict_stable_schedule_check(strict);
    if (!check.pass) {
      top.fail("strict_a_schedule violates [a_n] = n at index " +
               std::to_string(check.first_failure_index));
    }
    ctx.add_verdict("strict_schedule", true,
                    {{"length", strict.size()}});
  }

  std::string g_label;
  CfFunction g = g_from_json(top.child("g"), "g", target_psi, &g_label);

  AttractionExperiment exp(phi, target_psi, std::move(g));
  for (double n : top.number_array("n_schedule")) {
    exp.n_schedule.push_back(static_cast<std::int64_t>(n));
  }
  exp.a_schedule = top.number_array("a_schedule");
  exp.b_schedule = top.number_array_or("b_schedule", {});
  if (form == "mu") {
    if (!exp.b_schedule.empty()) {
      top.fail("form \"mu\" centers with mu_schedule; drop b_schedule");
    }
    exp.mu_schedule = top.number_array("mu_schedule");
  }
  exp.t_grid = symmetric_grid(top.number_or("t_max", 5.0),
                              top.uinteger_or("points", 101));
  exp.tolerance = top.number_or("tolerance", 1e-3);
  exp.ratio_floor = top.number_or("ratio_floor", 0.1);
  const bool paired = top.boolean_or("paired_degenerate", false);

  auto report = partial ? run_partial_phi_attraction(exp)
                        : run_phi_attraction(exp);
  report.notes = "phi=" + phi.describe() + ", g=" + g_label;
  ctx.add_report(report);
  ctx.add_verdict(report.name, report.pass,
                  {{"final_distance", report.final_distance()},
                   {"tolerance", exp.tolerance},
                   {"phi", phi.describe()},
                   {"g", g_label}});
  write_attraction_curves(ctx, exp, "run");

  if (paired) {
    AttractionExperiment pair = exp;
    pair.phi = LaplaceTransform::degenerate(1.0);
    auto pair_report = partial ? run_partial_phi_attraction(pair)
                               : run_phi_attraction(pair);
    pair_report.name += "-degenerate-pair";
    pair_report.notes = "phi=degenerate(1), g=" + g_label;
    ctx.add_report(pair_report);
    ctx.add_verdict(pair_report.name, pair_report.pass,
                    {{"final_distance", pair_report.final_distance()},
                     {"tolerance", exp.tolerance},
                     {"coincides_with_main", pair_report.pass == report.pass},
                     {"g", g_label}});
    write_attraction_curves(ctx, pair, "pair");
  }
}

// ---------------------------------------------------------------------
// transfer
// ---------------------------------------------------------------------

void run_transfer(Fields& top, RunContext& ctx,
                  std::optional<std::uint64_t> seed) {
  const LaplaceTransform phi = lt_from_json(top.child("phi"), "phi");
  const IdExponent psi_g = psi_from_json(top.child("target_psi_g"),
                                         "target_psi_g");
  const ComponentLaw component =
      component_from_json(top.child("component"), "component");

  TransferOptions options;
  options.theta_schedule = top.number_array("theta_schedule");
  options.j = static_cast<int>(top.integer_or("j", 0));
  options.m = static_cast<int>(top.integer_or("m", 1));
  options.center = top.boolean_or("center", true);
  options.theta_power = top.number_or("theta_power", 0.5);
  options.replicates = top.uinteger_or("replicates", 10000);
  options.t_grid = symmetric_grid(top.number_or("t_max", 5.0),
                                  top.uinteger_or("points", 101));
  options.tolerance = top.number_or("tolerance", 0.03);
  if (!seed) throw ConfigError("transfer: seed is mandatory");
  options.seed = *seed;
  options.threads = ctx.threads;

  std::vector<TransferCurve> curves;
  const auto result =
      run_transfer_equivalence(phi, psi_g, component, options, &curves);
  ctx.add_report(result.deterministic);
  ctx.add_report(result.random);
  ctx.add_verdict("deterministic_sum", result.deterministic.pass,
                  {{"final_distance", result.deterministic.final_distance()},
                   {"tolerance", options.tolerance},
                   {"noise_allowance", result.deterministic.noise_allowance}});
  ctx.add_verdict("random_sum", result.random.pass,
                  {{"final_distance", result.random.final_distance()},
                   {"tolerance", options.tolerance},
                   {"noise_allowance", result.random.noise_allowance}});

  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& c = curves[k];
    write_cf_curve(ctx, "deterministic.theta" + std::to_string(k), c.t,
                   c.det_cf, c.det_target);
    write_cf_curve(ctx, "random.theta" + std::to_string(k), c.t, c.rand_cf,
                   c.rand_target);
  }
}

}  // namespace

std::string resolve_output_dir(const Json& config, const RunOptions& options) {
  if (options.output_dir_override) return *options.output_dir_override;
  if (config.is_object() && config.contains("output") &&
      config["output"].is_string()) {
    return config["output"].get<std::string>();
  }
  if (const char* env = std::getenv("PHIID_OUTPUT_DIR")) return env;
  return "out";
}

RunResult run_config(const Json& config, const RunOptions& options) {
  Fields top(config, "config");
  const std::string kind = top.str("kind");
  const std::string name = top.str_or("name", kind);
  top.str_or("output", "");  // consumed by resolve_output_dir

  std::optional<std::uint64_t> seed;
  if (top.has("seed")) seed = top.uinteger("seed");
  if (options.seed_override) seed = *options.seed_override;

  RunContext ctx;
  ctx.name = name;
  ctx.out_dir = resolve_output_dir(config, options);
  ctx.write_files = options.write_files;
  ctx.threads =
      options.threads ? options.threads
                      : static_cast<unsigned>(top.uinteger_or("threads", 0));
  if (ctx.write_files) fs::create_directories(ctx.out_dir);

  if (kind == "lt-check") {
    run_lt_check(top, ctx, seed);
  } else if (kind == "count-limit") {
    run_count_limit(top, ctx, seed);
  } else if (kind == "cf-check") {
    run_cf_check(top, ctx);
  } else if (kind == "sample") {
    run_sample(top, ctx, seed);
  } else if (kind == "attraction") {
    run_attraction(top, ctx, /*partial=*/false);
  } else if (kind == "partial-attraction") {
    run_attraction(top, ctx, /*partial=*/true);
  } else if (kind == "transfer") {
    run_transfer(top, ctx, seed);
  } else {
    top.fail("unknown kind \"" + kind + "\"");
  }
  top.done();

  RunResult result;
  result.report = Json{{"tool", Json{{"name", "phiid"}, {"version", kVersion}}},
                       {"kind", kind},
                       {"name", name},
                       {"config_hash", config_hash(config)},
                       {"seed", seed ? Json(*seed) : Json()},
                       {"timestamp", iso8601_now()},
                       {"verdicts", ctx.verdicts},
                       {"reports", ctx.reports},
                       {"pass", ctx.all_pass}};
  result.exit_code = ctx.all_pass ? 0 : 1;
  result.written_files = ctx.files;

  if (options.write_files) {
    const std::string path = ctx.out_dir + "/" + name + ".report.json";
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write report " + path);
    os << result.report.dump(2) << '\n';
    result.written_files.push_back(path);
  }
  return result;
}

RunResult run_config_file(const std::string& path, const RunOptions& options) {
  std::ifstream is(path);
  if (!is) {
    RunResult r;
    r.exit_code = 2;
    r.report = Json{{"error", "cannot open config file " + path}};
    return r;
  }
  Json config;
  try {
    config = Json::parse(is);
  } catch (const Json::parse_error& e) {
    RunResult r;
    r.exit_code = 2;
    r.report = Json{{"error", std::string("config parse error: ") + e.what()}};
    return r;
  }
  try {
    return run_config(config, options);
  } catch (const ConfigError& e) {
    RunResult r;
    r.exit_code = 2;
    r.report = Json{{"error", e.what()}};
    return r;
  } catch (const std::exception& e) {
    RunResult r;
    r.exit_code = 1;
    r.report = Json{{"error", e.what()}};
    return r;
  }
}

}  // namespace phiid
