#include "phiid/presets.hpp"

#include <cmath>

namespace phiid {

namespace {

Json lt_exponential(double beta) {
  return Json{{"kind", "exponential"}, {"beta", beta}};
}
Json lt_gamma(double nu, double beta) {
  return Json{{"kind", "gamma"}, {"nu", nu}, {"beta", beta}};
}
Json lt_degenerate(double c) { return Json{{"kind", "degenerate"}, {"c", c}}; }
Json psi_stable(double alpha, double lambda, double skew) {
  return Json{{"kind", "stable"},
              {"alpha", alpha},
              {"lambda", lambda},
              {"skew", skew}};
}

Json definetti_config(const std::string& name, Json phi) {
  // h_n(t) = exp(-t^2/n) built from the unit Gaussian jump CF, weights
  // a_n = n; the limit exponent is t^2.
  Json n_schedule = Json::array();
  Json weights = Json::array();
  Json scales = Json::array();
  for (double n : {100.0, 1000.0, 10000.0}) {
    n_schedule.push_back(n);
    weights.push_back(n);
    scales.push_back(std::sqrt(2.0 / n));
  }
  return Json{{"kind", "attraction"}, {"form", "definetti"},
              {"name", name},        {"phi", std::move(phi)},
              {"target_psi", psi_stable(2.0, 1.0, 0.0)},
              {"h", Json{{"kind", "gaussian"}}},
              {"n_schedule", n_schedule},
              {"weights", weights},
              {"cf_scales", scales},
              {"t_max", 3.0},
              {"points", 61},
              {"tolerance", 1e-3}};
}

Json attraction_config(const std::string& name, Json g, double alpha,
                       double inv_alpha_exponent) {
  Json n_schedule = Json::array();
  Json a_schedule = Json::array();
  for (double n : {100.0, 1000.0, 10000.0}) {
    n_schedule.push_back(n);
    a_schedule.push_back(std::pow(n, inv_alpha_exponent));
  }
  return Json{{"kind", "attraction"},
              {"name", name},
              {"phi", lt_exponential(1.0)},
              {"target_psi", psi_stable(alpha, 1.0, 0.0)},
              {"g", std::move(g)},
              {"n_schedule", n_schedule},
              {"a_schedule", a_schedule},
              {"t_max", 5.0},
              {"points", 101},
              {"tolerance", 1e-3},
              {"paired_degenerate", true}};
}

std::vector<Preset> make_presets() {
  std::vector<Preset> presets;

  // 1. Geometric sums of exponentials reproduce the exponential law.
  {
    const double p = 0.01;
    Preset preset;
    preset.name = "geometric-exponential-stability";
    preset.claim =
        "p-scaled geometric(p) sums of unit exponentials are exactly "
        "exponential; KS at the 1% level for three fixed seeds (p = 0.01, "
        "2e5 replicates each)";
    preset.configs.push_back(Json{
        {"kind", "sample"},
        {"name", "geometric-exponential-stability"},
        {"law",
         Json{{"type", "random-sum"},
              {"count", Json{{"phi", lt_exponential(1.0)},
                             {"theta", p / (1.0 - p)},
                             {"j", 1},
                             {"m", 1}}},
              {"component", Json{{"kind", "exponential"},
                                 {"mean", 1.0},
                                 {"affine", Json{{"scale", p}}}}}}},
        {"n", 200000},
        {"seeds", Json::array({101, 202, 303})},
        {"emit_csv", false},
        {"ks", Json{{"target", Json{{"dist", "exponential"}, {"mean", 1.0}}},
                    {"level", 0.01}}}});
    presets.push_back(std::move(preset));
  }

  // 2. Subordinated exponential-phi stable draws match the Linnik CF.
  {
    Preset preset;
    preset.name = "linnik-subordination";
    preset.claim =
        "1e5 subordinated draws with exponential phi and a symmetric "
        "alpha=1.5 stable exponent match 1/(1+|t|^1.5) within 0.02 on "
        "[-5,5]";
    preset.configs.push_back(Json{
        {"kind", "sample"},
        {"name", "linnik-subordination"},
        {"law", Json{{"type", "phi-id"},
                     {"phi", lt_exponential(1.0)},
                     {"psi", psi_stable(1.5, 1.0, 0.0)}}},
        {"n", 100000},
        {"seed", 1202},
        {"emit_csv", false},
        {"cf_check",
         Json{{"t_max", 5.0}, {"points", 101}, {"tolerance", 0.02}}}});
    presets.push_back(std::move(preset));
  }

  // 3. Same with gamma phi: the generalized Linnik CF.
  {
    Preset preset;
    preset.name = "generalized-linnik-subordination";
    preset.claim =
        "gamma(nu=2) phi with the alpha=1.5 stable exponent matches "
        "(1+|t|^1.5)^-2 within 0.02 on [-5,5] (1e5 draws)";
    preset.configs.push_back(Json{
        {"kind", "sample"},
        {"name", "generalized-linnik-subordination"},
        {"law", Json{{"type", "phi-id"},
                     {"phi", lt_gamma(2.0, 1.0)},
                     {"psi", psi_stable(1.5, 1.0, 0.0)}}},
        {"n", 100000},
        {"seed", 1303},
        {"emit_csv", false},
        {"cf_check",
         Json{{"t_max", 5.0}, {"points", 101}, {"tolerance", 0.02}}}});
    presets.push_back(std::move(preset));
  }

  // 4. Count sampler against the exact geometric PMF + the Harris
  //    identification.
  {
    Preset preset;
    preset.name = "count-sampler-oracle";
    preset.claim =
        "exponential-phi counts at theta=0.5 are geometric(p=1/3): TV over "
        "states 0..50 below 0.01 (1e5 draws); Harris(3,2) PGF agrees with "
        "its count-model form within 1e-12";
    preset.configs.push_back(Json{
        {"kind", "sample"},
        {"name", "count-sampler-oracle"},
        {"law", Json{{"type", "count"},
                     {"count", Json{{"phi", lt_exponential(1.0)},
                                    {"theta", 0.5},
                                    {"j", 0},
                                    {"m", 1}}}}},
        {"n", 100000},
        {"seed", 1404},
        {"emit_csv", false},
        {"pmf_check", Json{{"max_state", 50},
                           {"target", "geometric"},
                           {"p", 1.0 / 3.0},
                           {"tolerance", 0.01}}}});
    preset.configs.push_back(Json{
        {"kind", "count-limit"},
        {"name", "harris-count-model-agreement"},
        {"harris_agreement", Json{{"a", 3.0},
                                  {"m", 2},
                                  {"points", 101},
                                  {"tolerance", 1e-12}}}});
    presets.push_back(std::move(preset));
  }

  // 5. Harris counts rescaled by 1/a converge to the gamma transform.
  {
    Preset preset;
    preset.name = "harris-gamma-limit";
    preset.claim =
        "Harris(a,2) counts rescaled to N/a approach the gamma transform "
        "(1+2v)^(-1/2): exact pre-limit within 1e-3 at a=1e4, empirical "
        "within 0.01 at v in {0.5,1,2}";
    preset.configs.push_back(Json{
        {"kind", "count-limit"},
        {"name", "harris-gamma-limit"},
        {"harris",
         Json{{"m", 2}, {"a_schedule", Json::array({100, 1000, 10000})}}},
        {"v_grid", Json::array({0.5, 1.0, 2.0})},
        {"samples_per_theta", 200000},
        {"tolerance", 1e-3},
        {"empirical_tolerance", 0.01},
        {"seed", 1505}});
    presets.push_back(std::move(preset));
  }

  // 6. Deterministic round trips and the no-real-zero property.
  {
    Preset preset;
    preset.name = "deterministic-roundtrips";
    preset.claim =
        "transform inversion round-trips within 1e-10 on log grids; "
        "exp(-phi^-1(f)) recovers exp(-psi) within 1e-10; every matrix law "
        "keeps |f| above 1e-4 on [-50,50]";
    Json mixture = Json{
        {"kind", "mixture"},
        {"weights", Json::array({0.5, 0.5})},
        {"components", Json::array({lt_degenerate(1.0), lt_exponential(1.0)})}};
    preset.configs.push_back(Json{
        {"kind", "lt-check"},
        {"name", "lt-roundtrips"},
        {"phis", Json::array({lt_exponential(1.0), lt_gamma(2.0, 1.0),
                              lt_gamma(0.5, 2.0), mixture})},
        {"roundtrip", Json{{"lo", 1e-4},
                           {"hi", 1e4},
                           {"points", 41},
                           {"tolerance", 1e-10}}}});
    // exp(-s) underflows past s ~ 708: the degenerate grid stops at 500.
    preset.configs.push_back(Json{
        {"kind", "lt-check"},
        {"name", "lt-roundtrips-degenerate"},
        {"phi", lt_degenerate(1.0)},
        {"roundtrip", Json{{"lo", 1e-4},
                           {"hi", 500.0},
                           {"points", 41},
                           {"tolerance", 1e-10}}}});
    Json laws = Json::array();
    auto law = [](Json phi, Json psi) {
      return Json{{"phi", std::move(phi)}, {"psi", std::move(psi)}};
    };
    laws.push_back(law(lt_exponential(1.0), psi_stable(1.5, 1.0, 0.0)));
    laws.push_back(law(lt_exponential(1.0), psi_stable(1.0, 1.0, 0.0)));
    laws.push_back(law(lt_gamma(2.0, 1.0), psi_stable(1.0, 1.0, 0.0)));
    laws.push_back(law(lt_gamma(0.5, 2.0), psi_stable(1.0, 1.0, 0.0)));
    laws.push_back(law(lt_gamma(0.5, 2.0), psi_stable(1.5, 1.0, 0.0)));
    laws.push_back(law(lt_degenerate(1.0), psi_stable(0.5, 0.5, 0.0)));
    laws.push_back(law(lt_exponential(1.0),
                       Json{{"kind", "compound-poisson"},
                            {"rate", 2.0},
                            {"jump", Json{{"kind", "two-point"}, {"x0", 1.0}}}}));
    laws.push_back(law(lt_exponential(1.0), psi_stable(1.5, 1.0, 0.3)));
    laws.push_back(law(mixture, psi_stable(1.0, 1.0, 0.0)));
    preset.configs.push_back(Json{
        {"kind", "cf-check"},
        {"name", "cf-roundtrips"},
        {"laws", laws},
        {"no_zero",
         Json{{"t_max", 50.0}, {"points", 2001}, {"min_abs", 1e-4}}},
        {"roundtrip",
         Json{{"t_max", 10.0}, {"points", 101}, {"tolerance", 1e-10}}}});
    presets.push_back(std::move(preset));
  }

  // 7. Triangular-array limits through each phi.
  {
    Preset preset;
    preset.name = "definetti-convergence";
    preset.claim =
        "phi{n(1 - e^(-t^2/n))} approaches phi{t^2} for degenerate, "
        "exponential and gamma phi: distance below 1e-3 at n=1e4 and "
        "decreasing from n=1e2";
    preset.configs.push_back(
        definetti_config("definetti-degenerate", lt_degenerate(1.0)));
    preset.configs.push_back(
        definetti_config("definetti-exponential", lt_exponential(1.0)));
    preset.configs.push_back(
        definetti_config("definetti-gamma", lt_gamma(2.0, 1.0)));
    presets.push_back(std::move(preset));
  }

  // 8. phi-attraction runs plus the degenerate-phi coincidence pair.
  {
    Preset preset;
    preset.name = "phi-attraction-coincidence";
    preset.claim =
        "a stable component attracts to the Linnik law and the Laplace CF "
        "attracts to itself (alpha=2); the paired degenerate-phi runs pass "
        "on the same schedules";
    preset.configs.push_back(attraction_config(
        "attraction-stable-to-linnik",
        Json{{"kind", "symmetric-stable"}, {"alpha", 1.5}, {"scale", 1.0}},
        1.5, 1.0 / 1.5));
    preset.configs.push_back(attraction_config(
        "attraction-laplace-self",
        Json{{"kind", "laplace"}, {"scale", 1.0}}, 2.0, 0.5));
    presets.push_back(std::move(preset));
  }

  // 9. Random-sum vs deterministic-sum transfer equivalence.
  {
    Preset preset;
    preset.name = "transfer-equivalence";
    preset.claim =
        "sqrt(theta)-scaled centered exponentials: the [1/theta]-sum "
        "approaches the Gaussian CF and the N_theta-sum approaches "
        "1/(1+t^2/2); both within 0.03 at theta=1e-3 (1e4 replicates)";
    preset.configs.push_back(Json{
        {"kind", "transfer"},
        {"name", "transfer-equivalence"},
        {"phi", lt_exponential(1.0)},
        {"target_psi_g", psi_stable(2.0, 0.5, 0.0)},
        {"component", Json{{"kind", "exponential"}, {"mean", 1.0}}},
        {"theta_schedule", Json::array({0.1, 0.01, 0.001})},
        {"j", 0},
        {"m", 1},
        {"center", true},
        {"theta_power", 0.5},
        {"replicates", 10000},
        {"t_max", 5.0},
        {"points", 101},
        {"tolerance", 0.03},
        {"seed", 1909}});
    presets.push_back(std::move(preset));
  }

  // 10. Class-L ratio surrogate and the non-CM foil.
  {
    Preset preset;
    preset.name = "class-l-ratio";
    preset.claim =
        "phi(s)/phi(cs) stays completely monotone to order 8 for "
        "exponential and gamma phi at c in {0.3,0.5,0.9}; the clipped "
        "parabola is rejected at order 2";
    preset.configs.push_back(Json{
        {"kind", "lt-check"},
        {"name", "class-l-ratio"},
        {"phis", Json::array({lt_exponential(1.0), lt_gamma(2.0, 1.0)})},
        {"selfdecomp", Json{{"c_values", Json::array({0.3, 0.5, 0.9})},
                            {"start", 0.1},
                            {"step", 0.25},
                            {"max_order", 8},
                            {"points", 24}}},
        {"cm_foil", Json{{"start", 0.0},
                         {"step", 0.25},
                         {"max_order", 2},
                         {"points", 9},
                         {"expect_fail_order", 2}}}});
    presets.push_back(std::move(preset));
  }

  return presets;
}

}  // namespace

const std::vector<Preset>& builtin_presets() {
  static const std::vector<Preset> presets = make_presets();
  return presets;
}

const Preset* find_preset(std::string_view name) {
  for (const auto& preset : builtin_presets()) {
    if (preset.name == name) return &preset;
  }
  return nullptr;
}

PresetResult run_preset(const Preset& preset, const RunOptions& options) {
  PresetResult result;
  for (const auto& config : preset.configs) {
    result.runs.push_back(run_config(config, options));
    result.exit_code = std::max(result.exit_code, result.runs.back().exit_code);
  }
  return result;
}

}  // namespace phiid
