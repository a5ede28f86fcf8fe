#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "phiid/presets.hpp"
#include "phiid/runner.hpp"

using namespace phiid;

namespace {

RunOptions no_files() {
  RunOptions options;
  options.write_files = false;
  return options;
}

Json linnik_law() {
  return Json{{"phi", Json{{"kind", "exponential"}, {"beta", 1.0}}},
              {"psi", Json{{"kind", "stable"},
                           {"alpha", 1.5},
                           {"lambda", 1.0},
                           {"skew", 0.0}}}};
}

}  // namespace

TEST_CASE("cf-check config runs and reports the grid-edge minimum") {
  const Json config{{"kind", "cf-check"},
                    {"name", "linnik-no-zero"},
                    {"law", linnik_law()},
                    {"no_zero", Json{{"t_max", 50.0},
                                     {"points", 2001},
                                     {"min_abs", 1e-4}}}};
  const auto result = run_config(config, no_files());
  CHECK(result.exit_code == 0);
  REQUIRE(result.report["verdicts"].size() == 1);
  const auto& v = result.report["verdicts"][0];
  CHECK(v["pass"] == true);
  CHECK(v["min_abs"].get<double>() ==
        doctest::Approx(0.0028204496883436968).epsilon(1e-9));
}

TEST_CASE("unknown top-level key is a config error naming the key") {
  const Json config{{"kind", "cf-check"},
                    {"law", linnik_law()},
                    {"thetaa", 0.1}};
  try {
    run_config(config, no_files());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("thetaa") != std::string::npos);
  }
}

TEST_CASE("unknown kind and missing seed are config errors") {
  CHECK_THROWS_AS(run_config(Json{{"kind", "mystery"}}, no_files()),
                  ConfigError);
  const Json sample{{"kind", "sample"},
                    {"law", Json{{"type", "stable"}, {"alpha", 2.0}}},
                    {"n", 100}};
  CHECK_THROWS_AS(run_config(sample, no_files()), ConfigError);
}

TEST_CASE("run_config_file maps errors to exit code 2") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "phiid-test-cfg";
  fs::create_directories(dir);

  const auto bad_json = dir / "bad.json";
  std::ofstream(bad_json) << "{ not json";
  CHECK(run_config_file(bad_json.string(), no_files()).exit_code == 2);

  const auto bad_key = dir / "bad_key.json";
  std::ofstream(bad_key)
      << R"({"kind":"cf-check","law":)" << linnik_law().dump()
      << R"(,"thetaa":1})";
  const auto r = run_config_file(bad_key.string(), no_files());
  CHECK(r.exit_code == 2);
  CHECK(r.report["error"].get<std::string>().find("thetaa") !=
        std::string::npos);

  CHECK(run_config_file((dir / "missing.json").string(), no_files())
            .exit_code == 2);
  fs::remove_all(dir);
}

TEST_CASE("scientific failure exits 1, not 2") {
  // an impossible no-zero floor forces a verdict failure
  const Json config{{"kind", "cf-check"},
                    {"name", "impossible"},
                    {"law", linnik_law()},
                    {"no_zero", Json{{"t_max", 50.0},
                                     {"points", 101},
                                     {"min_abs", 0.5}}}};
  const auto result = run_config(config, no_files());
  CHECK(result.exit_code == 1);
}

TEST_CASE("sample kind with checks, files, and reproducible reports") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "phiid-test-out";
  fs::remove_all(dir);

  Json config{{"kind", "sample"},
              {"name", "laplace-draws"},
              {"law", Json{{"type", "phi-id"},
                           {"phi", Json{{"kind", "exponential"}, {"beta", 1.0}}},
                           {"psi", Json{{"kind", "stable"},
                                        {"alpha", 2.0},
                                        {"lambda", 1.0},
                                        {"skew", 0.0}}}}},
              {"n", 20000},
              {"seed", 77},
              {"output", dir.string()},
              {"ks", Json{{"target", Json{{"dist", "laplace"}, {"scale", 1.0}}},
                          {"level", 0.01}}},
              {"cf_check", Json{{"t_max", 5.0},
                                {"points", 41},
                                {"tolerance", 0.05}}}};

  auto first = run_config(config);
  CHECK(first.exit_code == 0);
  CHECK(fs::exists(dir / "laplace-draws.report.json"));
  CHECK(fs::exists(dir / "laplace-draws.samples.csv"));
  CHECK(fs::exists(dir / "laplace-draws.cf.csv"));

  // header comment records seed, law, count
  std::ifstream samples(dir / "laplace-draws.samples.csv");
  std::string header;
  std::getline(samples, header);
  CHECK(header.find("seed=77") != std::string::npos);
  CHECK(header.find("count=20000") != std::string::npos);

  // same config + seed -> byte-identical report modulo the timestamp key
  auto second = run_config(config);
  auto a = first.report;
  auto b = second.report;
  a.erase("timestamp");
  b.erase("timestamp");
  CHECK(a.dump() == b.dump());

  // seed override changes the draws
  RunOptions options;
  options.seed_override = 78;
  options.write_files = false;
  auto third = run_config(config, options);
  auto c = third.report;
  c.erase("timestamp");
  CHECK(a.dump() != c.dump());

  fs::remove_all(dir);
}

TEST_CASE("pmf check on integer laws only") {
  const Json config{{"kind", "sample"},
                    {"name", "pmf-on-reals"},
                    {"law", Json{{"type", "stable"}, {"alpha", 2.0}}},
                    {"n", 1000},
                    {"seed", 5},
                    {"emit_csv", false},
                    {"pmf_check", Json{{"target", "geometric"},
                                       {"p", 0.5}}}};
  CHECK_THROWS_AS(run_config(config, no_files()), ConfigError);
}

TEST_CASE("attraction config with paired degenerate run") {
  Json n_schedule = Json::array({100, 1000, 10000});
  Json a_schedule = Json::array();
  for (double n : {100.0, 1000.0, 10000.0}) {
    a_schedule.push_back(std::sqrt(n));
  }
  const Json config{{"kind", "attraction"},
                    {"name", "laplace-self"},
                    {"phi", Json{{"kind", "exponential"}, {"beta", 1.0}}},
                    {"target_psi", Json{{"kind", "stable"},
                                        {"alpha", 2.0},
                                        {"lambda", 1.0},
                                        {"skew", 0.0}}},
                    {"g", Json{{"kind", "laplace"}, {"scale", 1.0}}},
                    {"n_schedule", n_schedule},
                    {"a_schedule", a_schedule},
                    {"t_max", 5.0},
                    {"points", 101},
                    {"tolerance", 1e-3},
                    {"paired_degenerate", true}};
  const auto result = run_config(config, no_files());
  CHECK(result.exit_code == 0);
  CHECK(result.report["verdicts"].size() == 2);
  CHECK(result.report["reports"].size() == 2);
}

TEST_CASE("lt-check config: cm, selfdecomp and sampling checks") {
  Json config{{"kind", "lt-check"},
              {"name", "lt"},
              {"phis", Json::array(
                           {Json{{"kind", "exponential"}, {"beta", 1.0}},
                            Json{{"kind", "gamma"}, {"nu", 2.0}, {"beta", 1.0}}})},
              {"cm", Json{{"start", 0.1}, {"step", 0.2}, {"max_order", 8}}},
              {"selfdecomp", Json{{"c_values", Json::array({0.5})}}},
              {"sample_check", Json{{"n", 20000}}},
              {"seed", 9}};
  const auto result = run_config(config, no_files());
  CHECK(result.exit_code == 0);
  CHECK(result.report["verdicts"].size() == 6);

  // sample_check without a seed is a config error
  config.erase("seed");
  CHECK_THROWS_AS(run_config(config, no_files()), ConfigError);

  // no phi at all is a config error
  const Json empty{{"kind", "lt-check"},
                   {"cm", Json{{"start", 0.1}, {"step", 0.2}}}};
  CHECK_THROWS_AS(run_config(empty, no_files()), ConfigError);
}

TEST_CASE("definetti form validates its schedule arrays") {
  const Json config{{"kind", "attraction"},
                    {"form", "definetti"},
                    {"phi", Json{{"kind", "exponential"}, {"beta", 1.0}}},
                    {"target_psi", Json{{"kind", "stable"}, {"alpha", 2.0}}},
                    {"h", Json{{"kind", "gaussian"}}},
                    {"n_schedule", Json::array({100, 1000})},
                    {"weights", Json::array({100.0})},
                    {"cf_scales", Json::array({0.14, 0.045})}};
  CHECK_THROWS_AS(run_config(config, no_files()), ConfigError);
}

TEST_CASE("strict-attraction schedule validator in configs") {
  Json base{{"kind", "attraction"},
            {"name", "strict"},
            {"phi", Json{{"kind", "exponential"}, {"beta", 1.0}}},
            {"target_psi", Json{{"kind", "stable"},
                                {"alpha", 2.0},
                                {"lambda", 1.0},
                                {"skew", 0.0}}},
            {"g", Json{{"kind", "laplace"}, {"scale", 1.0}}},
            {"n_schedule", Json::array({100, 10000})},
            {"a_schedule", Json::array({10.0, 100.0})},
            {"tolerance", 1e-3}};
  base["strict_a_schedule"] = Json::array({1.5, 2.5, 3.5, 4.25});
  CHECK(run_config(base, no_files()).exit_code == 0);
  base["strict_a_schedule"] = Json::array({1.5, 4.0});
  try {
    run_config(base, no_files());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("index 2") != std::string::npos);
  }
}

TEST_CASE("presets are the acceptance catalog") {
  const auto& presets = builtin_presets();
  CHECK(presets.size() == 10);
  CHECK(find_preset("geometric-exponential-stability") != nullptr);
  CHECK(find_preset("harris-gamma-limit") != nullptr);
  CHECK(find_preset("no-such-preset") == nullptr);
  for (const auto& preset : presets) {
    CHECK_FALSE(preset.claim.empty());
    CHECK_FALSE(preset.configs.empty());
  }
}

TEST_CASE("count-limit agreement-only config needs no seed") {
  const Json config{{"kind", "count-limit"},
                    {"name", "agreement"},
                    {"harris_agreement", Json{{"a", 3.0},
                                              {"m", 2},
                                              {"points", 101},
                                              {"tolerance", 1e-12}}}};
  const auto result = run_config(config, no_files());
  CHECK(result.exit_code == 0);
  CHECK(result.report["verdicts"][0]["max_error"].get<double>() < 1e-12);
}

TEST_CASE("count-limit config: transform branch with CSV curves") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "phiid-test-cl";
  fs::remove_all(dir);
  const Json config{{"kind", "count-limit"},
                    {"name", "geom-limit"},
                    {"phi", Json{{"kind", "exponential"}, {"beta", 1.0}}},
                    {"j", 0},
                    {"m", 1},
                    {"theta_schedule", Json::array({0.1, 0.01, 0.001})},
                    {"v_grid", Json::array({0.5, 1.0, 2.0})},
                    {"samples_per_theta", 20000},
                    {"tolerance", 0.01},
                    {"seed", 500},
                    {"output", dir.string()}};
  const auto result = run_config(config);
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(dir / "geom-limit.theta0.csv"));
  CHECK(fs::exists(dir / "geom-limit.theta2.csv"));
  std::ifstream csv(dir / "geom-limit.theta0.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header ==
        "v,lt_target,lt_exact,lt_empirical,err_exact,err_empirical");
  // report carries both the exact and the empirical series
  const auto& rep = result.report["reports"][0];
  CHECK(rep["extra"].contains("empirical_distance"));
  CHECK(rep["samples"] == 20000);
  fs::remove_all(dir);

  // bad scaling value is a config error
  Json bad = config;
  bad["scaling"] = "inverse-b";
  bad.erase("output");
  CHECK_THROWS_AS(run_config(bad, no_files()), ConfigError);
}

TEST_CASE("cf-check properties block sweeps hermitian and modulus bounds") {
  const Json config{
      {"kind", "cf-check"},
      {"name", "props"},
      {"laws",
       Json::array(
           {linnik_law(),
            Json{{"phi", Json{{"kind", "gamma"}, {"nu", 0.5}, {"beta", 2.0}}},
                 {"psi", Json{{"kind", "stable"},
                              {"alpha", 1.5},
                              {"lambda", 1.0},
                              {"skew", 0.3}}}}})},
      {"properties", Json{{"t_max", 5.0}, {"points", 101}}}};
  const auto result = run_config(config, no_files());
  CHECK(result.exit_code == 0);
  CHECK(result.report["verdicts"].size() == 4);  // two checks per law
}

TEST_CASE("attraction mu form runs and rejects a stray b_schedule") {
  Json config{{"kind", "attraction"},
              {"form", "mu"},
              {"name", "mu-run"},
              {"phi", Json{{"kind", "exponential"}, {"beta", 1.0}}},
              {"target_psi", Json{{"kind", "stable"},
                                  {"alpha", 1.5},
                                  {"lambda", 1.0},
                                  {"skew", 0.0}}},
              {"g", Json{{"kind", "symmetric-stable"},
                         {"alpha", 1.5},
                         {"scale", 1.0}}},
              {"n_schedule", Json::array({100, 1000, 10000})},
              {"a_schedule", Json::array({21.544346900318832,
                                          99.999999999999986,
                                          464.15888336127773})},
              {"mu_schedule", Json::array({0.0, 0.0, 0.0})},
              {"tolerance", 1e-3}};
  CHECK(run_config(config, no_files()).exit_code == 0);
  config["b_schedule"] = Json::array({0.0, 0.0, 0.0});
  CHECK_THROWS_AS(run_config(config, no_files()), ConfigError);
}

TEST_CASE("partial-attraction config with the exp-neg-psi component") {
  Json n_schedule = Json::array();
  Json a_schedule = Json::array();
  for (int k = 1; k <= 10; ++k) {
    n_schedule.push_back(static_cast<std::int64_t>(std::pow(2.0, k)));
    a_schedule.push_back(std::pow(2.0, static_cast<double>(k) / 1.2));
  }
  const Json config{{"kind", "partial-attraction"},
                    {"name", "semi-stable"},
                    {"phi", Json{{"kind", "exponential"}, {"beta", 1.0}}},
                    {"target_psi", Json{{"kind", "semi-stable"},
                                        {"alpha", 1.2},
                                        {"eps", 0.03},
                                        {"c", 2.0}}},
                    {"g", Json{{"kind", "exp-neg-psi"}}},
                    {"n_schedule", n_schedule},
                    {"a_schedule", a_schedule},
                    {"tolerance", 1e-3}};
  const auto result = run_config(config, no_files());
  CHECK(result.exit_code == 0);
  CHECK(result.report["reports"][0]["nonincreasing"] == true);
}

TEST_CASE("sample kind covers the remaining law types") {
  Json config{{"kind", "sample"},
              {"name", "det-sum"},
              {"law", Json{{"type", "deterministic-sum"},
                           {"n", 3},
                           {"component", Json{{"kind", "normal"},
                                              {"mean", 0.0},
                                              {"sd", 1.0}}}}},
              {"n", 20000},
              {"seed", 510},
              {"emit_csv", false},
              {"cf_check", Json{{"t_max", 3.0},
                                {"points", 41},
                                {"tolerance", 0.05}}}};
  CHECK(run_config(config, no_files()).exit_code == 0);

  config["name"] = "component";
  config["law"] = Json{{"type", "component"},
                       {"component", Json{{"kind", "laplace"}, {"scale", 1.0}}}};
  CHECK(run_config(config, no_files()).exit_code == 0);

  config["name"] = "random-sum-cf";
  config["law"] =
      Json{{"type", "random-sum"},
           {"count", Json{{"phi", Json{{"kind", "degenerate"}, {"c", 1.0}}},
                          {"theta", 0.5},
                          {"j", 0},
                          {"m", 1}}},
           {"component", Json{{"kind", "two-point"}, {"x0", 1.0}}}};
  CHECK(run_config(config, no_files()).exit_code == 0);

  // harris counts inside a sample law
  config["name"] = "harris-count";
  config["law"] = Json{{"type", "count"}, {"harris", Json{{"a", 3.0}, {"m", 2}}}};
  config.erase("cf_check");
  CHECK(run_config(config, no_files()).exit_code == 0);

  // semi-stable law type cannot be sampled
  config["law"] = Json{{"type", "phi-id"},
                       {"phi", Json{{"kind", "exponential"}, {"beta", 1.0}}},
                       {"psi", Json{{"kind", "semi-stable"},
                                    {"alpha", 1.2},
                                    {"eps", 0.03},
                                    {"c", 2.0}}}};
  CHECK_THROWS_AS(run_config(config, no_files()), ConfigError);
}
