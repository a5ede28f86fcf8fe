#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "phiid/config.hpp"
#include "phiid/presets.hpp"
#include "phiid/runner.hpp"
#include "phiid/sampler.hpp"
#include "phiid/stats.hpp"
#include "phiid/version.hpp"

namespace {

using phiid::Json;

// Inline JSON or @path to a file.
Json parse_json_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream is(arg.substr(1));
    if (!is) {
      throw phiid::ConfigError("cannot open JSON file " + arg.substr(1));
    }
    return Json::parse(is);
  }
  return Json::parse(arg);
}

int cmd_run(const std::string& target, std::optional<std::uint64_t> seed,
            std::optional<std::string> out_dir, unsigned threads) {
  phiid::RunOptions options;
  options.seed_override = seed;
  options.output_dir_override = out_dir;
  options.threads = threads;

  if (const phiid::Preset* preset = phiid::find_preset(target)) {
    const auto result = phiid::run_preset(*preset, options);
    for (const auto& run : result.runs) {
      const bool pass = run.exit_code == 0;
      std::cout << (pass ? "[PASS] " : "[FAIL] ")
                << run.report.value("name", std::string("?")) << "\n";
    }
    return result.exit_code;
  }

  const auto result = phiid::run_config_file(target, options);
  if (result.report.contains("error")) {
    std::cerr << "error: " << result.report["error"].get<std::string>()
              << "\n";
  } else {
    for (const auto& v : result.report["verdicts"]) {
      std::cout << (v["pass"].get<bool>() ? "[PASS] " : "[FAIL] ")
                << v["name"].get<std::string>() << "\n";
    }
    std::cout << (result.exit_code == 0 ? "PASS" : "FAIL") << " ("
              << result.report["name"].get<std::string>() << ")\n";
  }
  return result.exit_code;
}

int cmd_presets() {
  for (const auto& preset : phiid::builtin_presets()) {
    std::cout << preset.name << "\n    " << preset.claim << "\n";
  }
  return 0;
}

int cmd_sample(const std::string& law_json, std::uint64_t n,
               std::uint64_t seed, const std::string& output) {
  Json config{{"kind", "sample"},
              {"name", "sample"},
              {"law", parse_json_arg(law_json)},
              {"n", n},
              {"seed", seed}};
  phiid::RunOptions options;
  options.output_dir_override = output;
  const auto result = phiid::run_config(config, options);
  for (const auto& f : result.written_files) std::cout << f << "\n";
  return result.exit_code;
}

int cmd_pgf(const std::string& model_json, std::uint64_t points) {
  const Json j = parse_json_arg(model_json);
  std::cout << "s,pgf\n";
  if (j.contains("a")) {
    const auto model = phiid::harris_from_json(j, "model");
    for (double s : phiid::linspace(0.0, 1.0, points)) {
      std::cout << s << ',' << phiid::harris_pgf(model, s) << "\n";
    }
  } else {
    const auto model = phiid::count_from_json(j, "model");
    for (double s : phiid::linspace(0.0, 1.0, points)) {
      std::cout << s << ',' << model.pgf(s) << "\n";
    }
  }
  return 0;
}

int cmd_cf(const std::string& law_json, double t_max, std::uint64_t points) {
  const auto law = phiid::law_from_json(parse_json_arg(law_json), "law");
  std::cout << "t,re_f,im_f\n";
  for (double t : phiid::symmetric_grid(t_max, points)) {
    const auto f = law.cf(t);
    std::cout << t << ',' << f.real() << ',' << f.imag() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phi-ID laws: construction, exact sampling, and limit-theorem "
               "verification"};
  app.set_version_flag("--version", phiid::kVersion);
  app.require_subcommand(1);

  std::string run_target;
  std::optional<std::uint64_t> run_seed;
  std::optional<std::string> run_out;
  unsigned run_threads = 0;
  auto* run = app.add_subcommand(
      "run", "Run an experiment config file or a named preset");
  run->add_option("config", run_target, "Path to config JSON, or preset name")
      ->required();
  run->add_option("--seed", run_seed, "Override the config seed");
  run->add_option("--out", run_out, "Override the output directory");
  run->add_option("--threads", run_threads,
                  "Worker cap (0 = available parallelism)");

  auto* presets =
      app.add_subcommand("presets", "List built-in experiments and claims");

  std::string sample_law;
  std::uint64_t sample_n = 1000;
  std::uint64_t sample_seed = 1;
  std::string sample_out = "out";
  auto* sample = app.add_subcommand("sample", "Draw from a law, emit CSV");
  sample->add_option("--law", sample_law, "Law JSON (inline or @file)")
      ->required();
  sample->add_option("-n,--count", sample_n, "Number of draws");
  sample->add_option("--seed", sample_seed, "Seed")->required();
  sample->add_option("--out", sample_out, "Output directory");

  std::string pgf_model;
  std::uint64_t pgf_points = 101;
  auto* pgf = app.add_subcommand("pgf", "Print a count-model PGF on [0,1]");
  pgf->add_option("--model", pgf_model,
                  "Count model JSON ({phi,theta,j,m} or Harris {a,m})")
      ->required();
  pgf->add_option("--points", pgf_points, "Grid points");

  std::string cf_law;
  double cf_tmax = 5.0;
  std::uint64_t cf_points = 101;
  auto* cf = app.add_subcommand("cf", "Print a phi-ID law CF on [-t_max,t_max]");
  cf->add_option("--law", cf_law, "Law JSON {phi,psi} (inline or @file)")
      ->required();
  cf->add_option("--t-max", cf_tmax, "Grid half-width");
  cf->add_option("--points", cf_points, "Grid points (forced odd)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_target, run_seed, run_out, run_threads);
    if (presets->parsed()) return cmd_presets();
    if (sample->parsed())
      return cmd_sample(sample_law, sample_n, sample_seed, sample_out);
    if (pgf->parsed()) return cmd_pgf(pgf_model, pgf_points);
    if (cf->parsed()) return cmd_cf(cf_law, cf_tmax, cf_points);
  } catch (const phiid::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Json::parse_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
