#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fkglab/json_io.hpp"
#include "fkglab/suites.hpp"

namespace {

using fkglab::Json;

struct GlobalFlags {
  std::optional<uint64_t> seed;
  int precision_digits = fkglab::kDefaultSigDigits;
  size_t upset_cap = fkglab::kDefaultUpsetElementCap;
  size_t path_cap = fkglab::kDefaultPathCap;
  double ci_level = fkglab::kDefaultCiLevel;
  int threads = 1;
  std::string out_path;
  std::string plot_path;
};

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write to '" + path + "'");
  out << text;
}

void emit_report(const GlobalFlags& flags, const Json& report) {
  write_text(flags.out_path, report.dump(2));
}

uint64_t require_seed(const GlobalFlags& flags) {
  if (!flags.seed)
    throw std::invalid_argument("--seed is mandatory for stochastic commands");
  return *flags.seed;
}

// Measure input: either {"measure": {...}} atoms, or {"chain": {...}} whose
// exact path law is built, or a bare increment-law spec taken in dimension 1.
fkglab::AtomicMeasure measure_from_input(const Json& input, const GlobalFlags& flags) {
  if (input.contains("measure")) return fkglab::measure_from_json(input.at("measure"));
  if (input.contains("chain"))
    return fkglab::exact_path_law(
        fkglab::chain_from_spec(input.at("chain"), flags.precision_digits),
        flags.path_cap);
  return fkglab::law_from_spec(input, flags.precision_digits).as_measure();
}

fkglab::TransitionKernel kernel_from_input(const Json& input,
                                           const GlobalFlags& flags) {
  if (input.contains("kernel"))
    return fkglab::kernel_from_spec(input.at("kernel"), flags.precision_digits);
  if (input.contains("law") || input.contains("family") || input.contains("atoms")) {
    const Json& law_spec = input.contains("law") ? input.at("law") : input;
    int64_t lo = -7, hi = 7;
    if (input.contains("window")) {
      lo = input.at("window").at("lo").get<int64_t>();
      hi = input.at("window").at("hi").get<int64_t>();
    }
    return fkglab::kernel_from_increments(
        fkglab::law_from_spec(law_spec, flags.precision_digits), lo, hi);
  }
  throw std::invalid_argument("input needs 'kernel' or an increment-law spec");
}

int run_check_lattice(const std::string& in_path, const GlobalFlags& flags) {
  Json input = load_json(in_path);
  fkglab::AtomicMeasure m = measure_from_input(input, flags);
  Json result = fkglab::lattice_to_json(fkglab::fkg_lattice_condition(m));
  emit_report(flags, fkglab::make_report("check-lattice", input, result));
  return 0;
}

int run_check_crossings(const std::string& in_path, const GlobalFlags& flags) {
  Json input = load_json(in_path);
  fkglab::TransitionKernel kernel = kernel_from_input(input, flags);
  fkglab::CrossingsVerdict verdict;
  Json x1_echo;
  if (input.contains("x1") && input.at("x1").is_object() &&
      input.at("x1").contains("states")) {
    auto states = input.at("x1").at("states").get<std::vector<int64_t>>();
    verdict = fkglab::has_unfavorable_crossings(kernel, states);
    x1_echo = Json{{"states", states}};
  } else {
    int64_t modulus = 1, residue = 0;
    if (input.contains("x1")) {
      modulus = input.at("x1").value("modulus", 1);
      residue = input.at("x1").value("residue", 0);
    }
    verdict = fkglab::has_unfavorable_crossings_residue(kernel, modulus, residue);
    x1_echo = Json{{"modulus", modulus}, {"residue", residue}};
  }
  Json result = fkglab::crossings_to_json(verdict);
  result["x1"] = x1_echo;
  emit_report(flags, fkglab::make_report("check-crossings", input, result));
  return 0;
}

int run_check_logconcave(const std::string& in_path, const GlobalFlags& flags) {
  Json input = load_json(in_path);
  fkglab::IncrementLaw law = fkglab::law_from_spec(
      input.contains("law") ? input.at("law") : input, flags.precision_digits);
  Json result = fkglab::logconcave_to_json(fkglab::is_log_concave(law));
  auto [a, b] = fkglab::support_gcd(law);
  result["support_gcd"] = Json{{"a", a}, {"b", b}};
  result["law"] = fkglab::law_to_json(law);
  emit_report(flags, fkglab::make_report("check-logconcave", input, result));
  return 0;
}

int run_check_h1(const std::string& in_path, const GlobalFlags& flags) {
  Json input = load_json(in_path);
  fkglab::TransitionKernel kernel = kernel_from_input(input, flags);
  int64_t start = input.value("start", 0);
  int steps = input.value("steps", 1);
  Json result = fkglab::h1_to_json(fkglab::check_H1(kernel, start, steps));
  emit_report(flags, fkglab::make_report("check-h1", input, result));
  return 0;
}

int run_counterexample(const std::string& in_path, const GlobalFlags& flags) {
  Json input = load_json(in_path);
  fkglab::TransitionKernel kernel = kernel_from_input(input, flags);
  int64_t start = input.value("start", 0);
  int m_cap = input.value("m_cap", fkglab::kDefaultCounterexampleCap);
  Json result = fkglab::counterexample_to_json(
      fkglab::construct_counterexample_paths(kernel, start, m_cap));
  emit_report(flags, fkglab::make_report("counterexample", input, result));
  return 0;
}

int run_condition(const std::string& in_path, const GlobalFlags& flags) {
  Json input = load_json(in_path);
  fkglab::ChainSpec chain =
      fkglab::chain_from_spec(input.at("chain"), flags.precision_digits);
  fkglab::PathEvent event = fkglab::event_from_spec(input.at("event"));
  fkglab::ConditionedPathLaw law = fkglab::condition_on_event(chain, event);
  Json result{{"event_probability", fkglab::rational_to_json(law.total)},
              {"conditional_law",
               fkglab::measure_to_json(law.conditional_law(flags.path_cap))}};
  result["event_maxmin_stable"] =
      fkglab::event_maxmin_stable(event, chain, flags.path_cap).stable;
  emit_report(flags, fkglab::make_report("condition", input, result));
  return 0;
}

int run_sample(const std::string& in_path, const GlobalFlags& flags,
               size_t count) {
  Json input = load_json(in_path);
  uint64_t seed = require_seed(flags);

  if (input.contains("levy")) {
    fkglab::LevyTriplet triplet = fkglab::levy_from_json(input.at("levy"));
    double horizon = input.value("T", 1.0);
    int grid = input.value("grid", 64);
    auto paths = fkglab::sample_levy_path(triplet, horizon, grid, seed, count);
    write_text(flags.out_path, fkglab::levy_paths_to_csv(paths, horizon));
    if (!flags.plot_path.empty()) {
      // Mean path as (t, mean) series.
      std::ostringstream os;
      os << "t,mean\n";
      os.precision(17);
      for (int j = 0; j <= grid; ++j) {
        double mean = 0;
        for (const auto& p : paths) mean += p[j][0];
        mean /= static_cast<double>(paths.size());
        os << (horizon * j / grid) << "," << mean << "\n";
      }
      write_text(flags.plot_path, os.str());
    }
    return 0;
  }

  fkglab::ChainSpec chain =
      fkglab::chain_from_spec(input.at("chain"), flags.precision_digits);
  fkglab::PathEvent event = input.contains("event")
                                ? fkglab::event_from_spec(input.at("event"))
                                : fkglab::PathEvent::full_space();
  fkglab::ConditionedPathLaw law = fkglab::condition_on_event(chain, event);
  auto paths = fkglab::sample_conditioned(law, seed, count);
  write_text(flags.out_path, fkglab::paths_to_csv(paths));
  if (!flags.plot_path.empty()) {
    std::ostringstream os;
    os << "k,mean\n";
    for (int k = 0; k < chain.steps; ++k) {
      double mean = 0;
      for (const auto& p : paths) mean += static_cast<double>(p[k]);
      mean /= static_cast<double>(paths.size());
      os << (k + 1) << "," << mean << "\n";
    }
    write_text(flags.plot_path, os.str());
  }
  return 0;
}

int run_oracle_assoc(const std::string& in_path, const GlobalFlags& flags) {
  Json input = load_json(in_path);
  fkglab::AtomicMeasure m = measure_from_input(input, flags);
  fkglab::AssocVerdict verdict =
      fkglab::is_associated_bruteforce(m, flags.upset_cap);
  emit_report(flags,
              fkglab::make_report("oracle-assoc", input, assoc_to_json(verdict, m)));
  return 0;
}

int run_probe_assoc(const std::string& in_path, const GlobalFlags& flags) {
  Json input = load_json(in_path);
  uint64_t seed = require_seed(flags);
  size_t samples = input.value("samples", size_t{100000});

  fkglab::Sampler sampler;
  if (input.contains("levy")) {
    auto triplet = std::make_shared<fkglab::LevyTriplet>(
        fkglab::levy_from_json(input.at("levy")));
    double horizon = input.value("T", 1.0);
    int grid = input.value("grid", 64);
    auto root = std::make_shared<std::vector<std::vector<double>>>(
        fkglab::symmetric_sqrt(triplet->sigma));
    sampler = [triplet, root, horizon, grid](fkglab::RngStream& rng) {
      auto path = fkglab::sample_levy_single(*triplet, *root, horizon, grid, rng);
      std::vector<double> flat;
      for (const auto& value : path)
        for (double x : value) flat.push_back(x);
      return flat;
    };
  } else {
    fkglab::ChainSpec chain =
        fkglab::chain_from_spec(input.at("chain"), flags.precision_digits);
    fkglab::PathEvent event = input.contains("event")
                                  ? fkglab::event_from_spec(input.at("event"))
                                  : fkglab::PathEvent::full_space();
    auto law = std::make_shared<fkglab::ConditionedSampler>(
        fkglab::condition_on_event(chain, event));
    sampler = [law](fkglab::RngStream& rng) {
      auto path = (*law)(rng);
      return std::vector<double>(path.begin(), path.end());
    };
  }

  std::vector<fkglab::IncreasingFunctional> family =
      fkglab::functionals_from_spec(input.at("functionals"));
  fkglab::ProbeResult probe = fkglab::association_probe(
      sampler, family, samples, seed, flags.ci_level, flags.threads);
  emit_report(flags, fkglab::make_report("probe-assoc", input,
                                         fkglab::probe_to_json(probe), seed));
  if (!flags.plot_path.empty())
    write_text(flags.plot_path, fkglab::covariance_reports_to_csv(probe.reports));
  return 0;
}

int run_levy_classify(const std::string& in_path, const GlobalFlags& flags) {
  Json input = load_json(in_path);
  fkglab::LevyTriplet triplet =
      fkglab::levy_from_json(input.contains("levy") ? input.at("levy") : input);
  Json result = fkglab::levy_verdict_to_json(fkglab::levy_check_association(triplet));
  result["triplet"] = fkglab::levy_to_json(triplet);
  emit_report(flags, fkglab::make_report("levy-classify", input, result));
  return 0;
}

int run_suite(const std::string& name, const GlobalFlags& flags) {
  fkglab::SuiteOptions options;
  if (flags.seed) options.seed = *flags.seed;
  options.threads = flags.threads;
  fkglab::SuiteResult result = fkglab::run_suite(name, options);
  Json report = fkglab::make_report(
      "suite", Json{{"name", name}},
      Json{{"pass", result.pass},
           {"lines", result.lines},
           {"seconds", result.seconds},
           {"details", result.details}},
      options.seed);
  emit_report(flags, report);
  if (!flags.plot_path.empty() && name == "gamma-threshold") {
    std::ostringstream os;
    os << "gamma,holds\n";
    for (const auto& entry : result.details.at("sweep"))
      os << entry.at("k").get<int>() / 100.0 << ","
         << static_cast<int>(entry.at("holds").get<bool>()) << "\n";
    write_text(flags.plot_path, os.str());
  }
  for (const auto& line : result.lines) std::cerr << line << "\n";
  return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fkglab: exact FKG/association checkers and conditioned-chain "
               "samplers"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalFlags flags;
  app.add_option("--seed", flags.seed, "RNG seed (mandatory for stochastic commands)");
  app.add_option("--precision-digits", flags.precision_digits,
                 "significant decimal digits used to rationalize irrational weights");
  app.add_option("--upset-cap", flags.upset_cap, "up-set enumeration element cap");
  app.add_option("--path-cap", flags.path_cap, "path enumeration cap");
  app.add_option("--ci-level", flags.ci_level, "confidence level for statistical probes");
  app.add_option("--threads", flags.threads, "worker cap for samplers");
  app.add_option("--out", flags.out_path, "report/CSV output path (default stdout)");
  app.add_option("--emit-plot-data", flags.plot_path, "write plain (x,y) CSV series");

  std::string in_path, suite_name;
  size_t count = 1000;

  auto* check_lattice = app.add_subcommand("check-lattice", "FKG lattice condition");
  check_lattice->add_option("input", in_path)->required();
  auto* check_crossings =
      app.add_subcommand("check-crossings", "unfavorable-crossings condition");
  check_crossings->add_option("input", in_path)->required();
  auto* check_logconcave =
      app.add_subcommand("check-logconcave", "log-concavity on the support lattice");
  check_logconcave->add_option("input", in_path)->required();
  auto* check_h1 = app.add_subcommand("check-h1", "per-step marginal-support crossings");
  check_h1->add_option("input", in_path)->required();
  auto* counterexample =
      app.add_subcommand("counterexample", "explicit lattice-condition failure paths");
  counterexample->add_option("input", in_path)->required();
  auto* condition =
      app.add_subcommand("condition", "build and export an exact conditional law");
  condition->add_option("input", in_path)->required();
  auto* sample = app.add_subcommand("sample", "sample conditioned chains or Levy paths");
  sample->add_option("input", in_path)->required();
  sample->add_option("--count", count, "number of trajectories");
  auto* oracle = app.add_subcommand("oracle-assoc", "exact association oracle");
  oracle->add_option("input", in_path)->required();
  auto* probe = app.add_subcommand("probe-assoc", "Monte Carlo association probe");
  probe->add_option("input", in_path)->required();
  auto* levy = app.add_subcommand("levy-classify", "Levy triplet association classifier");
  levy->add_option("input", in_path)->required();
  auto* suite = app.add_subcommand("suite", "run a named verification suite");
  suite->add_option("name", suite_name)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check_lattice->parsed()) return run_check_lattice(in_path, flags);
    if (check_crossings->parsed()) return run_check_crossings(in_path, flags);
    if (check_logconcave->parsed()) return run_check_logconcave(in_path, flags);
    if (check_h1->parsed()) return run_check_h1(in_path, flags);
    if (counterexample->parsed()) return run_counterexample(in_path, flags);
    if (condition->parsed()) return run_condition(in_path, flags);
    if (sample->parsed()) return run_sample(in_path, flags, count);
    if (oracle->parsed()) return run_oracle_assoc(in_path, flags);
    if (probe->parsed()) return run_probe_assoc(in_path, flags);
    if (levy->parsed()) return run_levy_classify(in_path, flags);
    if (suite->parsed()) return run_suite(suite_name, flags);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const fkglab::cap_exceeded& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
