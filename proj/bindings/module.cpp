#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fkglab/json_io.hpp"
#include "fkglab/suites.hpp"

namespace py = pybind11;
using fkglab::Json;

namespace {

// The python surface mirrors the CLI: JSON strings in, JSON strings out,
// so the documented config schemas are the single source of truth.
Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

std::string check_lattice(const std::string& spec) {
  Json input = parse(spec);
  fkglab::AtomicMeasure m =
      input.contains("chain")
          ? fkglab::exact_path_law(fkglab::chain_from_spec(input.at("chain")))
          : fkglab::measure_from_json(input.contains("measure") ? input.at("measure")
                                                                : input);
  return fkglab::make_report("check-lattice", input,
                             fkglab::lattice_to_json(fkglab::fkg_lattice_condition(m)))
      .dump();
}

std::string check_crossings(const std::string& spec) {
  Json input = parse(spec);
  fkglab::TransitionKernel kernel = fkglab::kernel_from_spec(input.at("kernel"));
  int64_t modulus = 1, residue = 0;
  if (input.contains("x1")) {
    modulus = input.at("x1").value("modulus", 1);
    residue = input.at("x1").value("residue", 0);
  }
  return fkglab::make_report(
             "check-crossings", input,
             fkglab::crossings_to_json(
                 fkglab::has_unfavorable_crossings_residue(kernel, modulus, residue)))
      .dump();
}

std::string check_logconcave(const std::string& spec) {
  Json input = parse(spec);
  fkglab::IncrementLaw law =
      fkglab::law_from_spec(input.contains("law") ? input.at("law") : input);
  Json result = fkglab::logconcave_to_json(fkglab::is_log_concave(law));
  auto [a, b] = fkglab::support_gcd(law);
  result["support_gcd"] = Json{{"a", a}, {"b", b}};
  return fkglab::make_report("check-logconcave", input, result).dump();
}

std::string check_h1(const std::string& spec) {
  Json input = parse(spec);
  fkglab::TransitionKernel kernel = fkglab::kernel_from_spec(input.at("kernel"));
  return fkglab::make_report(
             "check-h1", input,
             fkglab::h1_to_json(fkglab::check_H1(kernel, input.value("start", 0),
                                                 input.value("steps", 1))))
      .dump();
}

std::string counterexample(const std::string& spec) {
  Json input = parse(spec);
  fkglab::TransitionKernel kernel = fkglab::kernel_from_spec(input.at("kernel"));
  return fkglab::make_report(
             "counterexample", input,
             fkglab::counterexample_to_json(fkglab::construct_counterexample_paths(
                 kernel, input.value("start", 0),
                 input.value("m_cap", fkglab::kDefaultCounterexampleCap))))
      .dump();
}

std::string condition(const std::string& spec) {
  Json input = parse(spec);
  fkglab::ChainSpec chain = fkglab::chain_from_spec(input.at("chain"));
  fkglab::PathEvent event = fkglab::event_from_spec(input.at("event"));
  fkglab::ConditionedPathLaw law = fkglab::condition_on_event(chain, event);
  Json result{{"event_probability", fkglab::rational_to_json(law.total)},
              {"conditional_law", fkglab::measure_to_json(law.conditional_law())},
              {"event_maxmin_stable",
               fkglab::event_maxmin_stable(event, chain).stable}};
  return fkglab::make_report("condition", input, result).dump();
}

std::vector<std::vector<int64_t>> sample(const std::string& spec, uint64_t seed,
                                         size_t count) {
  Json input = parse(spec);
  fkglab::ChainSpec chain = fkglab::chain_from_spec(input.at("chain"));
  fkglab::PathEvent event = input.contains("event")
                                ? fkglab::event_from_spec(input.at("event"))
                                : fkglab::PathEvent::full_space();
  return fkglab::sample_conditioned(fkglab::condition_on_event(chain, event), seed,
                                    count);
}

std::string oracle_assoc(const std::string& spec) {
  Json input = parse(spec);
  fkglab::AtomicMeasure m =
      input.contains("chain")
          ? fkglab::exact_path_law(fkglab::chain_from_spec(input.at("chain")))
          : fkglab::measure_from_json(input.contains("measure") ? input.at("measure")
                                                                : input);
  return fkglab::make_report(
             "oracle-assoc", input,
             fkglab::assoc_to_json(fkglab::is_associated_bruteforce(m), m))
      .dump();
}

std::string probe_assoc(const std::string& spec, uint64_t seed) {
  Json input = parse(spec);
  fkglab::ChainSpec chain = fkglab::chain_from_spec(input.at("chain"));
  fkglab::PathEvent event = input.contains("event")
                                ? fkglab::event_from_spec(input.at("event"))
                                : fkglab::PathEvent::full_space();
  auto sampler = std::make_shared<fkglab::ConditionedSampler>(
      fkglab::condition_on_event(chain, event));
  fkglab::ProbeResult probe = fkglab::association_probe(
      [sampler](fkglab::RngStream& rng) {
        auto path = (*sampler)(rng);
        return std::vector<double>(path.begin(), path.end());
      },
      fkglab::functionals_from_spec(input.at("functionals")),
      input.value("samples", size_t{100000}), seed);
  return fkglab::make_report("probe-assoc", input, fkglab::probe_to_json(probe), seed)
      .dump();
}

std::string levy_classify(const std::string& spec) {
  Json input = parse(spec);
  fkglab::LevyTriplet triplet =
      fkglab::levy_from_json(input.contains("levy") ? input.at("levy") : input);
  return fkglab::make_report(
             "levy-classify", input,
             fkglab::levy_verdict_to_json(fkglab::levy_check_association(triplet)))
      .dump();
}

std::vector<std::vector<std::vector<double>>> sample_levy(const std::string& spec,
                                                          uint64_t seed,
                                                          size_t count) {
  Json input = parse(spec);
  fkglab::LevyTriplet triplet =
      fkglab::levy_from_json(input.contains("levy") ? input.at("levy") : input);
  return fkglab::sample_levy_path(triplet, input.value("T", 1.0),
                                  input.value("grid", 64), seed, count);
}

std::string run_suite_py(const std::string& name, uint64_t seed) {
  fkglab::SuiteOptions options;
  options.seed = seed;
  fkglab::SuiteResult result = fkglab::run_suite(name, options);
  return Json{{"name", result.name},
              {"pass", result.pass},
              {"lines", result.lines},
              {"seconds", result.seconds},
              {"details", result.details}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_fkglab, m) {
  m.doc() = "Exact FKG lattice-condition and association checkers, conditioned "
            "Markov-chain samplers, and Levy-triplet classification. All "
            "functions take and return JSON strings using the schemas "
            "documented in the project README.";

  m.def("check_lattice", &check_lattice, py::arg("spec"));
  m.def("check_crossings", &check_crossings, py::arg("spec"));
  m.def("check_logconcave", &check_logconcave, py::arg("spec"));
  m.def("check_h1", &check_h1, py::arg("spec"));
  m.def("counterexample", &counterexample, py::arg("spec"));
  m.def("condition", &condition, py::arg("spec"));
  m.def("sample_conditioned", &sample, py::arg("spec"), py::arg("seed"),
        py::arg("count"));
  m.def("oracle_assoc", &oracle_assoc, py::arg("spec"));
  m.def("probe_assoc", &probe_assoc, py::arg("spec"), py::arg("seed"));
  m.def("levy_classify", &levy_classify, py::arg("spec"));
  m.def("sample_levy", &sample_levy, py::arg("spec"), py::arg("seed"),
        py::arg("count"));
  m.def("run_suite", &run_suite_py, py::arg("name"), py::arg("seed") = 20240917);
  m.def("suite_names", &fkglab::suite_names);

#ifdef FKGLAB_VERSION
  m.attr("__version__") = FKGLAB_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
