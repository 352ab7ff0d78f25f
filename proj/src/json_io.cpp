#include "fkglab/json_io.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace fkglab {

namespace {

[[noreturn]] void bad_input(const std::string& what) {
  throw std::invalid_argument(what);
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    bad_input(std::string("missing field '") + key + "'");
  return j.at(key);
}

int64_t int_field(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) bad_input(std::string("field '") + key + "' must be an integer");
  return v.get<int64_t>();
}

int64_t int_field_or(const Json& j, const char* key, int64_t fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return int_field(j, key);
}

}  // namespace

Json rational_to_json(const Rational& q) {
  return Json{{"num", numerator_string(q)}, {"den", denominator_string(q)}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_object()) {
    std::string num = require(j, "num").get<std::string>();
    std::string den = require(j, "den").get<std::string>();
    return make_rational(bigint_from_decimal(num), bigint_from_decimal(den));
  }
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<int64_t>()));
  bad_input("expected rational as {num,den}, string, or integer");
}

Json measure_to_json(const AtomicMeasure& m) {
  Json atoms = Json::array();
  for (const auto& [p, w] : m.atoms()) {
    Json atom;
    atom["point"] = p;
    atom["num"] = numerator_string(w);
    atom["den"] = denominator_string(w);
    atoms.push_back(std::move(atom));
  }
  return Json{{"dimension", m.dimension()}, {"atoms", std::move(atoms)}};
}

AtomicMeasure measure_from_json(const Json& j) {
  const Json& atoms = require(j, "atoms");
  if (!atoms.is_array() || atoms.empty()) bad_input("'atoms' must be a nonempty array");
  size_t dim = j.contains("dimension")
                   ? j.at("dimension").get<size_t>()
                   : require(atoms.at(0), "point").size();
  std::vector<std::pair<Point, Rational>> entries;
  for (const Json& atom : atoms) {
    Point p = require(atom, "point").get<Point>();
    entries.push_back({std::move(p), rational_from_json(atom)});
  }
  return AtomicMeasure(dim, std::move(entries));
}

Json law_to_json(const IncrementLaw& law) {
  Json j = measure_to_json(law.as_measure());
  j["support_gcd"] = Json{{"a", law.span_gcd()}, {"b", law.residue()}};
  if (law.degenerate()) j["degenerate"] = true;
  if (!law.note.empty()) j["note"] = law.note;
  return j;
}

Json kernel_to_json(const TransitionKernel& kernel) {
  Json rows = Json::array();
  for (int64_t x = kernel.lo(); x <= kernel.hi(); ++x) {
    Json to = Json::array();
    for (const auto& [y, p] : kernel.row(x))
      to.push_back(Json{{"state", y},
                        {"num", numerator_string(p)},
                        {"den", denominator_string(p)}});
    rows.push_back(Json{{"from", x}, {"to", std::move(to)}});
  }
  Json j{{"window", Json{{"lo", kernel.lo()}, {"hi", kernel.hi()}}},
         {"rows", std::move(rows)}};
  if (kernel.increments()) j["increments"] = law_to_json(*kernel.increments());
  return j;
}

std::string covariance_reports_to_csv(const std::vector<CovarianceReport>& reports) {
  std::ostringstream os;
  os << "f,g,estimate,stderr,ci_lower,ci_upper,level,samples,seed\n";
  os.precision(17);
  for (const auto& r : reports)
    os << r.f_name << "," << r.g_name << "," << r.estimate << "," << r.stderr_est
       << "," << r.ci_lower << "," << r.ci_upper << "," << r.level << ","
       << r.samples << "," << r.seed << "\n";
  return os.str();
}

IncrementLaw law_from_spec(const Json& spec, int default_digits) {
  if (!spec.is_object()) bad_input("law spec must be a JSON object");
  int digits = static_cast<int>(int_field_or(spec, "precision_digits", default_digits));
  if (spec.contains("family")) {
    std::string family = spec.at("family").get<std::string>();
    if (family == "lazy_srw")
      return lazy_srw(rational_from_json(require(spec, "gamma")));
    if (family == "discrete_laplace") {
      int k = static_cast<int>(int_field(spec, "truncation"));
      if (spec.contains("ratio"))
        return discrete_laplace_ratio(rational_from_json(spec.at("ratio")), k);
      return discrete_laplace(rational_from_json(require(spec, "beta")), k, digits);
    }
    if (family == "power_law")
      return power_law(rational_from_json(require(spec, "alpha")),
                       static_cast<int>(int_field(spec, "truncation")), digits);
    bad_input("unknown increment family '" + family + "'");
  }
  if (spec.contains("atoms")) {
    AtomicMeasure m = measure_from_json(spec);
    if (m.dimension() != 1) bad_input("increment law atoms must be 1-dimensional");
    std::vector<std::pair<int64_t, Rational>> pmf;
    for (const auto& [p, w] : m.atoms()) pmf.push_back({p[0], w});
    return IncrementLaw(std::move(pmf));
  }
  bad_input("law spec needs 'family' or 'atoms'");
}

TransitionKernel kernel_from_spec(const Json& spec, int default_digits) {
  if (!spec.is_object()) bad_input("kernel spec must be a JSON object");
  if (spec.contains("family") && spec.at("family") == "bessel") {
    return bessel_kernel(rational_from_json(require(spec, "nu")),
                         int_field(spec, "max"));
  }
  if (spec.contains("increments")) {
    const Json& win = require(spec, "window");
    return kernel_from_increments(law_from_spec(spec.at("increments"), default_digits),
                                  int_field(win, "lo"), int_field(win, "hi"));
  }
  if (spec.contains("rows")) {
    const Json& win = require(spec, "window");
    int64_t lo = int_field(win, "lo"), hi = int_field(win, "hi");
    if (hi < lo) bad_input("kernel window is empty");
    std::vector<std::vector<std::pair<int64_t, Rational>>> rows(
        static_cast<size_t>(hi - lo + 1));
    std::vector<bool> seen(rows.size(), false);
    for (const Json& row : require(spec, "rows")) {
      int64_t from = int_field(row, "from");
      if (from < lo || from > hi) bad_input("kernel row outside the window");
      size_t idx = static_cast<size_t>(from - lo);
      if (seen[idx]) bad_input("duplicate kernel row");
      seen[idx] = true;
      for (const Json& e : require(row, "to"))
        rows[idx].push_back({int_field(e, "state"), rational_from_json(e)});
    }
    for (size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) bad_input("kernel is missing row " + std::to_string(lo + static_cast<int64_t>(i)));
    return TransitionKernel(lo, hi, std::move(rows));
  }
  bad_input("kernel spec needs 'family', 'increments', or 'rows'");
}

ChainSpec chain_from_spec(const Json& spec, int default_digits) {
  ChainSpec chain{kernel_from_spec(require(spec, "kernel"), default_digits),
                  int_field(spec, "start"),
                  static_cast<int>(int_field(spec, "steps"))};
  if (chain.steps < 1) bad_input("'steps' must be >= 1");
  return chain;
}

namespace {

StepFunction step_function_from_json(const Json& j, double unbounded) {
  if (j.is_null()) return StepFunction::constant(unbounded);
  if (j.is_number()) return StepFunction::constant(j.get<double>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return StepFunction::constant(std::numeric_limits<double>::infinity());
    if (s == "-inf") return StepFunction::constant(-std::numeric_limits<double>::infinity());
    bad_input("barrier string must be 'inf' or '-inf'");
  }
  StepFunction f;
  for (const Json& t : require(j, "times")) f.times.push_back(t.get<double>());
  for (const Json& v : require(j, "values")) {
    if (v.is_string())
      f.values.push_back(v.get<std::string>() == "-inf"
                             ? -std::numeric_limits<double>::infinity()
                             : std::numeric_limits<double>::infinity());
    else
      f.values.push_back(v.get<double>());
  }
  if (f.times.size() != f.values.size() || f.times.empty() || f.times.front() != 0.0)
    bad_input("step function needs matching times/values starting at t=0");
  for (size_t i = 1; i < f.times.size(); ++i)
    if (f.times[i] <= f.times[i - 1]) bad_input("step function times must be increasing");
  return f;
}

}  // namespace

PathEvent event_from_spec(const Json& spec) {
  std::string kind = require(spec, "kind").get<std::string>();
  if (kind == "full") return PathEvent::full_space();
  if (kind == "bridge") return PathEvent::bridge(int_field(spec, "endpoint"));
  if (kind == "excursion")
    return PathEvent::excursion(int_field_or(spec, "endpoint", 0),
                                int_field_or(spec, "floor", 0));
  if (kind == "meander") return PathEvent::meander(int_field_or(spec, "floor", 0));
  if (kind == "interval") {
    double horizon = spec.contains("horizon") ? spec.at("horizon").get<double>() : 1.0;
    return PathEvent::interval(
        step_function_from_json(spec.contains("lower") ? spec.at("lower") : Json(),
                                -std::numeric_limits<double>::infinity()),
        step_function_from_json(spec.contains("upper") ? spec.at("upper") : Json(),
                                std::numeric_limits<double>::infinity()),
        horizon);
  }
  if (kind == "custom") {
    std::vector<std::vector<int64_t>> allowed;
    for (const Json& s : require(spec, "allowed"))
      allowed.push_back(s.get<std::vector<int64_t>>());
    return PathEvent::custom_per_step(std::move(allowed));
  }
  if (kind == "paths") {
    std::vector<std::vector<int64_t>> paths;
    for (const Json& p : require(spec, "paths"))
      paths.push_back(p.get<std::vector<int64_t>>());
    return PathEvent::explicit_paths(std::move(paths));
  }
  bad_input("unknown event kind '" + kind + "'");
}

LevyTriplet levy_from_json(const Json& j) {
  LevyTriplet t;
  t.dimension = static_cast<int>(int_field(j, "d"));
  t.drift = j.contains("drift") ? j.at("drift").get<std::vector<double>>()
                                : std::vector<double>(t.dimension, 0.0);
  if (j.contains("sigma"))
    t.sigma = j.at("sigma").get<std::vector<std::vector<double>>>();
  else
    t.sigma.assign(t.dimension, std::vector<double>(t.dimension, 0.0));
  if (j.contains("jumps")) {
    for (const Json& e : j.at("jumps")) {
      LevyTriplet::Jump jump;
      jump.atom = require(e, "atom").get<std::vector<double>>();
      jump.rate = require(e, "rate").get<double>();
      t.jumps.push_back(std::move(jump));
    }
  }
  t.validate();
  return t;
}

Json levy_to_json(const LevyTriplet& t) {
  Json jumps = Json::array();
  for (const auto& jump : t.jumps)
    jumps.push_back(Json{{"atom", jump.atom}, {"rate", jump.rate}});
  return Json{{"d", t.dimension},
              {"drift", t.drift},
              {"sigma", t.sigma},
              {"jumps", std::move(jumps)},
              {"note", "finite-activity jump measure (atom list)"}};
}

std::vector<IncreasingFunctional> functionals_from_spec(const Json& spec) {
  if (!spec.is_array()) bad_input("functional family must be a JSON array");
  std::vector<IncreasingFunctional> out;
  for (const Json& f : spec) {
    std::string kind = require(f, "kind").get<std::string>();
    if (kind == "coordinate")
      out.push_back(IncreasingFunctional::coordinate(
          static_cast<size_t>(int_field(f, "index"))));
    else if (kind == "terminal")
      out.push_back(IncreasingFunctional::terminal());
    else if (kind == "running_max")
      out.push_back(IncreasingFunctional::running_max());
    else if (kind == "running_min")
      out.push_back(IncreasingFunctional::running_min());
    else if (kind == "time_average")
      out.push_back(IncreasingFunctional::time_average());
    else if (kind == "terminal_average")
      out.push_back(IncreasingFunctional::terminal_average(
          require(f, "fraction").get<double>()));
    else if (kind == "weighted_sum")
      out.push_back(IncreasingFunctional::weighted_sum(
          require(f, "weights").get<std::vector<double>>()));
    else
      bad_input("unknown functional kind '" + kind + "'");
  }
  return out;
}

Json crossings_to_json(const CrossingsVerdict& v) {
  Json j{{"holds", v.holds}, {"scanned", v.scanned}};
  if (v.witness) {
    j["witness"] = Json{{"u1", v.witness->u1}, {"u2", v.witness->u2},
                        {"v1", v.witness->v1}, {"v2", v.witness->v2},
                        {"lhs", rational_to_json(v.witness->lhs)},
                        {"rhs", rational_to_json(v.witness->rhs)}};
  }
  return j;
}

Json lattice_to_json(const LatticeConditionVerdict& v) {
  Json j{{"holds", v.holds}, {"scanned", v.scanned}};
  if (v.witness) {
    j["witness"] = Json{{"u", v.witness->u},
                        {"v", v.witness->v},
                        {"p_u", rational_to_json(v.witness->p_u)},
                        {"p_v", rational_to_json(v.witness->p_v)},
                        {"p_join", rational_to_json(v.witness->p_join)},
                        {"p_meet", rational_to_json(v.witness->p_meet)}};
  }
  return j;
}

Json logconcave_to_json(const LogConcavityVerdict& v) {
  Json j{{"holds", v.holds}};
  if (v.witness) {
    j["witness"] = Json{{"left", v.witness->left},
                        {"mid", v.witness->mid},
                        {"right", v.witness->right},
                        {"gap", v.witness->gap}};
  }
  return j;
}

Json h1_to_json(const H1Report& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json step{{"k", s.step}, {"support", s.support}};
    step["crossings"] = crossings_to_json(s.verdict);
    steps.push_back(std::move(step));
  }
  return Json{{"holds", r.holds}, {"steps", std::move(steps)}};
}

Json counterexample_to_json(const CounterexamplePaths& c) {
  return Json{{"m", c.m},
              {"k0", c.k0},
              {"u", c.u},
              {"v", c.v},
              {"ratio", rational_to_json(c.ratio)},
              {"ratio_approx", to_double(c.ratio)},
              {"witness", Json{{"u1", c.witness.u1}, {"u2", c.witness.u2},
                               {"v1", c.witness.v1}, {"v2", c.witness.v2},
                               {"lhs", rational_to_json(c.witness.lhs)},
                               {"rhs", rational_to_json(c.witness.rhs)}}}};
}

Json assoc_to_json(const AssocVerdict& v, const AtomicMeasure& m) {
  Json j{{"associated", v.associated},
         {"upsets", v.upset_count},
         {"scanned", v.pairs_scanned}};
  if (v.witness) {
    auto expand = [&](const UpSet& u) {
      Json pts = Json::array();
      for (size_t i = 0; i < m.atoms().size(); ++i)
        if (u.contains(i)) pts.push_back(m.atoms()[i].first);
      return pts;
    };
    j["witness"] = Json{{"upset_a", expand(v.witness->upset_a)},
                        {"upset_b", expand(v.witness->upset_b)},
                        {"cov", rational_to_json(v.witness->covariance)}};
  }
  return j;
}

Json levy_verdict_to_json(const LevyVerdict& v) {
  Json j{{"associated", v.associated}};
  if (v.failed_condition) {
    j["failed_condition"] = *v.failed_condition == LevyFailure::GaussianSign
                                ? "gaussian_sign"
                                : "jump_quadrant";
    if (v.sigma_entry) j["sigma_entry"] = Json::array({v.sigma_entry->first, v.sigma_entry->second});
    if (v.jump_index) j["jump_index"] = *v.jump_index;
  }
  return j;
}

Json covariance_to_json(const CovarianceReport& r) {
  return Json{{"f", r.f_name},
              {"g", r.g_name},
              {"estimate", r.estimate},
              {"stderr", r.stderr_est},
              {"ci_lower", r.ci_lower},
              {"ci_upper", r.ci_upper},
              {"level", r.level},
              {"samples", r.samples},
              {"seed", r.seed},
              {"generator", r.generator}};
}

Json probe_to_json(const ProbeResult& r) {
  Json reports = Json::array();
  for (const auto& rep : r.reports) reports.push_back(covariance_to_json(rep));
  return Json{{"verdict", r.violation_witnessed ? "violation-witnessed" : "consistent"},
              {"corrected_level", r.corrected_level},
              {"reports", std::move(reports)},
              {"spot_check_failures", r.spot_check_failures}};
}

Json make_report(const std::string& command, const Json& config, Json result,
                 std::optional<uint64_t> seed) {
  Json report{{"tool", "fkglab"},
              {"version", FKGLAB_VERSION},
              {"command", command},
              {"config", config},
              {"generator", kGeneratorFamily},
              {"result", std::move(result)}};
  if (seed) report["seed"] = *seed;
  return report;
}

std::string paths_to_csv(const std::vector<std::vector<int64_t>>& paths) {
  std::ostringstream os;
  if (!paths.empty()) {
    for (size_t k = 1; k <= paths[0].size(); ++k) {
      if (k > 1) os << ",";
      os << "x" << k;
    }
    os << "\n";
  }
  for (const auto& path : paths) {
    for (size_t k = 0; k < path.size(); ++k) {
      if (k) os << ",";
      os << path[k];
    }
    os << "\n";
  }
  return os.str();
}

std::string levy_paths_to_csv(
    const std::vector<std::vector<std::vector<double>>>& paths, double horizon) {
  std::ostringstream os;
  if (paths.empty()) return "";
  size_t grid = paths[0].size() - 1;
  size_t d = paths[0][0].size();
  bool first = true;
  for (size_t j = 0; j <= grid; ++j) {
    double t = horizon * static_cast<double>(j) / static_cast<double>(grid);
    for (size_t k = 0; k < d; ++k) {
      if (!first) os << ",";
      first = false;
      os << "x" << (k + 1) << "@t=" << t;
    }
  }
  os << "\n";
  os.precision(17);
  for (const auto& path : paths) {
    bool lead = true;
    for (const auto& value : path) {
      for (double x : value) {
        if (!lead) os << ",";
        lead = false;
        os << x;
      }
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace fkglab
