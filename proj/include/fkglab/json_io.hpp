#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fkglab/assoc.hpp"
#include "fkglab/fkg.hpp"
#include "fkglab/markov.hpp"
#include "fkglab/measure.hpp"
#include "fkglab/process.hpp"

namespace fkglab {

using Json = nlohmann::json;

// Exact rationals travel as decimal-string numerator/denominator.
Json rational_to_json(const Rational& q);
// Accepts {"num","den"}, a string ("1/3", "0.25", "2"), or a JSON integer.
Rational rational_from_json(const Json& j);

Json measure_to_json(const AtomicMeasure& m);
AtomicMeasure measure_from_json(const Json& j);

Json law_to_json(const IncrementLaw& law);
Json kernel_to_json(const TransitionKernel& kernel);

// One CSV row per functional pair: estimate, stderr and CI bounds.
std::string covariance_reports_to_csv(const std::vector<CovarianceReport>& reports);

// Builders from config specs (named families or explicit atoms).
IncrementLaw law_from_spec(const Json& spec, int default_digits = kDefaultSigDigits);
TransitionKernel kernel_from_spec(const Json& spec,
                                  int default_digits = kDefaultSigDigits);
ChainSpec chain_from_spec(const Json& spec, int default_digits = kDefaultSigDigits);
PathEvent event_from_spec(const Json& spec);
LevyTriplet levy_from_json(const Json& j);
Json levy_to_json(const LevyTriplet& t);
std::vector<IncreasingFunctional> functionals_from_spec(const Json& spec);

Json crossings_to_json(const CrossingsVerdict& v);
Json lattice_to_json(const LatticeConditionVerdict& v);
Json logconcave_to_json(const LogConcavityVerdict& v);
Json h1_to_json(const H1Report& r);
Json counterexample_to_json(const CounterexamplePaths& c);
// The witness masks are expanded against the measure's atom order.
Json assoc_to_json(const AssocVerdict& v, const AtomicMeasure& m);
Json levy_verdict_to_json(const LevyVerdict& v);
Json covariance_to_json(const CovarianceReport& r);
Json probe_to_json(const ProbeResult& r);

// Report envelope: tool version, command, seed and config echo make every
// report reproducible bit-exactly.
Json make_report(const std::string& command, const Json& config, Json result,
                 std::optional<uint64_t> seed = std::nullopt);

// CSV export: one row per trajectory, columns k=1..n.
std::string paths_to_csv(const std::vector<std::vector<int64_t>>& paths);
// CSV export with a time-grid header; d-dimensional values are flattened as
// x1@t,...,xd@t per grid point.
std::string levy_paths_to_csv(
    const std::vector<std::vector<std::vector<double>>>& paths, double horizon);

}  // namespace fkglab
