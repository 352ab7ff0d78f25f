#include <doctest.h>

#include "fkglab/json_io.hpp"

using namespace fkglab;

TEST_CASE("rational JSON forms") {
  CHECK(rational_from_json(Json{{"num", "1"}, {"den", "3"}}) == make_rational(1, 3));
  CHECK(rational_from_json(Json("2/6")) == make_rational(1, 3));
  CHECK(rational_from_json(Json("0.5")) == make_rational(1, 2));
  CHECK(rational_from_json(Json(7)) == Rational(7));
  CHECK_THROWS_AS(rational_from_json(Json(Json::array())), std::invalid_argument);

  Rational q = make_rational(-22, 7);
  CHECK(rational_from_json(rational_to_json(q)) == q);
}

TEST_CASE("measure round trip uses the documented schema") {
  AtomicMeasure m(2, {{{0, 1}, make_rational(1, 3)}, {{2, -1}, make_rational(2, 3)}});
  Json j = measure_to_json(m);
  CHECK(j.at("dimension") == 2);
  CHECK(j.at("atoms").size() == 2);
  CHECK(j.at("atoms").at(0).contains("point"));
  CHECK(j.at("atoms").at(0).contains("num"));
  CHECK(j.at("atoms").at(0).contains("den"));
  AtomicMeasure back = measure_from_json(j);
  REQUIRE(back.support_size() == m.support_size());
  for (size_t i = 0; i < m.atoms().size(); ++i) {
    CHECK(back.atoms()[i].first == m.atoms()[i].first);
    CHECK(back.atoms()[i].second == m.atoms()[i].second);
  }
}

TEST_CASE("law specs: named families and explicit atoms") {
  IncrementLaw lazy = law_from_spec(Json{{"family", "lazy_srw"}, {"gamma", "1/3"}});
  CHECK(lazy.prob(0) == make_rational(1, 3));

  IncrementLaw lap = law_from_spec(
      Json{{"family", "discrete_laplace"}, {"ratio", "1/2"}, {"truncation", 1}});
  CHECK(lap.prob(1) == make_rational(1, 4));

  IncrementLaw pow = law_from_spec(
      Json{{"family", "power_law"}, {"alpha", "2"}, {"truncation", 2}});
  CHECK(pow.prob(0) == pow.prob(2) * 9);

  IncrementLaw expl = law_from_spec(Json::parse(R"({"atoms":[
      {"point":[-1],"num":"1","den":"2"},
      {"point":[2],"num":"1","den":"2"}]})"));
  CHECK(expl.span_gcd() == 3);

  CHECK_THROWS_AS(law_from_spec(Json{{"family", "unknown"}}), std::invalid_argument);
  CHECK_THROWS_AS(law_from_spec(Json::object()), std::invalid_argument);
}

TEST_CASE("kernel and chain specs") {
  Json spec = Json::parse(R"({
    "kernel": {"increments": {"family":"lazy_srw","gamma":"0"},
               "window": {"lo": -4, "hi": 4}},
    "start": 0, "steps": 2})");
  ChainSpec chain = chain_from_spec(spec);
  CHECK(chain.kernel.lo() == -4);
  CHECK(*chain.kernel.prob(0, 1) == make_rational(1, 2));

  TransitionKernel bessel = kernel_from_spec(
      Json{{"family", "bessel"}, {"nu", "0"}, {"max", 8}});
  CHECK(*bessel.prob(1, 2) == make_rational(3, 4));

  TransitionKernel explicit_kernel = kernel_from_spec(Json::parse(R"({
    "window": {"lo": 0, "hi": 1},
    "rows": [
      {"from": 0, "to": [{"state": 1, "num": "1", "den": "1"}]},
      {"from": 1, "to": [{"state": 0, "num": "1", "den": "2"},
                          {"state": 1, "num": "1", "den": "2"}]}
    ]})"));
  CHECK(*explicit_kernel.prob(1, 0) == make_rational(1, 2));

  CHECK_THROWS_AS(kernel_from_spec(Json::parse(R"({
    "window": {"lo": 0, "hi": 1},
    "rows": [{"from": 0, "to": [{"state": 1, "num": "1", "den": "1"}]}]})")),
                  std::invalid_argument);
}

TEST_CASE("event specs") {
  PathEvent bridge = event_from_spec(Json{{"kind", "bridge"}, {"endpoint", 0}});
  CHECK(bridge.kind == PathEvent::Kind::Bridge);

  PathEvent interval = event_from_spec(Json::parse(R"({
    "kind": "interval",
    "lower": {"times": [0.0, 0.5], "values": [0.0, 2.0]},
    "upper": "inf"})"));
  CHECK(interval.kind == PathEvent::Kind::Interval);
  CHECK(interval.lower.at(0.25) == 0.0);
  CHECK(interval.lower.at(0.75) == 2.0);
  CHECK(interval.upper.at(0.3) == std::numeric_limits<double>::infinity());

  PathEvent paths = event_from_spec(Json::parse(R"({"kind":"paths",
    "paths": [[0,1],[1,0]]})"));
  CHECK(paths.kind == PathEvent::Kind::ExplicitPaths);

  CHECK_THROWS_AS(event_from_spec(Json{{"kind", "nope"}}), std::invalid_argument);
}

TEST_CASE("levy triplet JSON matches the documented schema") {
  Json j = Json::parse(R"({
    "d": 2,
    "drift": [0.0, 0.0],
    "sigma": [[1.0, 0.0], [0.0, 1.0]],
    "jumps": [{"atom": [1.0, -1.0], "rate": 1.0}]})");
  LevyTriplet t = levy_from_json(j);
  CHECK(t.dimension == 2);
  CHECK(t.jumps.size() == 1);
  Json back = levy_to_json(t);
  CHECK(back.at("sigma") == j.at("sigma"));

  Json bad = j;
  bad["sigma"] = Json::parse("[[1.0, 3.0], [3.0, 1.0]]");
  CHECK_THROWS_AS(levy_from_json(bad), std::invalid_argument);
}

TEST_CASE("functional family specs") {
  auto family = functionals_from_spec(Json::parse(R"([
    {"kind": "coordinate", "index": 3},
    {"kind": "running_max"},
    {"kind": "terminal_average", "fraction": 0.25},
    {"kind": "weighted_sum", "weights": [0.0, 1.0, 2.0]}])"));
  REQUIRE(family.size() == 4);
  std::vector<double> path{1.0, -2.0, 5.0};
  CHECK(family[1].eval(path) == 5.0);
  CHECK(family[3].eval(path) == 8.0);
  CHECK_THROWS_AS(functionals_from_spec(Json::parse(R"([{"kind":"woo"}])")),
                  std::invalid_argument);
}

TEST_CASE("verdict serialization carries exact witnesses") {
  TransitionKernel kernel =
      kernel_from_increments(lazy_srw(make_rational(1, 5)), -5, 5);
  Json j = crossings_to_json(has_unfavorable_crossings_residue(kernel, 1, 0));
  CHECK(j.at("holds") == false);
  CHECK(j.at("witness").contains("lhs"));
  Rational lhs = rational_from_json(j.at("witness").at("lhs"));
  Rational rhs = rational_from_json(j.at("witness").at("rhs"));
  CHECK(lhs > rhs);
}

TEST_CASE("reports are self-contained and reproducible") {
  Json config{{"family", "lazy_srw"}, {"gamma", "1/3"}};
  Json report = make_report("check-logconcave", config,
                            logconcave_to_json(is_log_concave(law_from_spec(config))),
                            uint64_t{7});
  CHECK(report.at("tool") == "fkglab");
  CHECK(report.at("config") == config);
  CHECK(report.at("seed") == 7);
  Json again = make_report("check-logconcave", config,
                           logconcave_to_json(is_log_concave(law_from_spec(config))),
                           uint64_t{7});
  CHECK(report.dump() == again.dump());
}

TEST_CASE("kernel JSON round trip") {
  TransitionKernel kernel =
      kernel_from_increments(lazy_srw(make_rational(1, 3)), -2, 2);
  Json j = kernel_to_json(kernel);
  TransitionKernel back = kernel_from_spec(Json{{"rows", j.at("rows")},
                                                {"window", j.at("window")}});
  CHECK(back.lo() == kernel.lo());
  CHECK(back.hi() == kernel.hi());
  for (int64_t x = kernel.lo(); x <= kernel.hi(); ++x) {
    REQUIRE(back.row(x).size() == kernel.row(x).size());
    for (size_t i = 0; i < kernel.row(x).size(); ++i) {
      CHECK(back.row(x)[i].first == kernel.row(x)[i].first);
      CHECK(back.row(x)[i].second == kernel.row(x)[i].second);
    }
  }
  // Bessel kernels round-trip through the same schema.
  Json bessel = kernel_to_json(bessel_kernel(Rational(0), 6));
  TransitionKernel bback = kernel_from_spec(bessel);
  CHECK(*bback.prob(1, 2) == make_rational(3, 4));
}

TEST_CASE("covariance report CSV") {
  CovarianceReport r;
  r.f_name = "terminal";
  r.g_name = "running_max";
  r.estimate = 0.5;
  r.samples = 100;
  std::string csv = covariance_reports_to_csv({r});
  CHECK(csv.find("f,g,estimate") == 0);
  CHECK(csv.find("terminal,running_max,0.5") != std::string::npos);
}

TEST_CASE("CSV exports") {
  std::string csv = paths_to_csv({{1, 0}, {-1, 0}});
  CHECK(csv == "x1,x2\n1,0\n-1,0\n");

  std::vector<std::vector<std::vector<double>>> levy{
      {{0.0, 0.0}, {1.0, -1.0}}};
  std::string header = levy_paths_to_csv(levy, 1.0);
  CHECK(header.find("x1@t=0") != std::string::npos);
  CHECK(header.find("x2@t=1") != std::string::npos);
}
