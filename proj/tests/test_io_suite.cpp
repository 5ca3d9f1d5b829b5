#include "test_util.hpp"

#include <set>

#include "adhmkit/property_suite.hpp"

namespace adhmkit {
namespace {

using namespace adhmkit::testing;

/// to_json -> text -> parse -> from_json -> to_json must be the identical value.
template <typename T, typename Parse>
void expect_round_trip(const T& value, Parse parse) {
  const json first = to_json(value);
  const json reparsed = json::parse(first.dump());
  EXPECT_EQ(reparsed, first);
  EXPECT_EQ(to_json(parse(reparsed)), first);
}

TEST(JsonRoundTrip, AllKinds) {
  Rng rng(41);
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + k % 4, c = 1 + k % 5;
    const GeneratedHirz g = generate_hirz(rng, n, c, 1e4);
    expect_round_trip(g.plane, [](const json& j) { return plane_from_json(j); });
    expect_round_trip(g.data, [](const json& j) { return hirz_from_json(j); });
    expect_round_trip(to_chart(g.data, g.chart), [](const json& j) { return chart_from_json(j); });
    expect_round_trip(pencil_form(g.data.A1, g.data.A2), [](const json& j) { return binary_form_from_json(j); });
  }
  expect_round_trip(TotPoint{3, 1.0 / 3.0, 2.0, 0.1 + 0.2i, -7.0}, [](const json& j) { return tot_from_json(j); });
  expect_round_trip(YTildePoint{2, 1.0, 2.0, 2.0, 1.0}, [](const json& j) { return ytilde_from_json(j); });
}

TEST(JsonRoundTrip, OutputsReparse) {
  const HirzADHM d = gen_hirz_valid(GenConfig{2, 2, 3});
  for (const json& j : {to_json(validate(d)), to_json(validate_p2(d)), to_json(base_support(d)), to_json(sigma_matrix(3, 2, 4)),
                        to_json(chart_support(d, validate_p2(d).charts.front()))}) {
    EXPECT_EQ(json::parse(j.dump()), j);
  }
}

TEST(JsonParse, AcceptsBareRealsAndFlatCovectors) {
  const json j = json::parse(R"({"kind":"plane_adhm","c":2,"b1":[[1,0],[0,2]],"b2":[[3,0],[0,4]],"e":[1,[0,1]]})");
  const PlaneADHM d = plane_from_json(j);
  EXPECT_CNEAR(d.b1(1, 1), 2.0, 0);
  EXPECT_CNEAR(d.e(1), 1i, 0);
}

TEST(JsonParse, Errors) {
  auto path_of = [](const char* text, auto parse) -> std::string {
    try {
      parse(json::parse(text));
    } catch (const ParseError& ex) {
      return ex.path();
    }
    return "<no error>";
  };
  auto hirz = [](const json& j) { return hirz_from_json(j); };
  auto plane = [](const json& j) { return plane_from_json(j); };
  EXPECT_EQ(path_of(R"({"kind":"hirz_adhm","n":2,"c":1,"A1":[[1]],"A2":[[1]],"C":[[[0]]],"e":[[1]]})", hirz), "/C");
  EXPECT_EQ(path_of(R"({"kind":"plane_adhm","c":2,"b1":[[1,0],[0]],"b2":[[3,0],[0,4]],"e":[1,0]})", plane), "/b1/1");
  EXPECT_EQ(path_of(R"({"kind":"plane_adhm","c":1,"b2":[[3]],"e":[1]})", plane), "/b1");
  EXPECT_EQ(path_of(R"({"kind":"hirz_adhm","c":1,"b1":[[1]],"b2":[[3]],"e":[1]})", plane), "/kind");
  EXPECT_EQ(path_of(R"({"kind":"plane_adhm","c":0,"b1":[[1]],"b2":[[3]],"e":[1]})", plane), "/c");
  EXPECT_EQ(path_of(R"({"kind":"plane_adhm","c":1,"b1":[["x"]],"b2":[[3]],"e":[1]})", plane), "/b1/0/0");
  EXPECT_EQ(path_of(R"([1, 2])", plane), "");
}

// ---------------------------------------------------------------------------

TEST(Registry, NamesUniqueAndModulesCovered) {
  std::set<std::string> names, modules;
  for (const auto& p : property_registry()) {
    EXPECT_TRUE(names.insert(p.name).second) << p.name;
    modules.insert(p.module);
    EXPECT_EQ(find_property(p.name), &p);
  }
  for (const char* m : {"matrix-kernel", "angles-sigma", "plane-adhm", "hirz-adhm", "geometry-bridge"}) {
    EXPECT_TRUE(modules.count(m)) << m;
  }
  EXPECT_EQ(find_property("no.such.property"), nullptr);
}

TEST(Suite, EmptyRangesAreVacuous) {
  SuiteConfig cfg;
  cfg.samples = 0;
  const SuiteReport r = run_suite(cfg);
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(r.warnings.empty());

  cfg.samples = 5;
  cfg.filter = "no-property-has-this-name";
  EXPECT_FALSE(run_suite(cfg).warnings.empty());
}

TEST(Suite, Deterministic) {
  SuiteConfig cfg;
  cfg.samples = 6;
  cfg.filter = "hirz.";
  const json a = to_json(run_suite(cfg), cfg), b = to_json(run_suite(cfg), cfg);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.at("passed").get<bool>());
}

TEST(Suite, ReferencePasses) {
  SuiteConfig cfg;
  cfg.samples = 20;
  const SuiteReport r = run_suite(cfg);
  for (const auto& p : r.properties) EXPECT_EQ(p.failed, 0) << p.name << ": " << (p.failures.empty() ? "" : p.failures[0].dump());
}

class Mutant : public ::testing::TestWithParam<std::pair<const char*, const char*>> {};

TEST_P(Mutant, IsCaughtAndReplays) {
  const auto [mutant, property] = GetParam();
  SuiteConfig cfg;
  cfg.samples = 30;
  cfg.ops = mutant_ops(mutant);
  const SuiteReport r = run_suite(cfg);
  EXPECT_FALSE(r.passed());
  const PropertyReport* p = r.find(property);
  ASSERT_NE(p, nullptr);
  ASSERT_GT(p->failed, 0);

  // a dump replays to the same failure, and passes under the reference ops
  const json dump = json::parse(p->failures.front().dump());
  EXPECT_EQ(replay(dump, SuiteConfig{}).status, CaseOutcome::Status::fail);
  json reference = dump;
  reference["ops"] = "reference";
  EXPECT_NE(replay(reference, SuiteConfig{}).status, CaseOutcome::Status::fail);
}

INSTANTIATE_TEST_SUITE_P(Ops, Mutant,
                         ::testing::Values(std::make_pair("flip_b2_exponent", "hirz.glueing_triangle"),
                                           std::make_pair("drop_p1_right_family", "hirz.left_family_alone_insufficient")));

TEST(Suite, UnknownMutantRejected) { EXPECT_THROW(mutant_ops("nonsense"), DomainError); }

TEST(Suite, P3InvalidCorpus) {
  const auto corpus = p3_invalid_corpus();
  ASSERT_EQ(corpus.size(), 20u);
  for (const auto& d : corpus) {
    EXPECT_TRUE(validate_p1(d).passed());
    EXPECT_EQ(validate_p2(d).verdict, Verdict::pass);
    EXPECT_EQ(validate_p3(d).overall(), Verdict::fail);
    EXPECT_NE(validate_p3_direct(d).overall(), Verdict::pass);
  }
}

}  // namespace
}  // namespace adhmkit
