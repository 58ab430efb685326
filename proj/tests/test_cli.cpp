#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qfock/cli.hpp"
#include "qfock/dual.hpp"

using namespace qfock;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run verify(const RunConfig& c, const std::string& suite) {
  std::ostringstream out, err;
  int code = run_verify(c, suite, out, err);
  return {code, out.str(), err.str()};
}

Run export_(const RunConfig& c, const std::string& what) {
  std::ostringstream out, err;
  int code = run_export(c, what, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("invalid configurations exit with 2") {
  RunConfig c;
  c.q = "3/2";
  CHECK(verify(c, "all").code == kExitConfig);
  c.q = "-1";
  CHECK(verify(c, "commutator").code == kExitConfig);
  c.q = "not-a-number";
  CHECK(verify(c, "commutator").code == kExitConfig);

  RunConfig sym;
  sym.mode = "symbolic";
  sym.q = "1/2";
  CHECK(verify(sym, "dual-agree").code == kExitConfig);

  RunConfig bad;
  bad.mode = "fuzzy";
  CHECK(verify(bad, "commutator").code == kExitConfig);
  bad = RunConfig{};
  bad.format = "xml";
  CHECK(verify(bad, "commutator").code == kExitConfig);
  bad = RunConfig{};
  bad.d = 0;
  CHECK(verify(bad, "commutator").code == kExitConfig);
  CHECK(verify(RunConfig{}, "nonsense").code == kExitConfig);
  CHECK(export_(RunConfig{}, "nonsense").code == kExitConfig);
  bad = RunConfig{};
  bad.q_matrix = "/nonexistent/q.json";
  CHECK(verify(bad, "commutator").code == kExitConfig);
  CHECK_THROWS_AS(run_suite(RunConfig{}, "nonsense"), ConfigError);
}

TEST_CASE("commutator suite passes and reports every pair") {
  RunConfig c;
  c.d = 2;
  c.q = "1/2";
  c.level = 6;
  auto r = verify(c, "commutator");
  CHECK(r.code == kExitPass);
  auto doc = json::parse(r.out);
  CHECK(doc["pass"] == true);
  CHECK(doc["failed"] == 0);
  CHECK(doc["checks"].size() == 4);
  CHECK(doc["suite"] == "commutator");
}

TEST_CASE("symbolic dual agreement") {
  RunConfig c;
  c.mode = "symbolic";
  c.d = 2;
  c.level = 5;
  CHECK(verify(c, "dual-agree").code == kExitPass);
}

TEST_CASE("failing checks exit with 1 and name a counterexample") {
  RunConfig c;
  c.q = "1/2";
  c.level = 6;
  auto r = verify(c, "bounds");
  CHECK(r.code == kExitFail);
  auto doc = json::parse(r.out);
  CHECK(doc["pass"] == false);
  CHECK(doc["first_failure"].get<std::string>().find("gram-domination") != std::string::npos);
}

TEST_CASE("reports are deterministic and sorted") {
  RunConfig c;
  c.q = "-1/2";
  c.level = 5;
  c.seed = 17;
  auto a = verify(c, "bounds");
  auto b = verify(c, "bounds");
  CHECK(a.out == b.out);
  auto checks = run_suite(c, "wick-agree");
  for (std::size_t k = 1; k < checks.size(); ++k) CHECK(checks[k - 1].id < checks[k].id);
  c.format = "csv";
  auto csv = verify(c, "commutator");
  CHECK(csv.out.rfind("check,pass,value,bound,counterexample", 0) == 0);
}

TEST_CASE("partition export lists the crossing-four partition") {
  RunConfig c;
  c.family = "B";
  c.n = 6;
  auto r = export_(c, "partitions");
  REQUIRE(r.code == kExitPass);
  auto doc = json::parse(r.out);
  bool found = false;
  for (const auto& p : doc) {
    CHECK(p["family"] == "B");
    if (p["blocks"] == json::parse("[[0,3],[1,5],[2,4]]")) {
      found = true;
      CHECK(p["crossings"] == 4);
    }
  }
  CHECK(found);
  CHECK(doc.size() == enumerate(Family::B, 6)->size());
}

TEST_CASE("conjugate variable export in the free case") {
  RunConfig c;
  c.q = "0";
  c.d = 2;
  c.series_m = 3;
  c.level = 7;
  auto r = export_(c, "xi");
  REQUIRE(r.code == kExitPass);
  auto doc = json::parse(r.out);
  REQUIRE(doc.size() == 2);
  for (int i = 1; i <= 2; ++i) {
    const auto& entry = doc[static_cast<std::size_t>(i - 1)];
    CHECK(entry["i"] == i);
    REQUIRE(entry["terms"].size() == 1);
    CHECK(entry["terms"][0]["word"] == json::array({i}));
    CHECK(entry["terms"][0]["coeff"] == "1");
  }
}

TEST_CASE("Fisher export matches the one-variable series") {
  RunConfig c;
  c.q = "1/2";
  c.d = 1;
  c.series_m = 5;
  c.level = 11;
  auto r = export_(c, "fisher");
  REQUIRE(r.code == kExitPass);
  auto doc = json::parse(r.out);
  REQUIRE(doc.size() == 6);
  Scalar partial(0);
  for (int M = 0; M <= 5; ++M) {
    partial += fisher_term_1d(M + 1, Scalar(frac(1, 2)));
    CHECK(doc[static_cast<std::size_t>(M)]["value"] == partial.to_string());
  }
}

TEST_CASE("remaining exports succeed") {
  RunConfig c;
  c.q = "1/2";
  c.d = 1;
  c.level = 8;
  auto h = export_(c, "hermite");
  CHECK(h.code == kExitPass);
  c.d = 2;
  c.level = 5;
  auto g = export_(c, "gibbs");
  CHECK(g.code == kExitPass);
  auto doc = json::parse(g.out);
  CHECK(doc.contains("terms"));
  CHECK(doc.contains("cyclic_residual_by_degree"));
}
