#include "doctest.h"

#include "pcc/catalog.hpp"
#include "pcc/jobs.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>

using namespace pcc;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  auto path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream(path) << body;
  return path;
}

JobSpec base(const std::string& task, const std::string& kind = "") {
  JobSpec s;
  s.task = task;
  s.kind = kind;
  return s;
}

long long value_of(const JobReport& r, const std::string& key) {
  for (const auto& e : r.entries)
    if (e.key == key && e.value) return *e.value;
  FAIL("missing value entry: ", key);
  return -1;
}

}  // namespace

TEST_CASE("catalog names and dimensions") {
  auto names = catalog_names();
  for (auto n : {"f2", "d2", "z3", "a2", "a3", "t2"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK(catalog_algebra("f2")->dim == 1);
  CHECK(catalog_algebra("d2")->dim == 2);
  CHECK(catalog_algebra("z3")->dim == 3);
  CHECK(catalog_algebra("a2")->dim == 3);
  CHECK(catalog_algebra("a3")->dim == 6);
  CHECK(catalog_algebra("t2")->dim == 3);
  CHECK_THROWS_AS((void)catalog_algebra("nope"), std::invalid_argument);
  auto r = run_job(base("algebra-list"));
  CHECK(r.ok());
  CHECK(value_of(r, "d2 dim") == 2);
}

TEST_CASE("module lookup by name") {
  auto A = catalog_algebra("a2");
  CHECK(catalog_module(A, "k")->dim == 1);
  CHECK(catalog_module(A, "simple1")->dim == 1);
  CHECK(catalog_module(A, "proj0")->dim == 2);
  CHECK(catalog_module(A, "regular")->dim == 3);
  CHECK(catalog_module(A, "zero")->dim == 0);
  CHECK_THROWS_AS((void)catalog_module(A, "simple7"), std::invalid_argument);
  CHECK_THROWS_AS((void)catalog_module(A, "whatever"), std::invalid_argument);
}

TEST_CASE("algebra definitions from JSON files") {
  // explicit multiplication table: the 2-dimensional algebra k[x]/(x^2)
  auto dual = write_temp("cli_dual.json", R"({
    "name": "dual-numbers", "p": 2,
    "basis": ["1", "x"],
    "products": [[[1,0],[0,1]],[[0,1],[0,0]]],
    "unit": [1, 0]
  })");
  auto A = load_algebra_json(dual);
  CHECK(A->dim == 2);
  auto r = run_job([&] {
    auto s = base("algebra-define");
    s.file = dual;
    return s;
  }());
  CHECK(r.ok());
  CHECK(value_of(r, "dim") == 2);
  // the registered name is usable afterwards
  CHECK(resolve_algebra("dual-numbers")->dim == 2);

  // broken associativity is reported with the offending basis triple
  // x*x = y but x*y = 0 while y*x = x, so (xx)x != x(xx) at triple (1,1,1)
  auto bad = write_temp("cli_bad.json", R"({
    "name": "broken", "p": 2,
    "basis": ["1", "x", "y"],
    "products": [[[1,0,0],[0,1,0],[0,0,1]],
                 [[0,1,0],[0,0,1],[0,0,0]],
                 [[0,0,1],[0,1,0],[0,0,0]]],
    "unit": [1, 0, 0]
  })");
  CHECK_THROWS_WITH_AS((void)load_algebra_json(bad),
                       doctest::Contains("basis triple"), std::invalid_argument);

  // quiver input: the line with three vertices has dimension 6
  auto a3 = write_temp("cli_a3.json", R"({
    "name": "line3", "p": 2,
    "quiver": { "vertices": 3, "arrows": [[0,1],[1,2]] }
  })");
  CHECK(load_algebra_json(a3)->dim == 6);
  // shorthand rules
  auto z4 = write_temp("cli_z4.json", R"({ "p": 2, "truncated": 4 })");
  CHECK(load_algebra_json(z4)->dim == 4);
  CHECK_THROWS((void)load_algebra_json(write_temp("cli_garbage.json", "{ not json")));
  CHECK_THROWS((void)load_algebra_json("/nonexistent/path.json"));
}

TEST_CASE("hom jobs match the library spaces") {
  auto s = base("hom", "db");
  s.algebra = "d2";
  s.shift = 2;
  auto r = run_job(s);
  CHECK(r.ok());
  CHECK(value_of(r, "dim") == 1);

  s.kind = "stable";
  s.shift = 0;
  CHECK(value_of(run_job(s), "dim") == 1);

  s.kind = "module";
  s.src = "regular";
  s.tgt = "regular";
  CHECK(value_of(run_job(s), "dim") == 2);

  s.kind = "completion";
  s.src = "k";
  s.tgt = "k";
  s.shift = 1;
  CHECK(value_of(run_job(s), "dim") == 1);

  s.kind = "sg";
  s.shift = -2;
  auto rs = run_job(s);
  CHECK(value_of(rs, "dim") == 1);

  s.kind = "bogus";
  CHECK_THROWS_AS((void)run_job(s), std::invalid_argument);
}

TEST_CASE("resolution and stabilization jobs") {
  auto s = base("resolve");
  s.algebra = "d2";
  s.horizon = 3;
  auto r = run_job(s);
  CHECK(value_of(r, "term dim at degree 0") == 2);
  CHECK(value_of(r, "term dim at degree -3") == 2);

  auto c = base("cauchy-check");
  c.algebra = "a2";
  auto rc = run_job(c);
  CHECK(rc.ok());
}

TEST_CASE("sequence classification jobs") {
  auto s = base("pgroup-classify", "canonical-pruefer");
  s.algebra = "f3";
  auto r = run_job(s);
  CHECK(r.ok());
  CHECK(value_of(r, "divisible factors") == 1);
  s.kind = "constant";
  CHECK(run_job(s).ok());
  s.kind = "socle-ramp";
  CHECK(run_job(s).ok());
  s.kind = "bogus";
  CHECK_THROWS_AS((void)run_job(s), std::invalid_argument);
}

TEST_CASE("verification suites run end to end on small samples") {
  auto s = base("verify", "main-theorem");
  s.algebra = "f2";
  s.sample = 3;
  s.window_lo = -2;
  s.window_hi = 2;
  CHECK(run_job(s).ok());
  s.kind = "phantomless";
  s.algebra = "d2";
  s.sample = 5;
  s.window_lo = -1;
  s.window_hi = 1;
  CHECK(run_job(s).ok());
  s.kind = "pgroup";
  CHECK(run_job(s).ok());
  s.kind = "singularity";
  CHECK(run_job(s).ok());
  s.kind = "pseudo-coherence";
  CHECK(run_job(s).ok());
  s.kind = "bogus";
  CHECK_THROWS_AS((void)run_job(s), std::invalid_argument);
}

TEST_CASE("text and structured outputs carry the same numbers") {
  auto s = base("hom", "db");
  s.algebra = "d2";
  s.shift = 3;
  auto r = run_job(s);
  auto text = r.to_text();
  auto j = nlohmann::json::parse(r.to_structured());
  CHECK(j["task"] == r.task);
  CHECK(j["ok"] == r.ok());
  size_t values = 0;
  for (const auto& e : j["entries"]) {
    if (!e.contains("value")) continue;
    ++values;
    std::string line =
        e["key"].get<std::string>() + " = " + std::to_string(e["value"].get<long long>());
    CHECK(text.find(line) != std::string::npos);
  }
  CHECK(values >= 2);
}

TEST_CASE("failed verdicts are visible in both renderings") {
  JobReport r;
  r.task = "demo";
  r.value("answer", 41);
  r.check(false, "prophecy");
  CHECK(!r.ok());
  CHECK(r.to_text().find("FAIL: prophecy") != std::string::npos);
  auto j = nlohmann::json::parse(r.to_structured());
  CHECK(j["ok"] == false);
}
