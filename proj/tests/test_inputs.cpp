#include "doctest.h"

#include <algorithm>

#include "sixff/inputs.hpp"
#include "sixff/suites.hpp"

using namespace sixff;

TEST_CASE("groups from permutation generators and tables") {
  auto s = parse_inputs(R"j({"groups": [{"name": "D4", "degree": 4, "generators": ["(1 2 3 4)", "(1 3)"]},
                                       {"name": "C2", "table": [[0, 1], [1, 0]]}]})j",
                        "inline");
  REQUIRE(s.groups.size() == 2);
  CHECK(s.groups[0].order() == 8);
  CHECK(s.groups[0].label == "D4");
  CHECK(s.groups[1].order() == 2);
  CHECK(find_group("D4", s).order() == 8);
  CHECK(find_group("S3", s).order() == 6);
  CHECK_THROWS_AS(find_group("nope", s), std::invalid_argument);
}

TEST_CASE("group table axioms are enforced") {
  CHECK_THROWS_AS(parse_inputs(R"j({"groups": [{"name": "bad", "table": [[0, 1], [0, 1]]}]})j", "inline"), InputError);
}

TEST_CASE("categories from composition tables") {
  auto s = parse_inputs(R"j({"categories": [{"name": "idem", "objects": ["x"],
                                            "morphisms": [{"name": "e", "src": "x", "tgt": "x"}],
                                            "compose": [["e", "e", "e"]]}]})j",
                        "inline");
  REQUIRE(s.categories.size() == 1);
  CHECK(s.categories[0]->num_morphisms() == 2);
  CHECK_FALSE(s.categories[0]->is_groupoid());
}

TEST_CASE("malformed composition table names the triple") {
  std::string text = R"j({"categories": [{"name": "broken", "objects": ["x"],
      "morphisms": [{"name": "a", "src": "x", "tgt": "x"}, {"name": "b", "src": "x", "tgt": "x"}],
      "compose": [["a", "a", "b"], ["a", "b", "a"], ["b", "a", "b"], ["b", "b", "b"]]}]})j";
  try {
    parse_inputs(text, "file.json");
    FAIL("expected an error");
  } catch (const InputError& e) {
    std::string msg = e.what();
    CHECK(msg.find("file.json: categories[0] 'broken'") != std::string::npos);
    CHECK(msg.find("associativity (a, a, a)") != std::string::npos);
  }
}

TEST_CASE("missing composites and unknown names are reported") {
  CHECK_THROWS_WITH_AS(parse_inputs(R"j({"categories": [{"name": "c", "objects": ["x"],
      "morphisms": [{"name": "a", "src": "x", "tgt": "x"}]}]})j", "f"),
                       doctest::Contains("compose_missing"), InputError);
  CHECK_THROWS_WITH_AS(parse_inputs(R"j({"categories": [{"name": "c", "objects": ["x"],
      "morphisms": [{"name": "a", "src": "x", "tgt": "y"}]}]})j", "f"),
                       doctest::Contains("unknown object 'y'"), InputError);
  CHECK_THROWS_WITH_AS(parse_inputs("{ not json", "f"), doctest::Contains("parse error"), InputError);
}

TEST_CASE("suite orchestration") {
  SuiteConfig cfg;
  CHECK(run_suites(cfg).empty());
  cfg.suites = {"corr", "groupoid"};
  auto r = run_suites(cfg);
  REQUIRE(r.size() == 4);
  CHECK(std::is_sorted(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.id < b.id; }));
  for (const auto& c : r) CHECK(c.pass);
  cfg.suites = {"nope"};
  CHECK_THROWS_AS(run_suites(cfg), std::invalid_argument);
}

TEST_CASE("gated checks are skipped, not failed") {
  auto r = check_hecke_s3(Field::prime(3));
  CHECK(r.skipped);
  CHECK(r.counterexample.empty());
}
