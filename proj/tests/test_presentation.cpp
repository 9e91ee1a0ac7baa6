#include <doctest.h>

#include <algorithm>

#include "relhyp/errors.hpp"
#include "relhyp/presentation.hpp"
#include "test_helpers.hpp"

using namespace relhyp;
using relhyp::test::load_pres;

TEST_CASE("parse: bundled documents") {
  auto dinf = load_pres("dinf.json");
  CHECK(dinf->num_peripherals() == 2);
  CHECK(dinf->relators.empty());
  CHECK(extract_omega(*dinf).M == 0);

  auto s3 = load_pres("s3.json");
  CHECK(s3->num_peripherals() == 1);
  CHECK(s3->x_generators == std::vector<std::string>{"t"});
  CHECK(extract_omega(*s3).M == 4);
  CHECK(s3->constants);
  CHECK(s3->constants->C == 1);

  // All bundled documents parse and validate.
  for (const char* f : {"z6.json", "d4.json", "s4.json", "z2z3.json"})
    CHECK_NOTHROW(load_pres(f));
}

TEST_CASE("parse: table validation catches a broken group") {
  // 2x2 table where the second row repeats the identity row: no inverse
  // for 'a' and a broken identity column.
  std::string doc = R"({
    "name": "broken", "x": [],
    "peripherals": [{"name": "H1", "kind": "finite-table",
      "elements": ["1", "a"], "identity": "1", "table": [[0, 1], [1, 1]]}],
    "relators": []})";
  CHECK_THROWS_AS(parse_presentation(doc), TableNotAGroup);

  std::string assoc = R"({
    "name": "broken2", "x": [],
    "peripherals": [{"name": "H1", "kind": "finite-table",
      "elements": ["1", "a", "b"], "identity": "1",
      "table": [[0,1,2],[1,0,0],[2,0,0]]}],
    "relators": []})";
  CHECK_THROWS_AS(parse_presentation(assoc), TableNotAGroup);
}

TEST_CASE("parse: name errors") {
  std::string dup = R"({"name": "d", "x": ["t", "t"], "peripherals": [],
                        "relators": []})";
  CHECK_THROWS_AS(parse_presentation(dup), DuplicateName);

  std::string clash = R"({"name": "d", "x": ["H1"],
    "peripherals": [{"name": "H1", "kind": "finite-table",
      "elements": ["1","a"], "identity": "1", "table": [[0,1],[1,0]]}],
    "relators": []})";
  CHECK_THROWS_AS(parse_presentation(clash), DuplicateName);

  std::string badrel = R"({"name": "d", "x": ["t"], "peripherals": [],
                           "relators": ["t q"]})";
  CHECK_THROWS_AS(parse_presentation(badrel), UnknownLetter);
}

TEST_CASE("serialize round trip") {
  for (const char* f : {"s3.json", "dinf.json", "z6.json", "d4.json"}) {
    auto p = load_pres(f);
    RelativePresentation q = parse_presentation(serialize_presentation(*p));
    CHECK(q.name == p->name);
    CHECK(q.x_generators == p->x_generators);
    REQUIRE(q.num_peripherals() == p->num_peripherals());
    for (size_t l = 0; l < q.num_peripherals(); ++l) {
      CHECK(q.peripheral(l).name() == p->peripheral(l).name());
      CHECK(q.peripheral(l).element_names() == p->peripheral(l).element_names());
      CHECK(q.peripheral(l).table() == p->peripheral(l).table());
    }
    CHECK(q.relators == p->relators);
    CHECK(q.constants.has_value() == p->constants.has_value());
    if (q.constants) {
      CHECK(q.constants->C == p->constants->C);
      CHECK(q.constants->delta == p->constants->delta);
    }
  }
}

TEST_CASE("extract_omega") {
  auto dinf = load_pres("dinf.json");
  OmegaReport om = extract_omega(*dinf);
  CHECK(om.omega_size == 0);
  CHECK(om.M == 0);

  auto s3 = load_pres("s3.json");
  om = extract_omega(*s3);
  CHECK(om.M == 4);
  CHECK(om.omega_size == 1);
  REQUIRE(om.per_peripheral.size() == 1);
  CHECK(om.per_peripheral[0].count(
      s3->peripheral(0).element_from_token("r", "test")));

  // Two peripherals, only one touched by the relator.
  std::string doc = R"({"name": "mix", "x": ["x"],
    "peripherals": [
      {"name": "H1", "kind": "finite-table", "elements": ["1","a"],
       "identity": "1", "table": [[0,1],[1,0]]},
      {"name": "H2", "kind": "finite-table", "elements": ["1","b","b2"],
       "identity": "1", "table": [[0,1,2],[1,2,0],[2,0,1]]}],
    "relators": ["x H1:a x^-1 H1:a"]})";
  RelativePresentation p = parse_presentation(doc);
  om = extract_omega(p);
  CHECK(om.M == 4);
  CHECK(om.per_peripheral[0].size() == 1);
  CHECK(om.per_peripheral[1].empty());

  // Invariant under relator reordering.
  auto s4 = load_pres("s4.json");
  OmegaReport before = extract_omega(*s4);
  std::reverse(s4->relators.begin(), s4->relators.end());
  OmegaReport after = extract_omega(*s4);
  CHECK(before.M == after.M);
  CHECK(before.per_peripheral == after.per_peripheral);
}

TEST_CASE("is_reduced_presentation") {
  auto s3 = load_pres("s3.json");
  CHECK(is_reduced_presentation(*s3));  // relators "t t", "t r t r"

  std::string adj = R"({"name": "adj", "x": [],
    "peripherals": [{"name": "H1", "kind": "finite-table",
      "elements": ["1","a"], "identity": "1", "table": [[0,1],[1,0]]}],
    "relators": ["H1:a H1:a"]})";
  CHECK_FALSE(is_reduced_presentation(parse_presentation(adj)));

  // Cyclic adjacency: last and first letter in the same peripheral.
  std::string cyc = R"({"name": "cyc", "x": ["x"],
    "peripherals": [{"name": "H1", "kind": "finite-table",
      "elements": ["1","a"], "identity": "1", "table": [[0,1],[1,0]]}],
    "relators": ["H1:a x H1:a"]})";
  CHECK_FALSE(is_reduced_presentation(parse_presentation(cyc)));
}

TEST_CASE("validate_generality") {
  auto dinf = load_pres("dinf.json");
  auto advice = validate_generality(*dinf);
  // Both peripherals outside Lambda_0, plus the M < 2 branch.
  CHECK(advice.size() == 3);

  auto s3 = load_pres("s3.json");
  CHECK(validate_generality(*s3).empty());

  std::string hyp = R"({"name": "free-z2", "x": ["x"], "peripherals": [],
                        "relators": ["x x"]})";
  auto a = validate_generality(parse_presentation(hyp));
  REQUIRE(a.size() == 1);
  CHECK(a[0].find("hyperbolic") != std::string::npos);
}

TEST_CASE("constants validation") {
  std::string bad = R"({"name": "c", "x": ["t"], "peripherals": [],
    "relators": [], "constants": {"C": 2, "Cprime": 1, "delta": 1}})";
  CHECK_THROWS_AS(parse_presentation(bad), SyntaxError);
  std::string bad2 = R"({"name": "c", "x": ["t"], "peripherals": [],
    "relators": [], "constants": {"C": 1, "delta": 0}})";
  CHECK_THROWS_AS(parse_presentation(bad2), SyntaxError);
}
