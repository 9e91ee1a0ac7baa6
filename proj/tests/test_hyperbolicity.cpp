#include <doctest.h>

#include "relhyp/errors.hpp"
#include "relhyp/hyperbolicity.hpp"
#include "test_helpers.hpp"

using namespace relhyp;
using relhyp::test::backend_for;
using relhyp::test::load_pres;

TEST_CASE("estimate_delta: the D-infinity relative graph is a line") {
  auto b = freeproduct_backend(load_pres("dinf.json"));
  CHECK(estimate_delta(*b, 0).delta_ball == 0);
  DeltaCertificate c = estimate_delta(*b, 4);
  CHECK(c.delta_ball == 0);
  CHECK(c.radius == 4);
  CHECK(c.triangle_count > 0);
}

TEST_CASE("estimate_delta: Z2 * Z3 within radius 3") {
  auto b = freeproduct_backend(load_pres("z2z3.json"));
  DeltaCertificate c = estimate_delta(*b, 3);
  CHECK(c.delta_ball <= 1);
}

TEST_CASE("estimate_delta: monotone in the radius") {
  for (const char* f : {"s3.json", "z6.json", "d4.json"}) {
    auto b = backend_for(f);
    size_t last = 0;
    for (size_t r = 0; r <= 3; ++r) {
      DeltaCertificate c = estimate_delta(*b, r);
      CHECK(c.delta_ball >= last);
      CHECK(c.delta_ball <= r);
      last = c.delta_ball;
    }
  }
}

TEST_CASE("conjugate_into_ball on S3") {
  auto b = backend_for("s3.json");
  auto subs = b->list_subgroups();

  for (const auto& sub : subs) {
    Elem g = conjugate_into_ball(sub, *b, 1);
    SubgroupHandle conj = conjugate_subgroup(sub, g);
    for (Elem e : conj.elements)
      CHECK(b->relative_length(e).value <= 5);
    if (sub.order() == 1) CHECK(g == b->identity());
  }
}

TEST_CASE("conjugate_into_ball: impossible target reports exhaustion") {
  // With delta treated as 0 the target ball has radius 1; S4 itself cannot
  // be conjugated into it.
  auto b = backend_for("s4.json");
  const SubgroupHandle* whole = nullptr;
  for (const auto& sub : b->list_subgroups())
    if (sub.order() == 24) whole = &sub;
  REQUIRE(whole);
  try {
    conjugate_into_ball(*whole, *b, 0);
    FAIL("expected NotFound");
  } catch (const NotFound& e) {
    CHECK(e.search_exhausted);
  }
}
