#include <doctest.h>

#include <set>

#include "relhyp/backend.hpp"
#include "relhyp/errors.hpp"
#include "relhyp/verify_suites.hpp"
#include "test_helpers.hpp"

using namespace relhyp;
using relhyp::test::backend_for;
using relhyp::test::data_path;
using relhyp::test::load_pres;
using relhyp::test::wparse;

TEST_CASE("free product backend: D-infinity normal forms") {
  auto p = load_pres("dinf.json");
  auto b = freeproduct_backend(p);

  Elem aba = b->evaluate(wparse("H1:a H2:b H1:a", *p));
  CHECK(b->relative_length(aba).value == 3);
  CHECK(b->relative_length(aba).exact);
  CHECK(b->geodesic_word(aba) == wparse("H1:a H2:b H1:a", *p));

  CHECK(b->evaluate(wparse("H1:a H1:a", *p)) == b->identity());
  CHECK_FALSE(b->is_trivial(wparse("H1:a H2:b", *p)));
  CHECK(b->relative_length(b->evaluate(wparse("H1:a H2:b", *p))).value == 2);
}

TEST_CASE("free product backend requires empty relator set") {
  auto s3 = load_pres("s3.json");
  CHECK_THROWS_AS(freeproduct_backend(s3), RelatorsPresent);
}

TEST_CASE("free product: reduce agrees with evaluation, length <= reduced") {
  auto p = load_pres("dinf.json");
  auto b = freeproduct_backend(p);
  for (const Word& w : enumerate_words(5, *b)) {
    Word r = reduce(w, *p);
    CHECK(b->evaluate(w) == b->evaluate(r));
    // On a free product the reduced word is the geodesic normal form.
    CHECK(b->relative_length(b->evaluate(w)).value == r.length());
  }
}

TEST_CASE("free product: membership matches single-syllable normal forms") {
  auto p = load_pres("z2z3.json");
  auto b = freeproduct_backend(p);
  for (const Word& w : enumerate_words(4, *b)) {
    Elem g = b->evaluate(w);
    Word nf = b->geodesic_word(g);
    for (uint32_t lam = 0; lam < 2; ++lam) {
      bool expect =
          nf.empty() || (nf.length() == 1 && nf[0].is_h() && nf[0].lambda() == lam);
      CHECK(b->membership(g, lam) == expect);
    }
  }
}

TEST_CASE("finite backend: S3 model verified and exact") {
  auto b = backend_for("s3.json");
  auto p = load_pres("s3.json");

  // rt has relative length 2 (one X-letter, one peripheral letter).
  Elem rt = b->evaluate(wparse("H1:r t", *p));
  CHECK(b->relative_length(rt).value == 2);

  CHECK(b->is_trivial(wparse("t t", *p)));
  CHECK(b->is_trivial(wparse("t H1:r t H1:r", *p)));
  CHECK(b->list_elements());
  CHECK(b->list_elements()->size() == 6);
  CHECK(b->list_subgroups().size() == 6);
}

TEST_CASE("finite backend: model validation errors") {
  auto s3 = load_pres("s3.json");
  // Relator tt fails if t maps to r.
  std::string bad_rel = R"({"elements": ["1","r","r2","t","tr","tr2"],
    "identity": "1",
    "table": [[0,1,2,3,4,5],[1,2,0,5,3,4],[2,0,1,4,5,3],
              [3,4,5,0,1,2],[4,5,3,2,0,1],[5,3,4,1,2,0]],
    "x_images": {"t": "r"},
    "peripheral_embeddings": {"H1": ["1","r","r2"]}})";
  CHECK_THROWS_AS(finite_backend(s3, bad_rel), RelatorNotSatisfied);

  // Non-injective embedding.
  std::string bad_emb = R"({"elements": ["1","r","r2","t","tr","tr2"],
    "identity": "1",
    "table": [[0,1,2,3,4,5],[1,2,0,5,3,4],[2,0,1,4,5,3],
              [3,4,5,0,1,2],[4,5,3,2,0,1],[5,3,4,1,2,0]],
    "x_images": {"t": "t"},
    "peripheral_embeddings": {"H1": ["1","r","r"]}})";
  CHECK_THROWS_AS(finite_backend(s3, bad_emb), PeripheralNotEmbedded);
}

TEST_CASE("finite backend: BFS distance is a left-invariant metric") {
  for (const char* f : {"s3.json", "z6.json", "d4.json"}) {
    auto b = backend_for(f);
    auto elems = *b->list_elements();
    auto d = [&](Elem u, Elem v) {
      return b->relative_length(b->mul(b->inv(u), v)).value;
    };
    for (Elem u : elems) {
      CHECK(d(u, u) == 0);
      for (Elem v : elems) {
        CHECK(d(u, v) == d(v, u));  // symmetric generating set
        for (Elem w : elems) CHECK(d(u, w) <= d(u, v) + d(v, w));
        for (const auto& [l, img] : b->alphabet()) {
          (void)l;
          CHECK(d(b->mul(img, u), b->mul(img, v)) == d(u, v));
        }
      }
    }
  }
}

TEST_CASE("finite backend: geodesic words are geodesic and deterministic") {
  auto b = backend_for("s4.json");
  for (const auto& [e, wit] : b->ball(8)) {
    CHECK(wit.length() == b->relative_length(e).value);
    CHECK(b->evaluate(wit) == e);
    CHECK(b->geodesic_word(e) == wit);
  }
  // The whole group is reachable.
  CHECK(b->ball(8).size() == 24);
}

TEST_CASE("conjugate_subgroup") {
  auto b = backend_for("s3.json");
  auto subs = b->list_subgroups();
  // Pick <t>: a subgroup of order 2 not inside the peripheral A3.
  const SubgroupHandle* t_sub = nullptr;
  for (const auto& s : subs)
    if (s.order() == 2) {
      t_sub = &s;
      break;
    }
  REQUIRE(t_sub);

  SubgroupHandle same = conjugate_subgroup(*t_sub, b->identity());
  CHECK(same.elements == t_sub->elements);

  Elem r = b->evaluate(wparse("H1:r", *load_pres("s3.json")));
  SubgroupHandle conj = conjugate_subgroup(*t_sub, r);
  CHECK(conj.order() == t_sub->order());

  SubgroupHandle back = conjugate_subgroup(conj, b->inv(r));
  CHECK(back.elements == t_sub->elements);
}

TEST_CASE("subgroup enumeration matches known lattices") {
  CHECK(backend_for("s3.json")->list_subgroups().size() == 6);
  CHECK(backend_for("z6.json")->list_subgroups().size() == 4);
  CHECK(backend_for("d4.json")->list_subgroups().size() == 10);
  CHECK(backend_for("s4.json")->list_subgroups().size() == 30);
}
