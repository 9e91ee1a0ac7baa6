#include <doctest.h>

#include "relhyp/backend.hpp"
#include "relhyp/errors.hpp"
#include "relhyp/presentation.hpp"
#include "test_helpers.hpp"

using namespace relhyp;

namespace {

// Presentation with one oracle peripheral: Z = <a>, word problem answered by
// the bundled subprocess. X = {x}, no relators.
std::string zfree_doc(bool with_nf) {
  std::string cmd = RELHYP_ORACLE_Z;
  if (!with_nf) cmd += " --no-nf";
  return R"({"name": "zfree", "x": ["x"],
    "peripherals": [{"name": "Z", "kind": "oracle",
                     "generators": ["a"], "command": ")" + cmd + R"("}],
    "relators": []})";
}

}  // namespace

TEST_CASE("oracle peripheral: word problem and normal forms") {
  RelativePresentation p = parse_presentation(zfree_doc(true));
  const Peripheral& z = p.peripheral(0);
  CHECK(z.has_normal_forms());

  uint32_t a = z.element_from_token("a", "test");
  uint32_t a2 = z.element_from_token("a.a", "test");
  uint32_t a_can = z.element_from_token("a.a.a^-1", "test");
  CHECK(a == a_can);  // canonicalized through NF
  CHECK(z.multiply(a, a) == a2);
  CHECK(z.is_identity(z.multiply(a, z.inverse(a))));
  CHECK(z.element_token(a2) == "a.a");
}

TEST_CASE("oracle peripheral without NF: equality via triviality") {
  RelativePresentation p = parse_presentation(zfree_doc(false));
  const Peripheral& z = p.peripheral(0);
  CHECK_FALSE(z.has_normal_forms());

  uint32_t a = z.element_from_token("a", "test");
  uint32_t b = z.element_from_token("a.a.a^-1", "test");
  CHECK(a == b);  // decided by WP(w1 w2^-1)
  CHECK(z.is_identity(z.multiply(a, z.inverse(a))));
}

TEST_CASE("reduce through an oracle peripheral") {
  RelativePresentation p = parse_presentation(zfree_doc(true));
  Word w = word_from_string("Z:a Z:a^-1 x", p);
  CHECK(reduce(w, p) == word_from_string("x", p));
  Word m = word_from_string("Z:a Z:a x x^-1 Z:a^-1", p);
  CHECK(reduce(m, p) == word_from_string("Z:a", p));
}

TEST_CASE("free-product backend over an oracle peripheral") {
  auto p = std::make_shared<RelativePresentation>(
      parse_presentation(zfree_doc(true)));
  auto b = freeproduct_backend(p);
  CHECK(b->is_trivial(word_from_string("Z:a x x^-1 Z:a^-1", *p)));
  Elem g = b->evaluate(word_from_string("Z:a.a x", *p));
  CHECK(b->relative_length(g).value == 2);
  CHECK(b->membership(b->evaluate(word_from_string("Z:a.a.a", *p)), 0));
  // Ball enumeration is refused: the peripheral has infinitely many letters.
  CHECK_THROWS_AS(b->ball(2), BallUnavailable);
}

TEST_CASE("free-product backend refuses oracle peripherals without NF") {
  auto p = std::make_shared<RelativePresentation>(
      parse_presentation(zfree_doc(false)));
  CHECK_THROWS_AS(freeproduct_backend(p), NotComputable);
}
