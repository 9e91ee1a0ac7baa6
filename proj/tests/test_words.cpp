#include <doctest.h>

#include "relhyp/errors.hpp"
#include "relhyp/words.hpp"
#include "test_helpers.hpp"

using namespace relhyp;
using relhyp::test::load_pres;
using relhyp::test::wparse;

TEST_CASE("syllables: maximal runs") {
  auto p = load_pres("s3.json");
  CHECK(syllables(Word()).empty());

  // x H H x over one peripheral: three syllables with forced maximality.
  Word w = wparse("t H1:r H1:r t", *p);
  auto syl = syllables(w);
  REQUIRE(syl.size() == 3);
  CHECK(syl[0].kind == Syllable::Kind::XRun);
  CHECK(syl[0].begin == 0);
  CHECK(syl[0].end == 1);
  CHECK(syl[1].kind == Syllable::Kind::HRun);
  CHECK(syl[1].begin == 1);
  CHECK(syl[1].end == 3);
  CHECK(syl[2].kind == Syllable::Kind::XRun);

  // Different peripherals split runs.
  auto z = load_pres("z6.json");
  auto syl2 = syllables(wparse("H1:a H2:b", *z));
  REQUIRE(syl2.size() == 2);
  CHECK(syl2[0].lambda == 0);
  CHECK(syl2[1].lambda == 1);
}

TEST_CASE("reduce: peripheral merges, free cancellation, fixpoint") {
  auto dinf = load_pres("dinf.json");
  // Z2 table: a * a = 1.
  CHECK(reduce(wparse("H1:a H1:a", *dinf), *dinf).empty());

  auto s3 = load_pres("s3.json");
  CHECK(reduce(wparse("t t^-1 H1:r", *s3), *s3) == wparse("H1:r", *s3));
  Word already = wparse("H1:a H2:b", *dinf);
  CHECK(reduce(already, *dinf) == already);

  // Z3 merge: r * r = r2, and r * r2 = 1 cascades into free cancellation.
  CHECK(reduce(wparse("H1:r H1:r", *s3), *s3) == wparse("H1:r2", *s3));
  CHECK(reduce(wparse("t H1:r H1:r2 t^-1", *s3), *s3).empty());
}

TEST_CASE("reduce: idempotent and length-non-increasing on a sample") {
  auto s3 = load_pres("s3.json");
  std::vector<std::string> sample = {
      "", "t", "t t", "t t^-1", "H1:r H1:r H1:r", "t H1:r t H1:r",
      "H1:r t t^-1 H1:r2", "t^-1 H1:r2 H1:r2 t t"};
  for (const auto& s : sample) {
    Word w = wparse(s, *s3);
    Word r = reduce(w, *s3);
    CHECK(reduce(r, *s3) == r);
    CHECK(r.length() <= w.length());
  }
}

TEST_CASE("is_cyclically_reduced") {
  auto dinf = load_pres("dinf.json");
  CHECK(is_cyclically_reduced(wparse("H1:a H2:b", *dinf), *dinf));
  CHECK_FALSE(is_cyclically_reduced(wparse("H1:a H2:b H1:a", *dinf), *dinf));
  // A single H-letter is never cyclically reduced.
  CHECK_FALSE(is_cyclically_reduced(wparse("H1:a", *dinf), *dinf));
  CHECK(is_cyclically_reduced(Word(), *dinf));

  auto s3 = load_pres("s3.json");
  CHECK(is_cyclically_reduced(wparse("H1:r t", *s3), *s3));
  // Unreduced words are not cyclically reduced.
  CHECK_FALSE(is_cyclically_reduced(wparse("H1:r H1:r", *s3), *s3));
}

TEST_CASE("inverse: reversal with element inverses; involution") {
  auto s3 = load_pres("s3.json");
  CHECK(inverse(Word(), *s3).empty());
  // Table inverse of r is r2.
  CHECK(inverse(wparse("t H1:r", *s3), *s3) == wparse("H1:r2 t^-1", *s3));
  std::vector<std::string> sample = {"", "t", "t H1:r", "H1:r2 t^-1 t H1:r"};
  for (const auto& s : sample) {
    Word w = wparse(s, *s3);
    CHECK(inverse(inverse(w, *s3), *s3) == w);
  }
}

TEST_CASE("cyclic_shift") {
  auto dinf = load_pres("dinf.json");
  Word w = wparse("H1:a H2:b", *dinf);
  CHECK(cyclic_shift(w, 1) == wparse("H2:b H1:a", *dinf));
  CHECK(cyclic_shift(w, 0) == w);
  Word longer = wparse("H1:a H2:b H1:a H2:b", *dinf);
  CHECK(cyclic_shift(longer, longer.length()) == longer);
  CHECK(cyclic_shift(Word(), 0).empty());
}

TEST_CASE("word grammar round trip") {
  auto s3 = load_pres("s3.json");
  std::vector<std::string> sample = {"", "t", "t^-1 H1:r2", "H1:r t t H1:r2"};
  for (const auto& s : sample) {
    Word w = wparse(s, *s3);
    CHECK(wparse(word_to_string(w, *s3), *s3) == w);
  }
  CHECK_THROWS_AS(wparse("q", *s3), UnknownLetter);
  CHECK_THROWS_AS(wparse("H1:zz", *s3), UnknownLetter);
  CHECK_THROWS_AS(wparse("H2:r", *s3), UnknownLetter);
  // H-letters never denote the identity.
  CHECK_THROWS_AS(wparse("H1:1", *s3), SyntaxError);
}
