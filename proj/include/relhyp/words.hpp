#ifndef RELHYP_WORDS_HPP_
#define RELHYP_WORDS_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace relhyp {

class RelativePresentation;

// A letter of the monoid over X u X^-1 u (disjoint union of H_lambda \ {1}).
// X-letters carry a generator index and a sign; H-letters carry the
// peripheral index and an element id (never the peripheral identity).
struct Letter {
  enum class Kind : uint8_t { X, H };

  Kind kind;
  int sign;          // +1 or -1; X-letters only (+1 for H-letters)
  uint32_t gen;      // X: generator index; H: peripheral index lambda
  uint32_t elem;     // H only: peripheral element id (!= identity)

  static Letter x(uint32_t gen, int sign = 1) {
    return Letter{Kind::X, sign, gen, 0};
  }
  static Letter h(uint32_t lambda, uint32_t elem) {
    return Letter{Kind::H, 1, lambda, elem};
  }

  bool is_x() const { return kind == Kind::X; }
  bool is_h() const { return kind == Kind::H; }
  uint32_t lambda() const { return gen; }  // H-letters

  bool operator==(const Letter& o) const {
    return kind == o.kind && sign == o.sign && gen == o.gen && elem == o.elem;
  }
  bool operator!=(const Letter& o) const { return !(*this == o); }

  // Total order used everywhere a deterministic choice is needed:
  // X-letters before H-letters; X by (generator, sign with +1 first);
  // H by (lambda, element id).
  bool operator<(const Letter& o) const {
    if (kind != o.kind) return kind == Kind::X;
    if (gen != o.gen) return gen < o.gen;
    if (is_x()) return sign > o.sign;  // +1 < -1
    return elem < o.elem;
  }
};

// A word over the mixed alphabet; the empty word represents the identity.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }

  const Letter& first() const { return letters_.front(); }
  const Letter& last() const { return letters_.back(); }

  void push_back(const Letter& l) { letters_.push_back(l); }
  void append(const Word& w) {
    letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
  }

  Word subword(size_t begin, size_t end) const {
    return Word(std::vector<Letter>(letters_.begin() + begin,
                                    letters_.begin() + end));
  }

  bool operator==(const Word& o) const { return letters_ == o.letters_; }
  bool operator!=(const Word& o) const { return !(*this == o); }

  // Shortlex: length first, then letterwise.
  bool operator<(const Word& o) const {
    if (length() != o.length()) return length() < o.length();
    for (size_t i = 0; i < length(); ++i) {
      if (letters_[i] != o.letters_[i]) return letters_[i] < o.letters_[i];
    }
    return false;
  }

  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

 private:
  std::vector<Letter> letters_;
};

Word operator*(const Word& a, const Word& b);

// A maximal run of X-letters or of letters from one H_lambda.
struct Syllable {
  enum class Kind : uint8_t { XRun, HRun };
  Kind kind;
  uint32_t lambda;  // HRun only
  size_t begin;     // index range [begin, end) in the parent word
  size_t end;

  size_t length() const { return end - begin; }
};

// Maximal-run decomposition; spans partition the word.
std::vector<Syllable> syllables(const Word& w);

// True if no two adjacent letters lie in the same peripheral (all
// H-syllables have length 1). Free cancellation of x x^-1 is not required
// here; see reduce().
bool is_h_reduced(const Word& w);

// The unique reduced word equal to w in F(X) * (free product of the H_lambda):
// merges adjacent same-peripheral letters, drops identity products, cancels
// x x^-1, repeated left-to-right to a fixpoint. Idempotent.
Word reduce(const Word& w, const RelativePresentation& p);

bool is_reduced(const Word& w, const RelativePresentation& p);

// Reduced, and the first and last letters do not lie in the same peripheral.
// A single H-letter is not cyclically reduced; the empty word is.
bool is_cyclically_reduced(const Word& w, const RelativePresentation& p);

// Letter-wise formal inverse in reverse order (peripheral element inverses
// come from the peripheral's own multiplication).
Word inverse(const Word& w, const RelativePresentation& p);

Letter inverse_letter(const Letter& l, const RelativePresentation& p);

// Rotation by k letters: w[k..] w[..k]. Requires k < ||w|| or w empty.
Word cyclic_shift(const Word& w, size_t k);

// Word <-> token string, grammar per the presentation document format.
std::string word_to_string(const Word& w, const RelativePresentation& p);
Word word_from_string(const std::string& s, const RelativePresentation& p,
                      const std::string& where = "word");

struct LetterHash {
  size_t operator()(const Letter& l) const {
    uint64_t v = (uint64_t)l.gen << 34 | (uint64_t)l.elem << 2 |
                 (l.kind == Letter::Kind::X ? 1u : 0u) << 1 |
                 (l.sign > 0 ? 1u : 0u);
    return std::hash<uint64_t>()(v);
  }
};

struct WordHash {
  size_t operator()(const Word& w) const {
    uint64_t h = 1469598103934665603ull;
    LetterHash lh;
    for (const Letter& l : w) {
      h ^= lh(l);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace relhyp

#endif  // RELHYP_WORDS_HPP_
