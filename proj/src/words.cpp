#include "relhyp/words.hpp"

#include <sstream>

#include "relhyp/errors.hpp"
#include "relhyp/presentation.hpp"

namespace relhyp {

Word operator*(const Word& a, const Word& b) {
  Word r = a;
  r.append(b);
  return r;
}

std::vector<Syllable> syllables(const Word& w) {
  std::vector<Syllable> out;
  size_t i = 0;
  while (i < w.length()) {
    size_t j = i + 1;
    if (w[i].is_x()) {
      while (j < w.length() && w[j].is_x()) ++j;
      out.push_back({Syllable::Kind::XRun, 0, i, j});
    } else {
      uint32_t lam = w[i].lambda();
      while (j < w.length() && w[j].is_h() && w[j].lambda() == lam) ++j;
      out.push_back({Syllable::Kind::HRun, lam, i, j});
    }
    i = j;
  }
  return out;
}

bool is_h_reduced(const Word& w) {
  for (size_t i = 0; i + 1 < w.length(); ++i) {
    if (w[i].is_h() && w[i + 1].is_h() && w[i].lambda() == w[i + 1].lambda())
      return false;
  }
  return true;
}

Word reduce(const Word& w, const RelativePresentation& p) {
  std::vector<Letter> out;
  out.reserve(w.length());
  // Left-to-right: each incoming letter may cascade cancellations at the
  // top of `out`, which makes a single pass reach the fixpoint.
  for (Letter l : w) {
    for (;;) {
      if (out.empty()) break;
      const Letter& t = out.back();
      if (l.is_x() && t.is_x() && t.gen == l.gen && t.sign == -l.sign) {
        out.pop_back();
        goto next_letter;  // cancelled completely
      }
      if (l.is_h() && t.is_h() && t.lambda() == l.lambda()) {
        uint32_t prod = p.peripheral(l.lambda()).multiply(t.elem, l.elem);
        out.pop_back();
        if (p.peripheral(l.lambda()).is_identity(prod)) goto next_letter;
        l = Letter::h(l.lambda(), prod);
        continue;  // merged letter may cancel further left
      }
      break;
    }
    out.push_back(l);
  next_letter:;
  }
  return Word(std::move(out));
}

bool is_reduced(const Word& w, const RelativePresentation& p) {
  return reduce(w, p) == w;
}

bool is_cyclically_reduced(const Word& w, const RelativePresentation& p) {
  if (w.empty()) return true;
  if (!is_reduced(w, p)) return false;
  return !(w.first().is_h() && w.last().is_h() &&
           w.first().lambda() == w.last().lambda());
}

Letter inverse_letter(const Letter& l, const RelativePresentation& p) {
  if (l.is_x()) return Letter::x(l.gen, -l.sign);
  return Letter::h(l.lambda(), p.peripheral(l.lambda()).inverse(l.elem));
}

Word inverse(const Word& w, const RelativePresentation& p) {
  std::vector<Letter> out;
  out.reserve(w.length());
  for (size_t i = w.length(); i-- > 0;) out.push_back(inverse_letter(w[i], p));
  return Word(std::move(out));
}

Word cyclic_shift(const Word& w, size_t k) {
  if (w.empty()) return w;
  k %= w.length();
  std::vector<Letter> out;
  out.reserve(w.length());
  for (size_t i = 0; i < w.length(); ++i) out.push_back(w[(i + k) % w.length()]);
  return Word(std::move(out));
}

std::string word_to_string(const Word& w, const RelativePresentation& p) {
  std::ostringstream os;
  for (size_t i = 0; i < w.length(); ++i) {
    if (i) os << ' ';
    const Letter& l = w[i];
    if (l.is_x()) {
      os << p.x_generators[l.gen];
      if (l.sign < 0) os << "^-1";
    } else {
      const Peripheral& peri = p.peripheral(l.lambda());
      os << peri.name() << ':' << peri.element_token(l.elem);
    }
  }
  return os.str();
}

Word word_from_string(const std::string& s, const RelativePresentation& p,
                      const std::string& where) {
  std::vector<Letter> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    size_t colon = tok.find(':');
    if (colon != std::string::npos) {
      std::string pname = tok.substr(0, colon);
      std::string etok = tok.substr(colon + 1);
      auto lam = p.peripheral_index(pname);
      if (!lam) throw UnknownLetter(where, tok);
      uint32_t e = p.peripheral(*lam).element_from_token(etok, where);
      if (p.peripheral(*lam).is_identity(e))
        throw SyntaxError(where, "H-letter '" + tok + "' denotes the identity");
      out.push_back(Letter::h(*lam, e));
    } else {
      int sign = 1;
      std::string name = tok;
      if (name.size() > 3 && name.substr(name.size() - 3) == "^-1") {
        sign = -1;
        name = name.substr(0, name.size() - 3);
      }
      auto gi = p.x_index(name);
      if (!gi) throw UnknownLetter(where, tok);
      out.push_back(Letter::x(*gi, sign));
    }
  }
  return Word(std::move(out));
}

}  // namespace relhyp
