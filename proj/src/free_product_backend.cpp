#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

#include "relhyp/backend.hpp"
#include "relhyp/errors.hpp"

namespace relhyp {

namespace {

// Handles are interned normal forms: the unique reduced word of the element
// in F(X) * (*_lambda H_lambda). The normal form is also the unique geodesic,
// so |g| is its word length.
class FreeProductBackend final : public GroupBackend {
 public:
  explicit FreeProductBackend(std::shared_ptr<const RelativePresentation> p)
      : GroupBackend(std::move(p)) {
    const RelativePresentation& pres = presentation();
    if (!pres.relators.empty()) throw RelatorsPresent();
    for (const auto& peri : pres.peripherals) {
      if (!peri->is_finite_table() && !peri->has_normal_forms())
        throw NotComputable("oracle peripheral '" + peri->name() +
                            "' has no normal forms; free-product handles need "
                            "canonical element ids");
    }
    id_ = intern(Word());
  }

  Elem evaluate(const Word& w) const override {
    return intern(reduce(w, presentation()));
  }

  Elem identity() const override { return id_; }

  Elem mul(Elem a, Elem b) const override {
    Word w = word_of(a) * word_of(b);
    return intern(reduce(w, presentation()));
  }

  Elem inv(Elem a) const override {
    return intern(inverse(word_of(a), presentation()));
  }

  bool membership(Elem g, uint32_t lambda) const override {
    const Word w = word_of(g);
    if (w.empty()) return true;
    return w.length() == 1 && w[0].is_h() && w[0].lambda() == lambda;
  }

  RelLength relative_length(Elem g) const override {
    return {word_of(g).length(), true};
  }

  Word geodesic_word(Elem g) const override { return word_of(g); }

  std::vector<std::pair<Elem, Word>> ball(size_t radius) const override {
    auto letters = alphabet();
    std::vector<std::pair<Elem, Word>> out;
    std::deque<Elem> frontier{identity()};
    std::unordered_map<Elem, size_t> dist{{identity(), 0}};
    out.push_back({identity(), Word()});
    while (!frontier.empty()) {
      Elem v = frontier.front();
      frontier.pop_front();
      size_t d = dist[v];
      if (d == radius) continue;
      for (const auto& [l, img] : letters) {
        (void)img;
        Word w = word_of(v);
        w.push_back(l);
        Elem u = intern(reduce(w, presentation()));
        if (dist.emplace(u, d + 1).second) {
          if (out.size() >= kBallCap)
            throw BallUnavailable("ball exceeds the feasibility cap");
          out.push_back({u, word_of(u)});
          frontier.push_back(u);
        }
      }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    return out;
  }

  std::string elem_repr(Elem g) const override {
    Word w = word_of(g);
    return w.empty() ? "1" : word_to_string(w, presentation());
  }

  bool elem_less(Elem a, Elem b) const override {
    return word_of(a) < word_of(b);
  }

  std::vector<std::pair<Letter, Elem>> alphabet() const override {
    const RelativePresentation& pres = presentation();
    std::vector<Letter> letters;
    for (uint32_t g = 0; g < pres.x_generators.size(); ++g) {
      letters.push_back(Letter::x(g, 1));
      letters.push_back(Letter::x(g, -1));
    }
    for (uint32_t lam = 0; lam < pres.num_peripherals(); ++lam) {
      const Peripheral& peri = pres.peripheral(lam);
      if (!peri.is_finite_table())
        throw BallUnavailable("oracle peripheral '" + peri.name() +
                              "' has infinitely many letters");
      for (uint32_t e = 0; e < peri.size(); ++e)
        if (e != peri.identity()) letters.push_back(Letter::h(lam, e));
    }
    std::sort(letters.begin(), letters.end());
    std::vector<std::pair<Letter, Elem>> out;
    for (const Letter& l : letters)
      out.push_back({l, intern(Word(std::vector<Letter>{l}))});
    return out;
  }

 private:
  static constexpr size_t kBallCap = 2000000;

  Elem intern(const Word& nf) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = index_.find(nf);
    if (it != index_.end()) return it->second;
    Elem id = (Elem)forms_.size();
    forms_.push_back(nf);
    index_.emplace(nf, id);
    return id;
  }

  Word word_of(Elem g) const {
    std::lock_guard<std::mutex> lock(mu_);
    return forms_[g];
  }

  Elem id_;
  mutable std::mutex mu_;
  mutable std::vector<Word> forms_;
  mutable std::unordered_map<Word, Elem, WordHash> index_;
};

}  // namespace

std::unique_ptr<GroupBackend> freeproduct_backend(
    std::shared_ptr<const RelativePresentation> p) {
  return std::make_unique<FreeProductBackend>(std::move(p));
}

}  // namespace relhyp
