#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "relhyp/backend.hpp"
#include "relhyp/errors.hpp"

namespace relhyp {

using nlohmann::json;

namespace {

// Explicit finite group model. Verified against the presentation at
// construction; BFS distance tables over the relative graph (X-edges and
// peripheral coset moves) are built once.
class FiniteBackend final : public GroupBackend {
 public:
  FiniteBackend(std::shared_ptr<const RelativePresentation> p,
                const std::string& model_json)
      : GroupBackend(std::move(p)) {
    const RelativePresentation& pres = presentation();
    json doc = json::parse(model_json, nullptr, false);
    if (doc.is_discarded()) throw SyntaxError("model", "invalid JSON");

    names_ = doc["elements"].get<std::vector<std::string>>();
    const size_t n = names_.size();
    for (size_t i = 0; i < n; ++i)
      if (!index_.emplace(names_[i], (Elem)i).second)
        throw DuplicateName(names_[i]);
    std::string idname = doc["identity"].get<std::string>();
    auto idit = index_.find(idname);
    if (idit == index_.end())
      throw SyntaxError("model", "identity not in elements");
    id_ = idit->second;
    table_ = doc["table"].get<std::vector<std::vector<Elem>>>();

    // The model table must itself be a group.
    Peripheral check("model", names_, id_, table_);
    inv_.assign(n, id_);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (table_[a][b] == id_ && table_[b][a] == id_) inv_[a] = b;

    // Generator images.
    x_images_.assign(pres.x_generators.size(), id_);
    auto xj = doc.value("x_images", json::object());
    for (size_t g = 0; g < pres.x_generators.size(); ++g) {
      const std::string& gname = pres.x_generators[g];
      if (!xj.contains(gname))
        throw SyntaxError("model", "missing x_image for '" + gname + "'");
      x_images_[g] = elem_by_name(xj[gname].get<std::string>());
    }

    // Peripheral embeddings: per table element, injective homomorphism.
    embeddings_.resize(pres.num_peripherals());
    auto ej = doc.value("peripheral_embeddings", json::object());
    for (uint32_t lam = 0; lam < pres.num_peripherals(); ++lam) {
      const Peripheral& peri = pres.peripheral(lam);
      if (!peri.is_finite_table())
        throw PeripheralNotEmbedded(lam, "oracle peripherals cannot be "
                                         "embedded into a finite model");
      if (!ej.contains(peri.name()))
        throw PeripheralNotEmbedded(lam, "missing embedding");
      std::vector<std::string> img =
          ej[peri.name()].get<std::vector<std::string>>();
      if (img.size() != peri.size())
        throw PeripheralNotEmbedded(lam, "embedding has wrong size");
      std::vector<Elem> emb(img.size());
      for (size_t e = 0; e < img.size(); ++e) emb[e] = elem_by_name(img[e]);
      std::vector<bool> seen(n, false);
      for (size_t e = 0; e < img.size(); ++e) {
        if (seen[emb[e]]) throw PeripheralNotEmbedded(lam, "not injective");
        seen[emb[e]] = true;
      }
      if (emb[peri.identity()] != id_)
        throw PeripheralNotEmbedded(lam, "identity does not map to identity");
      for (uint32_t a = 0; a < peri.size(); ++a)
        for (uint32_t b = 0; b < peri.size(); ++b)
          if (table_[emb[a]][emb[b]] != emb[peri.multiply(a, b)])
            throw PeripheralNotEmbedded(
                lam, "not a homomorphism at (" + peri.element_token(a) + "," +
                         peri.element_token(b) + ")");
      embeddings_[lam] = std::move(emb);
    }

    // Relators must hold in the model.
    for (size_t i = 0; i < pres.relators.size(); ++i) {
      Elem v = eval_word(pres.relators[i]);
      if (v != id_) throw RelatorNotSatisfied(i, names_[v]);
    }

    // Peripheral membership sets.
    member_.assign(pres.num_peripherals(), std::vector<bool>(n, false));
    for (uint32_t lam = 0; lam < pres.num_peripherals(); ++lam)
      for (Elem e : embeddings_[lam]) member_[lam][e] = true;

    // Alphabet in canonical letter order, then BFS distances from 1.
    for (uint32_t g = 0; g < pres.x_generators.size(); ++g) {
      alphabet_.push_back({Letter::x(g, 1), x_images_[g]});
      alphabet_.push_back({Letter::x(g, -1), inv_[x_images_[g]]});
    }
    for (uint32_t lam = 0; lam < pres.num_peripherals(); ++lam) {
      const Peripheral& peri = pres.peripheral(lam);
      for (uint32_t e = 0; e < peri.size(); ++e)
        if (e != peri.identity())
          alphabet_.push_back({Letter::h(lam, e), embeddings_[lam][e]});
    }
    std::sort(alphabet_.begin(), alphabet_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    dist_.assign(n, SIZE_MAX);
    dist_[id_] = 0;
    std::deque<Elem> q{id_};
    while (!q.empty()) {
      Elem v = q.front();
      q.pop_front();
      for (const auto& [l, img] : alphabet_) {
        (void)l;
        Elem u = table_[v][img];
        if (dist_[u] == SIZE_MAX) {
          dist_[u] = dist_[v] + 1;
          q.push_back(u);
        }
      }
    }
    for (Elem v = 0; v < n; ++v)
      if (dist_[v] == SIZE_MAX)
        throw SyntaxError("model", "generators do not generate the model "
                                   "(element " + names_[v] + " unreachable)");
  }

  Elem evaluate(const Word& w) const override { return eval_word(w); }
  Elem identity() const override { return id_; }
  Elem mul(Elem a, Elem b) const override { return table_[a][b]; }
  Elem inv(Elem a) const override { return inv_[a]; }

  bool membership(Elem g, uint32_t lambda) const override {
    return member_[lambda][g];
  }

  RelLength relative_length(Elem g) const override { return {dist_[g], true}; }

  Word geodesic_word(Elem g) const override {
    // Greedy: repeatedly take the least letter that starts some geodesic.
    Word out;
    Elem cur = id_;
    while (cur != g) {
      Elem rest = table_[inv_[cur]][g];
      size_t d = dist_[rest];
      bool step = false;
      for (const auto& [l, img] : alphabet_) {
        if (dist_[table_[inv_[img]][rest]] == d - 1) {
          out.push_back(l);
          cur = table_[cur][img];
          step = true;
          break;
        }
      }
      if (!step) throw NotComputable("geodesic search stuck");  // unreachable
    }
    return out;
  }

  std::vector<std::pair<Elem, Word>> ball(size_t radius) const override {
    std::vector<std::pair<Elem, Word>> out;
    for (Elem v = 0; v < names_.size(); ++v)
      if (dist_[v] <= radius) out.push_back({v, geodesic_word(v)});
    return out;
  }

  std::optional<std::vector<Elem>> list_elements() const override {
    std::vector<Elem> out(names_.size());
    for (Elem v = 0; v < names_.size(); ++v) out[v] = v;
    return out;
  }

  std::string elem_repr(Elem g) const override { return names_[g]; }

  std::vector<std::pair<Letter, Elem>> alphabet() const override {
    return alphabet_;
  }

 private:
  Elem elem_by_name(const std::string& nm) const {
    auto it = index_.find(nm);
    if (it == index_.end())
      throw SyntaxError("model", "unknown element '" + nm + "'");
    return it->second;
  }

  Elem eval_word(const Word& w) const {
    Elem v = id_;
    for (const Letter& l : w) {
      Elem img;
      if (l.is_x())
        img = l.sign > 0 ? x_images_[l.gen] : inv_[x_images_[l.gen]];
      else
        img = embeddings_[l.lambda()][l.elem];
      v = table_[v][img];
    }
    return v;
  }

  std::vector<std::string> names_;
  std::map<std::string, Elem> index_;
  Elem id_ = 0;
  std::vector<std::vector<Elem>> table_;
  std::vector<Elem> inv_;
  std::vector<Elem> x_images_;
  std::vector<std::vector<Elem>> embeddings_;
  std::vector<std::vector<bool>> member_;
  std::vector<std::pair<Letter, Elem>> alphabet_;
  std::vector<size_t> dist_;
};

}  // namespace

std::unique_ptr<GroupBackend> finite_backend(
    std::shared_ptr<const RelativePresentation> p, const std::string& model_json) {
  return std::make_unique<FiniteBackend>(std::move(p), model_json);
}

std::unique_ptr<GroupBackend> attached_backend(
    std::shared_ptr<const RelativePresentation> p) {
  if (p->model_path.empty()) {
    if (p->relators.empty()) return freeproduct_backend(std::move(p));
    throw NotComputable(
        "presentation has relators but no attached model document; exact "
        "queries need a 'model' field");
  }
  std::ifstream in(p->model_path);
  if (!in) throw SyntaxError(p->model_path, "cannot open model file");
  std::stringstream ss;
  ss << in.rdbuf();
  return finite_backend(std::move(p), ss.str());
}

}  // namespace relhyp
