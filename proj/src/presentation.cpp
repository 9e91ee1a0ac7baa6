#include "relhyp/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "relhyp/errors.hpp"

namespace relhyp {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Peripheral

Peripheral::Peripheral(std::string name, std::vector<std::string> element_names,
                       size_t identity_index,
                       std::vector<std::vector<uint32_t>> table)
    : name_(std::move(name)),
      kind_(Kind::FiniteTable),
      element_names_(std::move(element_names)),
      identity_((uint32_t)identity_index),
      table_(std::move(table)) {
  const size_t n = element_names_.size();
  if (n == 0) throw TableNotAGroup(name_, "empty element list");
  for (size_t i = 0; i < n; ++i) {
    if (!name_index_.emplace(element_names_[i], (uint32_t)i).second)
      throw DuplicateName(element_names_[i]);
  }
  if (identity_ >= n) throw TableNotAGroup(name_, "identity index out of range");
  if (table_.size() != n) throw TableNotAGroup(name_, "table is not square");
  for (size_t i = 0; i < n; ++i) {
    if (table_[i].size() != n) throw TableNotAGroup(name_, "table is not square");
    for (size_t j = 0; j < n; ++j)
      if (table_[i][j] >= n)
        throw TableNotAGroup(name_, "entry out of range at (" +
                                        std::to_string(i) + "," +
                                        std::to_string(j) + ")");
  }
  for (size_t i = 0; i < n; ++i) {
    if (table_[identity_][i] != i || table_[i][identity_] != i)
      throw TableNotAGroup(name_, "identity row/column violated at " +
                                      element_names_[i]);
  }
  inverse_.assign(n, identity_);
  for (size_t i = 0; i < n; ++i) {
    bool found = false;
    for (size_t j = 0; j < n; ++j) {
      if (table_[i][j] == identity_ && table_[j][i] == identity_) {
        inverse_[i] = (uint32_t)j;
        found = true;
        break;
      }
    }
    if (!found)
      throw TableNotAGroup(name_, "no inverse for " + element_names_[i]);
  }
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (size_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw TableNotAGroup(
              name_, "associativity fails on (" + element_names_[a] + "," +
                         element_names_[b] + "," + element_names_[c] + ")");
}

Peripheral::Peripheral(std::string name, std::vector<std::string> generator_names,
                       std::vector<std::string> command)
    : name_(std::move(name)),
      kind_(Kind::Oracle),
      generators_(std::move(generator_names)),
      command_(std::move(command)) {
  if (generators_.empty())
    throw SyntaxError(name_, "oracle peripheral needs generators");
  std::set<std::string> seen;
  for (const auto& g : generators_)
    if (!seen.insert(g).second) throw DuplicateName(g);
  channel_ = std::make_unique<OracleChannel>(name_, command_);
  oracle_elems_.push_back({{}, ""});  // id 0 = identity
  oracle_index_.emplace("", 0);
}

size_t Peripheral::element_order(uint32_t e) const {
  size_t k = 1;
  uint32_t p = e;
  while (!is_identity(p)) {
    p = multiply(p, e);
    ++k;
  }
  return k;
}

std::string Peripheral::oracle_word_line(
    const std::vector<std::pair<uint32_t, int>>& gens) const {
  std::string s;
  for (const auto& [g, sign] : gens) {
    if (!s.empty()) s += ' ';
    s += generators_[g];
    if (sign < 0) s += "^-1";
  }
  return s;
}

uint32_t Peripheral::intern_oracle(
    std::vector<std::pair<uint32_t, int>> gens) const {
  // Free reduction over the generator alphabet first.
  std::vector<std::pair<uint32_t, int>> red;
  for (auto f : gens) {
    if (!red.empty() && red.back().first == f.first &&
        red.back().second == -f.second)
      red.pop_back();
    else
      red.push_back(f);
  }
  if (channel_->has_normal_forms()) {
    std::string nf = channel_->normal_form(oracle_word_line(red));
    auto it = oracle_index_.find(nf);
    if (it != oracle_index_.end()) return it->second;
    // Parse the canonical word back into factors.
    std::vector<std::pair<uint32_t, int>> canon;
    std::istringstream is(nf);
    std::string tok;
    while (is >> tok) {
      int sign = 1;
      if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
        sign = -1;
        tok = tok.substr(0, tok.size() - 3);
      }
      auto gi = std::find(generators_.begin(), generators_.end(), tok);
      if (gi == generators_.end())
        throw OracleFailure(name_, "NF reply uses unknown generator '" + tok + "'");
      canon.push_back({(uint32_t)(gi - generators_.begin()), sign});
    }
    oracle_elems_.push_back({std::move(canon), nf});
    uint32_t id = (uint32_t)(oracle_elems_.size() - 1);
    oracle_index_.emplace(nf, id);
    return id;
  }
  // No normal forms: identity is decided by WP, equality against the
  // already-interned elements by triviality of w u^-1.
  if (red.empty() || channel_->word_problem(oracle_word_line(red))) return 0;
  for (uint32_t id = 1; id < oracle_elems_.size(); ++id) {
    std::vector<std::pair<uint32_t, int>> probe = red;
    const auto& other = oracle_elems_[id].gens;
    for (size_t i = other.size(); i-- > 0;)
      probe.push_back({other[i].first, -other[i].second});
    if (channel_->word_problem(oracle_word_line(probe))) return id;
  }
  std::string key = oracle_word_line(red);
  oracle_elems_.push_back({std::move(red), key});
  uint32_t id = (uint32_t)(oracle_elems_.size() - 1);
  oracle_index_.emplace(key, id);
  return id;
}

uint32_t Peripheral::multiply(uint32_t a, uint32_t b) const {
  if (kind_ == Kind::FiniteTable) return table_[a][b];
  std::vector<std::pair<uint32_t, int>> gens = oracle_elems_[a].gens;
  for (auto f : oracle_elems_[b].gens) gens.push_back(f);
  return intern_oracle(std::move(gens));
}

uint32_t Peripheral::inverse(uint32_t a) const {
  if (kind_ == Kind::FiniteTable) return inverse_[a];
  std::vector<std::pair<uint32_t, int>> gens;
  const auto& fs = oracle_elems_[a].gens;
  for (size_t i = fs.size(); i-- > 0;) gens.push_back({fs[i].first, -fs[i].second});
  return intern_oracle(std::move(gens));
}

bool Peripheral::is_identity(uint32_t a) const {
  if (kind_ == Kind::FiniteTable) return a == identity_;
  return a == 0;
}

std::string Peripheral::element_token(uint32_t e) const {
  if (kind_ == Kind::FiniteTable) return element_names_[e];
  const auto& fs = oracle_elems_[e].gens;
  std::string s;
  for (const auto& [g, sign] : fs) {
    if (!s.empty()) s += '.';
    s += generators_[g];
    if (sign < 0) s += "^-1";
  }
  return s;
}

uint32_t Peripheral::element_from_token(const std::string& tok,
                                        const std::string& where) const {
  if (kind_ == Kind::FiniteTable) {
    auto it = name_index_.find(tok);
    if (it == name_index_.end()) throw UnknownLetter(where, name_ + ":" + tok);
    return it->second;
  }
  // Oracle element: '.'-separated generator factors, each gen or gen^-1.
  std::vector<std::pair<uint32_t, int>> gens;
  size_t pos = 0;
  while (pos < tok.size()) {
    size_t dot = tok.find('.', pos);
    std::string f = tok.substr(pos, dot == std::string::npos ? dot : dot - pos);
    pos = dot == std::string::npos ? tok.size() : dot + 1;
    if (f.empty()) throw SyntaxError(where, "empty factor in '" + tok + "'");
    int sign = 1;
    if (f.size() > 3 && f.substr(f.size() - 3) == "^-1") {
      sign = -1;
      f = f.substr(0, f.size() - 3);
    }
    auto gi = std::find(generators_.begin(), generators_.end(), f);
    if (gi == generators_.end()) throw UnknownLetter(where, name_ + ":" + tok);
    gens.push_back({(uint32_t)(gi - generators_.begin()), sign});
  }
  return intern_oracle(std::move(gens));
}

bool Peripheral::has_normal_forms() const {
  return kind_ == Kind::Oracle && channel_->has_normal_forms();
}

// ---------------------------------------------------------------------------
// RelativePresentation

std::optional<uint32_t> RelativePresentation::x_index(
    const std::string& gname) const {
  for (size_t i = 0; i < x_generators.size(); ++i)
    if (x_generators[i] == gname) return (uint32_t)i;
  return std::nullopt;
}

std::optional<uint32_t> RelativePresentation::peripheral_index(
    const std::string& pname) const {
  for (size_t i = 0; i < peripherals.size(); ++i)
    if (peripherals[i]->name() == pname) return (uint32_t)i;
  return std::nullopt;
}

static json parse_json(const std::string& text, const std::string& where) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw SyntaxError(where, "invalid JSON");
  return doc;
}

RelativePresentation parse_presentation(const std::string& document) {
  json doc = parse_json(document, "document");
  if (!doc.is_object()) throw SyntaxError("document", "top level must be an object");

  RelativePresentation p;
  p.name = doc.value("name", "");

  std::set<std::string> names;
  if (doc.contains("x")) {
    if (!doc["x"].is_array()) throw SyntaxError("x", "must be an array");
    for (const auto& g : doc["x"]) {
      if (!g.is_string()) throw SyntaxError("x", "generators must be strings");
      if (!names.insert(g.get<std::string>()).second)
        throw DuplicateName(g.get<std::string>());
      p.x_generators.push_back(g.get<std::string>());
    }
  }

  if (doc.contains("peripherals")) {
    if (!doc["peripherals"].is_array())
      throw SyntaxError("peripherals", "must be an array");
    for (const auto& pj : doc["peripherals"]) {
      std::string pname = pj.value("name", "");
      if (pname.empty()) throw SyntaxError("peripherals", "missing name");
      if (!names.insert(pname).second) throw DuplicateName(pname);
      std::string kind = pj.value("kind", "finite-table");
      if (kind == "finite-table") {
        if (!pj.contains("elements") || !pj.contains("table") ||
            !pj.contains("identity"))
          throw SyntaxError(pname, "finite-table needs elements, identity, table");
        std::vector<std::string> elems =
            pj["elements"].get<std::vector<std::string>>();
        std::string idname = pj["identity"].get<std::string>();
        auto it = std::find(elems.begin(), elems.end(), idname);
        if (it == elems.end())
          throw SyntaxError(pname, "identity '" + idname + "' not in elements");
        size_t id_index = (size_t)(it - elems.begin());
        std::vector<std::vector<uint32_t>> table =
            pj["table"].get<std::vector<std::vector<uint32_t>>>();
        p.peripherals.push_back(std::make_shared<Peripheral>(
            pname, std::move(elems), id_index, std::move(table)));
      } else if (kind == "oracle") {
        if (!pj.contains("generators") || !pj.contains("command"))
          throw SyntaxError(pname, "oracle needs generators and command");
        std::vector<std::string> gens =
            pj["generators"].get<std::vector<std::string>>();
        std::vector<std::string> cmd;
        if (pj["command"].is_string()) {
          std::istringstream is(pj["command"].get<std::string>());
          std::string t;
          while (is >> t) cmd.push_back(t);
        } else {
          cmd = pj["command"].get<std::vector<std::string>>();
        }
        p.peripherals.push_back(
            std::make_shared<Peripheral>(pname, std::move(gens), std::move(cmd)));
      } else {
        throw SyntaxError(pname, "unknown peripheral kind '" + kind + "'");
      }
    }
  }

  if (doc.contains("relators")) {
    if (!doc["relators"].is_array())
      throw SyntaxError("relators", "must be an array");
    size_t idx = 0;
    for (const auto& r : doc["relators"]) {
      if (!r.is_string()) throw SyntaxError("relators", "must be word strings");
      p.relators.push_back(word_from_string(
          r.get<std::string>(), p, "relator #" + std::to_string(idx)));
      ++idx;
    }
  }

  if (doc.contains("constants") && !doc["constants"].is_null()) {
    const auto& cj = doc["constants"];
    CertifiedConstants cc;
    if (!cj.contains("C") || !cj.contains("delta"))
      throw SyntaxError("constants", "need C and delta");
    long long C = cj["C"].get<long long>();
    long long delta = cj["delta"].get<long long>();
    long long Cp = cj.contains("Cprime") ? cj["Cprime"].get<long long>() : C;
    if (C < 1) throw SyntaxError("constants", "C must be >= 1");
    if (delta < 1) throw SyntaxError("constants", "delta must be >= 1");
    if (Cp < C) throw SyntaxError("constants", "C must be <= Cprime");
    cc.C = (uint64_t)C;
    cc.Cprime = (uint64_t)Cp;
    cc.delta = (uint64_t)delta;
    cc.note = cj.value("note", "");
    p.constants = cc;
  }

  p.model_path = doc.value("model", "");
  return p;
}

RelativePresentation load_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SyntaxError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  RelativePresentation p = parse_presentation(ss.str());
  if (!p.model_path.empty() && p.model_path[0] != '/') {
    size_t slash = path.find_last_of('/');
    if (slash != std::string::npos)
      p.model_path = path.substr(0, slash + 1) + p.model_path;
  }
  return p;
}

std::string serialize_presentation(const RelativePresentation& p) {
  json doc;
  doc["name"] = p.name;
  doc["x"] = p.x_generators;
  doc["peripherals"] = json::array();
  for (const auto& peri : p.peripherals) {
    json pj;
    pj["name"] = peri->name();
    if (peri->is_finite_table()) {
      pj["kind"] = "finite-table";
      pj["elements"] = peri->element_names();
      pj["identity"] = peri->element_names()[peri->identity()];
      pj["table"] = peri->table();
    } else {
      pj["kind"] = "oracle";
      pj["generators"] = peri->generator_names();
      pj["command"] = peri->command();
    }
    doc["peripherals"].push_back(pj);
  }
  doc["relators"] = json::array();
  for (const auto& r : p.relators) doc["relators"].push_back(word_to_string(r, p));
  if (p.constants) {
    doc["constants"] = {{"C", p.constants->C},
                        {"Cprime", p.constants->Cprime},
                        {"delta", p.constants->delta},
                        {"note", p.constants->note}};
  }
  if (!p.model_path.empty()) doc["model"] = p.model_path;
  return doc.dump(1);
}

OmegaReport extract_omega(const RelativePresentation& p) {
  OmegaReport rep;
  rep.per_peripheral.assign(p.num_peripherals(), {});
  for (const Word& r : p.relators) {
    rep.M = std::max(rep.M, r.length());
    for (const Letter& l : r)
      if (l.is_h()) rep.per_peripheral[l.lambda()].insert(l.elem);
  }
  for (const auto& s : rep.per_peripheral) rep.omega_size += s.size();
  return rep;
}

bool is_reduced_presentation(const RelativePresentation& p) {
  for (const Word& r : p.relators) {
    const size_t n = r.length();
    if (n < 2) continue;
    for (size_t i = 0; i < n; ++i) {
      const Letter& a = r[i];
      const Letter& b = r[(i + 1) % n];  // cyclic reading
      if (a.is_h() && b.is_h() && a.lambda() == b.lambda()) return false;
    }
  }
  return true;
}

std::vector<std::string> validate_generality(const RelativePresentation& p) {
  std::vector<std::string> advice;
  OmegaReport om = extract_omega(p);
  for (size_t lam = 0; lam < p.num_peripherals(); ++lam) {
    if (om.per_peripheral[lam].empty())
      advice.push_back("peripheral '" + p.peripheral(lam).name() +
                       "' has no letters in any relator (outside Lambda_0); it "
                       "splits off as a free factor and can be dropped");
  }
  if (p.num_peripherals() == 0) {
    advice.push_back(
        "no peripherals (hyperbolic branch): finite subgroups have order at "
        "most (2|X|)^{4*delta+2}");
  }
  if (om.M < 2) {
    advice.push_back(
        "M < 2 (free-product branch): the group is a free product of a free "
        "group and the peripherals and has no finite non-peripheral subgroups");
  }
  return advice;
}

}  // namespace relhyp
