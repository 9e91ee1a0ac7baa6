#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "relhyp/bounds.hpp"
#include "relhyp/cayley.hpp"
#include "relhyp/errors.hpp"
#include "relhyp/filling.hpp"
#include "relhyp/hyperbolicity.hpp"
#include "relhyp/presentation.hpp"
#include "relhyp/reducedness.hpp"
#include "relhyp/verify_suites.hpp"

using nlohmann::json;
using namespace relhyp;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SyntaxError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fingerprint(const std::string& content) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : content) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

struct Loaded {
  std::shared_ptr<RelativePresentation> pres;
  std::string digest;
};

Loaded load(const std::string& path) {
  std::string text = read_file(path);
  auto p = std::make_shared<RelativePresentation>(parse_presentation(text));
  if (!p->model_path.empty() && p->model_path[0] != '/') {
    size_t slash = path.find_last_of('/');
    if (slash != std::string::npos)
      p->model_path = path.substr(0, slash + 1) + p->model_path;
  }
  return {p, fingerprint(text)};
}

std::unique_ptr<GroupBackend> need_backend(const Loaded& in) {
  return attached_backend(in.pres);
}

json bound_json(const BoundExpression& e) {
  json out;
  out["base"] = e.base();
  out["exponent"] = e.exponent().get_str();
  out["factorial"] = e.factorial();
  out["log2_pre_factorial"] = e.log2_pre_factorial();
  if (auto exact = e.exact_value())
    out["exact"] = exact->get_str();
  if (e.factorial()) {
    auto iv = e.log2_with_factorial();
    if (iv.overflow)
      out["log2_interval"] = "overflow";
    else
      out["log2_interval"] = {iv.lo, iv.hi};
  }
  return out;
}

json report_shell(const std::string& command, const Loaded& in) {
  json rep;
  rep["command"] = command;
  rep["presentation"] = in.pres->name;
  rep["fingerprint"] = in.digest;
  return rep;
}

void emit(const json& rep, std::chrono::steady_clock::time_point t0) {
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::cerr << "# " << rep["command"].get<std::string>() << " finished in "
            << ms << " ms\n";
  std::cout << rep.dump() << std::endl;
}

json suite_json(const SuiteReport& sr) {
  json rows = json::array();
  for (const auto& r : sr.rows)
    rows.push_back({{"check", r.name}, {"pass", r.pass}, {"details", r.details}});
  return rows;
}

void print_suite(const std::string& label, const SuiteReport& sr) {
  for (const auto& r : sr.rows)
    std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << label << ": " << r.name
              << (r.details.empty() ? "" : " (" + r.details + ")") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relhyp: executable combinatorics of finite relative "
               "presentations"};
  app.require_subcommand(1);

  std::string file, word_str, suite = "all", format = "dot";
  uint64_t cap = 1u << 20;
  bool torsion_free = false;
  size_t radius = 2, budget_area = 1u << 20, max_length = 0;
  size_t max_len = 4, max_set = 4;

  auto* c_const = app.add_subcommand("constants", "Omega, M, K and the order bound");
  c_const->add_option("file", file)->required();

  auto* c_order = app.add_subcommand("order", "order of a non-parabolic element");
  c_order->add_option("file", file)->required();
  c_order->add_option("-w,--word", word_str)->required();
  c_order->add_option("--cap", cap);
  c_order->add_flag("--torsion-free", torsion_free);

  auto* c_analyze = app.add_subcommand("analyze", "syllables, reducedness flags, components");
  c_analyze->add_option("file", file)->required();
  c_analyze->add_option("-w,--word", word_str)->required();

  auto* c_fill = app.add_subcommand("fill", "minimal van Kampen filling");
  c_fill->add_option("file", file)->required();
  c_fill->add_option("-w,--word", word_str)->required();
  c_fill->add_option("--budget", budget_area);
  c_fill->add_option("--max-length", max_length);

  auto* c_delta = app.add_subcommand("delta", "slimness probe on a ball");
  c_delta->add_option("file", file)->required();
  c_delta->add_option("--radius", radius)->required();

  auto* c_ball = app.add_subcommand("ball", "ball enumeration / DOT export");
  c_ball->add_option("file", file)->required();
  c_ball->add_option("--radius", radius)->required();
  c_ball->add_option("--format", format);

  auto* c_verify = app.add_subcommand("verify", "exhaustive verification suites");
  c_verify->add_option("file", file)->required();
  c_verify->add_option("--suite", suite)
      ->check(CLI::IsMember({"words", "filling", "shrink", "bounds", "all"}));
  c_verify->add_option("--max-len", max_len);
  c_verify->add_option("--max-set", max_set);

  CLI11_PARSE(app, argc, argv);
  auto t0 = std::chrono::steady_clock::now();

  try {
    Loaded in = load(file);
    const RelativePresentation& pres = *in.pres;
    OmegaReport omega = extract_omega(pres);
    uint64_t C = pres.constants ? pres.constants->C : 1;
    uint64_t delta_c = pres.constants ? pres.constants->delta : 1;

    if (*c_const) {
      json rep = report_shell("constants", in);
      json om = json::object();
      for (uint32_t l = 0; l < pres.num_peripherals(); ++l) {
        json names = json::array();
        for (uint32_t e : omega.per_peripheral[l])
          names.push_back(pres.peripheral(l).element_token(e));
        om[pres.peripheral(l).name()] = names;
      }
      rep["omega"] = om;
      rep["omega_size"] = omega.omega_size;
      rep["M"] = omega.M;
      rep["advisories"] = validate_generality(pres);
      if (!pres.constants)
        rep["note"] = "no certified constants in the document; using C = 1, "
                      "delta = 1";
      try {
        KReport k = compute_K(pres, omega, C);
        rep["K"] = bound_json(k.K);
        rep["clamps"] = {{"M_used", k.M_used}, {"C_used", k.C_used},
                         {"M_clamped", k.M_clamped}, {"C_clamped", k.C_clamped}};
        OrderBoundReport ob = order_bound(pres, omega, C, delta_c, torsion_free);
        rep["bound"] = bound_json(ob.bound);
        rep["bound"]["hyperbolic_branch"] = ob.hyperbolic_branch;
        rep["bound"]["delta_used"] = ob.delta_used;
      } catch (const EmptyAlphabet&) {
        rep["K"] = nullptr;
        rep["bound"] = nullptr;
        rep["no_finite_nonparabolic"] = true;
      }
      emit(rep, t0);
      return 0;
    }

    if (*c_order) {
      json rep = report_shell("order", in);
      auto backend = need_backend(in);
      Word w = word_from_string(word_str, pres);
      std::optional<BoundExpression> bound;
      try {
        bound = order_bound(pres, omega, C, delta_c, torsion_free).bound;
      } catch (const EmptyAlphabet&) {
        rep["no_finite_nonparabolic"] = true;
      }
      OrderResult r = element_order(w, *backend, bound, cap);
      if (std::holds_alternative<Order>(r)) {
        rep["order"] = std::get<Order>(r).value;
      } else if (std::holds_alternative<CapExceeded>(r)) {
        const auto& ce = std::get<CapExceeded>(r);
        rep["cap_exceeded"] = {{"cap", ce.cap}};
        if (ce.bound) rep["cap_exceeded"]["bound"] = bound_json(*ce.bound);
      } else {
        rep["infinite_certified"] =
            bound_json(std::get<InfiniteCertified>(r).bound);
      }
      emit(rep, t0);
      return 0;
    }

    if (*c_analyze) {
      json rep = report_shell("analyze", in);
      Word w = word_from_string(word_str, pres);
      rep["word"] = word_to_string(w, pres);
      rep["length"] = w.length();
      json syl = json::array();
      for (const Syllable& s : syllables(w)) {
        syl.push_back({{"kind", s.kind == Syllable::Kind::XRun ? "X" : "H"},
                       {"begin", s.begin},
                       {"end", s.end},
                       {"peripheral", s.kind == Syllable::Kind::HRun
                                          ? json(pres.peripheral(s.lambda).name())
                                          : json(nullptr)}});
      }
      rep["syllables"] = syl;
      rep["reduced"] = is_reduced(w, pres);
      rep["cyclically_reduced"] = is_cyclically_reduced(w, pres);
      try {
        auto backend = need_backend(in);
        rep["lambda_reduced"] =
            is_h_reduced(w) ? json(is_lambda_reduced(w, *backend)) : json(nullptr);
        rep["doubly_lambda_reduced"] = is_doubly_lambda_reduced(w, *backend);
        rep["trivial"] = backend->is_trivial(w);
        rep["relative_length"] =
            backend->relative_length(backend->evaluate(w)).value;
        PathInGraph path = trace(backend->identity(), w, *backend);
        rep["closed"] = path.closed;
        json comps = json::array();
        for (const auto& c : components(path, *backend).components) {
          comps.push_back({{"peripheral", pres.peripheral(c.lambda).name()},
                           {"begin", c.begin},
                           {"length", c.length},
                           {"isolated", c.isolated}});
        }
        rep["components"] = comps;
      } catch (const NotComputable& e) {
        rep["backend"] = nullptr;
        rep["note"] = e.what();
      }
      emit(rep, t0);
      return 0;
    }

    if (*c_fill) {
      json rep = report_shell("fill", in);
      auto backend = need_backend(in);
      Word w = word_from_string(word_str, pres);
      FillBudget budget;
      budget.max_area = budget_area;
      budget.max_length = max_length;
      FillingResult fr = fill(w, *backend, budget);
      rep["rel_area"] = fr.rel_area;
      rep["area"] = fr.area;
      rep["exact"] = fr.exact;
      rep["shift"] = fr.shift_used;
      rep["replay_ok"] = replay_script(w, fr, pres);
      rep["moves"] = fr.script.size();
      // Move trace on stderr: S <shift>, then one line per cell.
      std::cerr << "S " << fr.shift_used << "\n";
      for (const FillMove& mv : fr.script) {
        if (mv.is_relator) {
          std::cerr << "R " << mv.relator << " " << mv.shift << " "
                    << (mv.sign > 0 ? "+" : "-") << " " << mv.pos << " "
                    << mv.split << "\n";
        } else {
          std::cerr << "Q " << (mv.lambda + 1) << " " << mv.pos << " "
                    << mv.matched.length() << " -> "
                    << word_to_string(mv.replacement, pres) << "\n";
        }
      }
      emit(rep, t0);
      return 0;
    }

    if (*c_delta) {
      json rep = report_shell("delta", in);
      auto backend = need_backend(in);
      DeltaCertificate cert = estimate_delta(*backend, radius);
      rep["radius"] = cert.radius;
      rep["delta_ball"] = cert.delta_ball;
      rep["triangles"] = cert.triangle_count;
      rep["worst_triangle"] = {word_to_string(cert.worst_a, pres),
                               word_to_string(cert.worst_b, pres),
                               word_to_string(cert.worst_c, pres)};
      emit(rep, t0);
      return 0;
    }

    if (*c_ball) {
      json rep = report_shell("ball", in);
      auto backend = need_backend(in);
      if (format == "dot") {
        std::cout << ball_dot(*backend, radius);
        std::cerr << "# ball radius " << radius << "\n";
        return 0;
      }
      json elems = json::array();
      for (const auto& [e, w] : backend->ball(radius))
        elems.push_back({{"element", backend->elem_repr(e)},
                         {"geodesic", word_to_string(w, pres)},
                         {"length", w.length()}});
      rep["elements"] = elems;
      emit(rep, t0);
      return 0;
    }

    if (*c_verify) {
      json rep = report_shell("verify", in);
      auto backend = need_backend(in);
      SuiteParams params;
      params.max_len = max_len;
      params.max_set = max_set;
      json suites = json::object();
      bool pass = true;
      auto run = [&](const std::string& name, SuiteReport sr) {
        print_suite(name, sr);
        suites[name] = suite_json(sr);
        pass = pass && sr.all_pass();
      };
      if (suite == "words" || suite == "all")
        run("words", run_words_suite(*backend, params));
      if (suite == "filling" || suite == "all")
        run("filling", run_filling_suite(*backend, omega, params));
      if (suite == "shrink" || suite == "all")
        run("shrink", run_shrink_suite(*backend, omega, C, params));
      if (suite == "bounds" || suite == "all")
        run("bounds", run_bounds_suite(*backend, omega, params));
      if (suite == "all")
        run("hyperbolicity", run_hyperbolicity_suite(*backend, params));
      rep["suites"] = suites;
      rep["pass"] = pass;
      emit(rep, t0);
      return pass ? 0 : 1;
    }
  } catch (const Error& e) {
    json err;
    err["error"] = e.what();
    std::cout << err.dump() << std::endl;
    return 1;
  }
  return 2;
}
