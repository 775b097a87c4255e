// spanfib: constructions and checks on finite categories, triples and spans.
//
// Exit status: 0 pass, 1 fail, 2 invalid input.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spanfib/bisimp.hpp"
#include "spanfib/catfile.hpp"
#include "spanfib/fibcheck.hpp"
#include "spanfib/spancat.hpp"
#include "spanfib/subdiv.hpp"

using namespace spanfib;
using json = nlohmann::ordered_json;

namespace {

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Invocation {
  std::string command;
  std::string file;
  std::string triple, functor, edge, first, second;
  int sigma_n = 0;
  int max_dim = -1;
  std::string report_path;
  std::string format = "text";
};

// Output of one command: a report plus optional data shown alongside it.
struct Result {
  VerificationReport report;
  json data = json::object();
};

Library load(const std::string& path) {
  try {
    return load_library(path);
  } catch (const ParseError& e) {
    throw InvalidInput(path + ": " + e.what());
  } catch (const LibraryError& e) {
    std::string msg = path + ": invalid description";
    for (const auto& v : e.violations) msg += "\n  " + v;
    throw InvalidInput(msg);
  } catch (const std::runtime_error& e) {
    throw InvalidInput(e.what());
  }
}

int bound_or(const Invocation& inv, int fallback) {
  const int b = inv.max_dim < 0 ? fallback : inv.max_dim;
  if (b < 0 || b > kMaxBound) throw InvalidInput("--max-dim must lie in 0.." + std::to_string(kMaxBound));
  return b;
}

const Triple& pick_triple(const Library& lib, const std::string& name) {
  if (name.empty()) {
    if (lib.triple_order.size() != 1) throw InvalidInput("several categories in file; choose one with --triple");
    return lib.triples.at(lib.triple_order.front());
  }
  auto it = lib.triples.find(name);
  if (it == lib.triples.end()) throw InvalidInput("unknown category '" + name + "'");
  return it->second;
}

const Functor& pick_functor(const Library& lib, const std::string& name) {
  if (name.empty()) {
    if (lib.functor_order.size() != 1) throw InvalidInput("expected exactly one functor; choose one with --functor");
    return lib.functors.at(lib.functor_order.front());
  }
  auto it = lib.functors.find(name);
  if (it == lib.functors.end()) throw InvalidInput("unknown functor '" + name + "'");
  return it->second;
}

std::unique_ptr<SpanMap> span_map(const Library& lib, const Functor& f) {
  auto find_triple = [&](const CatPtr& c) -> const Triple& {
    for (const auto& [n, t] : lib.triples)
      if (t.cat == c) return t;
    throw InvalidInput("functor refers to an unknown category");
  };
  try {
    return std::make_unique<SpanMap>(find_triple(f.source), find_triple(f.target), f);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(std::string("not a functor of adequate triples: ") + e.what());
  }
}

// "phi,psi": left leg y -> x and right leg y -> x'.
SigmaDiagram span_by_name(const Category& c, const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InvalidInput("span must be given as <left leg>,<right leg>: " + text);
  auto phi = c.morphism(text.substr(0, comma));
  auto psi = c.morphism(text.substr(comma + 1));
  if (!phi || !psi) throw InvalidInput("unknown morphism in span " + text);
  if (c.src[*phi] != c.src[*psi]) throw InvalidInput("legs of " + text + " have different sources");
  const SigmaPoset s = sigma_poset(1);
  std::vector<int> ob(s.size()), back(s.size(), -1), fwd(s.size(), -1);
  ob[s.index(0, 0)] = c.tgt[*phi];
  ob[s.index(1, 1)] = c.tgt[*psi];
  ob[s.index(0, 1)] = c.src[*phi];
  back[s.index(0, 1)] = *phi;
  fwd[s.index(0, 1)] = *psi;
  return sigma_from_generators(c, 1, ob, back, fwd);
}

std::string span_text(const Category& c, const SigmaDiagram& x) {
  const int e01 = sigma_index(1, 0, 1);
  const int phi = sigma_relation(c, x, e01, sigma_index(1, 0, 0));
  const int psi = sigma_relation(c, x, e01, sigma_index(1, 1, 1));
  return c.objects[c.tgt[phi]] + " <-" + c.morphisms[phi] + "- " + c.objects[c.src[phi]] + " -" + c.morphisms[psi] +
         "-> " + c.objects[c.tgt[psi]];
}

CheckRecord record(const std::string& name, const std::string& anchor, int bound, bool ok,
                   std::optional<std::string> witness = std::nullopt) {
  CheckRecord r;
  r.name = name;
  r.anchor = anchor;
  r.bound = bound;
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  if (!ok) r.witness = std::move(witness);
  return r;
}

template <class F>
CheckRecord timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckRecord r = f();
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// --- commands --------------------------------------------------------------

Result cmd_validate(const Invocation& inv) {
  Result res;
  res.report.name = "validate " + inv.file;
  const Library lib = load(inv.file);
  json cats = json::array();
  for (const auto& n : lib.triple_order) {
    const auto& c = *lib.triples.at(n).cat;
    cats.push_back({{"name", n}, {"objects", c.num_objects()}, {"morphisms", c.num_morphisms()}});
  }
  res.data["categories"] = cats;
  res.data["functors"] = lib.functor_order;
  res.report.checks.push_back(record("laws", "category, triple and functor laws", 0, true));
  res.report.checks.push_back(timed([&] {
    const std::string text = serialize(lib);
    Library again;
    try {
      again = resolve(parse_document(text));
    } catch (const std::exception& e) {
      return record("round trip", "re-serialized description parses to the same data", 0, false, e.what());
    }
    const bool same = serialize(again) == text;
    return record("round trip", "re-serialized description parses to the same data", 0, same,
                  "re-serialization differs");
  }));
  return res;
}

Result cmd_adequacy(const Invocation& inv) {
  Result res;
  res.report.name = "adequacy " + inv.file;
  const Library lib = load(inv.file);
  for (const auto& n : lib.triple_order) {
    if (!inv.triple.empty() && n != inv.triple) continue;
    res.report.checks.push_back(timed([&] {
      auto r = is_adequate(lib.triples.at(n));
      std::string w;
      for (std::size_t i = 0; i < r.witnesses.size() && i < 3; ++i) w += (i ? "; " : "") + r.witnesses[i];
      return record("adequate " + n, "pullbacks of ingressives along egressives exist and are stable", 2, r.ok, w);
    }));
  }
  if (res.report.checks.empty()) throw InvalidInput("unknown category '" + inv.triple + "'");
  return res;
}

Result cmd_build_span(const Invocation& inv) {
  Result res;
  const Library lib = load(inv.file);
  const Triple& t = pick_triple(lib, inv.triple);
  const int bound = bound_or(inv, 3);
  res.report.name = "build-span " + t.name;
  if (!is_adequate(t).ok) {
    res.report.checks.push_back(record("adequate " + t.name, "span simplicial set needs an adequate triple", 2, false,
                                       is_adequate(t).witnesses.front()));
    return res;
  }
  const SpanCategory s(t);
  res.report.checks.push_back(timed([&] {
    const auto x = s.simplicial_set(bound);
    json levels = json::array();
    for (int k = 0; k <= bound; ++k)
      levels.push_back({{"dim", k}, {"simplices", x->size(k)}, {"nondegenerate", x->count_nondegenerate(k)}});
    res.data["levels"] = levels;
    auto v = x->identity_violations();
    return record("simplicial identities", "levels of Span(t) with faces and degeneracies", bound, v.empty(),
                  v.empty() ? "" : v.front());
  }));
  return res;
}

Result cmd_compose(const Invocation& inv) {
  Result res;
  const Library lib = load(inv.file);
  const Triple& t = pick_triple(lib, inv.triple);
  const Category& c = *t.cat;
  res.report.name = "compose in " + t.name;
  const auto s1 = span_by_name(c, inv.first);
  const auto s2 = span_by_name(c, inv.second);
  for (const auto* s : {&s1, &s2})
    if (!is_acart(t, *s)) throw InvalidInput("not a span of the triple (left leg egressive, right leg ingressive): " +
                                             span_text(c, *s));
  if (s1.d.ob[sigma_index(1, 1, 1)] != s2.d.ob[sigma_index(1, 0, 0)])
    throw InvalidInput("spans are not composable: " + span_text(c, s1) + " then " + span_text(c, s2));
  res.report.checks.push_back(timed([&] {
    try {
      const auto sq = compose_spans(t, s1, s2);
      const auto comp = reindex(c, sq, face_alpha(2, 1));
      res.data["first"] = span_text(c, s1);
      res.data["second"] = span_text(c, s2);
      res.data["composite"] = span_text(c, comp);
      std::string w;
      const bool ok = is_acart(t, sq, &w);
      return record("composite", "composition through the chosen pullback of the inner cospan", 2, ok, w);
    } catch (const std::invalid_argument& e) {
      return record("composite", "composition through the chosen pullback of the inner cospan", 2, false, e.what());
    }
  }));
  return res;
}

Result cmd_check_inner(const Invocation& inv) {
  Result res;
  const Library lib = load(inv.file);
  const Functor& f = pick_functor(lib, inv.functor);
  const auto p = span_map(lib, f);
  const int bound = bound_or(inv, 3);
  res.report.name = "check-inner " + f.name;
  res.report.checks.push_back(timed([&] {
    auto r = is_inner_fibration_qcat(p->simplicial_map(bound), bound);
    return record("inner fibration", "inner horn lifting for Span(p)", bound, r.ok, r.witness);
  }));
  return res;
}

Result cmd_check_cocart(const Invocation& inv) {
  Result res;
  const Library lib = load(inv.file);
  const Functor& f = pick_functor(lib, inv.functor);
  const auto p = span_map(lib, f);
  const int bound = bound_or(inv, 3);
  const Category& C = *f.source;
  const auto x = span_by_name(C, inv.edge);
  const auto e = p->source().find(1, x.d);
  if (!e) throw InvalidInput("not a span of the source triple: " + span_text(C, x));
  res.report.name = "check-cocart " + span_text(C, x);
  res.data["edge"] = *e;
  res.report.checks.push_back(timed([&] {
    auto r = is_cocartesian_qcat(p->simplicial_map(bound), *e, bound);
    return record("cocartesian (quasicategory model)", "left horns in Span(p) with the given first edge", bound, r.ok,
                  r.witness);
  }));
  res.report.checks.push_back(timed([&] {
    try {
      SegalCocartesian sc(*p);
      auto r = sc.check(*e);
      return record("cocartesian (Segal model)", "homotopy pullback square of fixed-edge groupoids", 2, r.ok,
                    r.witness);
    } catch (const Refusal& r) {
      auto rec = record("cocartesian (Segal model)", "homotopy pullback square of fixed-edge groupoids", 2, false,
                        r.what());
      rec.verdict = Verdict::Refused;
      return rec;
    }
  }));
  return res;
}

Result cmd_verify(const Invocation& inv, int which) {
  Result res;
  const Library lib = load(inv.file);
  const Functor& f = pick_functor(lib, inv.functor);
  const auto p = span_map(lib, f);
  VerifyOptions opt;
  opt.qcat_bound = bound_or(inv, 3);
  if (which == 0)
    res.report = verify_thm_main(*p, opt);
  else if (which == 1)
    res.report = verify_thm_new_barwick(*p, opt);
  else
    res.report = factorization_pipeline_check(*p);
  res.data["designated_spans"] = designated_spans(*p).size();
  return res;
}

Result cmd_sigma(const Invocation& inv) {
  Result res;
  const int n = inv.sigma_n;
  if (n < 0 || n > kMaxBound) throw InvalidInput("n must lie in 0.." + std::to_string(kMaxBound));
  res.report.name = "sigma " + std::to_string(n);
  const SigmaPoset s = sigma_poset(n);
  res.data["elements"] = s.size();
  json names = json::array(), hasse = json::array();
  for (int e = 0; e < s.size(); ++e) names.push_back(s.name(e));
  for (auto [a, b] : s.hasse()) hasse.push_back(s.name(a) + "->" + s.name(b));
  res.data["element_names"] = names;
  res.data["hasse"] = hasse;
  const int bound = std::min(bound_or(inv, std::min(n, 4)), kMaxBound);
  const auto sd = sd_full(n, bound);
  json nd = json::array();
  for (int k = 0; k <= bound; ++k) nd.push_back(sd->count_nondegenerate(k));
  res.data["sd_nondegenerate"] = nd;
  res.report.checks.push_back(record("element count", "|Σₙ| = (n+1)(n+2)/2", n, s.size() == (n + 1) * (n + 2) / 2));
  res.report.checks.push_back(timed([&] {
    const auto rp = retraction_pair(n, bound);
    const bool ok = rp.r.after(rp.i) == SimplicialMap::identity(rp.delta);
    return record("retraction", "r ∘ i = id on Δⁿ", bound, ok, "r ∘ i differs from the identity");
  }));
  return res;
}

Result cmd_selftest(const Invocation& inv) {
  Result res;
  res.report.name = "selftest";
  const int bound = bound_or(inv, 3);
  auto& out = res.report.checks;
  const std::vector<CatPtr> cats = {terminal_category(), walking_arrow(), walking_iso(), chain_category(2),
                                    divisor_lattice(12), finset_skeleton(2)};
  out.push_back(timed([&] {
    for (int n = 0; n <= kMaxBound; ++n)
      if (sigma_poset(n).size() != (n + 1) * (n + 2) / 2)
        return record("sigma sizes", "|Σₙ| = (n+1)(n+2)/2", kMaxBound, false, "n = " + std::to_string(n));
    return record("sigma sizes", "|Σₙ| = (n+1)(n+2)/2", kMaxBound, true);
  }));
  out.push_back(timed([&] {
    for (const auto& c : cats) {
      auto v = nerve(*c, bound)->identity_violations();
      if (!v.empty()) return record("nerve identities", "simplicial identities of nerves", bound, false, v.front());
      auto r = is_quasicategory(nerve(*c, bound), bound);
      if (!r) return record("nerve identities", "nerves have inner horn fillers", bound, false, c->name + ": " + r.witness);
    }
    return record("nerve identities", "nerves satisfy the simplicial identities and fill inner horns", bound, true);
  }));
  out.push_back(timed([&] {
    for (int n = 0; n <= 4; ++n)
      for (bool mirrored : {false, true}) {
        const auto rp = retraction_pair(n, std::max(n, 1), mirrored);
        if (!(rp.r.after(rp.i) == SimplicialMap::identity(rp.delta)))
          return record("retractions", "r ∘ i = id", 4, false, "n = " + std::to_string(n));
      }
    return record("retractions", "r ∘ i = id for both retraction pairs", 4, true);
  }));
  out.push_back(timed([&] {
    const auto x = grid_nerve(*walking_arrow(), 2, 2, false);
    for (int n = 0; n <= 2; ++n) {
      auto a = standard_simplex(n, 2);
      auto w = adjunction_witness(a, standard_simplex(1, 2), x);
      if (!w.ok()) return record("box adjunctions", "Hom(A□B, X) ≅ Hom(B, A\\X) ≅ Hom(A, X/B)", 2, false, w.failure);
    }
    return record("box adjunctions", "Hom(A□B, X) ≅ Hom(B, A\\X) ≅ Hom(A, X/B)", 2, true);
  }));
  out.push_back(timed([&] {
    for (int n = 3; n <= 4; ++n) {
      auto r = left_spine_factorization_check(n, {nerve(*walking_arrow(), n)});
      if (!r.ok()) return record("left spine", "Λⁿ₀ = Lₙ ∪ d₁Δⁿ ∪ Q", 4, false, r.detail);
    }
    return record("left spine", "Λⁿ₀ = Lₙ ∪ d₁Δⁿ ∪ Q", 4, true);
  }));
  out.push_back(timed([&] {
    for (const auto& c : {walking_arrow(), walking_iso()}) {
      const SpanCategory s(Triple::all_all(c));
      auto v = s.simplicial_set(bound)->identity_violations();
      if (!v.empty()) return record("span identities", "Span(t) is a simplicial set", bound, false, v.front());
      auto r = is_quasicategory(s.simplicial_set(bound), bound);
      if (!r) return record("span identities", "Span(t) fills inner horns", bound, false, r.witness);
    }
    return record("span identities", "Span(t) is a simplicial set with inner horn fillers", bound, true);
  }));
  out.push_back(timed([&] {
    for (const auto& c : {walking_arrow(), walking_iso()})
      for (auto v : {EmbeddingVariant::BackwardIso, EmbeddingVariant::ForwardIso})
        if (!equivalence_embedding(c, v, 2).ok())
          return record("equivalence embedding", "Fun([n], C)^≅ -> SPAN_n is an equivalence", 2, false, c->name);
    return record("equivalence embedding", "Fun([n], C)^≅ -> SPAN_n is an equivalence", 2, true);
  }));
  out.push_back(timed([&] {
    const auto w = walking_iso();
    const auto g = grothendieck_over_arrow(w, w, Functor::identity(w));
    const SpanMap p(Triple::all_all(g.total), Triple::all_all(g.projection.target), g.projection);
    const SegalCocartesian sc(p);
    const auto degen = p.source().structure_functor(0, degen_alpha(0, 0));
    for (int x = 0; x < degen.src->size(); ++x) {
      const int e = *degen.image(x);
      if (!sc.check(e)) return record("identities cocartesian", "degenerate edges are cocartesian", 2, false,
                                      "edge " + std::to_string(e));
    }
    return record("identities cocartesian", "degenerate edges are cocartesian", 2, true);
  }));
  return res;
}

void emit(const Invocation& inv, const Result& res) {
  std::string text;
  if (inv.format == "machine") {
    json j;
    j["command"] = inv.command;
    j["data"] = res.data;
    j["report"] = json::parse(res.report.to_json());
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    for (const auto& [k, v] : res.data.items()) os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    os << res.report.to_text();
    text = os.str();
  }
  std::cout << text;
  if (!inv.report_path.empty()) {
    std::ofstream f(inv.report_path);
    if (!f) throw InvalidInput("cannot write " + inv.report_path);
    f << (inv.format == "machine" ? text : res.report.to_json() + "\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite spans, simplicial sets and cocartesian fibration checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Invocation inv;
  app.add_option("--max-dim", inv.max_dim, "Truncation bound (at most " + std::to_string(kMaxBound) + ")");
  app.add_option("--report", inv.report_path, "Also write the report to this path");
  app.add_option("--format", inv.format, "Output format")->check(CLI::IsMember({"text", "machine"}));

  auto file_cmd = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", inv.file, "Description file")->required();
    return c;
  };
  auto* validate = file_cmd("validate", "Check category, triple and functor laws");
  auto* adequacy = file_cmd("adequacy", "Check adequacy of triples");
  adequacy->add_option("--triple", inv.triple);
  auto* build = file_cmd("build-span", "Emit the levels of Span(t)");
  build->add_option("--triple", inv.triple);
  auto* compose = file_cmd("compose", "Compose two spans given as <left leg>,<right leg>");
  compose->add_option("--triple", inv.triple);
  compose->add_option("first", inv.first)->required();
  compose->add_option("second", inv.second)->required();
  auto* inner = file_cmd("check-inner", "Inner fibration check for Span(p)");
  inner->add_option("--functor", inv.functor);
  auto* cocart = file_cmd("check-cocart", "Cocartesianness of one span in both models");
  cocart->add_option("--functor", inv.functor);
  cocart->add_option("edge", inv.edge, "<left leg>,<right leg>")->required();
  auto* vmain = file_cmd("verify-main", "Hypotheses and conclusions of the span inner fibration theorem");
  vmain->add_option("--functor", inv.functor);
  auto* vvar = file_cmd("verify-variant", "Variant with egressives the cartesian morphisms");
  vvar->add_option("--functor", inv.functor);
  auto* pipe = file_cmd("pipeline", "Comparison functors of the labelled filling of sd(Λ²₀) ⊆ sd(Δ²)");
  pipe->add_option("--functor", inv.functor);
  auto* sigma = app.add_subcommand("sigma", "Statistics of Σₙ and sd(Δⁿ)");
  sigma->add_option("n", inv.sigma_n)->required();
  auto* self = app.add_subcommand("selftest", "Run the built-in invariant suite");
  for (auto* c : {validate, adequacy, build, compose, inner, cocart, vmain, vvar, pipe, sigma, self}) c->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  inv.command = app.get_subcommands().front()->get_name();
  try {
    Result res;
    const auto& c = inv.command;
    if (c == "validate") res = cmd_validate(inv);
    else if (c == "adequacy") res = cmd_adequacy(inv);
    else if (c == "build-span") res = cmd_build_span(inv);
    else if (c == "compose") res = cmd_compose(inv);
    else if (c == "check-inner") res = cmd_check_inner(inv);
    else if (c == "check-cocart") res = cmd_check_cocart(inv);
    else if (c == "verify-main") res = cmd_verify(inv, 0);
    else if (c == "verify-variant") res = cmd_verify(inv, 1);
    else if (c == "pipeline") res = cmd_verify(inv, 2);
    else if (c == "sigma") res = cmd_sigma(inv);
    else res = cmd_selftest(inv);
    emit(inv, res);
    return res.report.passed() ? 0 : 1;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
