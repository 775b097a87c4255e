// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "spanfib/bisimp.hpp"
#include "spanfib/catfile.hpp"
#include "spanfib/fibcheck.hpp"
#include "spanfib/subdiv.hpp"

using namespace spanfib;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << what;
    ok = ok && cond;
  }
};

std::string suite(const std::string& file) { return std::string(SPANFIB_SUITE_DIR) + "/" + file; }

SpanMap suite_map(const std::string& file) {
  const auto lib = load_library(suite(file));
  const Functor& p = lib.functors.at(lib.functor_order.front());
  return SpanMap(lib.triples.at(p.source->name), lib.triples.at(p.target->name), p);
}

// Every assignment of cells, checked as a map.
std::size_t brute_force_count(const BisetPtr& src, const BisetPtr& tgt, const Marking* sm = nullptr,
                              const Marking* tm = nullptr) {
  const auto& s = src->cells();
  const auto& t = tgt->cells();
  CellMap m(s.levels());
  for (int L = 0; L < s.levels(); ++L) m[L].assign(s.count[L], 0);
  std::vector<std::pair<int, int>> cells;
  for (int L = 0; L < s.levels(); ++L)
    for (int x = 0; x < s.count[L]; ++x) cells.push_back({L, x});
  std::size_t found = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == cells.size()) {
      if (!is_cell_map(s, t, m)) return;
      if (sm) {
        const int l10 = src->level(1, 0);
        for (int x = 0; x < s.count[l10]; ++x)
          if ((*sm)[x] && !(*tm)[m[l10][x]]) return;
      }
      ++found;
      return;
    }
    auto [L, x] = cells[i];
    for (int v = 0; v < t.count[L]; ++v) {
      m[L][x] = v;
      bool ok = true;
      for (std::size_t o = 0; o < s.faces[L].size() && ok; ++o) {
        const auto& f = s.faces[L][o];
        ok = m[f.target][f.table[x]] == t.faces[L][o].table[v];
      }
      if (ok) rec(i + 1);
    }
  };
  rec(0);
  return found;
}

int total_cells(const SimplicialSet& a) {
  int n = 0;
  for (int k = 0; k <= a.bound(); ++k) n += a.size(k);
  return n;
}

Outcome sigma_and_sd() {
  Outcome o;
  for (int n = 0; n <= 6; ++n) o.require(sigma_poset(n).size() == (n + 1) * (n + 2) / 2, "|sigma_n| ");
  // The drawing of Σ₄: each (i, j) with i < j covers (i, j-1) and (i+1, j).
  const std::set<std::pair<std::string, std::string>> drawing = {
      {"04", "03"}, {"04", "14"}, {"03", "02"}, {"03", "13"}, {"14", "13"}, {"14", "24"}, {"02", "01"},
      {"02", "12"}, {"13", "12"}, {"13", "23"}, {"24", "23"}, {"24", "34"}, {"01", "00"}, {"01", "11"},
      {"12", "11"}, {"12", "22"}, {"23", "22"}, {"23", "33"}, {"34", "33"}, {"34", "44"}};
  const auto s = sigma_poset(4);
  std::set<std::pair<std::string, std::string>> got;
  for (auto [a, b] : s.hasse()) got.insert({s.name(a), s.name(b)});
  o.require(got == drawing && s.hasse().size() == 20, "sigma_4 Hasse ");
  for (int n = 0; n <= 4; ++n)
    for (bool mirrored : {false, true}) {
      const auto rp = retraction_pair(n, 3, mirrored);
      o.require(rp.r.after(rp.i) == SimplicialMap::identity(rp.delta), "r i = id ");
    }
  o.note << "n <= 6 sizes, 20 Hasse relations, r i = id n <= 4 both variants";
  return o;
}

Outcome adjunctions() {
  Outcome o;
  std::mt19937 rng(2024);
  const std::vector<BisetPtr> targets = {grid_nerve(*walking_arrow(), 2, 2, false),
                                         grid_nerve(*walking_iso(), 2, 2, true),
                                         grid_nerve(*chain_category(2), 2, 2, false)};
  const std::vector<std::vector<int>> faces2 = {{0, 1}, {1, 2}, {0, 2}, {0, 1, 2}};
  int unmarked = 0, marked = 0, max_cells = 0;
  while (unmarked < 30 || marked < 30) {
    const auto d2 = standard_simplex(2, 2);
    std::vector<std::vector<int>> sets = {{0, 1}};
    for (const auto& f : faces2)
      if (rng() % 2) sets.push_back(f);
    const Subcomplex asub = simplex_subcomplex(d2, sets);
    const auto a = asub.realize().set;
    const int bn = static_cast<int>(rng() % 3);
    const auto b = bn == 0 ? standard_simplex(0, 2)
                           : named_subcomplex(rng() % 2 ? SubKind::Spine : SubKind::Full, bn, 0, 2).realize().set;
    const auto& x = targets[rng() % targets.size()];
    max_cells = std::max({max_cells, total_cells(*a), total_cells(*b)});
    if (total_cells(*a) > 20 || total_cells(*b) > 20) continue;
    if (unmarked < 30) {
      const auto w = adjunction_witness(a, b, x);
      o.require(w.ok() && w.box_maps == brute_force_count(box(a, b), x), "unmarked instance " + w.failure);
      ++unmarked;
    } else {
      Marking am;
      switch (rng() % 3) {
        case 0: am = flat_marking(*a); break;
        case 1: am = sharp_marking(*a); break;
        default: am = left_marked(asub).marked;
      }
      Marking xm;
      switch (rng() % 3) {
        case 0: xm = flat_marking(*x); break;
        case 1: xm = sharp_marking(*x); break;
        default: xm = generated_marking(*x, {static_cast<int>(rng() % x->size(1, 0))});
      }
      const MarkedSSet ma{a, am};
      const auto w = adjunction_witness(ma, b, MarkedBiset{x, xm});
      const auto bm = marked_box(ma, b);
      o.require(w.ok() && w.box_maps == brute_force_count(box(a, b), x, &bm, &xm), "marked instance " + w.failure);
      ++marked;
    }
  }
  o.note << unmarked << " unmarked + " << marked << " marked instances, at most " << max_cells << " cells";
  return o;
}

Outcome span_quasicategory() {
  Outcome o;
  const auto d12 = load_library(suite("divisor12.cat"));
  const auto f2 = load_library(suite("finset2.cat"));
  for (const Triple* t : {&d12.triples.at("divisor12"), &f2.triples.at("finset2")}) {
    SpanCategory s(*t);
    const auto x = s.simplicial_set(3);
    const auto fail = rlp_failure(map_to_terminal(x), HornFamily::InnerHorns, 3);
    o.require(!fail, t->cat->name + " " + (fail ? fail->generator : ""));
    o.note << t->cat->name << ": " << x->size(3) << " 3-simplices; ";
  }
  o.note << "every inner horn n <= 3 fills";
  return o;
}

Outcome equivalence_examples() {
  Outcome o;
  for (const auto& c : {walking_arrow(), walking_iso(), finset_skeleton(2)})
    for (auto v : {EmbeddingVariant::BackwardIso, EmbeddingVariant::ForwardIso}) {
      const auto r = equivalence_embedding(c, v, 2);
      for (const auto& lv : r.levels)
        o.require(lv.retraction_identity && lv.equivalence.ok, c->name + " n=" + std::to_string(lv.n) + " ");
    }
  o.note << "3 categories x 2 variants, n <= 2";
  return o;
}

Outcome left_spine() {
  Outcome o;
  for (int n : {3, 4}) {
    const auto r = left_spine_factorization_check(n, {nerve(*walking_arrow(), n), nerve(*walking_iso(), n)});
    o.require(r.ok(), "n=" + std::to_string(n) + " " + r.detail);
  }
  o.note << "n = 3, 4 and the base case";
  return o;
}

Outcome pointwise() {
  Outcome o;
  int comparisons = 0, edges = 0;
  for (const char* file : {"grothendieck_satisfying.cat", "grothendieck_violating.cat"}) {
    const SpanMap p = suite_map(file);
    const int n1 = p.source().groupoid(1)->size();
    std::vector<std::vector<char>> markings = {std::vector<char>(n1, 1), generated_marking(p.source(), {})};
    for (int e : designated_spans(p)) {
      markings.push_back(generated_marking(p.source(), {e}));
      if (markings.size() > 4) break;
    }
    const auto d2 = standard_simplex(2, 3);
    for (const auto& mk : markings)
      for (auto kind : {SubKind::Horn, SubKind::Spine, SubKind::Boundary}) {
        const auto r = pointwise_crosscheck(p, mk, named_subcomplex(kind, d2, 0));
        o.require(r.agree(), std::string(file) + " " + r.detail);
        ++comparisons;
        edges += static_cast<int>(r.per_edge.size());
      }
  }
  o.note << comparisons << " comparisons over " << edges << " marked edges, all agree";
  return o;
}

Outcome main_theorem() {
  Outcome o;
  const auto good = verify_thm_main(suite_map("grothendieck_satisfying.cat"));
  for (const auto& c : good.checks) o.require(c.verdict == Verdict::Pass, "satisfying: " + c.name + " ");
  for (const char* name : {"H1 cocartesian lifts of ingressives", "H2 square condition", "C1 inner fibration",
                           "C2 cocartesian (quasicategory model)", "C2 cocartesian (Segal model)",
                           "C3 Segal verdict implies quasicategory verdict"})
    o.require(good.find(name) != nullptr, std::string("missing ") + name);
  const auto bad = verify_thm_main(suite_map("grothendieck_violating.cat"));
  const auto* h2 = bad.find("H2 square condition");
  o.require(h2 && h2->verdict == Verdict::Fail && h2->witness, "violating: H2 ");
  bool designated_fails = false;
  for (const char* name : {"C2 cocartesian (quasicategory model)", "C2 cocartesian (Segal model)"}) {
    const auto* c = bad.find(name);
    designated_fails = designated_fails || (c && (c->verdict == Verdict::Fail || c->verdict == Verdict::NotEntailedFail));
  }
  o.require(designated_fails, "violating: no designated span fails ");
  if (h2 && h2->witness) o.note << "violating H2 witness: " << *h2->witness;
  return o;
}

SpanMap suite_identity(const std::string& file) {
  const auto lib = load_library(suite(file));
  const Triple& t = lib.triples.at(lib.triple_order.front());
  return SpanMap(t, t, Functor::identity(t.cat));
}

Outcome cross_model() {
  Outcome o;
  int edges = 0, segal = 0, implication = 0, orbit = 0;
  // finset3 is left out: Span at bound 3 does not fit in memory.
  const std::vector<std::function<SpanMap()>> maps = {
      [] { return suite_map("grothendieck_satisfying.cat"); },
      [] { return suite_map("grothendieck_violating.cat"); },
      [] { return suite_identity("terminal.cat"); },
      [] { return suite_identity("walking_arrow.cat"); },
      [] { return suite_identity("walking_iso.cat"); },
      [] { return suite_identity("finset2.cat"); },
      [] { return suite_identity("divisor12.cat"); }};
  for (const auto& make : maps) {
    const SpanMap p = make();
    const auto f = p.simplicial_map(3);
    const auto g1 = p.source().groupoid(1);
    const auto& comp = g1->components();
    std::map<int, std::pair<bool, bool>> seen;
    for (int e = 0; e < g1->size(); ++e) {
      ++edges;
      const bool s = is_cocartesian_segal(p, e);
      const bool q = is_cocartesian_qcat(f, e, 3, false).ok;
      segal += s;
      if (s && !q) ++implication;
      auto [it, fresh] = seen.emplace(comp[e], std::make_pair(s, q));
      if (!fresh && it->second != std::make_pair(s, q)) ++orbit;
    }
  }
  o.require(implication == 0 && orbit == 0, "counterexamples ");
  o.note << edges << " edges, " << segal << " Segal-cocartesian, " << implication << " implication and " << orbit
         << " orbit counterexamples";
  return o;
}

Outcome pipeline() {
  Outcome o;
  const auto r = factorization_pipeline_check(suite_map("grothendieck_satisfying.cat"));
  for (const auto& c : r.checks) o.require(c.verdict == Verdict::Pass, c.name + " " + c.witness.value_or(""));
  o.require(r.checks.size() == 5, "expected five comparison functors ");
  o.note << r.checks.size() << " comparison functors";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"sigma posets and subdivision", 1, sigma_and_sd},
      {"box product adjunctions", 30, adjunctions},
      {"span quasicategories", 300, span_quasicategory},
      {"spans with equivalences", 60, equivalence_examples},
      {"left spine decomposition", 1, left_spine},
      {"pointwise marked trivial fibrations", 300, pointwise},
      {"main theorem end to end", 600, main_theorem},
      {"cross-model coherence", 600, cross_model},
      {"factorization pipeline", 120, pipeline},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note << "exception: " << e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s < criteria[i].limit_s;
    const bool ok = o.ok && in_time;
    failed += !ok;
    std::printf("%s %zu %s (%.2fs, limit %.0fs): %s%s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].name, s,
                criteria[i].limit_s, o.note.str().c_str(), in_time ? "" : " [over time limit]");
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
