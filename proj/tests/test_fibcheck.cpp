#include "doctest.h"

#include "spanfib/fibcheck.hpp"
#include "spanfib/subdiv.hpp"

using namespace spanfib;

namespace {

SpanMap satisfying() {
  const auto w = walking_iso();
  auto g = grothendieck_over_arrow(w, w, Functor::identity(w));
  return SpanMap(Triple::all_all(g.total), Triple::all_all(g.projection.target), g.projection);
}

SpanMap violating() {
  const auto c2 = chain_category(2), c1 = chain_category(1);
  return SpanMap(Triple::all_all(c2), Triple::all_all(c1), functor_to_thin(c2, c1, {0, 0, 1}));
}

SpanMap identity_on(const CatPtr& c, bool isos) {
  const Triple t = isos ? Triple::all_isos(c) : Triple::all_all(c);
  return SpanMap(t, t, Functor::identity(c));
}

bool is_degenerate_edge(const SpanMap& p, int e) {
  return p.simplicial_map(2).source->degenerate(1, e);
}

}  // namespace

TEST_CASE("homotopy pullback squares") {
  const auto g = functor_groupoid(make_ambient(walking_iso()), 0);
  auto sh = std::make_shared<Shape>(g->shape());
  sh->rule[0] = VertexRule::Frozen;
  sh->finalize();
  const auto disc = std::make_shared<DiagramGroupoid>("discrete", sh, g->ambient(), g->objects());
  const auto id = DiagramFunctor::restriction(g, g);
  const auto ids = DiagramFunctor::restriction(disc, disc);
  const auto inc = DiagramFunctor::restriction(disc, g);

  GroupoidSquare sq{id, id, id, id, true, false};
  CHECK(homotopy_pullback_check(sq));
  sq.right_isofibration = false;
  CHECK_THROWS_AS(homotopy_pullback_check(sq), Refusal);

  // disc -> g over disc -> g along identities: a pullback.
  GroupoidSquare a{inc, ids, id, inc, true, false};
  CHECK(square_commutes(a));
  CHECK(homotopy_pullback_check(a));
  // The inclusion is not an isofibration, so claiming it is gets refused.
  GroupoidSquare b{ids, inc, inc, id, true, false};
  CHECK_THROWS_AS(homotopy_pullback_check(b), Refusal);
}

TEST_CASE("degenerate edges are cocartesian in both models") {
  for (auto make : {satisfying, violating}) {
    const SpanMap p = make();
    const auto f = p.simplicial_map(3);
    for (int e = 0; e < f.source->size(1); ++e) {
      if (!is_degenerate_edge(p, e)) continue;
      CHECK(is_cocartesian_segal(p, e));
      CHECK(is_cocartesian_qcat(f, e, 3, false));
    }
  }
}

TEST_CASE("verdicts are invariant along isomorphisms of spans") {
  for (auto make : {satisfying, violating}) {
    const SpanMap p = make();
    const auto f = p.simplicial_map(3);
    const auto g1 = p.source().groupoid(1);
    const auto& comp = g1->components();
    std::map<int, std::pair<bool, bool>> seen;
    for (int e = 0; e < g1->size(); ++e) {
      const bool s = is_cocartesian_segal(p, e);
      const bool q = is_cocartesian_qcat(f, e, 3, false).ok;
      auto [it, fresh] = seen.emplace(comp[e], std::make_pair(s, q));
      if (!fresh) CHECK(it->second == std::make_pair(s, q));
    }
  }
}

TEST_CASE("quasicategory cocartesian edges of nerves") {
  const auto c2 = chain_category(2), c1 = chain_category(1);
  const auto w = walking_iso();
  for (const auto& p : {functor_to_thin(c2, c1, {0, 0, 1}), functor_to_thin(c2, c1, {0, 1, 1}),
                        grothendieck_over_arrow(w, w, Functor::identity(w)).projection}) {
    const auto ns = nerve(*p.source, 3), nt = nerve(*p.target, 3);
    const auto m = nerve_map(p, ns, nt);
    CHECK(is_quasicategory(ns, 3));
    CHECK(is_inner_fibration_qcat(m, 3));
    for (int f = 0; f < p.source->num_morphisms(); ++f) {
      const int e = *ns->find(1, ns->key(1, f));
      CHECK_MESSAGE(is_cocartesian_qcat(m, e, 3).ok == is_cocartesian_1cat(p, f), p.source->morphisms[f]);
    }
  }
}

TEST_CASE("Segal verdict implies quasicategory verdict") {
  for (auto make : {satisfying, violating, +[] { return identity_on(walking_arrow(), false); }}) {
    const SpanMap p = make();
    const auto f = p.simplicial_map(3);
    for (int e = 0; e < f.source->size(1); ++e)
      if (is_cocartesian_segal(p, e)) CHECK(is_cocartesian_qcat(f, e, 3));
  }
}

TEST_CASE("Segal check refuses bad horns") {
  const auto p = identity_on(walking_arrow(), false);
  SegalCocartesian sc(p);
  const auto d2 = standard_simplex(2, 3);
  // Λ²₂ misses Δ^{01}.
  CHECK_THROWS(sc.check(0, named_subcomplex(SubKind::Horn, d2, 2)));
  CHECK(sc.check(0, named_subcomplex(SubKind::Horn, d2, 0)).ok == sc.check(0).ok);
}

TEST_CASE("main verifier") {
  const auto ok = verify_thm_main(identity_on(walking_arrow(), false));
  CHECK(ok.passed());
  const auto sat = verify_thm_main(satisfying());
  CHECK(sat.passed());
  for (const auto& c : sat.checks) CHECK(c.verdict == Verdict::Pass);

  const auto bad = verify_thm_main(violating());
  CHECK_FALSE(bad.passed());
  const auto* h2 = bad.find("H2 square condition");
  REQUIRE(h2);
  CHECK(h2->verdict == Verdict::Fail);
  REQUIRE(h2->witness);
  CHECK(h2->witness->find("m_0_1") != std::string::npos);
  const auto* c2 = bad.find("C2 cocartesian (Segal model)");
  REQUIRE(c2);
  CHECK(c2->verdict == Verdict::NotEntailedFail);
}

TEST_CASE("designated spans") {
  CHECK(designated_spans(satisfying()).size() == 40);
  CHECK(designated_spans(violating()).size() == 7);
}

TEST_CASE("variant verifier") {
  CHECK(verify_thm_new_barwick(identity_on(walking_arrow(), false)).passed());
  CHECK(verify_thm_new_barwick(satisfying()).passed());
  const auto r = verify_thm_new_barwick(identity_on(walking_arrow(), true));
  const auto* v1 = r.find("V1 egressives are the cartesian morphisms");
  REQUIRE(v1);
  CHECK(v1->verdict == Verdict::Fail);
}

TEST_CASE("factorization pipeline") {
  const auto shapes = factorization_shapes();
  REQUIRE(shapes.size() == 6);
  for (std::size_t k = 0; k < shapes.size(); ++k) {
    CHECK(shapes[k].labels.size() == shapes[k].shape->edges.size());
    if (k) CHECK(shapes[k].shape->edges.size() > shapes[k - 1].shape->edges.size());
  }
  CHECK(shapes[0].shape->size() == 5);
  CHECK(shapes[5].shape->size() == 6);
  CHECK(factorization_pipeline_check(satisfying()).passed());
  CHECK(factorization_pipeline_check(identity_on(walking_arrow(), false)).passed());
}

TEST_CASE("report serialization") {
  const auto r = verify_thm_main(identity_on(walking_arrow(), false));
  const std::string j = r.to_json();
  const auto pos = [&](const char* k) { return j.find(k); };
  CHECK(pos("\"report\"") < pos("\"passed\""));
  CHECK(pos("\"passed\"") < pos("\"checks\""));
  CHECK(pos("\"name\"") < pos("\"paper_anchor\""));
  CHECK(pos("\"paper_anchor\"") < pos("\"bound\""));
  CHECK(pos("\"bound\"") < pos("\"verdict\""));
  CHECK(pos("\"verdict\"") < pos("\"millis\""));
  CHECK(verdict_name(Verdict::NotEntailedPass) == "pass/not-entailed");
  CHECK(r.to_text().find("H1") != std::string::npos);
}
