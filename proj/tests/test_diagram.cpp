#include "doctest.h"

#include "spanfib/diagram.hpp"
#include "spanfib/spancat.hpp"

using namespace spanfib;

namespace {

GroupoidPtr level(const CatPtr& c, int n) { return functor_groupoid(make_ambient(c), n); }

// Same objects, identities only.
GroupoidPtr discrete(const GroupoidPtr& g) {
  auto sh = std::make_shared<Shape>(g->shape());
  for (auto& r : sh->rule) r = VertexRule::Frozen;
  sh->finalize();
  return std::make_shared<DiagramGroupoid>("discrete", sh, g->ambient(), g->objects());
}

}  // namespace

TEST_CASE("functor groupoids") {
  CHECK(level(walking_iso(), 0)->size() == 2);
  CHECK(level(walking_iso(), 0)->num_components() == 1);
  CHECK(level(walking_iso(), 1)->size() == 4);
  CHECK(level(walking_arrow(), 1)->size() == 3);
  CHECK(level(walking_arrow(), 1)->num_components() == 3);
  CHECK(level(chain_category(2), 2)->size() == 10);
}

TEST_CASE("equivalences of diagram groupoids") {
  const auto g = level(walking_iso(), 0);
  CHECK(check_equivalence(DiagramFunctor::restriction(g, g)));
  CHECK(check_isofibration(DiagramFunctor::restriction(g, g)));

  // Discrete {0, 1} into 0 ≅ 1: bijective on objects, not full.
  const auto d = discrete(g);
  CHECK(d->num_components() == 2);
  const auto inc = DiagramFunctor::restriction(d, g);
  CHECK_FALSE(check_equivalence(inc));
  CHECK_FALSE(check_isofibration(inc));

  // Full subgroupoid on one component.
  const auto f1 = level(walking_arrow(), 1);
  const auto ids = filtered(*f1, [](const Diagram& x) { return x.ob[0] == x.ob[1]; }, "identities");
  CHECK(ids->size() == 2);
  CHECK(check_isofibration(DiagramFunctor::restriction(ids, f1)));

  // Same inclusion for a discrete groupoid with two objects misses a component.
  const auto h = level(chain_category(1), 0);
  const auto one = filtered(*h, [](const Diagram& d) { return d.ob[0] == 0; }, "one");
  const auto r = check_equivalence(DiagramFunctor::restriction(one, h));
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("evaluation functors") {
  // Fun([1], C)^≅ -> C^≅ at the source vertex.
  const auto fi = level(walking_iso(), 1), gi = level(walking_iso(), 0);
  const auto ev_iso = DiagramFunctor::along(fi, gi, {0}, false);
  CHECK(check_equivalence(ev_iso));
  CHECK(check_isofibration(ev_iso));
  CHECK(check_trivial_fibration(ev_iso));

  const auto fa = level(walking_arrow(), 1), ga = level(walking_arrow(), 0);
  const auto ev_arrow = DiagramFunctor::along(fa, ga, {0}, false);
  CHECK(check_isofibration(ev_arrow));
  CHECK_FALSE(check_equivalence(ev_arrow));
  CHECK(fiber(ev_arrow, *ga->find(Diagram{{0}, {}}))->size() == 2);
  CHECK_FALSE(check_contractible(*fiber(ev_arrow, *ga->find(Diagram{{0}, {}}))));
  CHECK(check_contractible(*fiber(ev_iso, 0)));
}

TEST_CASE("strict pullbacks") {
  const auto fa = level(chain_category(2), 1), ga = level(chain_category(2), 0);
  const auto s = DiagramFunctor::along(fa, ga, {0}, false);
  const auto t = DiagramFunctor::along(fa, ga, {1}, false);
  // Composable pairs: target of the first equals source of the second.
  const auto pb = strict_pullback(t, s, "pairs");
  CHECK(pb.groupoid->size() == 10);
  CHECK(pb.to_left.src == pb.groupoid);
  for (int x = 0; x < pb.groupoid->size(); ++x)
    CHECK(t.apply(pb.to_left.apply(pb.groupoid->object(x))) == s.apply(pb.to_right.apply(pb.groupoid->object(x))));

  const auto id = DiagramFunctor::restriction(fa, fa);
  const auto diag = pairing(strict_pullback(id, id, "diag"), id, id);
  CHECK(check_equivalence(diag));
}
