#include "doctest.h"

#include "spanfib/fincat.hpp"
#include "spanfib/simpset.hpp"

using namespace spanfib;

TEST_CASE("standard simplex counts") {
  auto d2 = standard_simplex(2);
  CHECK(d2->size(1) == 6);
  CHECK(d2->count_nondegenerate(1) == 3);
  CHECK(standard_simplex(4)->count_nondegenerate(4) == 1);
  auto d0 = standard_simplex(0);
  for (int k = 0; k <= d0->bound(); ++k) {
    CHECK(d0->size(k) == 1);
    CHECK(d0->degenerate(k, 0) == (k > 0));
  }
}

namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("standard simplices against closed forms") {
  for (int n = 0; n <= 4; ++n) {
    auto d = standard_simplex(n, 4);
    CHECK(d->identity_violations().empty());
    for (int k = 0; k <= 4; ++k) {
      // weakly monotone [k] -> [n]
      CHECK(d->size(k) == binom(n + k + 1, k + 1));
      CHECK(d->count_nondegenerate(k) == binom(n + 1, k + 1));
    }
  }
}

TEST_CASE("maps between simplices are monotone maps") {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) CHECK(count_maps(standard_simplex(m, 3), standard_simplex(n, 3)) == binom(n + m + 1, m + 1));
}

TEST_CASE("named subcomplexes") {
  auto horn = named_subcomplex(SubKind::Horn, 2, 0, 2);
  CHECK(horn.closed());
  CHECK(horn.size(0) == 3);
  auto r = horn.realize();
  CHECK(r.set->count_nondegenerate(1) == 2);
  CHECK(r.set->count_nondegenerate(2) == 0);
  CHECK(r.inclusion.valid());
  CHECK(r.inclusion.injective());

  auto d3 = standard_simplex(3, 3);
  auto bd = named_subcomplex(SubKind::Boundary, d3);
  CHECK(bd.realize().set->count_nondegenerate(2) == 4);
  for (int k = 0; k <= 3; ++k) CHECK(named_subcomplex(SubKind::Horn, d3, k).subset_of(bd));
  auto spine = named_subcomplex(SubKind::Spine, d3);
  CHECK(spine.realize().set->count_nondegenerate(1) == 3);
  CHECK(intersect(spine, named_subcomplex(SubKind::Horn, d3, 1)) == spine);
  CHECK(unite(spine, bd) == bd);
  CHECK_THROWS(unite(spine, named_subcomplex(SubKind::Boundary, 3, 0, 3)));
  auto ls = named_subcomplex(SubKind::LeftSpine, d3);
  // Δ^{01} plus the spine 0 -> 2 -> 3 of d₁Δ³
  CHECK(ls.realize().set->count_nondegenerate(1) == 3);
  CHECK(ls.contains(1, *ls.ambient->find(1, {0, 1})));
  CHECK(ls.contains(1, *ls.ambient->find(1, {0, 2})));
  CHECK(ls.contains(1, *ls.ambient->find(1, {2, 3})));
}

TEST_CASE("nerves fill inner horns uniquely") {
  for (const auto& c : {walking_arrow(), walking_iso(), chain_category(2), divisor_lattice(12), finset_skeleton(2)}) {
    auto x = nerve(*c, 3);
    CHECK(x->identity_violations().empty());
    CHECK(has_rlp(map_to_terminal(x), HornFamily::InnerHorns, 3));
    const auto pt = terminal_sset(3);
    for (int n = 2; n <= 3; ++n)
      for (auto& [name, gen] : family_generators(HornFamily::InnerHorns, n, 3)) {
        const auto r = gen.realize();
        const SimplicialMap bottom = map_to_terminal(gen.ambient);
        for (const auto& top : enumerate_maps(r.set, x)) {
          LiftingSquare sq{r.inclusion, map_to_terminal(x), top, bottom};
          CHECK_MESSAGE(solve_lifting(sq).size() == 1, c->name << " " << name);
        }
      }
  }
}

TEST_CASE("kan condition separates groupoids from categories") {
  CHECK(has_rlp(map_to_terminal(nerve(*walking_iso(), 3)), HornFamily::Horns, 3));
  CHECK_FALSE(has_rlp(map_to_terminal(nerve(*walking_arrow(), 3)), HornFamily::Horns, 2));
  auto fail = rlp_failure(map_to_terminal(nerve(*walking_arrow(), 3)), HornFamily::Horns, 2);
  REQUIRE(fail.has_value());
  CHECK(fail->n == 2);
}

TEST_CASE("lifting squares must commute") {
  auto x = nerve(*walking_arrow(), 2);
  auto gen = named_subcomplex(SubKind::Boundary, 1, 0, 2);
  auto r = gen.realize();
  auto maps = enumerate_maps(r.set, x);
  // top picks both endpoints at object 0 while the bottom edge is the arrow 0 -> 1
  const auto a = *x->find(1, {*walking_arrow()->morphism("a")});
  for (const auto& top : maps) {
    if (top.at[0][0] != 0 || top.at[0][1] != 0) continue;
    LiftingSquare sq{r.inclusion, SimplicialMap::identity(x), top, yoneda_map(gen.ambient, x, 1, a)};
    CHECK_THROWS_AS(solve_lifting(sq), std::invalid_argument);
  }
}

TEST_CASE("maps from a horn are composable pairs") {
  auto c = divisor_lattice(12);
  auto r = named_subcomplex(SubKind::Horn, 2, 1, 2).realize();
  std::size_t pairs = 0;
  for (int g = 0; g < c->num_morphisms(); ++g)
    for (int f = 0; f < c->num_morphisms(); ++f) pairs += c->comp[g][f] >= 0;
  CHECK(count_maps(r.set, nerve(*c, 2)) == pairs);
}
