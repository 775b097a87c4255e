#include "doctest.h"

#include <random>

#include "spanfib/bisimp.hpp"
#include "spanfib/fincat.hpp"

using namespace spanfib;

namespace {

// Brute force: every assignment of the top-level cells, checked as a map.
std::size_t brute_force_count(const BisetPtr& src, const BisetPtr& tgt) {
  const auto& s = src->cells();
  const auto& t = tgt->cells();
  std::vector<std::pair<int, int>> free;
  for (int L = 0; L < s.levels(); ++L)
    for (int x = 0; x < s.count[L]; ++x) free.push_back({L, x});
  CellMap m(s.levels());
  for (int L = 0; L < s.levels(); ++L) m[L].assign(s.count[L], 0);
  std::size_t found = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == free.size()) {
      found += is_cell_map(s, t, m);
      return;
    }
    auto [L, x] = free[i];
    for (int v = 0; v < t.count[L]; ++v) {
      m[L][x] = v;
      // Faces into already-assigned lower cells must agree.
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

}  // namespace

TEST_CASE("box product sizes and identities") {
  auto d0 = standard_simplex(0, 2);
  auto d1 = standard_simplex(1, 2);
  auto pt = box(d0, d0);
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n) CHECK(pt->size(m, n) == 1);
  auto b = box(d1, standard_simplex(0, 1));
  CHECK(b->size(1, 0) == 3);
  CHECK(b->size(2, 1) == d1->size(2) * 1);
  CHECK(b->identity_violations().empty());
  auto h = named_subcomplex(SubKind::Horn, 2, 1, 2).realize().set;
  CHECK(box(h, d1)->identity_violations().empty());
}

TEST_CASE("grid nerves") {
  auto wi = walking_iso();
  auto wa = walking_arrow();
  auto x = grid_nerve(*wi, 2, 2, true);
  CHECK(x->identity_violations().empty());
  CHECK(x->size(0, 0) == wi->num_objects());
  CHECK(x->size(1, 0) == wi->num_morphisms());
  auto y = grid_nerve(*wa, 2, 2, false);
  CHECK(y->identity_violations().empty());
  // monotone maps [1] x [1] -> [1]: up-sets of the square
  CHECK(y->size(1, 1) == 6);
  // vertical isomorphisms in [1] are identities
  CHECK(grid_nerve(*wa, 2, 2, true)->size(1, 2) == wa->num_morphisms());
}

TEST_CASE("maps out of representables are elements") {
  auto x = grid_nerve(*walking_iso(), 2, 2, true);
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 1; ++n) {
      auto rep = box(standard_simplex(m, 2), standard_simplex(n, 2));
      MapProblem p;
      p.src = &rep->cells();
      p.tgt = &x->cells();
      CHECK(count_maps(p) == static_cast<std::size_t>(x->size(m, n)));
    }
  auto small = box(standard_simplex(1, 1), standard_simplex(0, 1));
  auto tgt = grid_nerve(*walking_arrow(), 1, 1, false);
  MapProblem p;
  p.src = &small->cells();
  p.tgt = &tgt->cells();
  CHECK(count_maps(p) == brute_force_count(small, tgt));
}

TEST_CASE("columns and rows via divisions") {
  auto x = grid_nerve(*walking_iso(), 2, 2, true);
  auto col = under(standard_simplex(0, 2), x);
  auto row = over(x, standard_simplex(0, 2));
  for (int k = 0; k <= 2; ++k) {
    CHECK(col.set->size(k) == x->size(0, k));
    CHECK(row.set->size(k) == x->size(k, 0));
  }
  // A^♭ \ X agrees with the unmarked division
  auto a = named_subcomplex(SubKind::Horn, 2, 0, 2).realize().set;
  MarkedBiset xm{x, generated_marking(*x, {})};
  auto flat = under(MarkedSSet{a, flat_marking(*a)}, xm);
  auto plain = under(a, x);
  for (int k = 0; k <= 2; ++k) CHECK(flat.set->size(k) == plain.set->size(k));
}

TEST_CASE("box adjunctions") {
  auto wa = walking_arrow();
  auto x = grid_nerve(*wa, 2, 2, false);
  auto y = grid_nerve(*walking_iso(), 2, 2, true);
  auto a = standard_simplex(1, 2);
  auto b = named_subcomplex(SubKind::Horn, 2, 0, 2).realize().set;
  for (const auto& tgt : {x, y}) {
    auto w = adjunction_witness(a, b, tgt);
    CHECK(w.ok());
    CHECK(w.box_maps == brute_force_count(box(a, b), tgt));
  }
  // A = Δ⁰: Hom(Δ⁰ □ B, X) = Hom(B, X_0)
  auto w0 = adjunction_witness(standard_simplex(0, 2), b, x);
  CHECK(w0.ok());
  CHECK(w0.under_maps == count_maps(b, x->column(0)));
}

TEST_CASE("marked box adjunctions against filtering") {
  auto x = grid_nerve(*walking_arrow(), 2, 2, false);
  auto a = standard_simplex(1, 2);
  auto b = named_subcomplex(SubKind::Spine, 2, 0, 2).realize().set;
  const MarkedSSet as{a, sharp_marking(*a)};
  const Marking xm = flat_marking(*x);
  auto w = adjunction_witness(as, b, MarkedBiset{x, xm});
  CHECK(w.ok());
  // filter the unmarked maps by the marking condition
  auto ab = box(a, b);
  const Marking abm = marked_box(as, b);
  MapProblem p;
  p.src = &ab->cells();
  p.tgt = &x->cells();
  std::size_t respecting = 0;
  search_maps(p, [&](const CellMap& m) {
    respecting += preserves_marking(BisimplicialMap{ab, x, m}, abm, xm);
    return true;
  });
  CHECK(w.box_maps == respecting);
  CHECK(w.box_maps < adjunction_witness(a, b, x).box_maps);
}

TEST_CASE("markings") {
  auto x = grid_nerve(*walking_iso(), 2, 2, true);
  auto flat = flat_marking(*x);
  CHECK(contains_degenerates(*x, flat));
  CHECK(contains_degenerates(*x, sharp_marking(*x)));
  auto gen = generated_marking(*x, {});
  CHECK(respects_path_components(*x, gen));
  // every morphism of the walking iso is connected to an identity
  CHECK(std::count(gen.begin(), gen.end(), 1) == x->size(1, 0));
  auto d2 = standard_simplex(2, 2);
  auto l = left_marked(Subcomplex::full(d2));
  CHECK(std::count(l.marked.begin(), l.marked.end(), 1) == 3 + 1);
  auto lb = marked_box(l, standard_simplex(1, 2));
  CHECK(std::count(lb.begin(), lb.end(), 1) == (3 + 1) * 2);
  CHECK_THROWS(left_marked(named_subcomplex(SubKind::Face, 2, 1, 2)));
}

TEST_CASE("pair maps") {
  auto x = grid_nerve(*walking_iso(), 2, 2, true);
  auto f = map_to_terminal(x);
  auto d1 = standard_simplex(1, 2);
  // u identity: ⟨u \ f⟩ is an isomorphism
  auto pid = pair_under(SimplicialMap::identity(d1), f);
  for (int k = 0; k <= 2; ++k) CHECK(pid.map.source->size(k) == pid.map.target->size(k));
  CHECK(pid.map.injective());
  // f identity
  auto u = named_subcomplex(SubKind::Boundary, 1, 0, 2).realize().inclusion;
  auto pf = pair_under(u, BisimplicialMap::identity(x));
  CHECK(pf.map.injective());
  for (int k = 0; k <= 2; ++k) CHECK(pf.map.source->size(k) == pf.map.target->size(k));
  // adjoint lifting problems
  for (auto kind : {SubKind::Boundary, SubKind::Horn}) {
    auto v = named_subcomplex(kind, 2, 0, 2).realize().inclusion;
    auto lhs = lifting_count(v, pair_under(u, f));
    auto rhs = lifting_count(pushout_product(u, v), f);
    CHECK(lhs == rhs);
    CHECK(lhs.squares > 0);
  }
  SimplicialMap collapse{d1, standard_simplex(0, 2), {{0, 0}, {0, 0, 0}, {0, 0, 0, 0}}};
  CHECK_THROWS(pair_under(collapse, f));
}

TEST_CASE("Reedy fibrations") {
  auto x = grid_nerve(*walking_iso(), 2, 2, true);
  CHECK(is_reedy_fibration(map_to_terminal(x), 2));
  CHECK(is_reedy_fibration(BisimplicialMap::identity(x), 2));
  CHECK(is_reedy_fibration(map_to_terminal(grid_nerve(*finset_skeleton(1), 2, 2, true)), 2));
  // {0} ⊆ Δ¹ in the vertical direction misses the horn Λ¹₁
  auto d0 = standard_simplex(0, 1);
  auto v0 = simplex_subcomplex(standard_simplex(1, 1), {{0}}).realize();
  auto incl = box_map(SimplicialMap::identity(d0), v0.inclusion);
  std::string w;
  CHECK_FALSE(is_reedy_fibration(incl, 1, &w));
  CHECK(!w.empty());
}

TEST_CASE("fixed edge spaces") {
  auto x = grid_nerve(*walking_iso(), 2, 2, true);
  auto d2 = standard_simplex(2, 2);
  auto e01 = simplex_subcomplex(d2, {{0, 1}});
  for (int e = 0; e < x->size(1, 0); ++e) {
    auto fe = fixed_edge_space(e01, x, e);
    for (int k = 0; k <= 2; ++k) CHECK(fe.set->size(k) == 1);
  }
  // degenerate e and A = Δ²: diagrams with an identity on 01
  const int ide = x->hdegen(0, 0, 0, 0);
  auto fe = fixed_edge_space(Subcomplex::full(d2), x, ide);
  int expected = 0;
  for (int s = 0; s < x->size(2, 0); ++s) {
    // the 01 face of the 2-simplex
    expected += x->hface(2, 0, 2, s) == ide;
  }
  CHECK(fe.set->size(0) == expected);
  CHECK_THROWS(fixed_edge_space(named_subcomplex(SubKind::Face, 2, 1, 2), x, 0));
}

TEST_CASE("pointwise criterion in the raw model") {
  auto wi = walking_iso();
  auto x = grid_nerve(*wi, 2, 2, true);
  auto f = map_to_terminal(x);
  for (auto kind : {SubKind::Horn, SubKind::Spine}) {
    auto a = named_subcomplex(kind, 2, 0, 2);
    for (const auto& mk : {sharp_marking(*x), flat_marking(*x)}) {
      auto r = pointwise_crosscheck(f, mk, a);
      CHECK(r.agree());
    }
  }
  auto y = grid_nerve(*walking_arrow(), 2, 2, true);
  auto r = pointwise_crosscheck(map_to_terminal(y), sharp_marking(*y), named_subcomplex(SubKind::Horn, 2, 0, 2));
  CHECK(r.agree());
  CHECK_FALSE(r.left);
  // only degenerate edges marked: every fibre sits over an identity
  auto rf = pointwise_crosscheck(map_to_terminal(y), flat_marking(*y), named_subcomplex(SubKind::Horn, 2, 0, 2));
  CHECK(rf.agree());
  CHECK(rf.left);
  CHECK(static_cast<int>(rf.per_edge.size()) == y->size(0, 0));
}

TEST_CASE("left spine factorization") {
  auto wa = walking_arrow();
  for (int n : {3, 4}) {
    auto r = left_spine_factorization_check(n, {nerve(*wa, n), nerve(*walking_iso(), n)});
    CHECK(r.horn_decomposition);
    CHECK(r.spine_pushout);
    CHECK(r.join_attachment);
    CHECK(r.base_case);
  }
  CHECK_THROWS(left_spine_factorization_check(2, {}));
}

TEST_CASE("randomized adjunction counts") {
  std::mt19937 rng(7);
  auto wa = walking_arrow();
  auto x = grid_nerve(*wa, 2, 2, false);
  for (int round = 0; round < 6; ++round) {
    auto d = standard_simplex(2, 2);
    std::vector<std::vector<int>> sets;
    for (std::vector<int> s : {std::vector<int>{0, 1}, {1, 2}, {0, 2}, {0, 1, 2}})
      if (rng() % 2) sets.push_back(s);
    if (sets.empty()) sets.push_back({0});
    auto a = simplex_subcomplex(d, sets).realize().set;
    auto b = named_subcomplex(SubKind::Spine, 1 + static_cast<int>(rng() % 2), 0, 2).realize().set;
    auto w = adjunction_witness(a, b, x);
    CHECK(w.ok());
  }
}
