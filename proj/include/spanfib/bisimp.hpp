#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spanfib/cells.hpp"
#include "spanfib/simpset.hpp"
#include "spanfib/spancat.hpp"

namespace spanfib {

// Truncated bisimplicial set X_{mn}, m <= hbound, n <= vbound. Bidegree
// (m, n) is cell level m * (vbound + 1) + n; on each level the horizontal
// operators come first, then the vertical ones.
class BisimplicialSet {
 public:
  int hbound() const { return M_; }
  int vbound() const { return V_; }
  int level(int m, int n) const { return m * (V_ + 1) + n; }
  int size(int m, int n) const { return cells_.count[level(m, n)]; }
  int hface(int m, int n, int i, int x) const { return cells_.faces[level(m, n)][i].table[x]; }
  int vface(int m, int n, int j, int x) const { return cells_.faces[level(m, n)][(m > 0 ? m + 1 : 0) + j].table[x]; }
  int hdegen(int m, int n, int i, int x) const { return cells_.degens[level(m, n)][i].table[x]; }
  int vdegen(int m, int n, int j, int x) const {
    return cells_.degens[level(m, n)][(m < M_ ? m + 1 : 0) + j].table[x];
  }
  const CellTables& cells() const { return cells_; }

  // Row X_{•n} and column X_{m•}.
  SSetPtr row(int n) const;
  SSetPtr column(int m) const;

  std::vector<std::string> identity_violations() const;

  // tables[m][n] indexed like the operators: hface[m][n][i][x] etc.
  using Tables = std::vector<std::vector<std::vector<std::vector<int>>>>;
  static std::shared_ptr<const BisimplicialSet> from_tables(int M, int V, std::vector<std::vector<int>> counts,
                                                            Tables hface, Tables vface, Tables hdegen,
                                                            Tables vdegen);

 private:
  int M_ = 0, V_ = 0;
  CellTables cells_;
  Tables hf_, vf_, hd_, vd_;
};

using BisetPtr = std::shared_ptr<const BisimplicialSet>;

struct BisimplicialMap {
  BisetPtr source, target;
  CellMap at;

  bool valid() const { return is_cell_map(source->cells(), target->cells(), at); }
  bool injective() const;
  BisimplicialMap after(const BisimplicialMap& g) const;
  static BisimplicialMap identity(const BisetPtr& x);
};

// Box product with (X □ Y)_{mn} = X_m × Y_n, cell (x, y) at index x |Y_n| + y.
BisetPtr box(const SSetPtr& x, const SSetPtr& y);
BisimplicialMap box_map(const SimplicialMap& u, const SimplicialMap& v);
BisimplicialMap box_map(const SimplicialMap& u, const SimplicialMap& v, const BisetPtr& src, const BisetPtr& tgt);

// (m, n) -> functors [m] × [n] -> C; with `vertical_isos` the vertical arrows
// are isomorphisms and X_{m•} is the nerve of Fun([m], C)^≅.
BisetPtr grid_nerve(const Category& c, int M, int V, bool vertical_isos);
BisetPtr terminal_biset(int M, int V);
BisimplicialMap map_to_terminal(const BisetPtr& x);

// Markings: one flag per 1-simplex of a simplicial set, or per element of
// X_{10} of a bisimplicial set.
using Marking = std::vector<char>;

struct MarkedSSet {
  SSetPtr set;
  Marking marked;
};
struct MarkedBiset {
  BisetPtr set;
  Marking marked;
};

Marking flat_marking(const SimplicialSet& a);
Marking sharp_marking(const SimplicialSet& a);
Marking flat_marking(const BisimplicialSet& x);
Marking sharp_marking(const BisimplicialSet& x);
// A ⊆ Δⁿ realized, with only Δ^{01} marked among nondegenerate edges.
// Throws std::invalid_argument when A misses Δ^{01}.
MarkedSSet left_marked(const Subcomplex& a);
// Degenerate edges, e, and everything connected to them through X_{11}.
Marking generated_marking(const BisimplicialSet& x, const std::vector<int>& edges);
bool contains_degenerates(const SimplicialSet& a, const Marking& m);
bool contains_degenerates(const BisimplicialSet& x, const Marking& m);
// Marked-ness is constant along every element of X_{11}.
bool respects_path_components(const BisimplicialSet& x, const Marking& m);
// Marking on A □ B: (a, b) ∈ A_1 × B_0 is marked iff a is.
Marking marked_box(const MarkedSSet& a, const SSetPtr& b);

// Every marked cell of the source lands on a marked cell of the target.
bool preserves_marking(const BisimplicialMap& f, const Marking& src, const Marking& tgt);
bool preserves_marking(const SimplicialMap& f, const Marking& src, const Marking& tgt);

// A \ X (levels: maps A □ Δⁿ -> X) or X / B (levels: maps Δᵐ □ B -> X), with
// the maps kept for lookup. For X / B of a marked X, `marked` holds the
// induced marking.
struct Division {
  SSetPtr set;
  std::vector<BisetPtr> boxes;          // A □ Δⁿ or Δᵐ □ B per level
  std::vector<std::vector<CellMap>> maps;
  Marking marked;
  std::optional<int> find(int level, const CellMap& m) const;

  std::vector<std::map<CellMap, int>> index;
};

Division under(const SSetPtr& a, const BisetPtr& x);
Division under(const MarkedSSet& a, const MarkedBiset& x);
Division over(const BisetPtr& x, const SSetPtr& b);
Division over(const MarkedBiset& x, const SSetPtr& b);

// u \ X: A' \ X -> A \ X and X / v likewise, by precomposition.
SimplicialMap restrict_under(const SimplicialMap& u, const Division& big, const Division& small);
SimplicialMap restrict_over(const SimplicialMap& v, const Division& big, const Division& small);
// A \ f: A \ X -> A \ Y and f / B, by postcomposition.
SimplicialMap push_under(const BisimplicialMap& f, const Division& dx, const Division& dy);
SimplicialMap push_over(const BisimplicialMap& f, const Division& dx, const Division& dy);

struct SSetPullback {
  SSetPtr set;
  SimplicialMap left, right;  // projections
  // Induced map from a cone (a, b).
  SimplicialMap pair(const SimplicialMap& a, const SimplicialMap& b) const;

  std::vector<std::map<std::pair<int, int>, int>> index;
};
SSetPullback pullback(const SimplicialMap& f, const SimplicialMap& g);

// Counts and the element-wise bijections of the box adjunctions.
struct AdjunctionWitness {
  std::size_t box_maps = 0;    // Hom(A □ B, X)
  std::size_t under_maps = 0;  // Hom(B, A \ X)
  std::size_t over_maps = 0;   // Hom(A, X / B)
  bool left_inverse = true;    // Ψ Φ = id and Φ Ψ = id
  bool right_inverse = true;   // Ψ' Φ' = id and Φ' Ψ' = id
  std::string failure;
  bool ok() const {
    return left_inverse && right_inverse && box_maps == under_maps && box_maps == over_maps && failure.empty();
  }
};
// Both adjunctions of the unmarked box product.
AdjunctionWitness adjunction_witness(const SSetPtr& a, const SSetPtr& b, const BisetPtr& x);
// Marked box product with A marked and X marked.
AdjunctionWitness adjunction_witness(const MarkedSSet& a, const SSetPtr& b, const MarkedBiset& x);

// ⟨u \ f⟩: A' \ X -> A \ X ×_{A \ Y} A' \ Y.
struct PairMap {
  SimplicialMap map;
  SSetPullback corner;
  Division big_x, small_x, big_y, small_y;
};
// Throws std::invalid_argument for a non-injective u.
PairMap pair_under(const SimplicialMap& u, const BisimplicialMap& f);
// ⟨f / v⟩: X / B' -> X / B ×_{Y / B} Y / B'.
PairMap pair_over(const BisimplicialMap& f, const SimplicialMap& v);
PairMap pair_under(const SimplicialMap& u, const BisimplicialMap& f, const Marking& ua, const Marking& ub,
                   const Marking& fx, const Marking& fy);

// u ⊙′ v: A □ B' ∪ A' □ B ⊆ A' □ B' for injective u: A -> A', v: B -> B'.
struct PushoutProduct {
  BisetPtr source;  // the union, realized
  BisetPtr target;  // A' □ B'
  BisimplicialMap inclusion;
};
PushoutProduct pushout_product(const SimplicialMap& u, const SimplicialMap& v);

// Squares from v into ⟨u \ f⟩ against squares from u ⊙′ v into f.
struct LiftingCount {
  std::size_t squares = 0, fillers = 0, unfillable = 0;
  bool operator==(const LiftingCount&) const = default;
};
LiftingCount lifting_count(const SimplicialMap& v, const PairMap& pu);
LiftingCount lifting_count(const PushoutProduct& uv, const BisimplicialMap& f);

// ⟨∂Δᵐ ⊆ Δᵐ \ f⟩ is a Kan fibration (horns up to the vertical bound) for
// m <= up_to. `witness` names the first failure.
bool is_reedy_fibration(const BisimplicialMap& f, int up_to, std::string* witness = nullptr);

// (A \ X)^e: maps A □ Δᵐ -> X equal to e on Δ^{01} □ Δᵐ. A is a subcomplex of
// Δⁿ; throws std::invalid_argument when it misses Δ^{01}.
struct FixedEdgeSpace {
  Division whole;  // A \ X
  Subcomplex fiber;
  SSetPtr set;
  SimplicialMap inclusion;
};
FixedEdgeSpace fixed_edge_space(const Subcomplex& a, const BisetPtr& x, int e);

// Both sides of the pointwise criterion for a trivial fibration, raw model:
// (1) ⟨i^L \ f⟩ trivial fibration, Y sharp; (2) p_e trivial fibration for
// every marked e.
struct PointwiseReport {
  bool left = false;
  std::vector<std::pair<int, bool>> per_edge;  // (e, p_e verdict)
  bool right() const;
  bool agree() const { return left == right(); }
  std::string detail;
};
PointwiseReport pointwise_crosscheck(const BisimplicialMap& f, const Marking& x_marked, const Subcomplex& a);

// The same comparison in the groupoid model of SPAN(p), for A ⊆ Δⁿ and the
// edges of G_1 of the source flagged in `marked`.
PointwiseReport pointwise_crosscheck(const SpanMap& p, const std::vector<char>& marked, const Subcomplex& a);
// Vertices of a diagram on sd(A) ⊆ Σₙ lying over Σ₁ = sd(Δ^{01}), in Σ₁ order.
// Throws std::invalid_argument when A misses Δ^{01}.
std::vector<int> edge_vertex_map(const DiagramGroupoid& g, int n);
// Components of G_1 meeting `edges` or a degenerate edge.
std::vector<char> generated_marking(const SpanCategory& s, const std::vector<int>& edges);

struct SpineReport {
  int n = 0;
  bool horn_decomposition = false;  // Λⁿ₀ = Lₙ ∪ d₁Δⁿ ∪ Q
  bool spine_pushout = false;       // Lₙ ∩ d₁Δⁿ = spine of d₁Δⁿ, hom-set pushout
  bool join_attachment = false;     // Q and its attachment as joins with Δ^{01}
  bool base_case = false;           // L₂ = Λ²₀
  std::string detail;
  bool ok() const { return horn_decomposition && spine_pushout && join_attachment && base_case; }
};
// Hom-set checks run against the given targets.
SpineReport left_spine_factorization_check(int n, const std::vector<SSetPtr>& targets);

// Subcomplex of Δⁿ of simplices whose vertex set meets {2..n} in a face of K
// (K given by vertex sets inside {2..n}; the empty face is always allowed).
Subcomplex join_with_edge(const SSetPtr& delta_n, const std::vector<std::vector<int>>& k, bool with_vertex_one);

}  // namespace spanfib
