#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spanfib/cells.hpp"

namespace spanfib {

inline constexpr int kDefaultBound = 4;
inline constexpr int kMaxBound = 6;

using Key = std::vector<int>;

// Truncated simplicial set: levels 0..bound, faces d_0..d_k on level k,
// degeneracies s_0..s_k on level k when k < bound.
class SimplicialSet {
 public:
  int bound() const { return bound_; }
  int size(int k) const { return cells_.count[k]; }
  int face(int k, int i, int x) const { return cells_.faces[k][i].table[x]; }
  int degen(int k, int i, int x) const { return cells_.degens[k][i].table[x]; }
  bool degenerate(int k, int x) const { return cells_.degenerate(k, x); }
  std::vector<int> nondegenerate(int k) const;
  int count_nondegenerate(int k) const;
  const CellTables& cells() const { return cells_; }

  // Present for sets built from keys; empty otherwise.
  bool keyed() const { return !keys_.empty(); }
  const Key& key(int k, int x) const { return keys_[k][x]; }
  std::optional<int> find(int k, const Key& key) const;
  std::string label(int k, int x) const;

  // Vertices 0..k of a simplex, as vertex indices.
  std::vector<int> vertices(int k, int x) const;

  // Violations of the simplicial identities, one line each; empty when valid.
  std::vector<std::string> identity_violations() const;

  using KeyGen = std::function<std::vector<Key>(int k)>;
  using KeyOp = std::function<Key(int k, int i, const Key&)>;
  // Builds from keyed generators. face(k, i, key) is a key at level k-1 and
  // degen(k, i, key) a key at level k+1; both must land in the generated sets.
  static std::shared_ptr<const SimplicialSet> from_keys(int bound, const KeyGen& gen,
                                                        const KeyOp& face, const KeyOp& degen);
  static std::shared_ptr<const SimplicialSet> from_tables(
      int bound, std::vector<int> counts, std::vector<std::vector<std::vector<int>>> faces,
      std::vector<std::vector<std::vector<int>>> degens);

 private:
  void install(int bound, std::vector<int> counts, std::vector<std::vector<std::vector<int>>> faces,
               std::vector<std::vector<std::vector<int>>> degens);

  int bound_ = 0;
  CellTables cells_;
  std::vector<std::vector<Key>> keys_;
  std::vector<std::map<Key, int>> index_;
  std::vector<std::string> names_;
  friend struct Subcomplex;

 public:
  // Optional names for the entries of keys, used by label().
  std::shared_ptr<const SimplicialSet> with_names(std::vector<std::string> names) const;
};

using SSetPtr = std::shared_ptr<const SimplicialSet>;

struct SimplicialMap {
  SSetPtr source;
  SSetPtr target;
  CellMap at;

  bool valid() const;
  bool injective() const;
  static SimplicialMap identity(const SSetPtr& x);
  // (*this) after g, i.e. x -> at(g.at(x)).
  SimplicialMap after(const SimplicialMap& g) const;
  bool operator==(const SimplicialMap& o) const { return at == o.at; }
};

struct Subcomplex {
  SSetPtr ambient;
  std::vector<std::vector<char>> member;

  bool contains(int k, int x) const { return member[k][x] != 0; }
  int size(int k) const;
  bool closed() const;
  bool operator==(const Subcomplex& o) const { return member == o.member; }
  bool subset_of(const Subcomplex& o) const;

  // The subcomplex as a simplicial set of its own, with the inclusion.
  struct Realized {
    SSetPtr set;
    SimplicialMap inclusion;
  };
  Realized realize() const;

  static Subcomplex empty(const SSetPtr& ambient);
  static Subcomplex full(const SSetPtr& ambient);
  // Smallest subcomplex containing the given (level, index) simplices.
  static Subcomplex generated(const SSetPtr& ambient, const std::vector<std::pair<int, int>>& gens);
  // Image of a map, as a subcomplex of its target.
  static Subcomplex image(const SimplicialMap& m);
};

Subcomplex unite(const Subcomplex& a, const Subcomplex& b);
Subcomplex intersect(const Subcomplex& a, const Subcomplex& b);

// Δⁿ: level k = weakly monotone maps [k] -> [n], keyed by their value lists.
SSetPtr standard_simplex(int n, int bound = kDefaultBound);

enum class SubKind { Boundary, Horn, Spine, LeftSpine, Face, Full };

// Subcomplex of Δⁿ whose simplices are those with image inside one of the
// given vertex sets.
Subcomplex simplex_subcomplex(const SSetPtr& delta_n, const std::vector<std::vector<int>>& vertex_sets);
// `k` is the horn index or the face index; ignored otherwise.
Subcomplex named_subcomplex(SubKind kind, int n, int k = 0, int bound = kDefaultBound);
Subcomplex named_subcomplex(SubKind kind, const SSetPtr& delta_n, int k = 0);
// Maximal vertex sets generating a named subcomplex of Δⁿ.
std::vector<std::vector<int>> named_vertex_sets(SubKind kind, int n, int k = 0);

// All maps a -> x, sorted.
std::vector<SimplicialMap> enumerate_maps(const SSetPtr& a, const SSetPtr& x);
std::size_t count_maps(const SSetPtr& a, const SSetPtr& x);

struct LiftingSquare {
  SimplicialMap i;       // A -> B
  SimplicialMap f;       // X -> Y
  SimplicialMap top;     // A -> X
  SimplicialMap bottom;  // B -> Y
};

// All fillers h : B -> X with h i = top and f h = bottom.
// Throws std::invalid_argument when the square does not commute or i is not injective.
std::vector<SimplicialMap> solve_lifting(const LiftingSquare& sq, std::size_t limit = 0);

enum class HornFamily { Boundaries, Horns, InnerHorns, LeftHorns };

struct RlpFailure {
  int n = 0;
  std::string generator;  // e.g. "horn(3,1)"
  int bottom = -1;        // n-simplex of the target
  CellMap top;            // map from the generator into the source
};

// The unique map Δⁿ -> y picking out the n-simplex s.
SimplicialMap yoneda_map(const SSetPtr& delta_n, const SSetPtr& y, int n, int s);

std::optional<RlpFailure> rlp_failure(const SimplicialMap& f, HornFamily family, int up_to);
bool has_rlp(const SimplicialMap& f, HornFamily family, int up_to);

// Generators of a family in dimension n: (name, subcomplex of Δⁿ).
std::vector<std::pair<std::string, Subcomplex>> family_generators(HornFamily family, int n, int bound);

SSetPtr terminal_sset(int bound = kDefaultBound);
SimplicialMap map_to_terminal(const SSetPtr& x);

}  // namespace spanfib
