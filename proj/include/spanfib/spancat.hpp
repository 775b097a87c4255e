#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "spanfib/diagram.hpp"
#include "spanfib/subdiv.hpp"

namespace spanfib {

// Diagrams Σₙ -> C are Diagrams on sigma_shape(n): one object per element of
// Σₙ (in element order) and one morphism per comparable pair a < b.
ShapePtr sigma_shape(int n, bool lower = false);

struct SigmaDiagram {
  int n = 0;
  Diagram d;
  bool operator==(const SigmaDiagram&) const = default;
};

// Builds the full relation table from objects and Hasse generators:
// back[e]: (i,j) -> (i,j-1), fwd[e]: (i,j) -> (i+1,j), indexed by element
// (entries for width-0 elements are ignored). Throws std::invalid_argument
// when generators have wrong endpoints or squares fail to commute.
SigmaDiagram sigma_from_generators(const Category& c, int n, const std::vector<int>& ob,
                                   const std::vector<int>& back, const std::vector<int>& fwd);
int sigma_back(const SigmaDiagram& x, int i, int j);
int sigma_fwd(const SigmaDiagram& x, int i, int j);

// Every square (i,j),(i,j-l),(i+k,j),(i+k,j-l) is an ambigressive pullback.
bool is_acart(const Triple& t, const SigmaDiagram& x, std::string* witness = nullptr);

// Precomposition with the map Σ_m -> Σₙ induced by alpha: [m] -> [n].
SigmaDiagram reindex(const Category& c, const SigmaDiagram& x, const std::vector<int>& alpha);
// Morphism of x between comparable elements a <= b (identity when a == b).
int sigma_relation(const Category& c, const SigmaDiagram& x, int a, int b);
std::vector<int> face_alpha(int n, int i);   // δ_i: [n-1] -> [n]
std::vector<int> degen_alpha(int n, int i);  // σ_i: [n+1] -> [n]

// Composite of two spans through the chosen pullback of the inner cospan (the
// second choice picks the greatest apex and legs). Only that pullback has to
// exist. Throws std::invalid_argument otherwise or when s1, s2 do not compose.
SigmaDiagram compose_spans(const Triple& t, const SigmaDiagram& s1, const SigmaDiagram& s2, bool second_choice = false);

// Span(t) and SPAN(t) of an adequate triple. Levels and groupoids are built
// on demand and cached.
class SpanCategory {
 public:
  // Throws std::invalid_argument for an inadequate triple. When `ambient` is
  // given the diagrams live in its lower category if `lower` is set.
  explicit SpanCategory(Triple t, AmbientPtr ambient = nullptr, bool lower = false);

  const Triple& triple() const { return t_; }
  const Category& category() const { return *t_.cat; }
  const AmbientPtr& ambient() const { return amb_; }
  bool lower() const { return lower_; }
  ShapePtr shape(int n) const;

  // aCart diagrams Σₙ -> C, sorted.
  const std::vector<Diagram>& level(int n) const;
  std::optional<int> find(int n, const Diagram& d) const;
  SigmaDiagram member(int n, int x) const { return {n, level(n)[x]}; }

  // Span(t) truncated at `bound`, keyed by ob ++ mor.
  SSetPtr simplicial_set(int bound) const;
  // SPAN(t)_n.
  GroupoidPtr groupoid(int n) const;
  // A \ SPAN(t) for a subcomplex A of Δⁿ: diagrams on sd(A) that are aCart on
  // every simplex, with natural isomorphisms.
  GroupoidPtr under(const Subcomplex& a, const std::string& name) const;
  // Groupoid functor G_n -> G_m of alpha: [m] -> [n].
  DiagramFunctor structure_functor(int n, const std::vector<int>& alpha) const;

  // Σ₂ diagram with the chosen pullback as apex; d_1 of it is the composite.
  SigmaDiagram compose(const SigmaDiagram& s1, const SigmaDiagram& s2, bool second_choice = false) const;

 private:
  Triple t_;
  AmbientPtr amb_;
  bool lower_;
  mutable std::map<int, std::vector<Diagram>> levels_;
  mutable std::map<int, std::unordered_map<Diagram, int, DiagramHash>> index_;
  mutable std::map<int, SSetPtr> ssets_;
  mutable std::map<int, GroupoidPtr> groupoids_;
  mutable std::map<long long, std::vector<Cone>> squares_;
  const std::vector<Cone>& pullback_cones(int f, int g) const;
};

// Preservation of ingressives, egressives and ambigressive pullbacks.
std::vector<std::string> triple_functor_violations(const Functor& p, const Triple& c, const Triple& d);

// Span(p) and SPAN(p) for a functor of adequate triples.
class SpanMap {
 public:
  // Throws std::invalid_argument listing violations when p is not a functor
  // of adequate triples.
  SpanMap(Triple c, Triple d, Functor p);

  const SpanCategory& source() const { return *src_; }
  const SpanCategory& target() const { return *tgt_; }
  const Functor& functor() const { return *amb_->p; }
  const AmbientPtr& ambient() const { return amb_; }

  Diagram apply(const Diagram& x) const;
  SimplicialMap simplicial_map(int bound) const;
  // Post-composition between diagram groupoids of the same shape.
  DiagramFunctor on(GroupoidPtr src, GroupoidPtr tgt) const { return DiagramFunctor::postcompose(src, tgt); }

 private:
  AmbientPtr amb_;
  std::unique_ptr<SpanCategory> src_, tgt_;
};

struct SimplicialGroupoid {
  std::vector<GroupoidPtr> levels;
  std::vector<std::vector<DiagramFunctor>> faces;   // faces[m][i]: G_m -> G_{m-1}
  std::vector<std::vector<DiagramFunctor>> degens;  // degens[m][i]: G_m -> G_{m+1}

  int bound() const { return static_cast<int>(levels.size()) - 1; }
  std::vector<std::string> identity_violations() const;
};

SimplicialGroupoid span_segal_space(const SpanCategory& s, int bound);
// Level m = objects of G_m.
SSetPtr zeroth_row(const SimplicialGroupoid& g);

enum class EmbeddingVariant { BackwardIso, ForwardIso };

struct EmbeddingLevel {
  int n = 0;
  bool retraction_identity = false;  // r_n ∘ i_n = id
  CheckResult equivalence;           // i_n
  int source_objects = 0, target_objects = 0;
};

struct EmbeddingReport {
  std::vector<EmbeddingLevel> levels;
  bool ok() const;
};

// Fun([n], C)^≅ as a diagram groupoid on the shape of Δⁿ.
GroupoidPtr functor_groupoid(const AmbientPtr& amb, int n);

// i_n: Fun([n], C)^≅ -> SPAN_n for the triple with isomorphisms on the given
// leg, via the standard (backward) or mirrored (forward) retraction pair.
EmbeddingReport equivalence_embedding(const CatPtr& c, EmbeddingVariant variant, int up_to);

}  // namespace spanfib
