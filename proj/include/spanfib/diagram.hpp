#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "spanfib/fincat.hpp"

namespace spanfib {

// Finite groupoids whose objects are diagrams of a fixed shape in a finite
// category and whose morphisms are natural isomorphisms. Everything used to
// model spaces of diagrams (columns of span Segal spaces, fibres, pullbacks)
// is built from these.

enum class VertexRule : unsigned char {
  Free,      // any isomorphism
  Frozen,    // only identities
  Vertical,  // isomorphisms sent to identities by p
};

struct Shape {
  struct Triangle {
    int e01, e12, e02;  // mor[e02] = mor[e12] ∘ mor[e01]
  };
  // Equalizer constraint between isomorphism components of two vertices,
  // each optionally pushed forward along p.
  struct Link {
    int v1;
    bool p1;
    int v2;
    bool p2;
  };

  std::vector<int> key;  // external vertex keys (e.g. poset elements), -1 if none
  std::vector<std::string> names;
  std::vector<char> lower;  // vertex lives in the lower category
  std::vector<VertexRule> rule;
  std::vector<std::pair<int, int>> edges;
  std::vector<Triangle> triangles;
  std::vector<Link> links;

  // Filled by finalize().
  std::vector<std::vector<int>> classes;  // link classes
  std::vector<int> class_of;
  std::vector<std::vector<int>> incident;  // edges touching each vertex

  int size() const { return static_cast<int>(key.size()); }
  int vertex_with_key(int k) const;
  int edge_between(int a, int b) const;
  void finalize();

 private:
  std::unordered_map<long long, int> edge_index_;
};

using ShapePtr = std::shared_ptr<const Shape>;

// Shape of a subcomplex of the nerve of a poset whose simplices are keyed by
// chains of elements: vertices, nondegenerate edges and triangles.
ShapePtr shape_of(const Subcomplex& s, const std::vector<std::string>& element_names = {});

struct Diagram {
  std::vector<int> ob, mor;
  bool operator==(const Diagram&) const = default;
  bool operator<(const Diagram& o) const { return ob != o.ob ? ob < o.ob : mor < o.mor; }
};

struct DiagramHash {
  std::size_t operator()(const Diagram& d) const;
};

// The categories diagrams live in, shared by every groupoid of one check.
struct Ambient {
  CatPtr upper;
  CatPtr lower;
  std::optional<Functor> p;  // upper -> lower
  // Isomorphisms out of each object.
  std::vector<std::vector<int>> upper_isos, lower_isos;
};
using AmbientPtr = std::shared_ptr<const Ambient>;

AmbientPtr make_ambient(CatPtr upper, CatPtr lower = nullptr, std::optional<Functor> p = std::nullopt);

using Family = std::vector<int>;  // one isomorphism per vertex

class DiagramGroupoid {
 public:
  DiagramGroupoid(std::string name, ShapePtr shape, AmbientPtr ambient, std::vector<Diagram> objects);

  const std::string& name() const { return name_; }
  const Shape& shape() const { return *shape_; }
  const ShapePtr& shape_ptr() const { return shape_; }
  const AmbientPtr& ambient() const { return ambient_; }
  const Category& cat_at(int v) const;
  int size() const { return static_cast<int>(objects_.size()); }
  const Diagram& object(int i) const { return objects_[i]; }
  const std::vector<Diagram>& objects() const { return objects_; }
  std::optional<int> find(const Diagram& d) const;

  // Isomorphisms allowed at vertex v out of object a, by the vertex rule.
  std::vector<int> isos_at(int v, int a) const;
  bool links_hold(const Family& f, const std::vector<char>* assigned = nullptr) const;
  Diagram act(const Diagram& x, const Family& f) const;
  Family identity(const Diagram& x) const;

  // Families supported on one link class, excluding the identity.
  std::vector<Family> moves(const Diagram& x, int cls) const;
  std::vector<Family> automorphisms(const Diagram& x, std::size_t limit = 0) const;
  std::optional<Family> isomorphism(const Diagram& x, const Diagram& y) const;

  // Component id per object, ids in order of first appearance.
  const std::vector<int>& components() const;
  int num_components() const;

 private:
  std::string name_;
  ShapePtr shape_;
  AmbientPtr ambient_;
  std::vector<Diagram> objects_;
  std::unordered_map<Diagram, int, DiagramHash> index_;
  mutable std::vector<int> comp_;
  mutable int ncomp_ = -1;
};

using GroupoidPtr = std::shared_ptr<const DiagramGroupoid>;

// Functor between diagram groupoids given by reading vertices and edges of the
// target shape off the source diagram, optionally through p.
struct DiagramFunctor {
  struct VertexSlot {
    int v;
    bool via_p;
  };
  struct EdgeSlot {
    int e;  // -1: identity
    bool via_p;
  };
  GroupoidPtr src, tgt;
  std::vector<VertexSlot> vslots;
  std::vector<EdgeSlot> eslots;

  Diagram apply(const Diagram& x) const;
  Family apply(const Family& f) const;
  std::optional<int> image(int x) const;
  // g ∘ this
  DiagramFunctor then(const DiagramFunctor& g) const;

  // Target vertex w reads source vertex vertex_map[w]; edges follow.
  static DiagramFunctor along(GroupoidPtr src, GroupoidPtr tgt, const std::vector<int>& vertex_map, bool via_p);
  // Vertices matched by key.
  static DiagramFunctor restriction(GroupoidPtr src, GroupoidPtr tgt);
  // Same shape, every slot through p.
  static DiagramFunctor postcompose(GroupoidPtr src, GroupoidPtr tgt);
  // Vertex and edge slots copied from a functor into a larger shape whose
  // first vertices and edges are those of tgt (offset by `voff`, `eoff` in src).
  static DiagramFunctor projection(GroupoidPtr src, GroupoidPtr tgt, int voff, int eoff);
};

struct CheckResult {
  bool ok = true;
  std::string witness;
  explicit operator bool() const { return ok; }
};

CheckResult check_equivalence(const DiagramFunctor& f);
CheckResult check_isofibration(const DiagramFunctor& f);
// Surjective on objects and fully faithful.
CheckResult check_trivial_fibration(const DiagramFunctor& f);
CheckResult check_contractible(const DiagramGroupoid& g);

struct StrictPullback {
  GroupoidPtr groupoid;
  DiagramFunctor to_left, to_right;  // projections to the sources of f and g
};
// Pullback of f: A -> C and g: B -> C; shape is A's followed by B's.
StrictPullback strict_pullback(const DiagramFunctor& f, const DiagramFunctor& g, const std::string& name);

// Induced functor into the pullback from a: X -> A and b: X -> B.
DiagramFunctor pairing(const StrictPullback& p, const DiagramFunctor& a, const DiagramFunctor& b);

// Strict fibre of f over the target object y.
GroupoidPtr fiber(const DiagramFunctor& f, int y);

// Objects and natural isomorphisms restricted to those objects satisfying pred.
GroupoidPtr filtered(const DiagramGroupoid& g, const std::function<bool(const Diagram&)>& pred,
                     const std::string& name);

std::string describe(const DiagramGroupoid& g, const Diagram& d);

// All diagrams of a shape. `edge_masks`, when given, restricts each edge to
// the morphisms with a nonzero entry (a null pointer leaves an edge free).
std::vector<Diagram> enumerate_diagrams(const Shape& shape, const Ambient& ambient,
                                        const std::vector<const MorphismMask*>& edge_masks = {});

// Endpoints match the shape's edges and triangles commute.
bool is_diagram(const Shape& shape, const Ambient& ambient, const Diagram& d);

}  // namespace spanfib
