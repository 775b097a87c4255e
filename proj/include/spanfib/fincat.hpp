#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "spanfib/simpset.hpp"

namespace spanfib {

// Unvalidated category description, as read from a file or built in code.
struct RawCategory {
  struct Morphism {
    std::string name, src, tgt;
    int line = 0;
  };
  struct Composite {
    std::string g, f, h;  // g ∘ f = h
    int line = 0;
  };
  std::string name;
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<Composite> composites;
};

class Category {
 public:
  std::string name;
  std::vector<std::string> objects;
  std::vector<std::string> morphisms;
  std::vector<int> src, tgt;
  std::vector<int> id;                      // per object
  std::vector<std::vector<int>> comp;       // comp[g][f] = g∘f, -1 if not composable
  std::vector<std::vector<std::vector<int>>> homs;  // homs[a][b], ascending
  std::vector<int> inverse;                 // -1 when not invertible

  int num_objects() const { return static_cast<int>(objects.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms.size()); }
  int compose(int g, int f) const { return comp[g][f]; }
  bool is_identity(int m) const { return id[src[m]] == m; }
  bool is_iso(int m) const { return inverse[m] >= 0; }
  std::optional<int> object(const std::string& n) const;
  std::optional<int> morphism(const std::string& n) const;
  const std::vector<int>& hom(int a, int b) const { return homs[a][b]; }

  std::unordered_map<std::string, int> obj_index, mor_index;
};

using CatPtr = std::shared_ptr<const Category>;

struct CategoryValidation {
  CatPtr cat;  // null when violations is nonempty
  std::vector<std::string> violations;
  bool ok() const { return cat != nullptr; }
};

// Identities id_<object> are implicit, with their unit-law composites.
CategoryValidation validate_category(const RawCategory& raw);
// validate_category that throws std::invalid_argument listing the violations.
CatPtr make_category(const RawCategory& raw);

using MorphismMask = std::vector<char>;

struct Functor {
  CatPtr source, target;
  std::vector<int> obj, mor;
  std::string name;

  std::vector<std::string> violations() const;
  static Functor identity(const CatPtr& c);
  Functor after(const Functor& g) const;  // this ∘ g
};

struct Triple {
  CatPtr cat;
  MorphismMask ingressive, egressive;
  std::string name;

  static Triple all_all(const CatPtr& c);
  static Triple all_isos(const CatPtr& c);  // ingressive = all, egressive = isomorphisms
  static Triple isos_all(const CatPtr& c);  // ingressive = isomorphisms, egressive = all
  std::vector<std::string> violations() const;
};

MorphismMask all_morphisms(const Category& c);
MorphismMask iso_morphisms(const Category& c);

// Cospan y --f--> x <--g-- x'. Square apex y' with f': y' -> x', g': y' -> y.
struct Square {
  int apex = -1;
  int f_prime = -1;
  int g_prime = -1;
  int f = -1;
  int g = -1;
};

struct Cone {
  int apex, to_y, to_xp;
};

struct PullbackSquare {
  Square square;
  struct Mediation {
    Cone cone;
    int mediator;
  };
  std::vector<Mediation> certificate;  // every cone over the cospan
};

bool commutes(const Category& c, const Square& s);
// Cones over the cospan (f, g), in (apex, to_y, to_xp) order.
std::vector<Cone> cones(const Category& c, int f, int g);
bool is_pullback(const Category& c, const Square& s);
std::optional<PullbackSquare> compute_pullback(const Category& c, int f, int g);
// Replays a certificate: every cone has exactly the recorded mediator.
bool replay_certificate(const Category& c, const PullbackSquare& p);

// Chosen pullbacks of a category, memoized. The second choice variant picks
// the greatest object index and greatest legs instead.
class PullbackChooser {
 public:
  explicit PullbackChooser(CatPtr c, bool reverse = false) : c_(std::move(c)), reverse_(reverse) {}
  const std::optional<Square>& get(int f, int g) const;
  const Category& category() const { return *c_; }

 private:
  CatPtr c_;
  bool reverse_;
  mutable std::unordered_map<long long, std::optional<Square>> memo_;
};

// Ambigressive: f' and f ingressive, g' and g egressive, and a pullback.
bool is_ambigressive_pullback(const Triple& t, const Square& s);

struct AdequacyReport {
  bool ok = true;
  std::vector<std::string> witnesses;
};
AdequacyReport is_adequate(const Triple& t);

// The cocartesian test quantifies over f'', g in `src_mask` and h in `tgt_mask`
// when given (restriction of p to subcategories).
bool is_cocartesian_1cat(const Functor& p, int f, const MorphismMask* src_mask = nullptr,
                         const MorphismMask* tgt_mask = nullptr);
bool is_cartesian_1cat(const Functor& p, int f, const MorphismMask* src_mask = nullptr,
                       const MorphismMask* tgt_mask = nullptr);

CatPtr core(const Category& c);
CatPtr opposite(const Category& c);

// Nerve truncated at `bound`. Level 0 keys are {object}; level k keys are
// chains of k composable morphism indices.
SSetPtr nerve(const Category& c, int bound = kDefaultBound);
// Nerve map of a functor, on nerves built with the same bound.
SimplicialMap nerve_map(const Functor& p, const SSetPtr& src_nerve, const SSetPtr& tgt_nerve);
std::string chain_label(const Category& c, int k, const Key& key);

// Catalog of small categories.
CatPtr terminal_category();
CatPtr walking_arrow();
CatPtr walking_iso();
CatPtr chain_category(int n);  // the poset [n]
CatPtr divisor_lattice(int n);
CatPtr finset_skeleton(int max);
CatPtr product(const Category& a, const Category& b);

struct Grothendieck {
  CatPtr total;
  Functor projection;  // total -> [1]
};
// Total category of a functor phi: A -> B viewed as a diagram over [1].
Grothendieck grothendieck_over_arrow(const CatPtr& a, const CatPtr& b, const Functor& phi);

// Functor between two categories determined by a map on objects; the
// morphism map sends a -> b to the unique morphism in the target hom-set.
// Only valid for thin targets.
Functor functor_to_thin(const CatPtr& src, const CatPtr& tgt, const std::vector<int>& obj);
Functor functor_to_terminal(const CatPtr& src);

}  // namespace spanfib
