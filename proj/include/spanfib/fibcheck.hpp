#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spanfib/bisimp.hpp"
#include "spanfib/diagram.hpp"
#include "spanfib/spancat.hpp"

namespace spanfib {

// Raised when a check would have to run outside the model it is valid in.
struct Refusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Essentially surjective and fully faithful, by enumeration.
bool groupoid_equivalence(const DiagramFunctor& f);

// a --top--> b
// |          |
// left     right
// v          v
// c --bottom-> d
struct GroupoidSquare {
  DiagramFunctor top, left, right, bottom;
  // Legs claimed to be isofibrations; verified before use.
  bool right_isofibration = false, bottom_isofibration = false;
};

CheckResult square_commutes(const GroupoidSquare& sq);
// Comparison a -> b ×_d c is an equivalence. Throws Refusal when the square
// does not commute or no designated leg is an isofibration.
CheckResult homotopy_pullback_check(const GroupoidSquare& sq);

// Segal-model cocartesianness in SPAN(p). The constructor checks that the
// spine functors G_n -> G_1 ×_{G_0} ... ×_{G_0} G_1 are equivalences for
// n <= segal_bound on both sides and throws Refusal otherwise.
class SegalCocartesian {
 public:
  explicit SegalCocartesian(const SpanMap& p, int segal_bound = 2);

  // Square (Δ²\X)^e -> (Λ²₀\X)^e over (Δ²\Y)^{p e} -> (Λ²₀\Y)^{p e}.
  CheckResult check(int e) const;
  // Same square with Δⁿ and a subcomplex A ⊆ Δⁿ containing Δ^{01}.
  CheckResult check(int e, const Subcomplex& a) const;
  GroupoidSquare square(int e, const Subcomplex& a) const;

  const SpanMap& map() const { return *p_; }

 private:
  struct Side {
    GroupoidPtr whole;
    DiagramFunctor edge;
  };
  const Side& side(bool source, const Subcomplex& a) const;

  const SpanMap* p_;
  mutable std::map<std::pair<bool, std::vector<std::vector<char>>>, Side> cache_;
};

bool is_cocartesian_segal(const SpanMap& p, int e);

// Inner horn fillers up to `up_to`.
CheckResult is_quasicategory(const SSetPtr& x, int up_to);
CheckResult is_inner_fibration_qcat(const SimplicialMap& f, int up_to);
// Every Λⁿ₀ -> source with first edge e over an n-simplex of the target
// extends, 2 <= n <= up_to. With `check_pre` both ends are first checked to
// be quasicategories (Refusal otherwise).
CheckResult is_cocartesian_qcat(const SimplicialMap& f, int e, int up_to, bool check_pre = true);

// --- reports ---------------------------------------------------------------

enum class Verdict { Pass, Fail, NotEntailedPass, NotEntailedFail, Refused };
std::string verdict_name(Verdict v);

struct CheckRecord {
  std::string name;
  std::string anchor;
  int bound = 0;
  Verdict verdict = Verdict::Pass;
  std::optional<std::string> witness;
  double millis = 0;
};

struct VerificationReport {
  std::string name;
  std::vector<CheckRecord> checks;

  const CheckRecord* find(const std::string& check) const;
  // Every record passes (entailed or not).
  bool passed() const;
  std::string to_json() const;
  std::string to_text() const;
};

struct VerifyOptions {
  int qcat_bound = 3;
  int segal_bound = 2;
  bool replay = true;  // the n = 3 left spine square
};

// Spans x <- y -> x' of the designated shape: left leg egressive and cartesian
// for p restricted to egressives, right leg ingressive and p-cocartesian.
// Indices into G_1 (equivalently Span(p) edges) of the source.
std::vector<int> designated_spans(const SpanMap& p);

VerificationReport verify_thm_main(const SpanMap& p, const VerifyOptions& opt = {});
VerificationReport verify_thm_new_barwick(const SpanMap& p, const VerifyOptions& opt = {});

// Labelled shapes A₁ ⊆ ... ⊆ A₆ on Σ₂ and the comparison functors j₁..j₅.
struct LabelledShape {
  ShapePtr shape;
  // Per edge: bit flags from EdgeLabel.
  std::vector<unsigned> labels;
};
enum EdgeLabel : unsigned {
  kIngressive = 1,
  kEgressive = 2,
  kCocartesian = 4,              // p-cocartesian
  kEgressiveCartesian = 8,       // cartesian for p restricted to egressives
  kIngressiveCocartesian = 16,   // cocartesian for p restricted to ingressives
};
std::vector<LabelledShape> factorization_shapes();
VerificationReport factorization_pipeline_check(const SpanMap& p);

}  // namespace spanfib
