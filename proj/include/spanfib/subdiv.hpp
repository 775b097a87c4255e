#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spanfib/simpset.hpp"

namespace spanfib {

// Σₙ: pairs (i, j), 0 <= i <= j <= n, with (i,j) <= (i',j') iff i <= i' <= j' <= j.
// Elements are indexed by width j - i, then by i.
struct SigmaPoset {
  int n = 0;
  std::vector<std::pair<int, int>> elements;
  std::vector<std::vector<char>> leq;  // leq[a][b]: a <= b

  int size() const { return static_cast<int>(elements.size()); }
  int index(int i, int j) const;
  std::string name(int e) const;  // "ij"
  // Covering relations (a, b) with a < b, in element order.
  std::vector<std::pair<int, int>> hasse() const;
};

SigmaPoset sigma_poset(int n);
int sigma_index(int n, int i, int j);

// Element map Σ_m -> Σ_n induced by a monotone alpha: [m] -> [n], given by its values.
// Throws std::invalid_argument for non-monotone alpha.
std::vector<int> sigma_map(const std::vector<int>& alpha, int n);

// Nerve of Σₙ, keyed by weakly increasing chains of element indices.
SSetPtr sd_full(int n, int bound = kDefaultBound);
// sd(A) as a subcomplex of sd_full(n): chains whose endpoints span a simplex of A.
Subcomplex sd_subcomplex(const SSetPtr& sd_delta, const Subcomplex& a);
// sd(A) as a simplicial set in its own right.
SSetPtr sd(const Subcomplex& a);

// i: Δⁿ -> sd(Δⁿ), r: sd(Δⁿ) -> Δⁿ with r i = id. The standard pair is
// k -> (k, n) and (i, j) -> i; the mirrored pair is k -> (0, n - k) and
// (i, j) -> n - j.
struct RetractionPair {
  SSetPtr delta, sd;
  SimplicialMap i, r;
};
RetractionPair retraction_pair(int n, int bound = kDefaultBound, bool mirrored = false);

// Map of nerves of posets induced by a vertex function (keys are vertex chains).
SimplicialMap chain_map(const SSetPtr& src, const SSetPtr& tgt, const std::vector<int>& vertex_fn);

}  // namespace spanfib
