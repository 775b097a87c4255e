#include "spanfib/subdiv.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace spanfib {

int sigma_index(int n, int i, int j) {
  const int w = j - i;
  // Widths below w contribute (n + 1) + n + ... + (n + 2 - w) elements.
  const int offset = w * (n + 1) - w * (w - 1) / 2;
  return offset + i;
}

int SigmaPoset::index(int i, int j) const { return sigma_index(n, i, j); }

std::string SigmaPoset::name(int e) const {
  return std::to_string(elements[e].first) + std::to_string(elements[e].second);
}

std::vector<std::pair<int, int>> SigmaPoset::hasse() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < size(); ++a) {
    auto [i, j] = elements[a];
    if (i < j) {
      out.push_back({a, index(i, j - 1)});
      out.push_back({a, index(i + 1, j)});
    }
  }
  return out;
}

SigmaPoset sigma_poset(int n) {
  if (n < 0 || n > kMaxBound) throw std::invalid_argument("sigma_poset: n outside 0.." + std::to_string(kMaxBound));
  SigmaPoset s;
  s.n = n;
  for (int w = 0; w <= n; ++w)
    for (int i = 0; i + w <= n; ++i) s.elements.push_back({i, i + w});
  s.leq.assign(s.size(), std::vector<char>(s.size(), 0));
  for (int a = 0; a < s.size(); ++a)
    for (int b = 0; b < s.size(); ++b) {
      auto [i, j] = s.elements[a];
      auto [i2, j2] = s.elements[b];
      s.leq[a][b] = i <= i2 && i2 <= j2 && j2 <= j;
    }
  return s;
}

std::vector<int> sigma_map(const std::vector<int>& alpha, int n) {
  const int m = static_cast<int>(alpha.size()) - 1;
  for (int i = 0; i <= m; ++i) {
    if (alpha[i] < 0 || alpha[i] > n) throw std::invalid_argument("sigma_map: value out of range");
    if (i > 0 && alpha[i] < alpha[i - 1]) throw std::invalid_argument("sigma_map: alpha is not monotone");
  }
  const SigmaPoset src = sigma_poset(m);
  std::vector<int> out(src.size());
  for (int e = 0; e < src.size(); ++e) {
    auto [i, j] = src.elements[e];
    out[e] = sigma_index(n, alpha[i], alpha[j]);
  }
  return out;
}

SSetPtr sd_full(int n, int bound) {
  const SigmaPoset s = sigma_poset(n);
  auto set = SimplicialSet::from_keys(
      bound,
      [s](int k) {
        std::vector<Key> out;
        Key cur;
        std::function<void()> rec = [&]() {
          if (static_cast<int>(cur.size()) == k + 1) {
            out.push_back(cur);
            return;
          }
          for (int e = 0; e < s.size(); ++e)
            if (cur.empty() || s.leq[cur.back()][e]) {
              cur.push_back(e);
              rec();
              cur.pop_back();
            }
        };
        rec();
        return out;
      },
      [](int, int i, const Key& key) {
        Key r = key;
        r.erase(r.begin() + i);
        return r;
      },
      [](int, int i, const Key& key) {
        Key r = key;
        r.insert(r.begin() + i, key[i]);
        return r;
      });
  std::vector<std::string> names;
  for (int e = 0; e < s.size(); ++e) names.push_back(s.name(e));
  return set->with_names(names);
}

Subcomplex sd_subcomplex(const SSetPtr& sd_delta, const Subcomplex& a) {
  const auto& delta = *a.ambient;
  const int n = delta.key(0, delta.size(0) - 1)[0];
  const SigmaPoset s = sigma_poset(n);
  Subcomplex out = Subcomplex::empty(sd_delta);
  for (int k = 0; k <= sd_delta->bound(); ++k)
    for (int x = 0; x < sd_delta->size(k); ++x) {
      std::vector<int> ends;
      for (int e : sd_delta->key(k, x)) {
        ends.push_back(s.elements[e].first);
        ends.push_back(s.elements[e].second);
      }
      std::sort(ends.begin(), ends.end());
      ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
      const int dim = static_cast<int>(ends.size()) - 1;
      if (dim > delta.bound()) throw std::invalid_argument("sd: ambient bound too small for its simplices");
      auto cell = delta.find(dim, ends);
      if (cell && a.contains(dim, *cell)) out.member[k][x] = 1;
    }
  return out;
}

SSetPtr sd(const Subcomplex& a) {
  const auto& delta = *a.ambient;
  const int n = delta.key(0, delta.size(0) - 1)[0];
  auto full = sd_full(n, delta.bound());
  return sd_subcomplex(full, a).realize().set;
}

SimplicialMap chain_map(const SSetPtr& src, const SSetPtr& tgt, const std::vector<int>& vertex_fn) {
  SimplicialMap m{src, tgt, {}};
  m.at.resize(src->bound() + 1);
  for (int k = 0; k <= src->bound(); ++k)
    for (int x = 0; x < src->size(k); ++x) {
      Key key = src->key(k, x);
      for (int& v : key) v = vertex_fn[v];
      auto y = tgt->find(k, key);
      if (!y) throw std::invalid_argument("chain_map: vertex function is not order-preserving");
      m.at[k].push_back(*y);
    }
  return m;
}

RetractionPair retraction_pair(int n, int bound, bool mirrored) {
  RetractionPair p;
  p.delta = standard_simplex(n, bound);
  p.sd = sd_full(n, bound);
  const SigmaPoset s = sigma_poset(n);
  std::vector<int> iv(n + 1), rv(s.size());
  for (int k = 0; k <= n; ++k) iv[k] = mirrored ? s.index(0, n - k) : s.index(k, n);
  for (int e = 0; e < s.size(); ++e) rv[e] = mirrored ? n - s.elements[e].second : s.elements[e].first;
  p.i = chain_map(p.delta, p.sd, iv);
  p.r = chain_map(p.sd, p.delta, rv);
  return p;
}

}  // namespace spanfib
