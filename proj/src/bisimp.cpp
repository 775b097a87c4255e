#include "spanfib/bisimp.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "spanfib/subdiv.hpp"

namespace spanfib {

namespace {

using Tables = BisimplicialSet::Tables;

Tables empty_tables(int M, int V) {
  return Tables(M + 1, std::vector<std::vector<std::vector<int>>>(V + 1));
}

// Index of the simplex with the given key in a standard simplex.
int key_index(const SimplicialSet& delta, int k, const Key& key) {
  auto x = delta.find(k, key);
  if (!x) throw std::logic_error("standard simplex is missing a key");
  return *x;
}

// Δᵏ -> Δⁿ for alpha: [k] -> [n], with both simplices at the given bound.
SimplicialMap simplex_operator(const std::vector<int>& alpha, int n, int bound) {
  const int k = static_cast<int>(alpha.size()) - 1;
  auto src = standard_simplex(k, bound);
  auto tgt = standard_simplex(n, bound);
  return yoneda_map(src, tgt, k, key_index(*tgt, k, alpha));
}

int top_simplex(int n, int bound) {
  std::vector<int> id(n + 1);
  std::iota(id.begin(), id.end(), 0);
  return key_index(*standard_simplex(n, bound), n, id);
}

CellMap compose_cells(const CellMap& f, const CellMap& g) {
  CellMap out(g.size());
  for (std::size_t L = 0; L < g.size(); ++L) {
    out[L].resize(g[L].size());
    for (std::size_t x = 0; x < g[L].size(); ++x) out[L][x] = f[L][g[L][x]];
  }
  return out;
}

// Per-level marking vectors for the map search; only level `at` is filled.
std::vector<std::vector<char>> level_marking(int levels, int at, const Marking& m) {
  std::vector<std::vector<char>> out(levels);
  out[at] = m;
  return out;
}

// Between realizations of two subcomplexes small ⊆ big of the same ambient.
SimplicialMap subcomplex_map(const Subcomplex::Realized& small, const Subcomplex::Realized& big) {
  CellMap at(small.inclusion.at.size());
  for (std::size_t k = 0; k < at.size(); ++k) {
    std::unordered_map<int, int> local;
    for (std::size_t x = 0; x < big.inclusion.at[k].size(); ++x) local[big.inclusion.at[k][x]] = static_cast<int>(x);
    for (int g : small.inclusion.at[k]) {
      auto it = local.find(g);
      if (it == local.end()) throw std::invalid_argument("subcomplex_map: not a subcomplex");
      at[k].push_back(it->second);
    }
  }
  return SimplicialMap{small.set, big.set, at};
}

// Edge Δ^{01} in a realized subcomplex of Δⁿ, -1 if absent.
int edge01(const SimplicialSet& realized) {
  auto e = realized.find(1, {0, 1});
  return e ? *e : -1;
}

}  // namespace

// ---------------------------------------------------------------------------

BisetPtr BisimplicialSet::from_tables(int M, int V, std::vector<std::vector<int>> counts, Tables hf, Tables vf,
                                      Tables hd, Tables vd) {
  auto x = std::make_shared<BisimplicialSet>();
  x->M_ = M;
  x->V_ = V;
  auto& c = x->cells_;
  const int nl = (M + 1) * (V + 1);
  c.rank.resize(nl);
  c.count.resize(nl);
  c.faces.assign(nl, {});
  c.degens.assign(nl, {});
  for (int m = 0; m <= M; ++m)
    for (int n = 0; n <= V; ++n) {
      const int L = x->level(m, n);
      c.rank[L] = m + n;
      c.count[L] = counts[m][n];
      if (m >= 1)
        for (int i = 0; i <= m; ++i) c.faces[L].push_back({x->level(m - 1, n), hf[m][n][i]});
      if (n >= 1)
        for (int j = 0; j <= n; ++j) c.faces[L].push_back({x->level(m, n - 1), vf[m][n][j]});
      if (m < M)
        for (int i = 0; i <= m; ++i) c.degens[L].push_back({x->level(m + 1, n), hd[m][n][i]});
      if (n < V)
        for (int j = 0; j <= n; ++j) c.degens[L].push_back({x->level(m, n + 1), vd[m][n][j]});
    }
  c.finalize();
  x->hf_ = std::move(hf);
  x->vf_ = std::move(vf);
  x->hd_ = std::move(hd);
  x->vd_ = std::move(vd);
  return x;
}

SSetPtr BisimplicialSet::row(int n) const {
  std::vector<int> counts(M_ + 1);
  std::vector<std::vector<std::vector<int>>> faces(M_ + 1), degens(M_ + 1);
  for (int m = 0; m <= M_; ++m) {
    counts[m] = size(m, n);
    if (m >= 1) faces[m] = hf_[m][n];
    if (m < M_) degens[m] = hd_[m][n];
  }
  return SimplicialSet::from_tables(M_, counts, faces, degens);
}

SSetPtr BisimplicialSet::column(int m) const {
  std::vector<int> counts(V_ + 1);
  std::vector<std::vector<std::vector<int>>> faces(V_ + 1), degens(V_ + 1);
  for (int n = 0; n <= V_; ++n) {
    counts[n] = size(m, n);
    if (n >= 1) faces[n] = vf_[m][n];
    if (n < V_) degens[n] = vd_[m][n];
  }
  return SimplicialSet::from_tables(V_, counts, faces, degens);
}

std::vector<std::string> BisimplicialSet::identity_violations() const {
  std::vector<std::string> out;
  for (int n = 0; n <= V_; ++n)
    for (auto& v : row(n)->identity_violations()) out.push_back("row " + std::to_string(n) + ": " + v);
  for (int m = 0; m <= M_; ++m)
    for (auto& v : column(m)->identity_violations()) out.push_back("column " + std::to_string(m) + ": " + v);
  auto bad = [&](const char* what, int m, int n, int i, int j, int x) {
    out.push_back(std::string(what) + " at (" + std::to_string(m) + "," + std::to_string(n) + ") i=" +
                  std::to_string(i) + " j=" + std::to_string(j) + " x=" + std::to_string(x));
  };
  for (int m = 0; m <= M_; ++m)
    for (int n = 0; n <= V_; ++n)
      for (int x = 0; x < size(m, n); ++x) {
        for (int i = 0; i <= m; ++i)
          for (int j = 0; j <= n; ++j) {
            if (m >= 1 && n >= 1 &&
                hface(m, n - 1, i, vface(m, n, j, x)) != vface(m - 1, n, j, hface(m, n, i, x)))
              bad("d^h d^v", m, n, i, j, x);
            if (m < M_ && n < V_ &&
                vdegen(m + 1, n, j, hdegen(m, n, i, x)) != hdegen(m, n + 1, i, vdegen(m, n, j, x)))
              bad("s^h s^v", m, n, i, j, x);
            if (m >= 1 && n < V_ &&
                hface(m, n + 1, i, vdegen(m, n, j, x)) != vdegen(m - 1, n, j, hface(m, n, i, x)))
              bad("d^h s^v", m, n, i, j, x);
            if (m < M_ && n >= 1 &&
                vface(m + 1, n, j, hdegen(m, n, i, x)) != hdegen(m, n - 1, i, vface(m, n, j, x)))
              bad("s^h d^v", m, n, i, j, x);
          }
      }
  return out;
}

bool BisimplicialMap::injective() const {
  for (const auto& lvl : at) {
    std::vector<int> v = lvl;
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
  }
  return true;
}

BisimplicialMap BisimplicialMap::after(const BisimplicialMap& g) const {
  return {g.source, target, compose_cells(at, g.at)};
}

BisimplicialMap BisimplicialMap::identity(const BisetPtr& x) {
  CellMap at(x->cells().levels());
  for (int L = 0; L < x->cells().levels(); ++L) {
    at[L].resize(x->cells().count[L]);
    std::iota(at[L].begin(), at[L].end(), 0);
  }
  return {x, x, at};
}

// ---------------------------------------------------------------------------

BisetPtr box(const SSetPtr& x, const SSetPtr& y) {
  const int M = x->bound(), V = y->bound();
  std::vector<std::vector<int>> counts(M + 1, std::vector<int>(V + 1));
  Tables hf = empty_tables(M, V), vf = hf, hd = hf, vd = hf;
  for (int m = 0; m <= M; ++m)
    for (int n = 0; n <= V; ++n) {
      const int nx = x->size(m), ny = y->size(n);
      counts[m][n] = nx * ny;
      if (m >= 1)
        for (int i = 0; i <= m; ++i) {
          auto& t = hf[m][n].emplace_back(nx * ny);
          for (int a = 0; a < nx; ++a)
            for (int b = 0; b < ny; ++b) t[a * ny + b] = x->face(m, i, a) * ny + b;
        }
      if (n >= 1)
        for (int j = 0; j <= n; ++j) {
          auto& t = vf[m][n].emplace_back(nx * ny);
          for (int a = 0; a < nx; ++a)
            for (int b = 0; b < ny; ++b) t[a * ny + b] = a * y->size(n - 1) + y->face(n, j, b);
        }
      if (m < M)
        for (int i = 0; i <= m; ++i) {
          auto& t = hd[m][n].emplace_back(nx * ny);
          for (int a = 0; a < nx; ++a)
            for (int b = 0; b < ny; ++b) t[a * ny + b] = x->degen(m, i, a) * ny + b;
        }
      if (n < V)
        for (int j = 0; j <= n; ++j) {
          auto& t = vd[m][n].emplace_back(nx * ny);
          for (int a = 0; a < nx; ++a)
            for (int b = 0; b < ny; ++b) t[a * ny + b] = a * y->size(n + 1) + y->degen(n, j, b);
        }
    }
  return BisimplicialSet::from_tables(M, V, std::move(counts), std::move(hf), std::move(vf), std::move(hd),
                                      std::move(vd));
}

BisimplicialMap box_map(const SimplicialMap& u, const SimplicialMap& v, const BisetPtr& src, const BisetPtr& tgt) {
  BisimplicialMap f{src, tgt, CellMap(src->cells().levels())};
  for (int m = 0; m <= src->hbound(); ++m)
    for (int n = 0; n <= src->vbound(); ++n) {
      const int nb = v.source->size(n), nt = v.target->size(n);
      auto& lvl = f.at[src->level(m, n)];
      lvl.resize(u.source->size(m) * nb);
      for (int a = 0; a < u.source->size(m); ++a)
        for (int b = 0; b < nb; ++b) lvl[a * nb + b] = u.at[m][a] * nt + v.at[n][b];
    }
  return f;
}

BisimplicialMap box_map(const SimplicialMap& u, const SimplicialMap& v) {
  return box_map(u, v, box(u.source, v.source), box(u.target, v.target));
}

BisetPtr grid_nerve(const Category& c, int M, int V, bool vertical_isos) {
  // Key: objects at grid points (i major), then one morphism per comparable
  // pair p <= q of grid points in lexicographic order.
  auto pairs = [](int m, int n) {
    const int P = (m + 1) * (n + 1);
    std::vector<std::vector<int>> idx(P, std::vector<int>(P, -1));
    int next = P;
    for (int p = 0; p < P; ++p)
      for (int q = 0; q < P; ++q)
        if (p / (n + 1) <= q / (n + 1) && p % (n + 1) <= q % (n + 1)) idx[p][q] = next++;
    return idx;
  };
  std::vector<std::vector<std::vector<Key>>> keys(M + 1, std::vector<std::vector<Key>>(V + 1));
  std::vector<std::vector<std::map<Key, int>>> index(M + 1, std::vector<std::map<Key, int>>(V + 1));
  std::vector<std::vector<std::vector<std::vector<int>>>> pidx(M + 1, std::vector<std::vector<std::vector<int>>>(V + 1));
  for (int m = 0; m <= M; ++m)
    for (int n = 0; n <= V; ++n) {
      pidx[m][n] = pairs(m, n);
      const auto& pi = pidx[m][n];
      const int P = (m + 1) * (n + 1);
      std::vector<int> ob(P), H(P, -1), Vv(P, -1);
      auto emit = [&] {
        Key k(ob.begin(), ob.end());
        std::vector<int> mor;
        for (int p = 0; p < P; ++p)
          for (int q = 0; q < P; ++q)
            if (pi[p][q] >= 0) {
              int pi0 = p / (n + 1), pj = p % (n + 1), qi = q / (n + 1), qj = q % (n + 1);
              int f = c.id[ob[p]];
              for (int i = pi0 + 1; i <= qi; ++i) f = c.compose(H[i * (n + 1) + pj], f);
              for (int j = pj + 1; j <= qj; ++j) f = c.compose(Vv[qi * (n + 1) + j], f);
              mor.push_back(f);
            }
        k.insert(k.end(), mor.begin(), mor.end());
        index[m][n].emplace(k, static_cast<int>(keys[m][n].size()));
        keys[m][n].push_back(std::move(k));
      };
      std::function<void(int)> rec = [&](int p) {
        if (p == P) {
          emit();
          return;
        }
        const int i = p / (n + 1), j = p % (n + 1);
        if (i == 0 && j == 0) {
          for (int o = 0; o < c.num_objects(); ++o) {
            ob[p] = o;
            rec(p + 1);
          }
          return;
        }
        if (j == 0) {
          const int from = ob[p - (n + 1)];
          for (int a = 0; a < c.num_morphisms(); ++a)
            if (c.src[a] == from) {
              H[p] = a;
              ob[p] = c.tgt[a];
              rec(p + 1);
            }
          return;
        }
        const int from_below = ob[p - 1];
        for (int b = 0; b < c.num_morphisms(); ++b) {
          if (c.src[b] != from_below || (vertical_isos && !c.is_iso(b))) continue;
          if (i == 0) {
            Vv[p] = b;
            ob[p] = c.tgt[b];
            rec(p + 1);
            continue;
          }
          const int from_left = ob[p - (n + 1)];
          for (int a = 0; a < c.num_morphisms(); ++a) {
            if (c.src[a] != from_left || c.tgt[a] != c.tgt[b]) continue;
            // (i-1,j-1) -> (i,j-1) -> (i,j) against (i-1,j-1) -> (i-1,j) -> (i,j)
            if (c.compose(b, H[p - 1]) != c.compose(a, Vv[p - (n + 1)])) continue;
            H[p] = a;
            Vv[p] = b;
            ob[p] = c.tgt[b];
            rec(p + 1);
          }
        }
      };
      rec(0);
    }
  // Restriction along alpha × beta.
  auto restrict = [&](int m, int n, const Key& k, const std::vector<int>& alpha, const std::vector<int>& beta) {
    const int m2 = static_cast<int>(alpha.size()) - 1, n2 = static_cast<int>(beta.size()) - 1;
    const int P2 = (m2 + 1) * (n2 + 1);
    const auto& pi = pidx[m][n];
    const auto& pi2 = pidx[m2][n2];
    auto img = [&](int p2) { return alpha[p2 / (n2 + 1)] * (n + 1) + beta[p2 % (n2 + 1)]; };
    Key out(P2);
    for (int p = 0; p < P2; ++p) out[p] = k[img(p)];
    for (int p = 0; p < P2; ++p)
      for (int q = 0; q < P2; ++q)
        if (pi2[p][q] >= 0) out.push_back(k[pi[img(p)][img(q)]]);
    return index[m2][n2].at(out);
  };
  std::vector<std::vector<int>> counts(M + 1, std::vector<int>(V + 1));
  Tables hf = empty_tables(M, V), vf = hf, hd = hf, vd = hf;
  auto ident = [](int n) {
    std::vector<int> v(n + 1);
    std::iota(v.begin(), v.end(), 0);
    return v;
  };
  for (int m = 0; m <= M; ++m)
    for (int n = 0; n <= V; ++n) {
      const auto& ks = keys[m][n];
      counts[m][n] = static_cast<int>(ks.size());
      if (m >= 1)
        for (int i = 0; i <= m; ++i) {
          auto& t = hf[m][n].emplace_back();
          for (const auto& k : ks) t.push_back(restrict(m, n, k, face_alpha(m, i), ident(n)));
        }
      if (n >= 1)
        for (int j = 0; j <= n; ++j) {
          auto& t = vf[m][n].emplace_back();
          for (const auto& k : ks) t.push_back(restrict(m, n, k, ident(m), face_alpha(n, j)));
        }
      if (m < M)
        for (int i = 0; i <= m; ++i) {
          auto& t = hd[m][n].emplace_back();
          for (const auto& k : ks) t.push_back(restrict(m, n, k, degen_alpha(m, i), ident(n)));
        }
      if (n < V)
        for (int j = 0; j <= n; ++j) {
          auto& t = vd[m][n].emplace_back();
          for (const auto& k : ks) t.push_back(restrict(m, n, k, ident(m), degen_alpha(n, j)));
        }
    }
  return BisimplicialSet::from_tables(M, V, std::move(counts), std::move(hf), std::move(vf), std::move(hd),
                                      std::move(vd));
}

BisetPtr terminal_biset(int M, int V) { return box(terminal_sset(M), terminal_sset(V)); }

BisimplicialMap map_to_terminal(const BisetPtr& x) {
  auto t = terminal_biset(x->hbound(), x->vbound());
  CellMap at(x->cells().levels());
  for (int L = 0; L < x->cells().levels(); ++L) at[L].assign(x->cells().count[L], 0);
  return {x, t, at};
}

// ---------------------------------------------------------------------------

Marking flat_marking(const SimplicialSet& a) {
  Marking m(a.size(1), 0);
  for (int x = 0; x < a.size(1); ++x) m[x] = a.degenerate(1, x);
  return m;
}

Marking sharp_marking(const SimplicialSet& a) { return Marking(a.size(1), 1); }

Marking flat_marking(const BisimplicialSet& x) {
  Marking m(x.size(1, 0), 0);
  for (int v = 0; v < x.size(0, 0); ++v) m[x.hdegen(0, 0, 0, v)] = 1;
  return m;
}

Marking sharp_marking(const BisimplicialSet& x) { return Marking(x.size(1, 0), 1); }

MarkedSSet left_marked(const Subcomplex& a) {
  auto real = a.realize();
  MarkedSSet out{real.set, flat_marking(*real.set)};
  const int e = edge01(*real.set);
  if (e < 0) throw std::invalid_argument("left marking: subcomplex misses the edge 01");
  out.marked[e] = 1;
  return out;
}

Marking generated_marking(const BisimplicialSet& x, const std::vector<int>& edges) {
  const int ne = x.size(1, 0);
  std::vector<int> parent(ne);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int v) { return parent[v] == v ? v : parent[v] = root(parent[v]); };
  if (x.vbound() >= 1)
    for (int y = 0; y < x.size(1, 1); ++y) parent[root(x.vface(1, 1, 0, y))] = root(x.vface(1, 1, 1, y));
  std::vector<char> seed(ne, 0);
  for (int e : edges) seed[root(e)] = 1;
  for (int v = 0; v < x.size(0, 0); ++v) seed[root(x.hdegen(0, 0, 0, v))] = 1;
  Marking m(ne, 0);
  for (int e = 0; e < ne; ++e) m[e] = seed[root(e)];
  return m;
}

bool contains_degenerates(const SimplicialSet& a, const Marking& m) {
  for (int x = 0; x < a.size(1); ++x)
    if (a.degenerate(1, x) && !m[x]) return false;
  return true;
}

bool contains_degenerates(const BisimplicialSet& x, const Marking& m) {
  for (int v = 0; v < x.size(0, 0); ++v)
    if (!m[x.hdegen(0, 0, 0, v)]) return false;
  return true;
}

bool respects_path_components(const BisimplicialSet& x, const Marking& m) {
  if (x.vbound() < 1) return true;
  for (int y = 0; y < x.size(1, 1); ++y)
    if (m[x.vface(1, 1, 0, y)] != m[x.vface(1, 1, 1, y)]) return false;
  return true;
}

Marking marked_box(const MarkedSSet& a, const SSetPtr& b) {
  const int nb = b->size(0);
  Marking m(a.set->size(1) * nb, 0);
  for (int x = 0; x < a.set->size(1); ++x)
    for (int y = 0; y < nb; ++y) m[x * nb + y] = a.marked[x];
  return m;
}

bool preserves_marking(const BisimplicialMap& f, const Marking& src, const Marking& tgt) {
  const auto& lvl = f.at[f.source->level(1, 0)];
  for (std::size_t x = 0; x < lvl.size(); ++x)
    if (src[x] && !tgt[lvl[x]]) return false;
  return true;
}

bool preserves_marking(const SimplicialMap& f, const Marking& src, const Marking& tgt) {
  for (std::size_t x = 0; x < f.at[1].size(); ++x)
    if (src[x] && !tgt[f.at[1][x]]) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::optional<int> Division::find(int level, const CellMap& m) const {
  auto it = index[level].find(m);
  if (it == index[level].end()) return std::nullopt;
  return it->second;
}

namespace {

// Shared builder for A \ X (left = true) and X / B. `fixed` is A or B; the
// simplex factor runs over Δᵏ for k up to the other bound.
Division divide(const SSetPtr& fixed, const BisetPtr& x, bool left, const Marking* fixed_marked,
                const Marking* x_marked) {
  const int bound = left ? x->vbound() : x->hbound();
  if ((left ? x->hbound() : x->vbound()) != fixed->bound())
    throw std::invalid_argument("division: bounds do not match");
  Division d;
  d.maps.resize(bound + 1);
  d.index.resize(bound + 1);
  const int xl10 = x->level(1, 0);
  for (int k = 0; k <= bound; ++k) {
    auto delta = standard_simplex(k, bound);
    BisetPtr bx = left ? box(fixed, delta) : box(delta, fixed);
    d.boxes.push_back(bx);
    MapProblem p;
    p.src = &bx->cells();
    p.tgt = &x->cells();
    std::vector<std::vector<char>> sm, tm;
    if (left && fixed_marked && x_marked) {
      sm = level_marking(bx->cells().levels(), bx->level(1, 0), marked_box({fixed, *fixed_marked}, delta));
      tm = level_marking(x->cells().levels(), xl10, *x_marked);
      p.src_marked = &sm;
      p.tgt_marked = &tm;
    }
    search_maps(p, [&](const CellMap& m) {
      d.maps[k].push_back(m);
      return true;
    });
    std::sort(d.maps[k].begin(), d.maps[k].end());
    for (std::size_t i = 0; i < d.maps[k].size(); ++i) d.index[k].emplace(d.maps[k][i], static_cast<int>(i));
  }
  auto id_fixed = SimplicialMap::identity(fixed);
  std::vector<int> counts(bound + 1);
  std::vector<std::vector<std::vector<int>>> faces(bound + 1), degens(bound + 1);
  auto apply = [&](int from, int to, const SimplicialMap& op) {
    const BisimplicialMap bm = left ? box_map(id_fixed, op, d.boxes[to], d.boxes[from])
                                    : box_map(op, id_fixed, d.boxes[to], d.boxes[from]);
    std::vector<int> t;
    for (const auto& m : d.maps[from]) {
      auto r = d.find(to, compose_cells(m, bm.at));
      if (!r) throw std::logic_error("division: operator leaves the level");
      t.push_back(*r);
    }
    return t;
  };
  for (int k = 0; k <= bound; ++k) {
    counts[k] = static_cast<int>(d.maps[k].size());
    if (k >= 1)
      for (int i = 0; i <= k; ++i) faces[k].push_back(apply(k, k - 1, simplex_operator(face_alpha(k, i), k, bound)));
    if (k < bound)
      for (int i = 0; i <= k; ++i) degens[k].push_back(apply(k, k + 1, simplex_operator(degen_alpha(k, i), k, bound)));
  }
  d.set = SimplicialSet::from_tables(bound, counts, faces, degens);
  if (!left && x_marked) {
    d.marked.assign(d.set->size(1), 0);
    if (bound >= 1) {
      const int iota = key_index(*standard_simplex(1, bound), 1, {0, 1});
      const int nb = fixed->size(0);
      const int L = d.boxes[1]->level(1, 0);
      for (int s = 0; s < d.set->size(1); ++s) {
        bool all = true;
        for (int b = 0; b < nb && all; ++b) all = (*x_marked)[d.maps[1][s][L][iota * nb + b]];
        d.marked[s] = all;
      }
    }
  }
  return d;
}

}  // namespace

Division under(const SSetPtr& a, const BisetPtr& x) { return divide(a, x, true, nullptr, nullptr); }
Division under(const MarkedSSet& a, const MarkedBiset& x) { return divide(a.set, x.set, true, &a.marked, &x.marked); }
Division over(const BisetPtr& x, const SSetPtr& b) { return divide(b, x, false, nullptr, nullptr); }
Division over(const MarkedBiset& x, const SSetPtr& b) { return divide(b, x.set, false, nullptr, &x.marked); }

namespace {

SimplicialMap precompose(const Division& big, const Division& small, const std::function<BisimplicialMap(int)>& op) {
  CellMap at(big.maps.size());
  for (std::size_t k = 0; k < big.maps.size(); ++k) {
    const BisimplicialMap bm = op(static_cast<int>(k));
    for (const auto& m : big.maps[k]) {
      auto r = small.find(static_cast<int>(k), compose_cells(m, bm.at));
      if (!r) throw std::invalid_argument("restriction does not land in the smaller division");
      at[k].push_back(*r);
    }
  }
  return SimplicialMap{big.set, small.set, at};
}

SimplicialMap postcompose(const BisimplicialMap& f, const Division& dx, const Division& dy) {
  CellMap at(dx.maps.size());
  for (std::size_t k = 0; k < dx.maps.size(); ++k)
    for (const auto& m : dx.maps[k]) {
      auto r = dy.find(static_cast<int>(k), compose_cells(f.at, m));
      if (!r) throw std::invalid_argument("postcomposition does not land in the target division");
      at[k].push_back(*r);
    }
  return SimplicialMap{dx.set, dy.set, at};
}

}  // namespace

SimplicialMap restrict_under(const SimplicialMap& u, const Division& big, const Division& small) {
  return precompose(big, small, [&](int k) {
    auto id = SimplicialMap::identity(standard_simplex(k, big.set->bound()));
    return box_map(u, id, small.boxes[k], big.boxes[k]);
  });
}

SimplicialMap restrict_over(const SimplicialMap& v, const Division& big, const Division& small) {
  return precompose(big, small, [&](int k) {
    auto id = SimplicialMap::identity(standard_simplex(k, big.set->bound()));
    return box_map(id, v, small.boxes[k], big.boxes[k]);
  });
}

SimplicialMap push_under(const BisimplicialMap& f, const Division& dx, const Division& dy) {
  return postcompose(f, dx, dy);
}

SimplicialMap push_over(const BisimplicialMap& f, const Division& dx, const Division& dy) {
  return postcompose(f, dx, dy);
}

// ---------------------------------------------------------------------------

SSetPullback pullback(const SimplicialMap& f, const SimplicialMap& g) {
  if (f.target != g.target) throw std::invalid_argument("pullback: maps have different targets");
  const int bound = f.source->bound();
  SSetPullback out;
  std::vector<std::vector<std::pair<int, int>>> cells(bound + 1);
  std::vector<std::map<std::pair<int, int>, int>> index(bound + 1);
  for (int k = 0; k <= bound; ++k) {
    std::vector<std::vector<int>> by(f.target->size(k));
    for (int q = 0; q < g.source->size(k); ++q) by[g.at[k][q]].push_back(q);
    for (int p = 0; p < f.source->size(k); ++p)
      for (int q : by[f.at[k][p]]) {
        index[k].emplace(std::make_pair(p, q), static_cast<int>(cells[k].size()));
        cells[k].push_back({p, q});
      }
  }
  std::vector<int> counts(bound + 1);
  std::vector<std::vector<std::vector<int>>> faces(bound + 1), degens(bound + 1);
  CellMap left(bound + 1), right(bound + 1);
  for (int k = 0; k <= bound; ++k) {
    counts[k] = static_cast<int>(cells[k].size());
    for (auto [p, q] : cells[k]) {
      left[k].push_back(p);
      right[k].push_back(q);
    }
    if (k >= 1)
      for (int i = 0; i <= k; ++i) {
        auto& t = faces[k].emplace_back();
        for (auto [p, q] : cells[k]) t.push_back(index[k - 1].at({f.source->face(k, i, p), g.source->face(k, i, q)}));
      }
    if (k < bound)
      for (int i = 0; i <= k; ++i) {
        auto& t = degens[k].emplace_back();
        for (auto [p, q] : cells[k])
          t.push_back(index[k + 1].at({f.source->degen(k, i, p), g.source->degen(k, i, q)}));
      }
  }
  out.set = SimplicialSet::from_tables(bound, counts, faces, degens);
  out.left = SimplicialMap{out.set, f.source, left};
  out.right = SimplicialMap{out.set, g.source, right};
  out.index = std::move(index);
  return out;
}

SimplicialMap SSetPullback::pair(const SimplicialMap& a, const SimplicialMap& b) const {
  CellMap at(a.at.size());
  for (std::size_t k = 0; k < a.at.size(); ++k)
    for (std::size_t s = 0; s < a.at[k].size(); ++s) {
      auto it = index[k].find({a.at[k][s], b.at[k][s]});
      if (it == index[k].end()) throw std::invalid_argument("pair: cone does not commute");
      at[k].push_back(it->second);
    }
  return SimplicialMap{a.source, set, at};
}

// ---------------------------------------------------------------------------

namespace {

AdjunctionWitness witness_impl(const SSetPtr& a, const SSetPtr& b, const BisetPtr& x, const Marking* am,
                               const Marking* xm) {
  AdjunctionWitness w;
  const BisetPtr ab = box(a, b);
  const int M = x->hbound(), V = x->vbound();
  MapProblem p;
  p.src = &ab->cells();
  p.tgt = &x->cells();
  std::vector<std::vector<char>> sm, tm;
  if (am) {
    sm = level_marking(ab->cells().levels(), ab->level(1, 0), marked_box({a, *am}, b));
    tm = level_marking(x->cells().levels(), x->level(1, 0), *xm);
    p.src_marked = &sm;
    p.tgt_marked = &tm;
  }
  std::vector<CellMap> homs;
  search_maps(p, [&](const CellMap& m) {
    homs.push_back(m);
    return true;
  });
  w.box_maps = homs.size();

  const Division du = am ? under(MarkedSSet{a, *am}, MarkedBiset{x, *xm}) : under(a, x);
  const Division dov = am ? over(MarkedBiset{x, *xm}, b) : over(x, b);
  const auto to_under = enumerate_maps(b, du.set);
  w.under_maps = to_under.size();
  std::vector<CellMap> to_over;
  {
    MapProblem q;
    q.src = &a->cells();
    q.tgt = &dov.set->cells();
    std::vector<std::vector<char>> sa, so;
    if (am) {
      sa = level_marking(a->cells().levels(), 1, *am);
      so = level_marking(dov.set->cells().levels(), 1, dov.marked);
      q.src_marked = &sa;
      q.tgt_marked = &so;
    }
    search_maps(q, [&](const CellMap& m) {
      to_over.push_back(m);
      return true;
    });
  }
  w.over_maps = to_over.size();

  auto id_a = SimplicialMap::identity(a);
  auto id_b = SimplicialMap::identity(b);
  std::vector<std::vector<BisimplicialMap>> by_b(V + 1), by_a(M + 1);
  for (int n = 0; n <= V; ++n) {
    auto dn = standard_simplex(n, V);
    for (int s = 0; s < b->size(n); ++s) by_b[n].push_back(box_map(id_a, yoneda_map(dn, b, n, s), du.boxes[n], ab));
  }
  for (int m = 0; m <= M; ++m) {
    auto dm = standard_simplex(m, M);
    for (int s = 0; s < a->size(m); ++s) by_a[m].push_back(box_map(yoneda_map(dm, a, m, s), id_b, dov.boxes[m], ab));
  }
  std::vector<int> top_v(V + 1), top_h(M + 1);
  for (int n = 0; n <= V; ++n) top_v[n] = top_simplex(n, V);
  for (int m = 0; m <= M; ++m) top_h[m] = top_simplex(m, M);

  auto phi = [&](const CellMap& f) -> std::optional<CellMap> {
    CellMap g(V + 1);
    for (int n = 0; n <= V; ++n)
      for (int s = 0; s < b->size(n); ++s) {
        auto r = du.find(n, compose_cells(f, by_b[n][s].at));
        if (!r) return std::nullopt;
        g[n].push_back(*r);
      }
    return g;
  };
  auto psi = [&](const CellMap& g) {
    CellMap f(ab->cells().levels());
    for (int m = 0; m <= M; ++m)
      for (int n = 0; n <= V; ++n) {
        const int L = ab->level(m, n);
        const int nd = standard_simplex(n, V)->size(n);
        f[L].resize(ab->size(m, n));
        for (int ai = 0; ai < a->size(m); ++ai)
          for (int bi = 0; bi < b->size(n); ++bi)
            f[L][ai * b->size(n) + bi] = du.maps[n][g[n][bi]][L][ai * nd + top_v[n]];
      }
    return f;
  };
  auto phi2 = [&](const CellMap& f) -> std::optional<CellMap> {
    CellMap g(M + 1);
    for (int m = 0; m <= M; ++m)
      for (int s = 0; s < a->size(m); ++s) {
        auto r = dov.find(m, compose_cells(f, by_a[m][s].at));
        if (!r) return std::nullopt;
        g[m].push_back(*r);
      }
    return g;
  };
  auto psi2 = [&](const CellMap& g) {
    CellMap f(ab->cells().levels());
    for (int m = 0; m <= M; ++m)
      for (int n = 0; n <= V; ++n) {
        const int L = ab->level(m, n);
        f[L].resize(ab->size(m, n));
        for (int ai = 0; ai < a->size(m); ++ai)
          for (int bi = 0; bi < b->size(n); ++bi)
            f[L][ai * b->size(n) + bi] = dov.maps[m][g[m][ai]][L][top_h[m] * b->size(n) + bi];
      }
    return f;
  };

  for (const auto& f : homs) {
    auto g = phi(f);
    if (!g || psi(*g) != f) {
      w.left_inverse = false;
      w.failure = "Psi(Phi(f)) != f";
      break;
    }
    auto g2 = phi2(f);
    if (!g2 || psi2(*g2) != f) {
      w.right_inverse = false;
      w.failure = "Psi'(Phi'(f)) != f";
      break;
    }
  }
  for (const auto& g : to_under) {
    auto f = psi(g.at);
    auto back = phi(f);
    if (!back || *back != g.at) {
      w.left_inverse = false;
      w.failure = "Phi(Psi(g)) != g";
      break;
    }
  }
  for (const auto& g : to_over) {
    auto f = psi2(g);
    auto back = phi2(f);
    if (!back || *back != g) {
      w.right_inverse = false;
      w.failure = "Phi'(Psi'(g)) != g";
      break;
    }
  }
  return w;
}

}  // namespace

AdjunctionWitness adjunction_witness(const SSetPtr& a, const SSetPtr& b, const BisetPtr& x) {
  return witness_impl(a, b, x, nullptr, nullptr);
}

AdjunctionWitness adjunction_witness(const MarkedSSet& a, const SSetPtr& b, const MarkedBiset& x) {
  return witness_impl(a.set, b, x.set, &a.marked, &x.marked);
}

// ---------------------------------------------------------------------------

namespace {

PairMap pair_under_impl(const SimplicialMap& u, const BisimplicialMap& f, const Marking* ua, const Marking* ub,
                        const Marking* fx, const Marking* fy) {
  if (!u.injective()) throw std::invalid_argument("pair map: u is not a monomorphism");
  PairMap out;
  if (ua) {
    out.big_x = under(MarkedSSet{u.target, *ub}, MarkedBiset{f.source, *fx});
    out.small_x = under(MarkedSSet{u.source, *ua}, MarkedBiset{f.source, *fx});
    out.big_y = under(MarkedSSet{u.target, *ub}, MarkedBiset{f.target, *fy});
    out.small_y = under(MarkedSSet{u.source, *ua}, MarkedBiset{f.target, *fy});
  } else {
    out.big_x = under(u.target, f.source);
    out.small_x = under(u.source, f.source);
    out.big_y = under(u.target, f.target);
    out.small_y = under(u.source, f.target);
  }
  out.corner = pullback(push_under(f, out.small_x, out.small_y), restrict_under(u, out.big_y, out.small_y));
  out.map = out.corner.pair(restrict_under(u, out.big_x, out.small_x), push_under(f, out.big_x, out.big_y));
  return out;
}

}  // namespace

PairMap pair_under(const SimplicialMap& u, const BisimplicialMap& f) {
  return pair_under_impl(u, f, nullptr, nullptr, nullptr, nullptr);
}

PairMap pair_under(const SimplicialMap& u, const BisimplicialMap& f, const Marking& ua, const Marking& ub,
                   const Marking& fx, const Marking& fy) {
  return pair_under_impl(u, f, &ua, &ub, &fx, &fy);
}

PairMap pair_over(const BisimplicialMap& f, const SimplicialMap& v) {
  if (!v.injective()) throw std::invalid_argument("pair map: v is not a monomorphism");
  PairMap out;
  out.big_x = over(f.source, v.target);
  out.small_x = over(f.source, v.source);
  out.big_y = over(f.target, v.target);
  out.small_y = over(f.target, v.source);
  out.corner = pullback(push_over(f, out.small_x, out.small_y), restrict_over(v, out.big_y, out.small_y));
  out.map = out.corner.pair(restrict_over(v, out.big_x, out.small_x), push_over(f, out.big_x, out.big_y));
  return out;
}

PushoutProduct pushout_product(const SimplicialMap& u, const SimplicialMap& v) {
  if (!u.injective() || !v.injective()) throw std::invalid_argument("pushout product: maps must be injective");
  PushoutProduct out;
  out.target = box(u.target, v.target);
  const auto& t = *out.target;
  const int M = t.hbound(), V = t.vbound();
  std::vector<std::vector<char>> in_u(M + 1), in_v(V + 1);
  for (int m = 0; m <= M; ++m) {
    in_u[m].assign(u.target->size(m), 0);
    for (int a : u.at[m]) in_u[m][a] = 1;
  }
  for (int n = 0; n <= V; ++n) {
    in_v[n].assign(v.target->size(n), 0);
    for (int b : v.at[n]) in_v[n][b] = 1;
  }
  std::vector<std::vector<std::vector<int>>> newid(M + 1, std::vector<std::vector<int>>(V + 1));
  std::vector<std::vector<std::vector<int>>> oldid = newid;
  for (int m = 0; m <= M; ++m)
    for (int n = 0; n <= V; ++n) {
      const int nb = v.target->size(n);
      newid[m][n].assign(t.size(m, n), -1);
      for (int c = 0; c < t.size(m, n); ++c)
        if (in_u[m][c / nb] || in_v[n][c % nb]) {
          newid[m][n][c] = static_cast<int>(oldid[m][n].size());
          oldid[m][n].push_back(c);
        }
    }
  std::vector<std::vector<int>> counts(M + 1, std::vector<int>(V + 1));
  Tables hf = empty_tables(M, V), vf = hf, hd = hf, vd = hf;
  CellMap incl(t.cells().levels());
  for (int m = 0; m <= M; ++m)
    for (int n = 0; n <= V; ++n) {
      counts[m][n] = static_cast<int>(oldid[m][n].size());
      incl[t.level(m, n)] = oldid[m][n];
      auto fill = [&](auto& tab, int tm, int tn, auto op, int nops) {
        for (int i = 0; i < nops; ++i) {
          auto& row = tab.emplace_back();
          for (int c : oldid[m][n]) row.push_back(newid[tm][tn][op(i, c)]);
        }
      };
      if (m >= 1) fill(hf[m][n], m - 1, n, [&](int i, int c) { return t.hface(m, n, i, c); }, m + 1);
      if (n >= 1) fill(vf[m][n], m, n - 1, [&](int j, int c) { return t.vface(m, n, j, c); }, n + 1);
      if (m < M) fill(hd[m][n], m + 1, n, [&](int i, int c) { return t.hdegen(m, n, i, c); }, m + 1);
      if (n < V) fill(vd[m][n], m, n + 1, [&](int j, int c) { return t.vdegen(m, n, j, c); }, n + 1);
    }
  out.source = BisimplicialSet::from_tables(M, V, std::move(counts), std::move(hf), std::move(vf), std::move(hd),
                                            std::move(vd));
  out.inclusion = BisimplicialMap{out.source, out.target, incl};
  return out;
}

LiftingCount lifting_count(const SimplicialMap& v, const PairMap& pu) {
  LiftingCount c;
  const auto& f = pu.map;
  auto fib = fibres_of(f.at, f.target->cells());
  for (const auto& bottom : enumerate_maps(v.target, f.target)) {
    const auto over = bottom.after(v);
    MapProblem tops;
    tops.src = &v.source->cells();
    tops.tgt = &f.source->cells();
    tops.proj = &f.at;
    tops.over = over.at;
    tops.fibres = &fib;
    search_maps(tops, [&](const CellMap& top) {
      ++c.squares;
      const auto n = solve_lifting({v, f, SimplicialMap{v.source, f.source, top}, bottom}).size();
      c.fillers += n;
      if (n == 0) ++c.unfillable;
      return true;
    });
  }
  return c;
}

LiftingCount lifting_count(const PushoutProduct& uv, const BisimplicialMap& f) {
  LiftingCount c;
  auto fib = fibres_of(f.at, f.target->cells());
  const auto& tc = uv.target->cells();
  MapProblem bottoms;
  bottoms.src = &tc;
  bottoms.tgt = &f.target->cells();
  search_maps(bottoms, [&](const CellMap& bottom) {
    MapProblem tops;
    tops.src = &uv.source->cells();
    tops.tgt = &f.source->cells();
    tops.proj = &f.at;
    tops.over = compose_cells(bottom, uv.inclusion.at);
    tops.fibres = &fib;
    search_maps(tops, [&](const CellMap& top) {
      ++c.squares;
      MapProblem fill;
      fill.src = &tc;
      fill.tgt = &f.source->cells();
      fill.fixed.resize(tc.levels());
      for (int L = 0; L < tc.levels(); ++L) {
        fill.fixed[L].assign(tc.count[L], -1);
        for (std::size_t a = 0; a < top[L].size(); ++a) fill.fixed[L][uv.inclusion.at[L][a]] = top[L][a];
      }
      fill.proj = &f.at;
      fill.over = bottom;
      fill.fibres = &fib;
      const auto n = count_maps(fill);
      c.fillers += n;
      if (n == 0) ++c.unfillable;
      return true;
    });
    return true;
  });
  return c;
}

bool is_reedy_fibration(const BisimplicialMap& f, int up_to, std::string* witness) {
  const int M = f.source->hbound(), V = f.source->vbound();
  for (int m = 0; m <= std::min(up_to, M); ++m) {
    auto bd = named_subcomplex(SubKind::Boundary, m, 0, M).realize();
    const auto pu = pair_under(bd.inclusion, f);
    if (auto fail = rlp_failure(pu.map, HornFamily::Horns, V)) {
      if (witness)
        *witness = "boundary " + std::to_string(m) + ": " + fail->generator + " over simplex " +
                   std::to_string(fail->bottom) + " has no filler";
      return false;
    }
  }
  return true;
}

FixedEdgeSpace fixed_edge_space(const Subcomplex& a, const BisetPtr& x, int e) {
  const auto ra = a.realize();
  if (edge01(*ra.set) < 0) throw std::invalid_argument("fixed edge space: subcomplex misses the edge 01");
  const auto r01 = simplex_subcomplex(a.ambient, {{0, 1}}).realize();
  FixedEdgeSpace out;
  out.whole = under(ra.set, x);
  const Division d01 = under(r01.set, x);
  const auto res = restrict_under(subcomplex_map(r01, ra), out.whole, d01);
  // The vertex of Δ^{01} \ X whose edge is e.
  const int iota = edge01(*r01.set);
  const int L10 = d01.boxes[0]->level(1, 0);
  int vertex = -1;
  for (std::size_t s = 0; s < d01.maps[0].size(); ++s)
    if (d01.maps[0][s][L10][iota] == e) vertex = static_cast<int>(s);
  if (vertex < 0) throw std::logic_error("fixed edge space: no diagram for the edge");
  const auto& set = *out.whole.set;
  out.fiber = Subcomplex::empty(out.whole.set);
  int target = vertex;
  for (int k = 0; k <= set.bound(); ++k) {
    if (k > 0) target = d01.set->degen(k - 1, 0, target);
    for (int s = 0; s < set.size(k); ++s) out.fiber.member[k][s] = res.at[k][s] == target;
  }
  auto real = out.fiber.realize();
  out.set = real.set;
  out.inclusion = real.inclusion;
  return out;
}

// ---------------------------------------------------------------------------

bool PointwiseReport::right() const {
  return std::all_of(per_edge.begin(), per_edge.end(), [](auto& p) { return p.second; });
}

namespace {

// Map between fibres induced by a map of the ambient divisions.
SimplicialMap between_fibres(const SimplicialMap& ambient, const FixedEdgeSpace& src, const FixedEdgeSpace& tgt) {
  CellMap at(src.inclusion.at.size());
  for (std::size_t k = 0; k < at.size(); ++k) {
    std::unordered_map<int, int> local;
    for (std::size_t x = 0; x < tgt.inclusion.at[k].size(); ++x) local[tgt.inclusion.at[k][x]] = static_cast<int>(x);
    for (int s : src.inclusion.at[k]) {
      auto it = local.find(ambient.at[k][s]);
      if (it == local.end()) throw std::logic_error("fibre map leaves the target fibre");
      at[k].push_back(it->second);
    }
  }
  return SimplicialMap{src.set, tgt.set, at};
}

}  // namespace

PointwiseReport pointwise_crosscheck(const BisimplicialMap& f, const Marking& x_marked, const Subcomplex& a) {
  PointwiseReport rep;
  const int V = f.source->vbound();
  const auto full = Subcomplex::full(a.ambient);
  const auto ra = a.realize();
  const auto rf = full.realize();
  const auto u = subcomplex_map(ra, rf);
  const auto al = left_marked(a);
  const auto fl = left_marked(full);
  const auto y_sharp = sharp_marking(*f.target);
  const auto side1 = pair_under(u, f, al.marked, fl.marked, x_marked, y_sharp);
  rep.left = has_rlp(side1.map, HornFamily::Boundaries, V);
  for (int e = 0; e < static_cast<int>(x_marked.size()); ++e) {
    if (!x_marked[e]) continue;
    const int fe = f.at[f.source->level(1, 0)][e];
    const auto xn = fixed_edge_space(full, f.source, e);
    const auto xa = fixed_edge_space(a, f.source, e);
    const auto yn = fixed_edge_space(full, f.target, fe);
    const auto ya = fixed_edge_space(a, f.target, fe);
    const auto res_x = between_fibres(restrict_under(u, xn.whole, xa.whole), xn, xa);
    const auto res_y = between_fibres(restrict_under(u, yn.whole, ya.whole), yn, ya);
    const auto push_n = between_fibres(push_under(f, xn.whole, yn.whole), xn, yn);
    const auto push_a = between_fibres(push_under(f, xa.whole, ya.whole), xa, ya);
    const auto corner = pullback(res_y, push_a);
    const auto pe = corner.pair(push_n, res_x);
    rep.per_edge.push_back({e, has_rlp(pe, HornFamily::Boundaries, V)});
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<int> edge_vertex_map(const DiagramGroupoid& g, int n) {
  const SigmaPoset s1 = sigma_poset(1);
  std::vector<int> vm;
  for (auto [i, j] : s1.elements) {
    const int v = g.shape().vertex_with_key(sigma_index(n, i, j));
    if (v < 0) throw std::invalid_argument("diagram shape misses the edge 01");
    vm.push_back(v);
  }
  return vm;
}

std::vector<char> generated_marking(const SpanCategory& s, const std::vector<int>& edges) {
  const auto g1 = s.groupoid(1);
  const auto degen = s.structure_functor(0, degen_alpha(0, 0));
  const auto& comp = g1->components();
  std::vector<char> seed(g1->num_components(), 0);
  for (int e : edges) seed[comp[e]] = 1;
  for (int x = 0; x < degen.src->size(); ++x)
    if (auto y = degen.image(x)) seed[comp[*y]] = 1;
  std::vector<char> out(g1->size());
  for (int e = 0; e < g1->size(); ++e) out[e] = seed[comp[e]];
  return out;
}

PointwiseReport pointwise_crosscheck(const SpanMap& p, const std::vector<char>& marked, const Subcomplex& a) {
  PointwiseReport rep;
  const auto& X = p.source();
  const auto& Y = p.target();
  const auto full = Subcomplex::full(a.ambient);
  const int n = a.ambient->key(0, a.ambient->size(0) - 1)[0];
  const auto gxn = X.under(full, "X_n"), gxa = X.under(a, "A\\X");
  const auto gyn = Y.under(full, "Y_n"), gya = Y.under(a, "A\\Y");
  const auto x1 = X.groupoid(1), y1 = Y.groupoid(1);
  const auto ex_n = DiagramFunctor::along(gxn, x1, edge_vertex_map(*gxn, n), false);
  const auto ex_a = DiagramFunctor::along(gxa, x1, edge_vertex_map(*gxa, n), false);
  const auto ey_n = DiagramFunctor::along(gyn, y1, edge_vertex_map(*gyn, n), false);
  const auto ey_a = DiagramFunctor::along(gya, y1, edge_vertex_map(*gya, n), false);

  auto is_marked = [&](const DiagramFunctor& e) {
    return [&marked, e](const Diagram& d) {
      auto i = e.tgt->find(e.apply(d));
      return i && marked[*i];
    };
  };
  const auto xnl = filtered(*gxn, is_marked(ex_n), "(Δⁿ)^L\\X");
  const auto xal = filtered(*gxa, is_marked(ex_a), "A^L\\X");
  {
    const auto corner = strict_pullback(DiagramFunctor::restriction(gyn, gya), DiagramFunctor::postcompose(xal, gya),
                                        "corner");
    const auto cmp = pairing(corner, DiagramFunctor::postcompose(xnl, gyn), DiagramFunctor::restriction(xnl, xal));
    auto r = check_trivial_fibration(cmp);
    rep.left = r.ok;
    if (!r.ok) rep.detail = "side 1: " + r.witness;
  }
  for (int e = 0; e < x1->size(); ++e) {
    if (!marked[e]) continue;
    auto fe = y1->find(p.apply(x1->object(e)));
    if (!fe) throw std::logic_error("pointwise check: image edge missing");
    const auto fxn = fiber(ex_n, e), fxa = fiber(ex_a, e);
    const auto fyn = fiber(ey_n, *fe), fya = fiber(ey_a, *fe);
    const auto corner =
        strict_pullback(DiagramFunctor::restriction(fyn, fya), DiagramFunctor::postcompose(fxa, fya), "corner_e");
    const auto pe = pairing(corner, DiagramFunctor::postcompose(fxn, fyn), DiagramFunctor::restriction(fxn, fxa));
    auto r = check_trivial_fibration(pe);
    rep.per_edge.push_back({e, r.ok});
    if (!r.ok && rep.detail.find("edge") == std::string::npos)
      rep.detail += (rep.detail.empty() ? "" : "; ") + std::string("edge ") + describe(*x1, x1->object(e)) + ": " +
                    r.witness;
  }
  return rep;
}

// ---------------------------------------------------------------------------

Subcomplex join_with_edge(const SSetPtr& delta_n, const std::vector<std::vector<int>>& k, bool with_vertex_one) {
  std::vector<int> base = with_vertex_one ? std::vector<int>{0, 1} : std::vector<int>{0};
  std::vector<std::vector<int>> sets{base};
  for (const auto& s : k) {
    auto v = base;
    v.insert(v.end(), s.begin(), s.end());
    sets.push_back(v);
  }
  return simplex_subcomplex(delta_n, sets);
}

SpineReport left_spine_factorization_check(int n, const std::vector<SSetPtr>& targets) {
  if (n < 3) throw std::invalid_argument("left spine factorization needs n >= 3");
  SpineReport rep;
  rep.n = n;
  auto delta = standard_simplex(n, n);
  const auto horn = named_subcomplex(SubKind::Horn, delta, 0);
  const auto ls = named_subcomplex(SubKind::LeftSpine, delta);
  const auto d1 = named_subcomplex(SubKind::Face, delta, 1);
  auto q = Subcomplex::empty(delta);
  for (int k = 2; k <= n; ++k) q = unite(q, named_subcomplex(SubKind::Face, delta, k));
  const auto ld = unite(ls, d1);
  rep.horn_decomposition = horn == unite(ld, q);

  std::vector<std::vector<int>> spine_sets{{0, 2}};
  for (int i = 2; i < n; ++i) spine_sets.push_back({i, i + 1});
  const auto spine = simplex_subcomplex(delta, spine_sets);
  bool pushout = intersect(ls, d1) == spine;
  const auto r_ld = ld.realize(), r_ls = ls.realize(), r_d1 = d1.realize(), r_sp = spine.realize();
  const auto sp_ls = subcomplex_map(r_sp, r_ls), sp_d1 = subcomplex_map(r_sp, r_d1);
  for (const auto& t : targets) {
    if (t->bound() != n) throw std::invalid_argument("left spine check: target bound must equal n");
    std::map<CellMap, std::size_t> from_ls;
    for (const auto& g : enumerate_maps(r_ls.set, t)) ++from_ls[g.after(sp_ls).at];
    std::size_t glued = 0;
    for (const auto& h : enumerate_maps(r_d1.set, t)) {
      auto it = from_ls.find(h.after(sp_d1).at);
      if (it != from_ls.end()) glued += it->second;
    }
    const auto direct = count_maps(r_ld.set, t);
    if (glued != direct) {
      pushout = false;
      rep.detail += "hom-set pushout fails: " + std::to_string(direct) + " vs " + std::to_string(glued) + "; ";
    }
  }
  rep.spine_pushout = pushout;

  std::vector<std::vector<int>> bd;  // ∂Δ^{2..n}
  for (int skip = 2; skip <= n; ++skip) {
    std::vector<int> s;
    for (int i = 2; i <= n; ++i)
      if (i != skip) s.push_back(i);
    bd.push_back(s);
  }
  const auto q_join = join_with_edge(delta, bd, true);
  const auto attach = unite(simplex_subcomplex(delta, {{0, 1}}), join_with_edge(delta, bd, false));
  rep.join_attachment = q == q_join && intersect(ld, q) == attach;
  rep.base_case = named_subcomplex(SubKind::LeftSpine, 2) == named_subcomplex(SubKind::Horn, 2, 0);
  return rep;
}

}  // namespace spanfib
