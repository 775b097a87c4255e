#include "spanfib/spancat.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace spanfib {

ShapePtr sigma_shape(int n, bool lower) {
  static std::map<std::pair<int, bool>, ShapePtr> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, lower}];
  if (!slot) {
    const SigmaPoset s = sigma_poset(n);
    std::vector<std::string> names;
    for (int e = 0; e < s.size(); ++e) names.push_back(s.name(e));
    auto base = shape_of(Subcomplex::full(sd_full(n, 2)), names);
    auto sh = std::make_shared<Shape>(*base);
    sh->lower.assign(sh->size(), lower ? 1 : 0);
    sh->finalize();
    slot = sh;
  }
  return slot;
}

int sigma_relation(const Category& c, const SigmaDiagram& x, int a, int b) {
  if (a == b) return c.id[x.d.ob[a]];
  const int e = sigma_shape(x.n)->edge_between(a, b);
  if (e < 0) throw std::invalid_argument("sigma_relation: elements are not comparable");
  return x.d.mor[e];
}

int sigma_back(const SigmaDiagram& x, int i, int j) {
  return x.d.mor[sigma_shape(x.n)->edge_between(sigma_index(x.n, i, j), sigma_index(x.n, i, j - 1))];
}

int sigma_fwd(const SigmaDiagram& x, int i, int j) {
  return x.d.mor[sigma_shape(x.n)->edge_between(sigma_index(x.n, i, j), sigma_index(x.n, i + 1, j))];
}

SigmaDiagram sigma_from_generators(const Category& c, int n, const std::vector<int>& ob, const std::vector<int>& back,
                                   const std::vector<int>& fwd) {
  const SigmaPoset s = sigma_poset(n);
  if (static_cast<int>(ob.size()) != s.size()) throw std::invalid_argument("sigma diagram: wrong number of objects");
  for (int e = 0; e < s.size(); ++e) {
    auto [i, j] = s.elements[e];
    if (i == j) continue;
    const int b = back[e], f = fwd[e];
    if (b < 0 || b >= c.num_morphisms() || c.src[b] != ob[e] || c.tgt[b] != ob[s.index(i, j - 1)])
      throw std::invalid_argument("sigma diagram: back leg at " + s.name(e) + " has wrong endpoints");
    if (f < 0 || f >= c.num_morphisms() || c.src[f] != ob[e] || c.tgt[f] != ob[s.index(i + 1, j)])
      throw std::invalid_argument("sigma diagram: forward leg at " + s.name(e) + " has wrong endpoints");
  }
  const auto sh = sigma_shape(n);
  SigmaDiagram x{n, {ob, std::vector<int>(sh->edges.size())}};
  for (std::size_t e = 0; e < sh->edges.size(); ++e) {
    auto [a, b] = sh->edges[e];
    auto [i, j] = s.elements[a];
    auto [i2, j2] = s.elements[b];
    int m = c.id[ob[a]];
    for (int jj = j; jj > j2; --jj) m = c.compose(back[s.index(i, jj)], m);
    for (int ii = i; ii < i2; ++ii) m = c.compose(fwd[s.index(ii, j2)], m);
    x.d.mor[e] = m;
  }
  for (const auto& t : sh->triangles)
    if (c.compose(x.d.mor[t.e12], x.d.mor[t.e01]) != x.d.mor[t.e02])
      throw std::invalid_argument("sigma diagram: a square of generators does not commute");
  return x;
}

bool is_acart(const Triple& t, const SigmaDiagram& x, std::string* witness) {
  const Category& c = *t.cat;
  const int n = x.n;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = 0; i + k <= j; ++k)
        for (int l = 0; i + k <= j - l; ++l) {
          const int tl = sigma_index(n, i, j), tr = sigma_index(n, i + k, j);
          const int bl = sigma_index(n, i, j - l), br = sigma_index(n, i + k, j - l);
          Square sq{x.d.ob[tl], sigma_relation(c, x, tl, tr), sigma_relation(c, x, tl, bl),
                    sigma_relation(c, x, bl, br), sigma_relation(c, x, tr, br)};
          if (!is_ambigressive_pullback(t, sq)) {
            if (witness)
              *witness = "square at " + std::to_string(i) + std::to_string(j) + " with k=" + std::to_string(k) +
                         ", l=" + std::to_string(l) + " is not an ambigressive pullback";
            return false;
          }
        }
  return true;
}

std::vector<int> face_alpha(int n, int i) {
  std::vector<int> a;
  for (int k = 0; k <= n; ++k)
    if (k != i) a.push_back(k);
  return a;
}

std::vector<int> degen_alpha(int n, int i) {
  std::vector<int> a;
  for (int k = 0; k <= n + 1; ++k) a.push_back(k <= i ? k : k - 1);
  return a;
}

SigmaDiagram reindex(const Category& c, const SigmaDiagram& x, const std::vector<int>& alpha) {
  const int m = static_cast<int>(alpha.size()) - 1;
  const auto smap = sigma_map(alpha, x.n);
  const auto sh = sigma_shape(m);
  SigmaDiagram y{m, {std::vector<int>(sh->size()), std::vector<int>(sh->edges.size())}};
  for (int e = 0; e < sh->size(); ++e) y.d.ob[e] = x.d.ob[smap[e]];
  for (std::size_t e = 0; e < sh->edges.size(); ++e)
    y.d.mor[e] = sigma_relation(c, x, smap[sh->edges[e].first], smap[sh->edges[e].second]);
  return y;
}

SpanCategory::SpanCategory(Triple t, AmbientPtr ambient, bool lower)
    : t_(std::move(t)),
      amb_(ambient ? std::move(ambient) : make_ambient(t_.cat)),
      lower_(lower) {
  if (auto v = t_.violations(); !v.empty()) throw std::invalid_argument(t_.name + ": " + v.front());
  auto adequacy = is_adequate(t_);
  if (!adequacy.ok)
    throw std::invalid_argument("triple " + t_.name + " is not adequate: " +
                                (adequacy.witnesses.empty() ? std::string("") : adequacy.witnesses.front()));
  if ((lower_ ? amb_->lower : amb_->upper) != t_.cat)
    throw std::invalid_argument("SpanCategory: ambient does not contain the triple's category");
}

ShapePtr SpanCategory::shape(int n) const { return sigma_shape(n, lower_); }

const std::vector<Cone>& SpanCategory::pullback_cones(int f, int g) const {
  const long long key = (static_cast<long long>(f) << 32) | static_cast<unsigned>(g);
  auto it = squares_.find(key);
  if (it != squares_.end()) return it->second;
  std::vector<Cone> out;
  const Category& c = *t_.cat;
  if (auto pb = compute_pullback(c, f, g))
    for (const auto& m : pb->certificate)
      if (c.is_iso(m.mediator) && t_.ingressive[m.cone.to_xp] && t_.egressive[m.cone.to_y]) out.push_back(m.cone);
  return squares_.emplace(key, std::move(out)).first->second;
}

const std::vector<Diagram>& SpanCategory::level(int n) const {
  if (n < 0 || n > kMaxBound) throw std::invalid_argument("span level outside 0.." + std::to_string(kMaxBound));
  auto it = levels_.find(n);
  if (it != levels_.end()) return it->second;
  const Category& c = *t_.cat;
  const SigmaPoset s = sigma_poset(n);
  // Width-one candidates per (x, x'): apex with egressive back leg and ingressive forward leg.
  std::vector<std::vector<std::vector<Cone>>> spans(c.num_objects(), std::vector<std::vector<Cone>>(c.num_objects()));
  for (int b = 0; b < c.num_morphisms(); ++b)
    if (t_.egressive[b])
      for (int x2 = 0; x2 < c.num_objects(); ++x2)
        for (int f : c.hom(c.src[b], x2))
          if (t_.ingressive[f]) spans[c.tgt[b]][x2].push_back({c.src[b], b, f});
  std::vector<int> ob(s.size(), -1), back(s.size(), -1), fwd(s.size(), -1);
  std::vector<Diagram> out;
  std::function<void(int)> rec = [&](int e) {
    if (e == s.size()) {
      out.push_back(sigma_from_generators(c, n, ob, back, fwd).d);
      return;
    }
    auto [i, j] = s.elements[e];
    if (i == j) {
      for (int o = 0; o < c.num_objects(); ++o) {
        ob[e] = o;
        rec(e + 1);
      }
      return;
    }
    const std::vector<Cone>* cands;
    if (j == i + 1) {
      cands = &spans[ob[s.index(i, i)]][ob[s.index(j, j)]];
    } else {
      cands = &pullback_cones(fwd[s.index(i, j - 1)], back[s.index(i + 1, j)]);
    }
    for (const auto& cone : *cands) {
      ob[e] = cone.apex;
      back[e] = cone.to_y;
      fwd[e] = cone.to_xp;
      rec(e + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  auto& idx = index_[n];
  for (int x = 0; x < static_cast<int>(out.size()); ++x) idx.emplace(out[x], x);
  return levels_.emplace(n, std::move(out)).first->second;
}

std::optional<int> SpanCategory::find(int n, const Diagram& d) const {
  level(n);
  auto& idx = index_.at(n);
  auto it = idx.find(d);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

SSetPtr SpanCategory::simplicial_set(int bound) const {
  auto it = ssets_.find(bound);
  if (it != ssets_.end()) return it->second;
  const Category& c = *t_.cat;
  auto split = [](int k, const Key& key) {
    const int nv = (k + 1) * (k + 2) / 2;
    return SigmaDiagram{k, {Key(key.begin(), key.begin() + nv), Key(key.begin() + nv, key.end())}};
  };
  auto join = [](const SigmaDiagram& x) {
    Key k = x.d.ob;
    k.insert(k.end(), x.d.mor.begin(), x.d.mor.end());
    return k;
  };
  auto set = SimplicialSet::from_keys(
      bound,
      [&](int k) {
        std::vector<Key> keys;
        for (const auto& d : level(k)) keys.push_back(join({k, d}));
        return keys;
      },
      [&](int k, int i, const Key& key) { return join(reindex(c, split(k, key), face_alpha(k, i))); },
      [&](int k, int i, const Key& key) { return join(reindex(c, split(k, key), degen_alpha(k, i))); });
  return ssets_.emplace(bound, set).first->second;
}

GroupoidPtr SpanCategory::groupoid(int n) const {
  auto it = groupoids_.find(n);
  if (it != groupoids_.end()) return it->second;
  auto g = std::make_shared<DiagramGroupoid>("SPAN(" + t_.name + ")_" + std::to_string(n), shape(n), amb_, level(n));
  return groupoids_.emplace(n, g).first->second;
}

DiagramFunctor SpanCategory::structure_functor(int n, const std::vector<int>& alpha) const {
  const int m = static_cast<int>(alpha.size()) - 1;
  return DiagramFunctor::along(groupoid(n), groupoid(m), sigma_map(alpha, n), false);
}

GroupoidPtr SpanCategory::under(const Subcomplex& a, const std::string& name) const {
  const auto& amb_delta = *a.ambient;
  const int n = amb_delta.key(0, amb_delta.size(0) - 1)[0];
  if (a == Subcomplex::full(a.ambient) && amb_delta.bound() >= n) return groupoid(n);
  // Rebuild A inside Δⁿ with a bound that holds all its simplices.
  std::vector<std::vector<int>> vsets;
  for (int k = 0; k <= amb_delta.bound(); ++k)
    for (int x = 0; x < amb_delta.size(k); ++x)
      if (a.contains(k, x) && !amb_delta.degenerate(k, x)) vsets.push_back(amb_delta.key(k, x));
  const int bound = std::max(n, 2);
  auto delta = standard_simplex(n, bound);
  const Subcomplex A = simplex_subcomplex(delta, vsets);
  const Subcomplex sdA = sd_subcomplex(sd_full(n, 2), A);
  const SigmaPoset s = sigma_poset(n);
  std::vector<std::string> names;
  for (int e = 0; e < s.size(); ++e) names.push_back(s.name(e));
  auto sh = std::make_shared<Shape>(*shape_of(sdA, names));
  sh->lower.assign(sh->size(), lower_ ? 1 : 0);
  sh->finalize();

  const auto real = A.realize();
  const auto& Ar = *real.set;
  std::vector<Diagram> objs;
  // Simplex of A on a vertex set, with local positions.
  auto locate = [&](std::vector<int> verts) {
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    const int dim = static_cast<int>(verts.size()) - 1;
    auto cell = Ar.find(dim, verts);
    if (!cell) throw std::logic_error("under: simplex missing from A");
    return std::make_tuple(dim, *cell, verts);
  };
  auto local = [&](const std::vector<int>& verts, int dim, int elem) {
    auto pos = [&](int v) { return static_cast<int>(std::find(verts.begin(), verts.end(), v) - verts.begin()); };
    return sigma_index(dim, pos(s.elements[elem].first), pos(s.elements[elem].second));
  };
  struct VertexSource {
    int dim, cell, local;
  };
  struct EdgeSource {
    int dim, cell, la, lb;
  };
  std::vector<VertexSource> vsrc;
  for (int v = 0; v < sh->size(); ++v) {
    const int e = sh->key[v];
    auto [dim, cell, verts] = locate({s.elements[e].first, s.elements[e].second});
    vsrc.push_back({dim, cell, local(verts, dim, e)});
  }
  std::vector<EdgeSource> esrc;
  for (auto [va, vb] : sh->edges) {
    const int ea = sh->key[va], eb = sh->key[vb];
    auto [dim, cell, verts] =
        locate({s.elements[ea].first, s.elements[ea].second, s.elements[eb].first, s.elements[eb].second});
    esrc.push_back({dim, cell, local(verts, dim, ea), local(verts, dim, eb)});
  }
  const Category& c = *t_.cat;
  for (const auto& m : enumerate_maps(real.set, simplicial_set(bound))) {
    Diagram d;
    for (const auto& vs : vsrc) d.ob.push_back(level(vs.dim)[m.at[vs.dim][vs.cell]].ob[vs.local]);
    for (const auto& es : esrc) {
      const SigmaDiagram x{es.dim, level(es.dim)[m.at[es.dim][es.cell]]};
      d.mor.push_back(sigma_relation(c, x, es.la, es.lb));
    }
    objs.push_back(std::move(d));
  }
  std::sort(objs.begin(), objs.end());
  return std::make_shared<DiagramGroupoid>(name, sh, amb_, std::move(objs));
}

SigmaDiagram compose_spans(const Triple& t, const SigmaDiagram& s1, const SigmaDiagram& s2, bool second_choice) {
  if (s1.n != 1 || s2.n != 1) throw std::invalid_argument("compose: spans must be 1-simplices");
  const Category& c = *t.cat;
  const int e00 = sigma_index(1, 0, 0), e11 = sigma_index(1, 1, 1), e01 = sigma_index(1, 0, 1);
  if (s1.d.ob[e11] != s2.d.ob[e00]) throw std::invalid_argument("compose: spans are not composable");
  const SigmaPoset s = sigma_poset(2);
  std::vector<int> ob(s.size()), back(s.size(), -1), fwd(s.size(), -1);
  ob[s.index(0, 0)] = s1.d.ob[e00];
  ob[s.index(1, 1)] = s1.d.ob[e11];
  ob[s.index(2, 2)] = s2.d.ob[e11];
  ob[s.index(0, 1)] = s1.d.ob[e01];
  ob[s.index(1, 2)] = s2.d.ob[e01];
  back[s.index(0, 1)] = sigma_back(s1, 0, 1);
  fwd[s.index(0, 1)] = sigma_fwd(s1, 0, 1);
  back[s.index(1, 2)] = sigma_back(s2, 0, 1);
  fwd[s.index(1, 2)] = sigma_fwd(s2, 0, 1);
  const PullbackChooser chooser(t.cat, second_choice);
  const auto& sq = chooser.get(fwd[s.index(0, 1)], back[s.index(1, 2)]);
  if (!sq) throw std::invalid_argument("compose: cospan has no pullback");
  ob[s.index(0, 2)] = sq->apex;
  back[s.index(0, 2)] = sq->g_prime;
  fwd[s.index(0, 2)] = sq->f_prime;
  return sigma_from_generators(c, 2, ob, back, fwd);
}

SigmaDiagram SpanCategory::compose(const SigmaDiagram& s1, const SigmaDiagram& s2, bool second_choice) const {
  return compose_spans(t_, s1, s2, second_choice);
}

std::vector<std::string> triple_functor_violations(const Functor& p, const Triple& c, const Triple& d) {
  std::vector<std::string> out;
  for (const auto& v : p.violations()) out.push_back(v);
  if (!out.empty()) return out;
  const Category& C = *c.cat;
  const Category& D = *d.cat;
  for (int m = 0; m < C.num_morphisms(); ++m) {
    if (c.ingressive[m] && !d.ingressive[p.mor[m]])
      out.push_back("ingressive " + C.morphisms[m] + " maps to non-ingressive " + D.morphisms[p.mor[m]]);
    if (c.egressive[m] && !d.egressive[p.mor[m]])
      out.push_back("egressive " + C.morphisms[m] + " maps to non-egressive " + D.morphisms[p.mor[m]]);
  }
  for (int f = 0; f < C.num_morphisms() && out.size() < 8; ++f) {
    if (!c.ingressive[f]) continue;
    for (int g = 0; g < C.num_morphisms(); ++g) {
      if (!c.egressive[g] || C.tgt[g] != C.tgt[f]) continue;
      auto pb = compute_pullback(C, f, g);
      if (!pb) continue;
      for (const auto& med : pb->certificate) {
        if (!C.is_iso(med.mediator) || !c.ingressive[med.cone.to_xp] || !c.egressive[med.cone.to_y]) continue;
        Square img{p.obj[med.cone.apex], p.mor[med.cone.to_xp], p.mor[med.cone.to_y], p.mor[f], p.mor[g]};
        if (!is_pullback(D, img)) {
          out.push_back("ambigressive pullback of " + C.morphisms[f] + " and " + C.morphisms[g] + " with apex " +
                        C.objects[med.cone.apex] + " is not sent to a pullback");
          break;
        }
      }
    }
  }
  return out;
}

SpanMap::SpanMap(Triple c, Triple d, Functor p) {
  if (p.source != c.cat || p.target != d.cat) throw std::invalid_argument("SpanMap: functor does not match triples");
  auto v = triple_functor_violations(p, c, d);
  if (!v.empty()) {
    std::string msg = p.name + " is not a functor of adequate triples:";
    for (const auto& s : v) msg += "\n  " + s;
    throw std::invalid_argument(msg);
  }
  amb_ = make_ambient(c.cat, d.cat, p);
  src_ = std::make_unique<SpanCategory>(std::move(c), amb_, false);
  tgt_ = std::make_unique<SpanCategory>(std::move(d), amb_, true);
}

Diagram SpanMap::apply(const Diagram& x) const {
  const Functor& p = functor();
  Diagram y;
  for (int o : x.ob) y.ob.push_back(p.obj[o]);
  for (int m : x.mor) y.mor.push_back(p.mor[m]);
  return y;
}

SimplicialMap SpanMap::simplicial_map(int bound) const {
  SimplicialMap m{src_->simplicial_set(bound), tgt_->simplicial_set(bound), {}};
  m.at.resize(bound + 1);
  for (int k = 0; k <= bound; ++k)
    for (const auto& d : src_->level(k)) {
      auto y = tgt_->find(k, apply(d));
      if (!y) throw std::logic_error("Span(p): image of an aCart diagram is not aCart");
      m.at[k].push_back(*y);
    }
  return m;
}

namespace {

bool same_functor(const DiagramFunctor& a, const DiagramFunctor& b) {
  if (a.src != b.src || a.tgt != b.tgt || a.vslots.size() != b.vslots.size() || a.eslots.size() != b.eslots.size())
    return false;
  for (std::size_t i = 0; i < a.vslots.size(); ++i)
    if (a.vslots[i].v != b.vslots[i].v || a.vslots[i].via_p != b.vslots[i].via_p) return false;
  for (std::size_t i = 0; i < a.eslots.size(); ++i) {
    if (a.eslots[i].e != b.eslots[i].e) return false;
    if (a.eslots[i].e >= 0 && a.eslots[i].via_p != b.eslots[i].via_p) return false;
  }
  return true;
}

bool is_identity_functor(const DiagramFunctor& f) {
  return same_functor(f, DiagramFunctor::projection(f.src, f.src, 0, 0));
}

}  // namespace

std::vector<std::string> SimplicialGroupoid::identity_violations() const {
  std::vector<std::string> out;
  const int M = bound();
  auto name = [](const char* op, int m, int i) { return std::string(op) + std::to_string(i) + "@" + std::to_string(m); };
  // d_i d_j = d_{j-1} d_i for i < j
  for (int m = 2; m <= M; ++m)
    for (int j = 1; j <= m; ++j)
      for (int i = 0; i < j; ++i)
        if (!same_functor(faces[m][j].then(faces[m - 1][i]), faces[m][i].then(faces[m - 1][j - 1])))
          out.push_back("d" + std::to_string(i) + " d" + std::to_string(j) + " at level " + std::to_string(m));
  // s_i s_j = s_{j+1} s_i for i <= j
  for (int m = 0; m + 2 <= M; ++m)
    for (int j = 0; j <= m; ++j)
      for (int i = 0; i <= j; ++i)
        if (!same_functor(degens[m][j].then(degens[m + 1][i]), degens[m][i].then(degens[m + 1][j + 1])))
          out.push_back("s" + std::to_string(i) + " s" + std::to_string(j) + " at level " + std::to_string(m));
  // mixed identities
  for (int m = 0; m + 1 <= M; ++m)
    for (int j = 0; j <= m; ++j)
      for (int i = 0; i <= m + 1; ++i) {
        const DiagramFunctor ds = degens[m][j].then(faces[m + 1][i]);
        bool ok;
        if (i == j || i == j + 1)
          ok = is_identity_functor(ds);
        else if (i < j)
          ok = same_functor(ds, faces[m][i].then(degens[m - 1][j - 1]));
        else
          ok = same_functor(ds, faces[m][i - 1].then(degens[m - 1][j]));
        if (!ok) out.push_back(name("d", m + 1, i) + " " + name("s", m, j));
      }
  return out;
}

SimplicialGroupoid span_segal_space(const SpanCategory& s, int bound) {
  SimplicialGroupoid g;
  for (int m = 0; m <= bound; ++m) g.levels.push_back(s.groupoid(m));
  g.faces.resize(bound + 1);
  g.degens.resize(bound + 1);
  for (int m = 0; m <= bound; ++m) {
    if (m >= 1)
      for (int i = 0; i <= m; ++i) g.faces[m].push_back(s.structure_functor(m, face_alpha(m, i)));
    if (m < bound)
      for (int i = 0; i <= m; ++i) g.degens[m].push_back(s.structure_functor(m, degen_alpha(m, i)));
  }
  return g;
}

SSetPtr zeroth_row(const SimplicialGroupoid& g) {
  const int M = g.bound();
  std::vector<int> counts;
  std::vector<std::vector<std::vector<int>>> faces(M + 1), degens(M + 1);
  auto table = [](const DiagramFunctor& f) {
    std::vector<int> t;
    for (int x = 0; x < f.src->size(); ++x) {
      auto y = f.image(x);
      if (!y) throw std::logic_error("zeroth_row: structure functor leaves its target");
      t.push_back(*y);
    }
    return t;
  };
  for (int m = 0; m <= M; ++m) {
    counts.push_back(g.levels[m]->size());
    for (const auto& f : g.faces[m]) faces[m].push_back(table(f));
    for (const auto& f : g.degens[m]) degens[m].push_back(table(f));
  }
  return SimplicialSet::from_tables(M, counts, faces, degens);
}

bool EmbeddingReport::ok() const {
  for (const auto& l : levels)
    if (!l.retraction_identity || !l.equivalence.ok) return false;
  return !levels.empty();
}

GroupoidPtr functor_groupoid(const AmbientPtr& amb, int n) {
  auto delta = standard_simplex(n, 2);
  std::vector<std::string> names;
  for (int k = 0; k <= n; ++k) names.push_back(std::to_string(k));
  auto sh = shape_of(Subcomplex::full(delta), names);
  auto objs = enumerate_diagrams(*sh, *amb);
  std::sort(objs.begin(), objs.end());
  return std::make_shared<DiagramGroupoid>("Fun([" + std::to_string(n) + "]," + amb->upper->name + ")", sh, amb,
                                           std::move(objs));
}

EmbeddingReport equivalence_embedding(const CatPtr& c, EmbeddingVariant variant, int up_to) {
  const bool mirrored = variant == EmbeddingVariant::ForwardIso;
  auto amb = make_ambient(c);
  Triple t = mirrored ? Triple::isos_all(c) : Triple::all_isos(c);
  SpanCategory S(t, amb);
  EmbeddingReport rep;
  for (int n = 0; n <= up_to; ++n) {
    auto F = functor_groupoid(amb, n);
    auto G = S.groupoid(n);
    const SigmaPoset s = sigma_poset(n);
    std::vector<int> r(s.size()), i(n + 1);
    for (int e = 0; e < s.size(); ++e) r[e] = mirrored ? n - s.elements[e].second : s.elements[e].first;
    for (int k = 0; k <= n; ++k) i[k] = mirrored ? s.index(0, n - k) : s.index(k, n);
    const auto in = DiagramFunctor::along(F, G, r, false);
    const auto rn = DiagramFunctor::along(G, F, i, false);
    EmbeddingLevel lv;
    lv.n = n;
    lv.source_objects = F->size();
    lv.target_objects = G->size();
    lv.retraction_identity = is_identity_functor(in.then(rn));
    for (const auto& x : F->objects())
      if (rn.apply(in.apply(x)) != x) lv.retraction_identity = false;
    lv.equivalence = check_equivalence(in);
    rep.levels.push_back(lv);
  }
  return rep;
}

}  // namespace spanfib
