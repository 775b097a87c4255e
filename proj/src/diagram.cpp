#include "spanfib/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace spanfib {

namespace {

long long pair_key(int a, int b) { return (static_cast<long long>(a) << 32) | static_cast<unsigned>(b); }

const Category& cat_of(const Ambient& amb, bool lower) { return lower ? *amb.lower : *amb.upper; }

int push(const Ambient& amb, int m, bool via_p) { return via_p ? amb.p->mor[m] : m; }

}  // namespace

int Shape::vertex_with_key(int k) const {
  for (int v = 0; v < size(); ++v)
    if (key[v] == k) return v;
  return -1;
}

int Shape::edge_between(int a, int b) const {
  auto it = edge_index_.find(pair_key(a, b));
  return it == edge_index_.end() ? -1 : it->second;
}

void Shape::finalize() {
  const int n = size();
  if (names.size() != key.size()) {
    names.resize(n);
    for (int v = 0; v < n; ++v)
      if (names[v].empty()) names[v] = "v" + std::to_string(v);
  }
  lower.resize(n, 0);
  rule.resize(n, VertexRule::Free);
  edge_index_.clear();
  incident.assign(n, {});
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    edge_index_[pair_key(edges[e].first, edges[e].second)] = e;
    incident[edges[e].first].push_back(e);
    if (edges[e].second != edges[e].first) incident[edges[e].second].push_back(e);
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int v) { return parent[v] == v ? v : parent[v] = root(parent[v]); };
  for (const auto& l : links) parent[root(l.v1)] = root(l.v2);
  class_of.assign(n, -1);
  classes.clear();
  std::vector<int> id_of_root(n, -1);
  for (int v = 0; v < n; ++v) {
    int r = root(v);
    if (id_of_root[r] < 0) {
      id_of_root[r] = static_cast<int>(classes.size());
      classes.push_back({});
    }
    class_of[v] = id_of_root[r];
    classes[class_of[v]].push_back(v);
  }
}

ShapePtr shape_of(const Subcomplex& s, const std::vector<std::string>& element_names) {
  const auto& x = *s.ambient;
  if (x.bound() < 2) throw std::invalid_argument("shape_of: ambient bound must be at least 2");
  auto sh = std::make_shared<Shape>();
  for (int c = 0; c < x.size(0); ++c)
    if (s.contains(0, c)) {
      const int k = x.key(0, c)[0];
      sh->key.push_back(k);
      sh->names.push_back(k < static_cast<int>(element_names.size()) ? element_names[k] : x.label(0, c));
    }
  std::map<int, int> vertex;
  for (int v = 0; v < sh->size(); ++v) vertex[sh->key[v]] = v;
  std::map<std::pair<int, int>, int> edge;
  for (int c = 0; c < x.size(1); ++c)
    if (s.contains(1, c) && !x.degenerate(1, c)) {
      const auto& k = x.key(1, c);
      edge[{k[0], k[1]}] = static_cast<int>(sh->edges.size());
      sh->edges.push_back({vertex.at(k[0]), vertex.at(k[1])});
    }
  for (int c = 0; c < x.size(2); ++c)
    if (s.contains(2, c) && !x.degenerate(2, c)) {
      const auto& k = x.key(2, c);
      sh->triangles.push_back({edge.at({k[0], k[1]}), edge.at({k[1], k[2]}), edge.at({k[0], k[2]})});
    }
  sh->finalize();
  return sh;
}

std::size_t DiagramHash::operator()(const Diagram& d) const {
  std::size_t h = d.ob.size() * 1000003u + d.mor.size();
  for (int v : d.ob) h = h * 1315423911u + static_cast<std::size_t>(v) + 0x9e3779b9u;
  for (int v : d.mor) h = h * 2654435761u + static_cast<std::size_t>(v) + 0x7f4a7c15u;
  return h;
}

AmbientPtr make_ambient(CatPtr upper, CatPtr lower, std::optional<Functor> p) {
  auto a = std::make_shared<Ambient>();
  a->upper = std::move(upper);
  a->lower = std::move(lower);
  a->p = std::move(p);
  auto isos = [](const Category& c) {
    std::vector<std::vector<int>> out(c.num_objects());
    for (int m = 0; m < c.num_morphisms(); ++m)
      if (c.is_iso(m)) out[c.src[m]].push_back(m);
    return out;
  };
  a->upper_isos = isos(*a->upper);
  if (a->lower) a->lower_isos = isos(*a->lower);
  return a;
}

bool is_diagram(const Shape& shape, const Ambient& amb, const Diagram& d) {
  if (static_cast<int>(d.ob.size()) != shape.size() || d.mor.size() != shape.edges.size()) return false;
  for (std::size_t e = 0; e < shape.edges.size(); ++e) {
    auto [a, b] = shape.edges[e];
    if (shape.lower[a] != shape.lower[b]) return false;
    const Category& c = cat_of(amb, shape.lower[a]);
    const int m = d.mor[e];
    if (m < 0 || m >= c.num_morphisms() || c.src[m] != d.ob[a] || c.tgt[m] != d.ob[b]) return false;
  }
  for (const auto& t : shape.triangles) {
    const Category& c = cat_of(amb, shape.lower[shape.edges[t.e01].first]);
    if (c.compose(d.mor[t.e12], d.mor[t.e01]) != d.mor[t.e02]) return false;
  }
  return true;
}

DiagramGroupoid::DiagramGroupoid(std::string name, ShapePtr shape, AmbientPtr ambient, std::vector<Diagram> objects)
    : name_(std::move(name)), shape_(std::move(shape)), ambient_(std::move(ambient)), objects_(std::move(objects)) {
  index_.reserve(objects_.size() * 2);
  for (int i = 0; i < size(); ++i)
    if (!index_.emplace(objects_[i], i).second) throw std::invalid_argument(name_ + ": duplicate object");
}

const Category& DiagramGroupoid::cat_at(int v) const { return cat_of(*ambient_, shape_->lower[v]); }

std::optional<int> DiagramGroupoid::find(const Diagram& d) const {
  auto it = index_.find(d);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> DiagramGroupoid::isos_at(int v, int a) const {
  const bool low = shape_->lower[v];
  const Category& c = cat_at(v);
  switch (shape_->rule[v]) {
    case VertexRule::Frozen:
      return {c.id[a]};
    case VertexRule::Vertical: {
      std::vector<int> out;
      for (int m : (low ? ambient_->lower_isos : ambient_->upper_isos)[a])
        if (low || ambient_->lower->is_identity(ambient_->p->mor[m])) out.push_back(m);
      return out;
    }
    case VertexRule::Free:
      break;
  }
  return (low ? ambient_->lower_isos : ambient_->upper_isos)[a];
}

bool DiagramGroupoid::links_hold(const Family& f, const std::vector<char>* assigned) const {
  for (const auto& l : shape_->links) {
    if (assigned && (!(*assigned)[l.v1] || !(*assigned)[l.v2])) continue;
    if (push(*ambient_, f[l.v1], l.p1) != push(*ambient_, f[l.v2], l.p2)) return false;
  }
  return true;
}

Diagram DiagramGroupoid::act(const Diagram& x, const Family& f) const {
  Diagram y;
  y.ob.resize(x.ob.size());
  y.mor.resize(x.mor.size());
  for (int v = 0; v < shape_->size(); ++v) y.ob[v] = cat_at(v).tgt[f[v]];
  for (std::size_t e = 0; e < x.mor.size(); ++e) {
    auto [a, b] = shape_->edges[e];
    const Category& c = cat_at(a);
    y.mor[e] = c.compose(c.compose(f[b], x.mor[e]), c.inverse[f[a]]);
  }
  return y;
}

Family DiagramGroupoid::identity(const Diagram& x) const {
  Family f(x.ob.size());
  for (int v = 0; v < shape_->size(); ++v) f[v] = cat_at(v).id[x.ob[v]];
  return f;
}

namespace {

// Backtracking over isomorphism families on a vertex list. `ok(v, f, assigned)`
// checks the constraints that became decidable once v was assigned.
void search_families(const std::vector<int>& order, const std::vector<std::vector<int>>& cands, Family& f,
                     std::vector<char>& assigned,
                     const std::function<bool(int, const Family&, const std::vector<char>&)>& ok,
                     const std::function<bool(const Family&)>& visit) {
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == order.size()) {
      if (!visit(f)) stop = true;
      return;
    }
    const int v = order[i];
    assigned[v] = 1;
    for (int m : cands[i]) {
      f[v] = m;
      if (ok(v, f, assigned)) rec(i + 1);
      if (stop) break;
    }
    assigned[v] = 0;
  };
  rec(0);
}

}  // namespace

std::vector<Family> DiagramGroupoid::moves(const Diagram& x, int cls) const {
  const auto& verts = shape_->classes[cls];
  Family f = identity(x);
  const Family id = f;
  std::vector<char> assigned(shape_->size(), 1);
  for (int v : verts) assigned[v] = 0;
  std::vector<std::vector<int>> cands;
  for (int v : verts) cands.push_back(isos_at(v, x.ob[v]));
  std::vector<Family> out;
  search_families(
      verts, cands, f, assigned, [&](int, const Family& g, const std::vector<char>& as) { return links_hold(g, &as); },
      [&](const Family& g) {
        if (g != id) out.push_back(g);
        return true;
      });
  return out;
}

namespace {

std::vector<Family> isos_between(const DiagramGroupoid& g, const Diagram& x, const Diagram& y, std::size_t limit) {
  const Shape& sh = g.shape();
  std::vector<int> order(sh.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<int>> cands;
  for (int v : order) {
    std::vector<int> c;
    for (int m : g.isos_at(v, x.ob[v]))
      if (g.cat_at(v).tgt[m] == y.ob[v]) c.push_back(m);
    if (c.empty()) return {};
    cands.push_back(std::move(c));
  }
  Family f(sh.size(), -1);
  std::vector<char> assigned(sh.size(), 0);
  std::vector<Family> out;
  search_families(
      order, cands, f, assigned,
      [&](int v, const Family& h, const std::vector<char>& as) {
        for (int e : sh.incident[v]) {
          auto [a, b] = sh.edges[e];
          if (!as[a] || !as[b]) continue;
          const Category& c = g.cat_at(a);
          if (c.compose(h[b], x.mor[e]) != c.compose(y.mor[e], h[a])) return false;
        }
        return g.links_hold(h, &as);
      },
      [&](const Family& h) {
        out.push_back(h);
        return limit == 0 || out.size() < limit;
      });
  return out;
}

}  // namespace

std::vector<Family> DiagramGroupoid::automorphisms(const Diagram& x, std::size_t limit) const {
  return isos_between(*this, x, x, limit);
}

std::optional<Family> DiagramGroupoid::isomorphism(const Diagram& x, const Diagram& y) const {
  auto r = isos_between(*this, x, y, 1);
  if (r.empty()) return std::nullopt;
  return r[0];
}

const std::vector<int>& DiagramGroupoid::components() const {
  if (ncomp_ >= 0) return comp_;
  comp_.assign(size(), -1);
  int next = 0;
  for (int s = 0; s < size(); ++s) {
    if (comp_[s] >= 0) continue;
    std::queue<int> q;
    q.push(s);
    comp_[s] = next;
    while (!q.empty()) {
      const int i = q.front();
      q.pop();
      const Diagram& x = objects_[i];
      for (int cls = 0; cls < static_cast<int>(shape_->classes.size()); ++cls)
        for (const auto& f : moves(x, cls)) {
          auto j = find(act(x, f));
          if (!j) throw std::logic_error(name_ + ": object set is not closed under isomorphism");
          if (comp_[*j] < 0) {
            comp_[*j] = next;
            q.push(*j);
          }
        }
    }
    ++next;
  }
  ncomp_ = next;
  return comp_;
}

int DiagramGroupoid::num_components() const {
  components();
  return ncomp_;
}

Diagram DiagramFunctor::apply(const Diagram& x) const {
  const Shape& ts = tgt->shape();
  const Ambient& amb = *src->ambient();
  Diagram y;
  y.ob.resize(ts.size());
  y.mor.resize(ts.edges.size());
  for (int w = 0; w < ts.size(); ++w) {
    const auto& s = vslots[w];
    y.ob[w] = s.via_p ? amb.p->obj[x.ob[s.v]] : x.ob[s.v];
  }
  for (std::size_t e = 0; e < ts.edges.size(); ++e) {
    const auto& s = eslots[e];
    if (s.e < 0) {
      const int a = ts.edges[e].first;
      y.mor[e] = tgt->cat_at(a).id[y.ob[a]];
    } else {
      y.mor[e] = push(amb, x.mor[s.e], s.via_p);
    }
  }
  return y;
}

Family DiagramFunctor::apply(const Family& f) const {
  Family g(vslots.size());
  for (std::size_t w = 0; w < vslots.size(); ++w) g[w] = push(*src->ambient(), f[vslots[w].v], vslots[w].via_p);
  return g;
}

std::optional<int> DiagramFunctor::image(int x) const { return tgt->find(apply(src->object(x))); }

DiagramFunctor DiagramFunctor::then(const DiagramFunctor& g) const {
  if (g.src != tgt) throw std::invalid_argument("DiagramFunctor::then: mismatched groupoids");
  DiagramFunctor h{src, g.tgt, {}, {}};
  for (const auto& s : g.vslots) h.vslots.push_back({vslots[s.v].v, s.via_p || vslots[s.v].via_p});
  for (const auto& s : g.eslots) {
    if (s.e < 0) {
      h.eslots.push_back({-1, false});
      continue;
    }
    const auto& t = eslots[s.e];
    h.eslots.push_back(t.e < 0 ? EdgeSlot{-1, false} : EdgeSlot{t.e, s.via_p || t.via_p});
  }
  return h;
}

DiagramFunctor DiagramFunctor::along(GroupoidPtr src, GroupoidPtr tgt, const std::vector<int>& vertex_map,
                                     bool via_p) {
  const Shape& ss = src->shape();
  const Shape& ts = tgt->shape();
  DiagramFunctor f{src, tgt, {}, {}};
  for (int w = 0; w < ts.size(); ++w) f.vslots.push_back({vertex_map[w], via_p});
  for (auto [a, b] : ts.edges) {
    const int va = vertex_map[a], vb = vertex_map[b];
    if (va == vb) {
      f.eslots.push_back({-1, false});
      continue;
    }
    const int e = ss.edge_between(va, vb);
    if (e < 0)
      throw std::invalid_argument("DiagramFunctor: no edge " + ss.names[va] + "->" + ss.names[vb] + " in " +
                                  src->name());
    f.eslots.push_back({e, via_p});
  }
  return f;
}

DiagramFunctor DiagramFunctor::restriction(GroupoidPtr src, GroupoidPtr tgt) {
  const Shape& ss = src->shape();
  const Shape& ts = tgt->shape();
  std::vector<int> vm(ts.size());
  bool via = false;
  for (int w = 0; w < ts.size(); ++w) {
    vm[w] = ss.vertex_with_key(ts.key[w]);
    if (vm[w] < 0) throw std::invalid_argument("restriction: vertex " + ts.names[w] + " missing from " + src->name());
    via = !ss.lower[vm[w]] && ts.lower[w];
  }
  return along(std::move(src), std::move(tgt), vm, via);
}

DiagramFunctor DiagramFunctor::postcompose(GroupoidPtr src, GroupoidPtr tgt) {
  std::vector<int> vm(tgt->shape().size());
  std::iota(vm.begin(), vm.end(), 0);
  return along(std::move(src), std::move(tgt), vm, true);
}

DiagramFunctor DiagramFunctor::projection(GroupoidPtr src, GroupoidPtr tgt, int voff, int eoff) {
  DiagramFunctor f{src, tgt, {}, {}};
  for (int w = 0; w < tgt->shape().size(); ++w) f.vslots.push_back({w + voff, false});
  for (std::size_t e = 0; e < tgt->shape().edges.size(); ++e) f.eslots.push_back({static_cast<int>(e) + eoff, false});
  return f;
}

std::string describe(const DiagramGroupoid& g, const Diagram& d) {
  const Shape& sh = g.shape();
  std::ostringstream os;
  os << '{';
  for (int v = 0; v < sh.size(); ++v) os << (v ? ", " : "") << sh.names[v] << ':' << g.cat_at(v).objects[d.ob[v]];
  bool first = true;
  for (std::size_t e = 0; e < sh.edges.size(); ++e) {
    const Category& c = g.cat_at(sh.edges[e].first);
    if (c.is_identity(d.mor[e])) continue;
    os << (first ? "; " : ", ") << sh.names[sh.edges[e].first] << "->" << sh.names[sh.edges[e].second] << ':'
       << c.morphisms[d.mor[e]];
    first = false;
  }
  os << '}';
  return os.str();
}

namespace {

struct Images {
  std::vector<int> img;
  CheckResult fail;
};

Images images(const DiagramFunctor& f) {
  Images r;
  r.img.resize(f.src->size());
  for (int x = 0; x < f.src->size(); ++x) {
    auto y = f.image(x);
    if (!y) {
      r.fail = {false, f.src->name() + " -> " + f.tgt->name() + ": image of " + describe(*f.src, f.src->object(x)) +
                           " is not an object of the target"};
      return r;
    }
    r.img[x] = *y;
  }
  return r;
}

// pi_0-injective and bijective on automorphism groups.
CheckResult fully_faithful(const DiagramFunctor& f, const std::vector<int>& img, bool need_pi0_surjective) {
  const auto& cs = f.src->components();
  const auto& ct = f.tgt->components();
  std::vector<int> hit(f.tgt->num_components(), -1);
  std::vector<int> rep(f.src->num_components(), -1);
  for (int x = 0; x < f.src->size(); ++x) {
    if (rep[cs[x]] < 0) rep[cs[x]] = x;
    const int t = ct[img[x]];
    if (hit[t] >= 0 && hit[t] != cs[x])
      return {false, "not injective on components: " + describe(*f.src, f.src->object(rep[hit[t]])) + " and " +
                         describe(*f.src, f.src->object(x)) + " have isomorphic images"};
    hit[t] = cs[x];
  }
  if (need_pi0_surjective)
    for (int y = 0; y < f.tgt->size(); ++y)
      if (hit[ct[y]] < 0) return {false, "not essentially surjective: " + describe(*f.tgt, f.tgt->object(y))};
  for (int x : rep) {
    const Diagram& dx = f.src->object(x);
    const auto auts = f.src->automorphisms(dx);
    std::set<Family> imgs;
    for (const auto& a : auts) imgs.insert(f.apply(a));
    if (imgs.size() < auts.size()) return {false, "not faithful at " + describe(*f.src, dx)};
    const auto taut = f.tgt->automorphisms(f.tgt->object(img[x]));
    if (taut.size() != auts.size())
      return {false, "not full at " + describe(*f.src, dx) + ": " + std::to_string(auts.size()) + " vs " +
                         std::to_string(taut.size()) + " automorphisms"};
  }
  return {};
}

}  // namespace

CheckResult check_equivalence(const DiagramFunctor& f) {
  auto im = images(f);
  if (!im.fail) return im.fail;
  return fully_faithful(f, im.img, true);
}

CheckResult check_trivial_fibration(const DiagramFunctor& f) {
  auto im = images(f);
  if (!im.fail) return im.fail;
  std::vector<char> hit(f.tgt->size(), 0);
  for (int y : im.img) hit[y] = 1;
  for (int y = 0; y < f.tgt->size(); ++y)
    if (!hit[y]) return {false, "not surjective on objects: " + describe(*f.tgt, f.tgt->object(y))};
  return fully_faithful(f, im.img, false);
}

CheckResult check_isofibration(const DiagramFunctor& f) {
  auto im = images(f);
  if (!im.fail) return im.fail;
  const DiagramGroupoid& S = *f.src;
  const DiagramGroupoid& T = *f.tgt;
  const Shape& ss = S.shape();
  const Ambient& amb = *S.ambient();
  // Constraints per source vertex: (target vertex, via_p).
  std::vector<std::vector<std::pair<int, bool>>> reads(ss.size());
  for (std::size_t w = 0; w < f.vslots.size(); ++w) reads[f.vslots[w].v].push_back({static_cast<int>(w), f.vslots[w].via_p});
  for (int x = 0; x < S.size(); ++x) {
    const Diagram& dx = S.object(x);
    const Diagram& dy = T.object(im.img[x]);
    for (int cls = 0; cls < static_cast<int>(T.shape().classes.size()); ++cls)
      for (const auto& h : T.moves(dy, cls)) {
        for (int sc = 0; sc < static_cast<int>(ss.classes.size()); ++sc) {
          const auto& verts = ss.classes[sc];
          std::vector<std::vector<int>> cands;
          for (int v : verts) {
            std::vector<int> c;
            for (int m : S.isos_at(v, dx.ob[v])) {
              bool good = true;
              for (auto [w, via] : reads[v])
                if (push(amb, m, via) != h[w]) good = false;
              if (good) c.push_back(m);
            }
            cands.push_back(std::move(c));
          }
          Family a = S.identity(dx);
          std::vector<char> assigned(ss.size(), 1);
          for (int v : verts) assigned[v] = 0;
          bool found = false;
          search_families(
              verts, cands, a, assigned,
              [&](int, const Family& g, const std::vector<char>& as) { return S.links_hold(g, &as); },
              [&](const Family&) {
                found = true;
                return false;
              });
          if (!found)
            return {false, "isomorphism out of " + describe(T, dy) + " does not lift at " + describe(S, dx)};
        }
      }
  }
  return {};
}

CheckResult check_contractible(const DiagramGroupoid& g) {
  if (g.size() == 0) return {false, g.name() + " is empty"};
  if (g.num_components() != 1)
    return {false, g.name() + " has " + std::to_string(g.num_components()) + " components"};
  const auto auts = g.automorphisms(g.object(0), 2);
  if (auts.size() != 1) return {false, describe(g, g.object(0)) + " has nontrivial automorphisms"};
  return {};
}

StrictPullback strict_pullback(const DiagramFunctor& f, const DiagramFunctor& g, const std::string& name) {
  if (f.tgt != g.tgt) throw std::invalid_argument("strict_pullback: functors have different targets");
  const Shape& a = f.src->shape();
  const Shape& b = g.src->shape();
  const int na = a.size();
  const int ea = static_cast<int>(a.edges.size());
  auto sh = std::make_shared<Shape>();
  for (const Shape* s : {&a, &b}) {
    const int voff = s == &a ? 0 : na;
    const int eoff = s == &a ? 0 : ea;
    for (int v = 0; v < s->size(); ++v) {
      sh->key.push_back(-1);
      sh->names.push_back(s == &a ? s->names[v] : s->names[v] + "'");
      sh->lower.push_back(s->lower[v]);
      sh->rule.push_back(s->rule[v]);
    }
    for (auto [x, y] : s->edges) sh->edges.push_back({x + voff, y + voff});
    for (auto t : s->triangles) sh->triangles.push_back({t.e01 + eoff, t.e12 + eoff, t.e02 + eoff});
    for (auto l : s->links) sh->links.push_back({l.v1 + voff, l.p1, l.v2 + voff, l.p2});
  }
  for (std::size_t w = 0; w < f.vslots.size(); ++w)
    sh->links.push_back({f.vslots[w].v, f.vslots[w].via_p, g.vslots[w].v + na, g.vslots[w].via_p});
  sh->finalize();

  std::vector<Diagram> objs;
  std::unordered_map<Diagram, std::vector<int>, DiagramHash> right;
  for (int y = 0; y < g.src->size(); ++y) right[g.apply(g.src->object(y))].push_back(y);
  for (int x = 0; x < f.src->size(); ++x) {
    const Diagram& dx = f.src->object(x);
    auto it = right.find(f.apply(dx));
    if (it == right.end()) continue;
    for (int y : it->second) {
      const Diagram& dy = g.src->object(y);
      Diagram d = dx;
      d.ob.insert(d.ob.end(), dy.ob.begin(), dy.ob.end());
      d.mor.insert(d.mor.end(), dy.mor.begin(), dy.mor.end());
      objs.push_back(std::move(d));
    }
  }
  auto p = std::make_shared<DiagramGroupoid>(name, sh, f.src->ambient(), std::move(objs));
  return {p, DiagramFunctor::projection(p, f.src, 0, 0), DiagramFunctor::projection(p, g.src, na, ea)};
}

DiagramFunctor pairing(const StrictPullback& p, const DiagramFunctor& a, const DiagramFunctor& b) {
  DiagramFunctor f{a.src, p.groupoid, a.vslots, a.eslots};
  f.vslots.insert(f.vslots.end(), b.vslots.begin(), b.vslots.end());
  f.eslots.insert(f.eslots.end(), b.eslots.begin(), b.eslots.end());
  return f;
}

GroupoidPtr fiber(const DiagramFunctor& f, int y) {
  auto sh = std::make_shared<Shape>(f.src->shape());
  for (const auto& s : f.vslots) {
    if (!s.via_p)
      sh->rule[s.v] = VertexRule::Frozen;
    else if (sh->rule[s.v] != VertexRule::Frozen)
      sh->rule[s.v] = VertexRule::Vertical;
  }
  sh->finalize();
  const Diagram& dy = f.tgt->object(y);
  std::vector<Diagram> objs;
  for (const auto& x : f.src->objects())
    if (f.apply(x) == dy) objs.push_back(x);
  return std::make_shared<DiagramGroupoid>(f.src->name() + " fibre over " + describe(*f.tgt, dy), sh,
                                           f.src->ambient(), std::move(objs));
}

GroupoidPtr filtered(const DiagramGroupoid& g, const std::function<bool(const Diagram&)>& pred,
                     const std::string& name) {
  std::vector<Diagram> objs;
  for (const auto& x : g.objects())
    if (pred(x)) objs.push_back(x);
  return std::make_shared<DiagramGroupoid>(name, g.shape_ptr(), g.ambient(), std::move(objs));
}

}  // namespace spanfib

namespace spanfib {

std::vector<Diagram> enumerate_diagrams(const Shape& shape, const Ambient& amb,
                                        const std::vector<const MorphismMask*>& edge_masks) {
  const int nv = shape.size();
  const int ne = static_cast<int>(shape.edges.size());
  // Edges become assignable once both endpoints are; triangles once all three edges are.
  std::vector<std::vector<int>> edges_at(nv);
  for (int e = 0; e < ne; ++e) {
    auto [a, b] = shape.edges[e];
    edges_at[std::max(a, b)].push_back(e);
  }
  std::vector<std::vector<int>> tri_at(ne);
  for (int t = 0; t < static_cast<int>(shape.triangles.size()); ++t) {
    const auto& tr = shape.triangles[t];
    tri_at[std::max({tr.e01, tr.e12, tr.e02})].push_back(t);
  }
  std::vector<Diagram> out;
  Diagram d;
  d.ob.assign(nv, -1);
  d.mor.assign(ne, -1);
  std::function<void(int)> vertex;
  std::function<void(int, std::size_t)> edge = [&](int v, std::size_t i) {
    if (i == edges_at[v].size()) {
      vertex(v + 1);
      return;
    }
    const int e = edges_at[v][i];
    auto [a, b] = shape.edges[e];
    const Category& c = cat_of(amb, shape.lower[a]);
    const MorphismMask* mask = e < static_cast<int>(edge_masks.size()) ? edge_masks[e] : nullptr;
    for (int m : c.hom(d.ob[a], d.ob[b])) {
      if (mask && !(*mask)[m]) continue;
      d.mor[e] = m;
      bool ok = true;
      for (int t : tri_at[e]) {
        const auto& tr = shape.triangles[t];
        if (c.compose(d.mor[tr.e12], d.mor[tr.e01]) != d.mor[tr.e02]) {
          ok = false;
          break;
        }
      }
      if (ok) edge(v, i + 1);
    }
    d.mor[e] = -1;
  };
  vertex = [&](int v) {
    if (v == nv) {
      out.push_back(d);
      return;
    }
    const Category& c = cat_of(amb, shape.lower[v]);
    for (int o = 0; o < c.num_objects(); ++o) {
      d.ob[v] = o;
      edge(v, 0);
    }
    d.ob[v] = -1;
  };
  vertex(0);
  return out;
}

}  // namespace spanfib
