#include "spanfib/simpset.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace spanfib {

namespace {

void check_bound(int bound) {
  if (bound < 0 || bound > kMaxBound)
    throw std::invalid_argument("bound " + std::to_string(bound) + " outside 0.." +
                                std::to_string(kMaxBound));
}

// Weakly monotone sequences of length len with values in 0..n.
void monotone(int len, int n, std::vector<Key>& out) {
  Key cur(len, 0);
  std::function<void(int, int)> rec = [&](int pos, int lo) {
    if (pos == len) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= n; ++v) {
      cur[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
}

}  // namespace

std::vector<int> SimplicialSet::nondegenerate(int k) const {
  std::vector<int> out;
  for (int x = 0; x < size(k); ++x)
    if (!degenerate(k, x)) out.push_back(x);
  return out;
}

int SimplicialSet::count_nondegenerate(int k) const {
  int c = 0;
  for (int x = 0; x < size(k); ++x) c += degenerate(k, x) ? 0 : 1;
  return c;
}

std::optional<int> SimplicialSet::find(int k, const Key& key) const {
  if (index_.empty()) return std::nullopt;
  auto it = index_[k].find(key);
  if (it == index_[k].end()) return std::nullopt;
  return it->second;
}

std::string SimplicialSet::label(int k, int x) const {
  if (!keyed()) return "#" + std::to_string(x);
  std::ostringstream os;
  const Key& key = keys_[k][x];
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (!names_.empty()) {
      if (i) os << ',';
      os << names_.at(key[i]);
    } else {
      os << key[i];
    }
  }
  return os.str();
}

std::vector<int> SimplicialSet::vertices(int k, int x) const {
  std::vector<int> out(k + 1);
  for (int j = 0; j <= k; ++j) {
    int level = k, cell = x, pos = j;
    while (level > 0) {
      if (pos < level) {
        cell = face(level, level, cell);
      } else {
        cell = face(level, 0, cell);
        --pos;
      }
      --level;
    }
    out[j] = cell;
  }
  return out;
}

std::vector<std::string> SimplicialSet::identity_violations() const {
  std::vector<std::string> out;
  auto report = [&](const std::string& what, int k, int x) {
    out.push_back(what + " at level " + std::to_string(k) + " simplex " + label(k, x));
  };
  for (int k = 0; k <= bound_; ++k) {
    for (int x = 0; x < size(k); ++x) {
      if (k >= 2)
        for (int j = 0; j <= k; ++j)
          for (int i = 0; i < j; ++i)
            if (face(k - 1, i, face(k, j, x)) != face(k - 1, j - 1, face(k, i, x)))
              report("d" + std::to_string(i) + "d" + std::to_string(j), k, x);
      if (k + 2 <= bound_)
        for (int j = 0; j <= k; ++j)
          for (int i = 0; i <= j; ++i)
            if (degen(k + 1, i, degen(k, j, x)) != degen(k + 1, j + 1, degen(k, i, x)))
              report("s" + std::to_string(i) + "s" + std::to_string(j), k, x);
      if (k + 1 <= bound_)
        for (int j = 0; j <= k; ++j) {
          const int sx = degen(k, j, x);
          for (int i = 0; i <= k + 1; ++i) {
            const int lhs = face(k + 1, i, sx);
            int rhs;
            if (i == j || i == j + 1)
              rhs = x;
            else if (i < j)
              rhs = degen(k - 1, j - 1, face(k, i, x));
            else
              rhs = degen(k - 1, j, face(k, i - 1, x));
            if (lhs != rhs) report("d" + std::to_string(i) + "s" + std::to_string(j), k, x);
          }
        }
    }
  }
  return out;
}

void SimplicialSet::install(int bound, std::vector<int> counts,
                            std::vector<std::vector<std::vector<int>>> faces,
                            std::vector<std::vector<std::vector<int>>> degens) {
  bound_ = bound;
  cells_.rank.resize(bound + 1);
  cells_.count = std::move(counts);
  cells_.faces.assign(bound + 1, {});
  cells_.degens.assign(bound + 1, {});
  for (int k = 0; k <= bound; ++k) {
    cells_.rank[k] = k;
    if (k >= 1)
      for (auto& t : faces[k]) cells_.faces[k].push_back({k - 1, std::move(t)});
    if (k < bound)
      for (auto& t : degens[k]) cells_.degens[k].push_back({k + 1, std::move(t)});
  }
  cells_.finalize();
}

SSetPtr SimplicialSet::from_tables(int bound, std::vector<int> counts,
                                   std::vector<std::vector<std::vector<int>>> faces,
                                   std::vector<std::vector<std::vector<int>>> degens) {
  check_bound(bound);
  auto s = std::make_shared<SimplicialSet>();
  faces.resize(bound + 1);
  degens.resize(bound + 1);
  s->install(bound, std::move(counts), std::move(faces), std::move(degens));
  return s;
}

SSetPtr SimplicialSet::from_keys(int bound, const KeyGen& gen, const KeyOp& face,
                                 const KeyOp& degen) {
  check_bound(bound);
  auto s = std::make_shared<SimplicialSet>();
  s->keys_.resize(bound + 1);
  s->index_.resize(bound + 1);
  std::vector<int> counts(bound + 1);
  for (int k = 0; k <= bound; ++k) {
    s->keys_[k] = gen(k);
    for (std::size_t x = 0; x < s->keys_[k].size(); ++x)
      if (!s->index_[k].emplace(s->keys_[k][x], static_cast<int>(x)).second)
        throw std::logic_error("duplicate key at level " + std::to_string(k));
    counts[k] = static_cast<int>(s->keys_[k].size());
  }
  auto lookup = [&](int k, const Key& key) {
    auto it = s->index_[k].find(key);
    if (it == s->index_[k].end())
      throw std::logic_error("structure map leaves the generated set at level " +
                             std::to_string(k));
    return it->second;
  };
  std::vector<std::vector<std::vector<int>>> faces(bound + 1), degens(bound + 1);
  for (int k = 0; k <= bound; ++k) {
    if (k >= 1) {
      faces[k].assign(k + 1, std::vector<int>(counts[k]));
      for (int i = 0; i <= k; ++i)
        for (int x = 0; x < counts[k]; ++x)
          faces[k][i][x] = lookup(k - 1, face(k, i, s->keys_[k][x]));
    }
    if (k < bound) {
      degens[k].assign(k + 1, std::vector<int>(counts[k]));
      for (int i = 0; i <= k; ++i)
        for (int x = 0; x < counts[k]; ++x)
          degens[k][i][x] = lookup(k + 1, degen(k, i, s->keys_[k][x]));
    }
  }
  s->install(bound, std::move(counts), std::move(faces), std::move(degens));
  return s;
}

SSetPtr SimplicialSet::with_names(std::vector<std::string> names) const {
  auto s = std::make_shared<SimplicialSet>(*this);
  s->names_ = std::move(names);
  return s;
}

bool SimplicialMap::valid() const {
  return source && target && source->bound() == target->bound() &&
         is_cell_map(source->cells(), target->cells(), at);
}

bool SimplicialMap::injective() const {
  for (int k = 0; k <= source->bound(); ++k) {
    std::vector<char> seen(target->size(k), 0);
    for (int v : at[k]) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
  }
  return true;
}

SimplicialMap SimplicialMap::identity(const SSetPtr& x) {
  SimplicialMap m{x, x, {}};
  m.at.resize(x->bound() + 1);
  for (int k = 0; k <= x->bound(); ++k) {
    m.at[k].resize(x->size(k));
    for (int i = 0; i < x->size(k); ++i) m.at[k][i] = i;
  }
  return m;
}

SimplicialMap SimplicialMap::after(const SimplicialMap& g) const {
  SimplicialMap m{g.source, target, {}};
  m.at.resize(g.at.size());
  for (std::size_t k = 0; k < g.at.size(); ++k) {
    m.at[k].resize(g.at[k].size());
    for (std::size_t x = 0; x < g.at[k].size(); ++x) m.at[k][x] = at[k][g.at[k][x]];
  }
  return m;
}

int Subcomplex::size(int k) const {
  return static_cast<int>(std::count(member[k].begin(), member[k].end(), 1));
}

bool Subcomplex::closed() const {
  const auto& a = *ambient;
  for (int k = 0; k <= a.bound(); ++k)
    for (int x = 0; x < a.size(k); ++x) {
      if (!member[k][x]) continue;
      if (k >= 1)
        for (int i = 0; i <= k; ++i)
          if (!member[k - 1][a.face(k, i, x)]) return false;
      if (k < a.bound())
        for (int i = 0; i <= k; ++i)
          if (!member[k + 1][a.degen(k, i, x)]) return false;
    }
  return true;
}

bool Subcomplex::subset_of(const Subcomplex& o) const {
  for (std::size_t k = 0; k < member.size(); ++k)
    for (std::size_t x = 0; x < member[k].size(); ++x)
      if (member[k][x] && !o.member[k][x]) return false;
  return true;
}

Subcomplex::Realized Subcomplex::realize() const {
  const auto& a = *ambient;
  const int bound = a.bound();
  std::vector<std::vector<int>> newid(bound + 1), oldid(bound + 1);
  for (int k = 0; k <= bound; ++k) {
    newid[k].assign(a.size(k), -1);
    for (int x = 0; x < a.size(k); ++x)
      if (member[k][x]) {
        newid[k][x] = static_cast<int>(oldid[k].size());
        oldid[k].push_back(x);
      }
  }
  std::vector<int> counts(bound + 1);
  std::vector<std::vector<std::vector<int>>> faces(bound + 1), degens(bound + 1);
  for (int k = 0; k <= bound; ++k) {
    counts[k] = static_cast<int>(oldid[k].size());
    if (k >= 1) {
      faces[k].assign(k + 1, {});
      for (int i = 0; i <= k; ++i)
        for (int x : oldid[k]) faces[k][i].push_back(newid[k - 1][a.face(k, i, x)]);
    }
    if (k < bound) {
      degens[k].assign(k + 1, {});
      for (int i = 0; i <= k; ++i)
        for (int x : oldid[k]) degens[k][i].push_back(newid[k + 1][a.degen(k, i, x)]);
    }
  }
  auto s = std::make_shared<SimplicialSet>();
  s->install(bound, std::move(counts), std::move(faces), std::move(degens));
  if (a.keyed()) {
    s->keys_.resize(bound + 1);
    s->index_.resize(bound + 1);
    for (int k = 0; k <= bound; ++k)
      for (int x : oldid[k]) {
        s->index_[k].emplace(a.key(k, x), static_cast<int>(s->keys_[k].size()));
        s->keys_[k].push_back(a.key(k, x));
      }
    s->names_ = a.names_;
  }
  SSetPtr sp = s;
  return Realized{sp, SimplicialMap{sp, ambient, oldid}};
}

Subcomplex Subcomplex::empty(const SSetPtr& ambient) {
  Subcomplex s{ambient, {}};
  for (int k = 0; k <= ambient->bound(); ++k) s.member.emplace_back(ambient->size(k), 0);
  return s;
}

Subcomplex Subcomplex::full(const SSetPtr& ambient) {
  Subcomplex s{ambient, {}};
  for (int k = 0; k <= ambient->bound(); ++k) s.member.emplace_back(ambient->size(k), 1);
  return s;
}

Subcomplex Subcomplex::generated(const SSetPtr& ambient,
                                 const std::vector<std::pair<int, int>>& gens) {
  Subcomplex s = empty(ambient);
  const auto& a = *ambient;
  for (auto [k, x] : gens) s.member[k][x] = 1;
  for (int k = a.bound(); k >= 1; --k)
    for (int x = 0; x < a.size(k); ++x)
      if (s.member[k][x])
        for (int i = 0; i <= k; ++i) s.member[k - 1][a.face(k, i, x)] = 1;
  for (int k = 0; k < a.bound(); ++k)
    for (int x = 0; x < a.size(k); ++x)
      if (s.member[k][x])
        for (int i = 0; i <= k; ++i) s.member[k + 1][a.degen(k, i, x)] = 1;
  return s;
}

Subcomplex Subcomplex::image(const SimplicialMap& m) {
  Subcomplex s = empty(m.target);
  for (std::size_t k = 0; k < m.at.size(); ++k)
    for (int v : m.at[k]) s.member[k][v] = 1;
  return s;
}

Subcomplex unite(const Subcomplex& a, const Subcomplex& b) {
  if (a.ambient != b.ambient) throw std::invalid_argument("union: ambient mismatch");
  Subcomplex s = a;
  for (std::size_t k = 0; k < s.member.size(); ++k)
    for (std::size_t x = 0; x < s.member[k].size(); ++x) s.member[k][x] |= b.member[k][x];
  return s;
}

Subcomplex intersect(const Subcomplex& a, const Subcomplex& b) {
  if (a.ambient != b.ambient) throw std::invalid_argument("intersect: ambient mismatch");
  Subcomplex s = a;
  for (std::size_t k = 0; k < s.member.size(); ++k)
    for (std::size_t x = 0; x < s.member[k].size(); ++x) s.member[k][x] &= b.member[k][x];
  return s;
}

SSetPtr standard_simplex(int n, int bound) {
  check_bound(bound);
  if (n < 0 || n > kMaxBound)
    throw std::invalid_argument("standard simplex dimension " + std::to_string(n) +
                                " exceeds cap " + std::to_string(kMaxBound));
  return SimplicialSet::from_keys(
      bound,
      [n](int k) {
        std::vector<Key> out;
        monotone(k + 1, n, out);
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
}

Subcomplex simplex_subcomplex(const SSetPtr& delta_n, const std::vector<std::vector<int>>& vertex_sets) {
  Subcomplex s = Subcomplex::empty(delta_n);
  for (int k = 0; k <= delta_n->bound(); ++k)
    for (int x = 0; x < delta_n->size(k); ++x) {
      const Key& key = delta_n->key(k, x);
      for (const auto& vs : vertex_sets) {
        bool inside = std::all_of(key.begin(), key.end(), [&](int v) {
          return std::find(vs.begin(), vs.end(), v) != vs.end();
        });
        if (inside) {
          s.member[k][x] = 1;
          break;
        }
      }
    }
  return s;
}

std::vector<std::vector<int>> named_vertex_sets(SubKind kind, int n, int k) {
  auto all_but = [n](int skip) {
    std::vector<int> v;
    for (int i = 0; i <= n; ++i)
      if (i != skip) v.push_back(i);
    return v;
  };
  std::vector<std::vector<int>> out;
  switch (kind) {
    case SubKind::Full:
      out.push_back(all_but(-1));
      break;
    case SubKind::Boundary:
      if (n < 0) throw std::invalid_argument("boundary needs n >= 0");
      for (int i = 0; i <= n; ++i) out.push_back(all_but(i));
      if (n == 0) out.clear();
      break;
    case SubKind::Face:
      if (k < 0 || k > n || n < 1) throw std::invalid_argument("face index out of range");
      out.push_back(all_but(k));
      break;
    case SubKind::Horn:
      if (n < 1 || k < 0 || k > n) throw std::invalid_argument("horn index out of range");
      for (int i = 0; i <= n; ++i)
        if (i != k) out.push_back(all_but(i));
      break;
    case SubKind::Spine:
      if (n < 1) throw std::invalid_argument("spine needs n >= 1");
      for (int i = 0; i < n; ++i) out.push_back({i, i + 1});
      break;
    case SubKind::LeftSpine:
      if (n < 2) throw std::invalid_argument("left spine needs n >= 2");
      out.push_back({0, 1});
      out.push_back({0, 2});
      for (int i = 2; i < n; ++i) out.push_back({i, i + 1});
      break;
  }
  return out;
}

Subcomplex named_subcomplex(SubKind kind, const SSetPtr& delta_n, int k) {
  const int n = static_cast<int>(delta_n->key(0, delta_n->size(0) - 1)[0]);
  return simplex_subcomplex(delta_n, named_vertex_sets(kind, n, k));
}

Subcomplex named_subcomplex(SubKind kind, int n, int k, int bound) {
  return named_subcomplex(kind, standard_simplex(n, bound), k);
}

std::vector<SimplicialMap> enumerate_maps(const SSetPtr& a, const SSetPtr& x) {
  if (a->bound() != x->bound()) throw std::invalid_argument("enumerate_maps: bound mismatch");
  std::vector<SimplicialMap> out;
  MapProblem p;
  p.src = &a->cells();
  p.tgt = &x->cells();
  search_maps(p, [&](const CellMap& m) {
    out.push_back(SimplicialMap{a, x, m});
    return true;
  });
  std::sort(out.begin(), out.end(),
            [](const SimplicialMap& l, const SimplicialMap& r) { return l.at < r.at; });
  return out;
}

std::size_t count_maps(const SSetPtr& a, const SSetPtr& x) {
  if (a->bound() != x->bound()) throw std::invalid_argument("count_maps: bound mismatch");
  MapProblem p;
  p.src = &a->cells();
  p.tgt = &x->cells();
  return count_maps(p);
}

std::vector<SimplicialMap> solve_lifting(const LiftingSquare& sq, std::size_t limit) {
  if (!sq.i.valid() || !sq.f.valid() || !sq.top.valid() || !sq.bottom.valid())
    throw std::invalid_argument("lifting square: a side is not a simplicial map");
  if (!sq.i.injective()) throw std::invalid_argument("lifting square: i is not injective");
  if (sq.f.after(sq.top).at != sq.bottom.after(sq.i).at)
    throw std::invalid_argument("lifting square does not commute");
  const auto& b = sq.i.target;
  const auto& x = sq.f.source;
  MapProblem p;
  p.src = &b->cells();
  p.tgt = &x->cells();
  p.fixed.resize(b->bound() + 1);
  for (int k = 0; k <= b->bound(); ++k) {
    p.fixed[k].assign(b->size(k), -1);
    for (std::size_t a = 0; a < sq.i.at[k].size(); ++a) p.fixed[k][sq.i.at[k][a]] = sq.top.at[k][a];
  }
  p.proj = &sq.f.at;
  p.over = sq.bottom.at;
  auto fib = fibres_of(sq.f.at, sq.f.target->cells());
  p.fibres = &fib;
  std::vector<SimplicialMap> out;
  search_maps(p, [&](const CellMap& m) {
    out.push_back(SimplicialMap{b, x, m});
    return limit == 0 || out.size() < limit;
  });
  std::sort(out.begin(), out.end(),
            [](const SimplicialMap& l, const SimplicialMap& r) { return l.at < r.at; });
  return out;
}

SimplicialMap yoneda_map(const SSetPtr& delta_n, const SSetPtr& y, int n, int s) {
  Key top(n + 1);
  for (int i = 0; i <= n; ++i) top[i] = i;
  MapProblem p;
  p.src = &delta_n->cells();
  p.tgt = &y->cells();
  p.fixed.resize(delta_n->bound() + 1);
  for (int k = 0; k <= delta_n->bound(); ++k) p.fixed[k].assign(delta_n->size(k), -1);
  p.fixed[n][*delta_n->find(n, top)] = s;
  std::optional<SimplicialMap> out;
  search_maps(p, [&](const CellMap& m) {
    out = SimplicialMap{delta_n, y, m};
    return false;
  });
  if (!out) throw std::logic_error("yoneda_map: no map found");
  return *out;
}

std::vector<std::pair<std::string, Subcomplex>> family_generators(HornFamily family, int n, int bound) {
  std::vector<std::pair<std::string, Subcomplex>> out;
  auto delta = standard_simplex(n, bound);
  auto name = [](const char* what, int n, int k) {
    return std::string(what) + "(" + std::to_string(n) + "," + std::to_string(k) + ")";
  };
  switch (family) {
    case HornFamily::Boundaries:
      out.push_back({"boundary(" + std::to_string(n) + ")", named_subcomplex(SubKind::Boundary, delta)});
      break;
    case HornFamily::Horns:
      if (n >= 1)
        for (int k = 0; k <= n; ++k) out.push_back({name("horn", n, k), named_subcomplex(SubKind::Horn, delta, k)});
      break;
    case HornFamily::InnerHorns:
      for (int k = 1; k < n; ++k) out.push_back({name("horn", n, k), named_subcomplex(SubKind::Horn, delta, k)});
      break;
    case HornFamily::LeftHorns:
      if (n >= 1)
        for (int k = 0; k < n; ++k) out.push_back({name("horn", n, k), named_subcomplex(SubKind::Horn, delta, k)});
      break;
  }
  return out;
}

std::optional<RlpFailure> rlp_failure(const SimplicialMap& f, HornFamily family, int up_to) {
  const auto& x = f.source;
  const auto& y = f.target;
  const int bound = x->bound();
  if (up_to > bound) throw std::invalid_argument("has_rlp: up_to exceeds bound");
  auto fib = fibres_of(f.at, y->cells());
  for (int n = family == HornFamily::Boundaries ? 0 : 1; n <= up_to; ++n) {
    auto gens = family_generators(family, n, bound);
    if (gens.empty()) continue;
    const auto delta = gens.front().second.ambient;
    std::vector<Subcomplex::Realized> real;
    for (auto& g : gens) real.push_back(g.second.realize());
    for (int s = 0; s < y->size(n); ++s) {
      const SimplicialMap bottom = yoneda_map(delta, y, n, s);
      for (std::size_t g = 0; g < gens.size(); ++g) {
        const auto& r = real[g];
        MapProblem tops;
        tops.src = &r.set->cells();
        tops.tgt = &x->cells();
        tops.proj = &f.at;
        tops.over = bottom.after(r.inclusion).at;
        tops.fibres = &fib;
        std::optional<RlpFailure> fail;
        search_maps(tops, [&](const CellMap& top) {
          MapProblem fill;
          fill.src = &delta->cells();
          fill.tgt = &x->cells();
          fill.fixed.resize(bound + 1);
          for (int k = 0; k <= bound; ++k) {
            fill.fixed[k].assign(delta->size(k), -1);
            for (std::size_t a = 0; a < top[k].size(); ++a) fill.fixed[k][r.inclusion.at[k][a]] = top[k][a];
          }
          fill.proj = &f.at;
          fill.over = bottom.at;
          fill.fibres = &fib;
          if (exists_map(fill)) return true;
          fail = RlpFailure{n, gens[g].first, s, top};
          return false;
        });
        if (fail) return fail;
      }
    }
  }
  return std::nullopt;
}

bool has_rlp(const SimplicialMap& f, HornFamily family, int up_to) {
  return !rlp_failure(f, family, up_to).has_value();
}

SSetPtr terminal_sset(int bound) { return standard_simplex(0, bound); }

SimplicialMap map_to_terminal(const SSetPtr& x) {
  auto t = terminal_sset(x->bound());
  SimplicialMap m{x, t, {}};
  for (int k = 0; k <= x->bound(); ++k) m.at.emplace_back(x->size(k), 0);
  return m;
}

}  // namespace spanfib
