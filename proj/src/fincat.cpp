#include "spanfib/fincat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace spanfib {

std::optional<int> Category::object(const std::string& n) const {
  auto it = obj_index.find(n);
  if (it == obj_index.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Category::morphism(const std::string& n) const {
  auto it = mor_index.find(n);
  if (it == mor_index.end()) return std::nullopt;
  return it->second;
}

namespace {

std::string line_note(int line) { return line > 0 ? " (line " + std::to_string(line) + ")" : ""; }

}  // namespace

CategoryValidation validate_category(const RawCategory& raw) {
  CategoryValidation out;
  auto& bad = out.violations;
  auto c = std::make_shared<Category>();
  c->name = raw.name;
  for (const auto& o : raw.objects) {
    if (!c->obj_index.emplace(o, c->num_objects()).second) {
      bad.push_back("duplicate object '" + o + "'");
      continue;
    }
    c->objects.push_back(o);
  }
  auto add_morphism = [&](const std::string& name, int s, int t) {
    c->mor_index.emplace(name, c->num_morphisms());
    c->morphisms.push_back(name);
    c->src.push_back(s);
    c->tgt.push_back(t);
  };
  for (int o = 0; o < c->num_objects(); ++o) {
    add_morphism("id_" + c->objects[o], o, o);
    c->id.push_back(o);
  }
  for (const auto& m : raw.morphisms) {
    auto s = c->object(m.src);
    auto t = c->object(m.tgt);
    if (!s) bad.push_back("dangling source '" + m.src + "' of morphism '" + m.name + "'" + line_note(m.line));
    if (!t) bad.push_back("dangling target '" + m.tgt + "' of morphism '" + m.name + "'" + line_note(m.line));
    if (!s || !t) continue;
    if (auto prev = c->morphism(m.name)) {
      // Explicitly listed identities are accepted when consistent.
      if (*prev < c->num_objects() && *s == *prev && *t == *prev) continue;
      bad.push_back("duplicate morphism '" + m.name + "'" + line_note(m.line));
      continue;
    }
    add_morphism(m.name, *s, *t);
  }
  const int nm = c->num_morphisms();
  c->comp.assign(nm, std::vector<int>(nm, -1));
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f)
      if (c->tgt[f] == c->src[g]) c->comp[g][f] = -2;
  for (int f = 0; f < nm; ++f) {
    c->comp[c->id[c->tgt[f]]][f] = f;
    c->comp[f][c->id[c->src[f]]] = f;
  }
  for (const auto& e : raw.composites) {
    auto g = c->morphism(e.g), f = c->morphism(e.f), h = c->morphism(e.h);
    bool known = true;
    for (auto [opt, nm_] : {std::pair{g, e.g}, std::pair{f, e.f}, std::pair{h, e.h}})
      if (!opt) {
        bad.push_back("unknown morphism '" + nm_ + "' in composite" + line_note(e.line));
        known = false;
      }
    if (!known) continue;
    if (c->tgt[*f] != c->src[*g]) {
      bad.push_back("composite of non-composable pair " + e.g + " ∘ " + e.f + line_note(e.line));
      continue;
    }
    if (c->src[*h] != c->src[*f] || c->tgt[*h] != c->tgt[*g]) {
      bad.push_back("composite " + e.g + " ∘ " + e.f + " = " + e.h + " has wrong endpoints" + line_note(e.line));
      continue;
    }
    int& slot = c->comp[*g][*f];
    if (slot >= 0 && slot != *h) {
      bad.push_back("conflicting composite " + e.g + " ∘ " + e.f + ": " + c->morphisms[slot] + " vs " +
                    e.h + line_note(e.line));
      continue;
    }
    slot = *h;
  }
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f)
      if (c->comp[g][f] == -2)
        bad.push_back("missing composite " + c->morphisms[g] + " ∘ " + c->morphisms[f]);
  if (!bad.empty()) return out;

  int assoc_reported = 0;
  for (int f = 0; f < nm && assoc_reported < 5; ++f)
    for (int g = 0; g < nm && assoc_reported < 5; ++g) {
      if (c->comp[g][f] < 0) continue;
      for (int h = 0; h < nm && assoc_reported < 5; ++h) {
        if (c->comp[h][g] < 0) continue;
        if (c->comp[h][c->comp[g][f]] != c->comp[c->comp[h][g]][f]) {
          bad.push_back("non-associative triple (" + c->morphisms[h] + ", " + c->morphisms[g] + ", " +
                        c->morphisms[f] + ")");
          ++assoc_reported;
        }
      }
    }
  if (!bad.empty()) return out;

  const int no = c->num_objects();
  c->homs.assign(no, std::vector<std::vector<int>>(no));
  for (int m = 0; m < nm; ++m) c->homs[c->src[m]][c->tgt[m]].push_back(m);
  c->inverse.assign(nm, -1);
  for (int m = 0; m < nm; ++m)
    for (int w : c->homs[c->tgt[m]][c->src[m]])
      if (c->comp[w][m] == c->id[c->src[m]] && c->comp[m][w] == c->id[c->tgt[m]]) {
        c->inverse[m] = w;
        break;
      }
  out.cat = c;
  return out;
}

CatPtr make_category(const RawCategory& raw) {
  auto v = validate_category(raw);
  if (!v.ok()) {
    std::string msg = "invalid category '" + raw.name + "':";
    for (const auto& s : v.violations) msg += "\n  " + s;
    throw std::invalid_argument(msg);
  }
  return v.cat;
}

std::vector<std::string> Functor::violations() const {
  std::vector<std::string> out;
  const auto& s = *source;
  const auto& t = *target;
  if (static_cast<int>(obj.size()) != s.num_objects() || static_cast<int>(mor.size()) != s.num_morphisms()) {
    out.push_back("functor tables have the wrong size");
    return out;
  }
  for (int m = 0; m < s.num_morphisms(); ++m) {
    const int pm = mor[m];
    if (pm < 0 || pm >= t.num_morphisms()) {
      out.push_back("morphism '" + s.morphisms[m] + "' is unassigned");
      continue;
    }
    if (t.src[pm] != obj[s.src[m]] || t.tgt[pm] != obj[s.tgt[m]])
      out.push_back("morphism '" + s.morphisms[m] + "' lands on wrong endpoints");
  }
  if (!out.empty()) return out;
  for (int o = 0; o < s.num_objects(); ++o)
    if (mor[s.id[o]] != t.id[obj[o]]) out.push_back("identity of '" + s.objects[o] + "' not preserved");
  for (int g = 0; g < s.num_morphisms(); ++g)
    for (int f = 0; f < s.num_morphisms(); ++f) {
      const int gf = s.comp[g][f];
      if (gf >= 0 && mor[gf] != t.comp[mor[g]][mor[f]])
        out.push_back("composite " + s.morphisms[g] + " ∘ " + s.morphisms[f] + " not preserved");
    }
  return out;
}

Functor Functor::identity(const CatPtr& c) {
  Functor f{c, c, {}, {}, "id"};
  f.obj.resize(c->num_objects());
  f.mor.resize(c->num_morphisms());
  std::iota(f.obj.begin(), f.obj.end(), 0);
  std::iota(f.mor.begin(), f.mor.end(), 0);
  return f;
}

Functor Functor::after(const Functor& g) const {
  Functor h{g.source, target, {}, {}, name + "∘" + g.name};
  for (int o : g.obj) h.obj.push_back(obj[o]);
  for (int m : g.mor) h.mor.push_back(mor[m]);
  return h;
}

MorphismMask all_morphisms(const Category& c) { return MorphismMask(c.num_morphisms(), 1); }

MorphismMask iso_morphisms(const Category& c) {
  MorphismMask m(c.num_morphisms(), 0);
  for (int i = 0; i < c.num_morphisms(); ++i) m[i] = c.is_iso(i);
  return m;
}

Triple Triple::all_all(const CatPtr& c) { return Triple{c, all_morphisms(*c), all_morphisms(*c), c->name}; }
Triple Triple::all_isos(const CatPtr& c) { return Triple{c, all_morphisms(*c), iso_morphisms(*c), c->name}; }
Triple Triple::isos_all(const CatPtr& c) { return Triple{c, iso_morphisms(*c), all_morphisms(*c), c->name}; }

std::vector<std::string> Triple::violations() const {
  std::vector<std::string> out;
  const auto& c = *cat;
  for (auto [mask, what] : {std::pair{&ingressive, "ingressive"}, std::pair{&egressive, "egressive"}}) {
    if (static_cast<int>(mask->size()) != c.num_morphisms()) {
      out.push_back(std::string(what) + " mask has the wrong size");
      continue;
    }
    for (int m = 0; m < c.num_morphisms(); ++m)
      if (c.is_iso(m) && !(*mask)[m])
        out.push_back(std::string(what) + " subcategory misses isomorphism '" + c.morphisms[m] + "'");
    for (int g = 0; g < c.num_morphisms(); ++g)
      for (int f = 0; f < c.num_morphisms(); ++f) {
        const int gf = c.comp[g][f];
        if (gf >= 0 && (*mask)[g] && (*mask)[f] && !(*mask)[gf])
          out.push_back(std::string(what) + " subcategory not closed: " + c.morphisms[g] + " ∘ " +
                        c.morphisms[f]);
      }
  }
  return out;
}

bool commutes(const Category& c, const Square& s) {
  return c.src[s.f_prime] == s.apex && c.src[s.g_prime] == s.apex && c.tgt[s.g_prime] == c.src[s.f] &&
         c.tgt[s.f_prime] == c.src[s.g] && c.tgt[s.f] == c.tgt[s.g] &&
         c.comp[s.f][s.g_prime] == c.comp[s.g][s.f_prime];
}

std::vector<Cone> cones(const Category& c, int f, int g) {
  std::vector<Cone> out;
  if (c.tgt[f] != c.tgt[g]) return out;
  const int y = c.src[f], xp = c.src[g];
  for (int o = 0; o < c.num_objects(); ++o)
    for (int a : c.hom(o, y))
      for (int b : c.hom(o, xp))
        if (c.comp[f][a] == c.comp[g][b]) out.push_back({o, a, b});
  return out;
}

namespace {

// Cone counts per apex object.
std::vector<int> cone_counts(const Category& c, const std::vector<Cone>& cs) {
  std::vector<int> n(c.num_objects(), 0);
  for (const auto& k : cs) ++n[k.apex];
  return n;
}

bool is_pullback_given(const Category& c, const Square& s, const std::vector<int>& counts) {
  for (int o = 0; o < c.num_objects(); ++o)
    if (static_cast<int>(c.hom(o, s.apex).size()) != counts[o]) return false;
  std::vector<std::pair<int, int>> seen;
  for (int o = 0; o < c.num_objects(); ++o) {
    seen.clear();
    for (int m : c.hom(o, s.apex)) seen.push_back({c.comp[s.g_prime][m], c.comp[s.f_prime][m]});
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  }
  return true;
}

std::optional<Square> choose_pullback(const Category& c, int f, int g, bool reverse) {
  auto cs = cones(c, f, g);
  if (cs.empty()) return std::nullopt;
  auto counts = cone_counts(c, cs);
  if (reverse) std::reverse(cs.begin(), cs.end());
  for (const auto& k : cs) {
    Square s{k.apex, k.to_xp, k.to_y, f, g};
    if (is_pullback_given(c, s, counts)) return s;
  }
  return std::nullopt;
}

}  // namespace

bool is_pullback(const Category& c, const Square& s) {
  if (!commutes(c, s)) return false;
  return is_pullback_given(c, s, cone_counts(c, cones(c, s.f, s.g)));
}

std::optional<PullbackSquare> compute_pullback(const Category& c, int f, int g) {
  auto s = choose_pullback(c, f, g, false);
  if (!s) return std::nullopt;
  PullbackSquare p{*s, {}};
  for (const auto& k : cones(c, f, g)) {
    int med = -1;
    for (int m : c.hom(k.apex, s->apex))
      if (c.comp[s->g_prime][m] == k.to_y && c.comp[s->f_prime][m] == k.to_xp) {
        med = m;
        break;
      }
    p.certificate.push_back({k, med});
  }
  return p;
}

bool replay_certificate(const Category& c, const PullbackSquare& p) {
  const auto& s = p.square;
  if (!commutes(c, s)) return false;
  auto all = cones(c, s.f, s.g);
  if (all.size() != p.certificate.size()) return false;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& med = p.certificate[i];
    if (med.cone.apex != all[i].apex || med.cone.to_y != all[i].to_y || med.cone.to_xp != all[i].to_xp)
      return false;
    int hits = 0;
    for (int m : c.hom(med.cone.apex, s.apex))
      if (c.comp[s.g_prime][m] == med.cone.to_y && c.comp[s.f_prime][m] == med.cone.to_xp) {
        ++hits;
        if (m != med.mediator) return false;
      }
    if (hits != 1) return false;
  }
  return true;
}

const std::optional<Square>& PullbackChooser::get(int f, int g) const {
  const long long key = static_cast<long long>(f) * c_->num_morphisms() + g;
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  return memo_.emplace(key, choose_pullback(*c_, f, g, reverse_)).first->second;
}

bool is_ambigressive_pullback(const Triple& t, const Square& s) {
  return t.ingressive[s.f] && t.ingressive[s.f_prime] && t.egressive[s.g] && t.egressive[s.g_prime] &&
         is_pullback(*t.cat, s);
}

AdequacyReport is_adequate(const Triple& t) {
  AdequacyReport r;
  const auto& c = *t.cat;
  for (int f = 0; f < c.num_morphisms(); ++f) {
    if (!t.ingressive[f]) continue;
    for (int g = 0; g < c.num_morphisms(); ++g) {
      if (!t.egressive[g] || c.tgt[f] != c.tgt[g]) continue;
      auto p = compute_pullback(c, f, g);
      if (!p) {
        r.ok = false;
        r.witnesses.push_back("no pullback of ingressive " + c.morphisms[f] + " along egressive " + c.morphisms[g]);
        continue;
      }
      // Every pullback square is the chosen one precomposed with an isomorphism.
      for (const auto& med : p->certificate) {
        if (!c.is_iso(med.mediator)) continue;
        if (!t.ingressive[med.cone.to_xp] || !t.egressive[med.cone.to_y]) {
          r.ok = false;
          r.witnesses.push_back("pullback of " + c.morphisms[f] + " along " + c.morphisms[g] + " at apex " +
                                c.objects[med.cone.apex] + " has legs " + c.morphisms[med.cone.to_xp] +
                                " (needs ingressive), " + c.morphisms[med.cone.to_y] + " (needs egressive)");
          break;
        }
      }
    }
  }
  return r;
}

bool is_cocartesian_1cat(const Functor& p, int f, const MorphismMask* src_mask, const MorphismMask* tgt_mask) {
  const auto& C = *p.source;
  const auto& D = *p.target;
  if (src_mask && !(*src_mask)[f]) return false;
  const int c = C.src[f], c1 = C.tgt[f];
  const int pf = p.mor[f];
  for (int c2 = 0; c2 < C.num_objects(); ++c2)
    for (int f2 : C.hom(c, c2)) {
      if (src_mask && !(*src_mask)[f2]) continue;
      for (int h : D.hom(p.obj[c1], p.obj[c2])) {
        if (tgt_mask && !(*tgt_mask)[h]) continue;
        if (D.comp[h][pf] != p.mor[f2]) continue;
        int n = 0;
        for (int g : C.hom(c1, c2)) {
          if (src_mask && !(*src_mask)[g]) continue;
          if (p.mor[g] == h && C.comp[g][f] == f2) ++n;
        }
        if (n != 1) return false;
      }
    }
  return true;
}

bool is_cartesian_1cat(const Functor& p, int f, const MorphismMask* src_mask, const MorphismMask* tgt_mask) {
  const auto& C = *p.source;
  const auto& D = *p.target;
  if (src_mask && !(*src_mask)[f]) return false;
  const int c1 = C.src[f], c = C.tgt[f];
  const int pf = p.mor[f];
  for (int c2 = 0; c2 < C.num_objects(); ++c2)
    for (int f2 : C.hom(c2, c)) {
      if (src_mask && !(*src_mask)[f2]) continue;
      for (int h : D.hom(p.obj[c2], p.obj[c1])) {
        if (tgt_mask && !(*tgt_mask)[h]) continue;
        if (D.comp[pf][h] != p.mor[f2]) continue;
        int n = 0;
        for (int g : C.hom(c2, c1)) {
          if (src_mask && !(*src_mask)[g]) continue;
          if (p.mor[g] == h && C.comp[f][g] == f2) ++n;
        }
        if (n != 1) return false;
      }
    }
  return true;
}

namespace {

using NameCompose = std::function<std::string(const std::string& g, const std::string& f)>;

// Category from non-identity morphisms and a composition rule on names.
// The rule is only consulted for pairs of non-identity morphisms.
CatPtr build_category(const std::string& name, const std::vector<std::string>& objects,
                      const std::vector<RawCategory::Morphism>& mors, const NameCompose& rule) {
  RawCategory raw{name, objects, mors, {}};
  for (const auto& g : mors)
    for (const auto& f : mors)
      if (f.tgt == g.src) raw.composites.push_back({g.name, f.name, rule(g.name, f.name), 0});
  return make_category(raw);
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += std::to_string(x);
  return s;
}

}  // namespace

CatPtr core(const Category& c) {
  std::vector<RawCategory::Morphism> mors;
  for (int m = 0; m < c.num_morphisms(); ++m)
    if (c.is_iso(m) && !c.is_identity(m)) mors.push_back({c.morphisms[m], c.objects[c.src[m]], c.objects[c.tgt[m]], 0});
  return build_category("core(" + c.name + ")", c.objects, mors, [&](const std::string& g, const std::string& f) {
    return c.morphisms[c.comp[*c.morphism(g)][*c.morphism(f)]];
  });
}

CatPtr opposite(const Category& c) {
  std::vector<RawCategory::Morphism> mors;
  for (int m = 0; m < c.num_morphisms(); ++m)
    if (!c.is_identity(m)) mors.push_back({c.morphisms[m], c.objects[c.tgt[m]], c.objects[c.src[m]], 0});
  return build_category(c.name + "^op", c.objects, mors, [&](const std::string& g, const std::string& f) {
    return c.morphisms[c.comp[*c.morphism(f)][*c.morphism(g)]];
  });
}

SSetPtr nerve(const Category& c, int bound) {
  const Category* cp = &c;
  return SimplicialSet::from_keys(
      bound,
      [cp](int k) {
        const Category& c = *cp;
        std::vector<Key> out;
        if (k == 0) {
          for (int o = 0; o < c.num_objects(); ++o) out.push_back({o});
          return out;
        }
        Key cur;
        std::function<void()> rec = [&]() {
          if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
          }
          for (int m = 0; m < c.num_morphisms(); ++m)
            if (cur.empty() || c.src[m] == c.tgt[cur.back()]) {
              cur.push_back(m);
              rec();
              cur.pop_back();
            }
        };
        rec();
        return out;
      },
      [cp](int k, int i, const Key& key) -> Key {
        const Category& c = *cp;
        if (k == 1) return {i == 0 ? c.tgt[key[0]] : c.src[key[0]]};
        Key r;
        if (i == 0) {
          r.assign(key.begin() + 1, key.end());
        } else if (i == k) {
          r.assign(key.begin(), key.end() - 1);
        } else {
          r.assign(key.begin(), key.begin() + (i - 1));
          r.push_back(c.comp[key[i]][key[i - 1]]);
          r.insert(r.end(), key.begin() + i + 1, key.end());
        }
        return r;
      },
      [cp](int k, int i, const Key& key) -> Key {
        const Category& c = *cp;
        if (k == 0) return {c.id[key[0]]};
        const int x = i < k ? c.src[key[i]] : c.tgt[key[k - 1]];
        Key r = key;
        r.insert(r.begin() + i, c.id[x]);
        return r;
      });
}

SimplicialMap nerve_map(const Functor& p, const SSetPtr& src_nerve, const SSetPtr& tgt_nerve) {
  SimplicialMap m{src_nerve, tgt_nerve, {}};
  m.at.resize(src_nerve->bound() + 1);
  for (int k = 0; k <= src_nerve->bound(); ++k)
    for (int x = 0; x < src_nerve->size(k); ++x) {
      Key key = src_nerve->key(k, x);
      for (int& v : key) v = k == 0 ? p.obj[v] : p.mor[v];
      m.at[k].push_back(*tgt_nerve->find(k, key));
    }
  return m;
}

std::string chain_label(const Category& c, int k, const Key& key) {
  if (k == 0) return c.objects[key[0]];
  std::string s;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) s += '|';
    s += c.morphisms[key[i]];
  }
  return s;
}

CatPtr terminal_category() { return build_category("terminal", {"*"}, {}, nullptr); }

CatPtr walking_arrow() {
  return build_category("walking_arrow", {"0", "1"}, {{"a", "0", "1", 0}}, nullptr);
}

CatPtr walking_iso() {
  return build_category("walking_iso", {"0", "1"}, {{"u", "0", "1", 0}, {"v", "1", "0", 0}},
                        [](const std::string& g, const std::string&) { return g == "v" ? "id_0" : "id_1"; });
}

CatPtr chain_category(int n) {
  std::vector<std::string> objs;
  for (int i = 0; i <= n; ++i) objs.push_back(std::to_string(i));
  std::vector<RawCategory::Morphism> mors;
  auto nm = [](int i, int j) { return "m_" + std::to_string(i) + "_" + std::to_string(j); };
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) mors.push_back({nm(i, j), objs[i], objs[j], 0});
  return build_category("[" + std::to_string(n) + "]", objs, mors, [&](const std::string& g, const std::string& f) {
    int i = std::stoi(f.substr(2)), k = std::stoi(g.substr(g.rfind('_') + 1));
    return nm(i, k);
  });
}

CatPtr divisor_lattice(int n) {
  std::vector<int> divs;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) divs.push_back(d);
  std::vector<std::string> objs;
  for (int d : divs) objs.push_back(std::to_string(d));
  std::vector<RawCategory::Morphism> mors;
  auto nm = [](int a, int b) { return "d_" + std::to_string(a) + "_" + std::to_string(b); };
  for (int a : divs)
    for (int b : divs)
      if (a != b && b % a == 0) mors.push_back({nm(a, b), std::to_string(a), std::to_string(b), 0});
  return build_category("divisors_" + std::to_string(n), objs, mors, [&](const std::string& g, const std::string& f) {
    int a = std::stoi(f.substr(2)), c = std::stoi(g.substr(g.rfind('_') + 1));
    return a == c ? "id_" + std::to_string(a) : nm(a, c);
  });
}

CatPtr finset_skeleton(int max) {
  std::vector<std::string> objs;
  for (int i = 0; i <= max; ++i) objs.push_back("n" + std::to_string(i));
  std::vector<RawCategory::Morphism> mors;
  std::map<std::string, std::tuple<int, int, std::vector<int>>> info;
  auto name_of = [](int a, int b, const std::vector<int>& v) {
    bool ident = a == b;
    for (int i = 0; i < a && ident; ++i) ident = v[i] == i;
    if (ident) return "id_n" + std::to_string(a);
    return "f" + std::to_string(a) + "_" + std::to_string(b) + (a ? "_" + join_ints(v) : std::string());
  };
  for (int a = 0; a <= max; ++a)
    for (int b = 0; b <= max; ++b) {
      if (a > 0 && b == 0) continue;
      std::vector<int> v(a, 0);
      while (true) {
        const std::string nm = name_of(a, b, v);
        if (nm.rfind("id_", 0) != 0) {
          mors.push_back({nm, objs[a], objs[b], 0});
          info[nm] = {a, b, v};
        }
        int pos = a - 1;
        while (pos >= 0 && v[pos] == b - 1) v[pos--] = 0;
        if (pos < 0) break;
        ++v[pos];
      }
    }
  return build_category("finset_" + std::to_string(max), objs, mors, [&](const std::string& g, const std::string& f) {
    auto [a, b, fv] = info.at(f);
    auto [b2, c, gv] = info.at(g);
    (void)b;
    (void)b2;
    std::vector<int> h(a);
    for (int i = 0; i < a; ++i) h[i] = gv[fv[i]];
    return name_of(a, c, h);
  });
}

CatPtr product(const Category& a, const Category& b) {
  std::vector<std::string> objs;
  for (const auto& x : a.objects)
    for (const auto& y : b.objects) objs.push_back(x + ":" + y);
  auto obj_name = [&](int x, int y) { return a.objects[x] + ":" + b.objects[y]; };
  auto mor_name = [&](int f, int g) {
    if (a.is_identity(f) && b.is_identity(g)) return "id_" + obj_name(a.src[f], b.src[g]);
    return a.morphisms[f] + ":" + b.morphisms[g];
  };
  std::vector<RawCategory::Morphism> mors;
  std::map<std::string, std::pair<int, int>> info;
  for (int f = 0; f < a.num_morphisms(); ++f)
    for (int g = 0; g < b.num_morphisms(); ++g) {
      if (a.is_identity(f) && b.is_identity(g)) continue;
      const std::string nm = mor_name(f, g);
      mors.push_back({nm, obj_name(a.src[f], b.src[g]), obj_name(a.tgt[f], b.tgt[g]), 0});
      info[nm] = {f, g};
    }
  return build_category(a.name + "x" + b.name, objs, mors, [&](const std::string& s, const std::string& t) {
    auto [f2, g2] = info.at(s);
    auto [f1, g1] = info.at(t);
    return mor_name(a.comp[f2][f1], b.comp[g2][g1]);
  });
}

Grothendieck grothendieck_over_arrow(const CatPtr& ap, const CatPtr& bp, const Functor& phi) {
  const Category& A = *ap;
  const Category& B = *bp;
  std::vector<std::string> objs;
  for (const auto& x : A.objects) objs.push_back(x + "@0");
  for (const auto& y : B.objects) objs.push_back(y + "@1");
  // kind 0: A-morphism, 1: B-morphism, 2: cross (object a, morphism beta)
  struct Info {
    int kind, a, m;
  };
  std::map<std::string, Info> info;
  auto name_of = [&](const Info& i) -> std::string {
    if (i.kind == 0) return A.morphisms[i.m] + "@0";
    if (i.kind == 1) return B.morphisms[i.m] + "@1";
    return "x." + A.objects[i.a] + "." + B.morphisms[i.m];
  };
  std::vector<RawCategory::Morphism> mors;
  for (int m = 0; m < A.num_morphisms(); ++m)
    if (!A.is_identity(m)) {
      Info i{0, -1, m};
      mors.push_back({name_of(i), objs[A.src[m]], objs[A.tgt[m]], 0});
      info[name_of(i)] = i;
    }
  for (int m = 0; m < B.num_morphisms(); ++m)
    if (!B.is_identity(m)) {
      Info i{1, -1, m};
      mors.push_back({name_of(i), objs[A.num_objects() + B.src[m]], objs[A.num_objects() + B.tgt[m]], 0});
      info[name_of(i)] = i;
    }
  for (int a = 0; a < A.num_objects(); ++a)
    for (int m = 0; m < B.num_morphisms(); ++m)
      if (B.src[m] == phi.obj[a]) {
        Info i{2, a, m};
        mors.push_back({name_of(i), objs[a], objs[A.num_objects() + B.tgt[m]], 0});
        info[name_of(i)] = i;
      }
  auto total = build_category(
      "groth(" + A.name + "->" + B.name + ")", objs, mors, [&](const std::string& gs, const std::string& fs) {
        const Info g = info.at(gs), f = info.at(fs);
        auto ident = [&](int kind, int obj) {
          return kind == 0 ? "id_" + A.objects[obj] + "@0" : "id_" + B.objects[obj] + "@1";
        };
        if (g.kind == 0 && f.kind == 0) {
          const int h = A.comp[g.m][f.m];
          return A.is_identity(h) ? ident(0, A.src[h]) : name_of({0, -1, h});
        }
        if (g.kind == 1 && f.kind == 1) {
          const int h = B.comp[g.m][f.m];
          return B.is_identity(h) ? ident(1, B.src[h]) : name_of({1, -1, h});
        }
        if (g.kind == 1 && f.kind == 2) return name_of({2, f.a, B.comp[g.m][f.m]});
        if (g.kind == 2 && f.kind == 0) return name_of({2, A.src[f.m], B.comp[g.m][phi.mor[f.m]]});
        throw std::logic_error("grothendieck: unexpected composable pair");
      });
  auto base = chain_category(1);
  std::vector<int> obj(total->num_objects());
  for (int o = 0; o < total->num_objects(); ++o) obj[o] = o < A.num_objects() ? 0 : 1;
  Functor proj = functor_to_thin(total, base, obj);
  proj.name = "projection";
  return {total, proj};
}

Functor functor_to_thin(const CatPtr& src, const CatPtr& tgt, const std::vector<int>& obj) {
  Functor f{src, tgt, obj, {}, "thin"};
  for (int m = 0; m < src->num_morphisms(); ++m) {
    const auto& h = tgt->hom(obj[src->src[m]], obj[src->tgt[m]]);
    if (h.size() != 1) throw std::invalid_argument("functor_to_thin: target hom-set is not a singleton");
    f.mor.push_back(h[0]);
  }
  return f;
}

Functor functor_to_terminal(const CatPtr& src) {
  return functor_to_thin(src, terminal_category(), std::vector<int>(src->num_objects(), 0));
}

}  // namespace spanfib
