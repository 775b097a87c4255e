#include "spanfib/catfile.hpp"

#include <fstream>
#include <sstream>

namespace spanfib {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

enum class Section { None, Objects, Morphisms, Compose, Ingressive, Egressive, Functor };

}  // namespace

Document parse_document(std::string_view text) {
  Document doc;
  Section sec = Section::None;
  bool in_category = false, in_functor = false;
  int lineno = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) { throw ParseError(lineno, msg); };
  auto add_mask = [&](std::optional<std::vector<std::string>>& mask, const std::vector<std::string>& toks,
                      std::size_t from) {
    if (!mask) mask.emplace();
    mask->insert(mask->end(), toks.begin() + static_cast<long>(from), toks.end());
  };
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0];

    if (!in_category && !in_functor) {
      if (head == "CATEGORY") {
        if (toks.size() != 2) fail("expected 'CATEGORY <name>'");
        doc.categories.push_back({});
        doc.categories.back().cat.name = toks[1];
        doc.categories.back().line = lineno;
        in_category = true;
        sec = Section::None;
      } else if (head == "FUNCTOR") {
        if (toks.size() != 6 || toks[2] != ":" || toks[4] != "->")
          fail("expected 'FUNCTOR <name> : <source> -> <target>'");
        doc.functors.push_back({toks[1], toks[3], toks[5], {}, {}, {}, {}, lineno});
        in_functor = true;
        sec = Section::Functor;
      } else {
        fail("unexpected '" + head + "' outside a CATEGORY or FUNCTOR block");
      }
      continue;
    }
    if (head == "END") {
      in_category = in_functor = false;
      sec = Section::None;
      continue;
    }
    if (in_functor) {
      auto& f = doc.functors.back();
      if (toks.size() != 4 || toks[2] != "=>" || (head != "obj" && head != "mor"))
        fail("expected 'obj <a> => <x>' or 'mor <f> => <u>'");
      if (head == "obj") {
        f.obj.push_back({toks[1], toks[3]});
        f.obj_lines.push_back(lineno);
      } else {
        f.mor.push_back({toks[1], toks[3]});
        f.mor_lines.push_back(lineno);
      }
      continue;
    }
    auto& cur = doc.categories.back();
    std::size_t from = 0;
    if (head == "OBJECTS") {
      sec = Section::Objects;
      from = 1;
    } else if (head == "MORPHISMS") {
      sec = Section::Morphisms;
      from = 1;
    } else if (head == "COMPOSE") {
      sec = Section::Compose;
      from = 1;
    } else if (head == "INGRESSIVE") {
      sec = Section::Ingressive;
      add_mask(cur.ingressive, toks, 1);
      continue;
    } else if (head == "EGRESSIVE") {
      sec = Section::Egressive;
      add_mask(cur.egressive, toks, 1);
      continue;
    }
    if (from == toks.size()) continue;
    std::vector<std::string> rest(toks.begin() + static_cast<long>(from), toks.end());
    switch (sec) {
      case Section::None:
        fail("content before any section in CATEGORY " + cur.cat.name);
        break;
      case Section::Objects:
        cur.cat.objects.insert(cur.cat.objects.end(), rest.begin(), rest.end());
        break;
      case Section::Morphisms:
        if (rest.size() != 3) fail("expected '<name> <source> <target>'");
        cur.cat.morphisms.push_back({rest[0], rest[1], rest[2], lineno});
        break;
      case Section::Compose:
        if (rest.size() != 4 || rest[2] != "=") fail("expected '<g> <f> = <h>'");
        cur.cat.composites.push_back({rest[0], rest[1], rest[3], lineno});
        break;
      case Section::Ingressive:
        add_mask(cur.ingressive, rest, 0);
        break;
      case Section::Egressive:
        add_mask(cur.egressive, rest, 0);
        break;
      case Section::Functor:
        break;
    }
  }
  if (in_category || in_functor) throw ParseError(lineno, "missing END");
  return doc;
}

Document read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

LibraryError::LibraryError(std::vector<std::string> v)
    : std::runtime_error([&] {
        std::string s = "invalid description:";
        for (const auto& x : v) s += "\n  " + x;
        return s;
      }()),
      violations(std::move(v)) {}

namespace {

MorphismMask resolve_mask(const Category& c, const std::optional<std::vector<std::string>>& spec,
                          const std::string& what, int line, std::vector<std::string>& bad) {
  if (!spec) return all_morphisms(c);
  if (spec->size() == 1 && (*spec)[0] == "all") return all_morphisms(c);
  MorphismMask m(c.num_morphisms(), 0);
  for (int o = 0; o < c.num_objects(); ++o) m[c.id[o]] = 1;
  for (const auto& n : *spec) {
    if (n == "isos") {
      for (int i = 0; i < c.num_morphisms(); ++i) m[i] |= c.is_iso(i);
      continue;
    }
    auto i = c.morphism(n);
    if (!i) {
      bad.push_back("unknown morphism '" + n + "' in " + what + " of " + c.name + " (line " +
                    std::to_string(line) + ")");
      continue;
    }
    m[*i] = 1;
  }
  return m;
}

}  // namespace

Library resolve(const Document& doc) {
  Library lib;
  std::vector<std::string> bad;
  for (const auto& rt : doc.categories) {
    if (lib.triples.count(rt.cat.name)) {
      bad.push_back("duplicate category '" + rt.cat.name + "' (line " + std::to_string(rt.line) + ")");
      continue;
    }
    auto v = validate_category(rt.cat);
    if (!v.ok()) {
      for (const auto& s : v.violations) bad.push_back(rt.cat.name + ": " + s);
      continue;
    }
    Triple t{v.cat, resolve_mask(*v.cat, rt.ingressive, "INGRESSIVE", rt.line, bad),
             resolve_mask(*v.cat, rt.egressive, "EGRESSIVE", rt.line, bad), rt.cat.name};
    for (const auto& s : t.violations()) bad.push_back(rt.cat.name + ": " + s);
    lib.triples.emplace(rt.cat.name, t);
    lib.triple_order.push_back(rt.cat.name);
  }
  for (const auto& rf : doc.functors) {
    const std::string where = " (line " + std::to_string(rf.line) + ")";
    auto s = lib.triples.find(rf.source), t = lib.triples.find(rf.target);
    if (s == lib.triples.end() || t == lib.triples.end()) {
      bad.push_back("functor '" + rf.name + "' refers to an unknown category" + where);
      continue;
    }
    const auto& S = *s->second.cat;
    const auto& T = *t->second.cat;
    Functor f{s->second.cat, t->second.cat, std::vector<int>(S.num_objects(), -1),
              std::vector<int>(S.num_morphisms(), -1), rf.name};
    bool ok = true;
    for (std::size_t i = 0; i < rf.obj.size(); ++i) {
      auto a = S.object(rf.obj[i].first);
      auto x = T.object(rf.obj[i].second);
      if (!a || !x) {
        bad.push_back("functor '" + rf.name + "': unknown object in assignment (line " +
                      std::to_string(rf.obj_lines[i]) + ")");
        ok = false;
        continue;
      }
      f.obj[*a] = *x;
    }
    for (int o = 0; o < S.num_objects(); ++o)
      if (f.obj[o] < 0) {
        bad.push_back("functor '" + rf.name + "': object '" + S.objects[o] + "' is unassigned" + where);
        ok = false;
      } else {
        f.mor[S.id[o]] = T.id[f.obj[o]];
      }
    for (std::size_t i = 0; i < rf.mor.size(); ++i) {
      auto m = S.morphism(rf.mor[i].first);
      auto u = T.morphism(rf.mor[i].second);
      if (!m || !u) {
        bad.push_back("functor '" + rf.name + "': unknown morphism in assignment (line " +
                      std::to_string(rf.mor_lines[i]) + ")");
        ok = false;
        continue;
      }
      f.mor[*m] = *u;
    }
    if (!ok) continue;
    for (const auto& v : f.violations()) bad.push_back("functor '" + rf.name + "': " + v + where);
    lib.functors.emplace(rf.name, f);
    lib.functor_order.push_back(rf.name);
  }
  if (!bad.empty()) throw LibraryError(bad);
  return lib;
}

Library load_library(const std::string& path) { return resolve(read_document(path)); }

namespace {

std::string mask_line(const Category& c, const MorphismMask& m) {
  if (m == all_morphisms(c)) return "all";
  std::string s;
  bool isos = true;
  for (int i = 0; i < c.num_morphisms(); ++i)
    if (c.is_iso(i) && !m[i]) isos = false;
  if (isos && m == iso_morphisms(c)) return "isos";
  for (int i = 0; i < c.num_morphisms(); ++i)
    if (m[i] && !c.is_identity(i)) s += (s.empty() ? "" : " ") + c.morphisms[i];
  return s;
}

}  // namespace

std::string serialize(const Triple& t) {
  const auto& c = *t.cat;
  std::ostringstream os;
  os << "CATEGORY " << c.name << "\nOBJECTS";
  for (const auto& o : c.objects) os << ' ' << o;
  os << "\nMORPHISMS\n";
  for (int m = 0; m < c.num_morphisms(); ++m)
    if (!c.is_identity(m)) os << c.morphisms[m] << ' ' << c.objects[c.src[m]] << ' ' << c.objects[c.tgt[m]] << '\n';
  os << "COMPOSE\n";
  for (int g = 0; g < c.num_morphisms(); ++g)
    for (int f = 0; f < c.num_morphisms(); ++f)
      if (!c.is_identity(g) && !c.is_identity(f) && c.comp[g][f] >= 0)
        os << c.morphisms[g] << ' ' << c.morphisms[f] << " = " << c.morphisms[c.comp[g][f]] << '\n';
  os << "INGRESSIVE " << mask_line(c, t.ingressive) << "\n";
  os << "EGRESSIVE " << mask_line(c, t.egressive) << "\nEND\n";
  return os.str();
}

std::string serialize(const Functor& f) {
  const auto& s = *f.source;
  const auto& t = *f.target;
  std::ostringstream os;
  os << "FUNCTOR " << f.name << " : " << s.name << " -> " << t.name << '\n';
  for (int o = 0; o < s.num_objects(); ++o) os << "obj " << s.objects[o] << " => " << t.objects[f.obj[o]] << '\n';
  for (int m = 0; m < s.num_morphisms(); ++m)
    if (!s.is_identity(m)) os << "mor " << s.morphisms[m] << " => " << t.morphisms[f.mor[m]] << '\n';
  os << "END\n";
  return os.str();
}

std::string serialize(const Library& lib) {
  std::string out;
  for (const auto& n : lib.triple_order) out += serialize(lib.triples.at(n)) + "\n";
  for (const auto& n : lib.functor_order) out += serialize(lib.functors.at(n)) + "\n";
  return out;
}

}  // namespace spanfib
