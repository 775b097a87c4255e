#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spanfib/fincat.hpp"

namespace spanfib {

// Line-oriented category description format.
//
//   CATEGORY <name>
//   OBJECTS a b c
//   MORPHISMS
//   f a b
//   COMPOSE
//   g f = h
//   INGRESSIVE all | isos | <names>
//   EGRESSIVE  all | isos | <names>
//   END
//   FUNCTOR <name> : <source> -> <target>
//   obj a => x
//   mor f => u
//   END
//
// '#' starts a comment. Identities id_<object> are implicit everywhere.
// Missing INGRESSIVE/EGRESSIVE sections mean "all".

struct ParseError : std::runtime_error {
  int line;
  ParseError(int l, const std::string& msg)
      : std::runtime_error("line " + std::to_string(l) + ": " + msg), line(l) {}
};

struct RawTriple {
  RawCategory cat;
  std::optional<std::vector<std::string>> ingressive, egressive;
  int line = 0;
};

struct RawFunctor {
  std::string name, source, target;
  std::vector<std::pair<std::string, std::string>> obj, mor;
  std::vector<int> obj_lines, mor_lines;
  int line = 0;
};

struct Document {
  std::vector<RawTriple> categories;
  std::vector<RawFunctor> functors;
};

Document parse_document(std::string_view text);
Document read_document(const std::string& path);

// Validated contents of a document, in declaration order.
struct Library {
  std::vector<std::string> triple_order, functor_order;
  std::map<std::string, Triple> triples;
  std::map<std::string, Functor> functors;
};

struct LibraryError : std::runtime_error {
  std::vector<std::string> violations;
  explicit LibraryError(std::vector<std::string> v);
};

// Throws LibraryError listing every violated law or unknown name.
Library resolve(const Document& doc);
Library load_library(const std::string& path);

std::string serialize(const Triple& t);
std::string serialize(const Functor& f);
std::string serialize(const Library& lib);

}  // namespace spanfib
