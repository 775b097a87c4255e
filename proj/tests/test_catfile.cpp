#include "doctest.h"

#include <filesystem>

#include "spanfib/catfile.hpp"

using namespace spanfib;

namespace {

int parse_error_line(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e.line;
  }
  return 0;
}

}  // namespace

TEST_CASE("parse a small document") {
  const auto doc = parse_document(
      "# two composable arrows\n"
      "CATEGORY two\n"
      "OBJECTS a b c\n"
      "MORPHISMS\n"
      "f a b\n"
      "g b c\n"
      "h a c\n"
      "COMPOSE\n"
      "g f = h\n"
      "INGRESSIVE all\n"
      "EGRESSIVE isos\n"
      "END\n");
  REQUIRE(doc.categories.size() == 1);
  const auto lib = resolve(doc);
  const Triple& t = lib.triples.at("two");
  CHECK(t.cat->num_morphisms() == 6);
  int ing = 0, egr = 0;
  for (int f = 0; f < t.cat->num_morphisms(); ++f) {
    ing += t.ingressive[f];
    egr += t.egressive[f];
  }
  CHECK(ing == 6);
  CHECK(egr == 3);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("CATEGORY x\nf a b\nEND\n") == 2);
  CHECK(parse_error_line("# c\n\nBOGUS\n") == 3);
  CHECK(parse_error_line("CATEGORY x\nOBJECTS a\nCOMPOSE\ng f h\nEND\n") == 4);
  CHECK(parse_error_line("CATEGORY x\nOBJECTS a\nMORPHISMS\nf a\nEND\n") == 4);
  CHECK(parse_error_line("CATEGORY x\nOBJECTS a\n") > 0);  // missing END
}

TEST_CASE("resolve reports law violations") {
  const auto doc = parse_document(
      "CATEGORY x\nOBJECTS a b c\nMORPHISMS\nf a b\ng b c\nEND\n"
      "FUNCTOR q : x -> nowhere\nEND\n");
  try {
    resolve(doc);
    FAIL("expected LibraryError");
  } catch (const LibraryError& e) {
    CHECK(e.violations.size() >= 2);  // g f missing, unknown target
  }
}

TEST_CASE("suite files round-trip") {
  int n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(SPANFIB_SUITE_DIR)) {
    if (entry.path().extension() != ".cat") continue;
    ++n;
    const auto lib = load_library(entry.path().string());
    const std::string text = serialize(lib);
    const auto again = resolve(parse_document(text));
    CHECK_MESSAGE(serialize(again) == text, entry.path());
    CHECK(again.triple_order == lib.triple_order);
    CHECK(again.functor_order == lib.functor_order);
    for (const auto& [name, f] : again.functors) CHECK(f.violations().empty());
  }
  CHECK(n == 8);
}
