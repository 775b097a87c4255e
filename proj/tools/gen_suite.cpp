// Writes the example inputs under suite/.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "spanfib/catfile.hpp"
#include "spanfib/fincat.hpp"

using namespace spanfib;

namespace {

CatPtr renamed(const CatPtr& c, const std::string& name) {
  auto r = std::make_shared<Category>(*c);
  r->name = name;
  return r;
}

Triple with_name(Triple t, const std::string& name) {
  t.cat = renamed(t.cat, name);
  t.name = name;
  return t;
}

void write(const std::filesystem::path& dir, const std::string& file, const std::string& header,
           const std::string& body) {
  std::ofstream out(dir / file);
  out << header << '\n' << body;
  std::cout << "wrote " << (dir / file).string() << '\n';
}

std::string functor_file(const Triple& c, const Triple& d, Functor p, const std::string& name) {
  p.name = name;
  p.source = c.cat;
  p.target = d.cat;
  return serialize(c) + '\n' + serialize(d) + '\n' + serialize(p);
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "suite";
  std::filesystem::create_directories(dir);

  write(dir, "terminal.cat", "# One object, identity only.", serialize(with_name(Triple::all_all(terminal_category()), "point")));
  write(dir, "divisor12.cat", "# Divisors of 12 ordered by divisibility; ingressive and egressive = all.",
        serialize(with_name(Triple::all_all(divisor_lattice(12)), "divisor12")));
  write(dir, "finset2.cat", "# Finite sets of size <= 2; ingressive = all, egressive = isomorphisms.",
        serialize(with_name(Triple::all_isos(finset_skeleton(2)), "finset2")));
  write(dir, "finset3.cat", "# Finite sets of size <= 3; ingressive = all, egressive = isomorphisms.",
        serialize(with_name(Triple::all_isos(finset_skeleton(3)), "finset3")));
  write(dir, "walking_arrow.cat", "# The arrow category [1].", serialize(with_name(Triple::all_all(walking_arrow()), "arrow")));
  write(dir, "walking_iso.cat", "# Two objects and an isomorphism between them.",
        serialize(with_name(Triple::all_all(walking_iso()), "iso")));

  {
    const auto w = walking_iso();
    const auto g = grothendieck_over_arrow(w, w, Functor::identity(w));
    write(dir, "grothendieck_satisfying.cat",
          "# Total category of the identity of the walking isomorphism over [1], projected to [1].\n"
          "# Satisfies both hypotheses of the span inner fibration theorem.",
          functor_file(with_name(Triple::all_all(g.total), "total"),
                       with_name(Triple::all_all(g.projection.target), "base"), g.projection, "projection"));
  }
  {
    const auto c2 = chain_category(2), c1 = chain_category(1);
    write(dir, "grothendieck_violating.cat",
          "# [2] -> [1] sending 0, 1 to 0 and 2 to 1. In the pullback of 0 -> 2 <- 1 the top\n"
          "# edge 0 -> 1 lies over an identity and is not cocartesian, although 0 -> 2 is.",
          functor_file(with_name(Triple::all_all(c2), "chain2"), with_name(Triple::all_all(c1), "chain1"),
                       functor_to_thin(c2, c1, {0, 0, 1}), "collapse"));
  }
  return 0;
}
