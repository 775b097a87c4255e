#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace spanfib {

// Level-indexed finite cell tables with face and degeneracy operators.
// Simplicial sets use one level per dimension; bisimplicial sets use one
// level per bidegree. The map search below works on either.
struct CellTables {
  struct Op {
    int target = -1;
    std::vector<int> table;
  };
  struct Witness {
    int level = -1;  // -1: nondegenerate
    int op = -1;     // degeneracy operator at `level`
    int cell = -1;
  };

  std::vector<int> rank;
  std::vector<int> count;
  std::vector<std::vector<Op>> faces;
  std::vector<std::vector<Op>> degens;

  // Filled in by finalize().
  std::vector<std::vector<Witness>> witness;
  struct Dependent {
    int level;
    int cell;
    int op;  // degeneracy operator taking x to cell
  };
  // dependents[L][x]: cells whose recorded witness is x
  std::vector<std::vector<std::vector<Dependent>>> dependents;
  // face_index[L][op][v]: cells c at level L with faces[L][op](c) == v
  std::vector<std::vector<std::vector<std::vector<int>>>> face_index;

  int levels() const { return static_cast<int>(count.size()); }
  bool degenerate(int level, int x) const { return witness[level][x].level >= 0; }
  void finalize();
};

using CellMap = std::vector<std::vector<int>>;

// Constraints for enumerating structure-preserving maps src -> tgt.
struct MapProblem {
  const CellTables* src = nullptr;
  const CellTables* tgt = nullptr;
  CellMap fixed;  // optional, -1 = free

  // Optional "over" constraint: proj(value) must equal over[L][x] when set.
  const CellMap* proj = nullptr;
  CellMap over;
  // Optional precomputed fibres of proj per level (fibres[L][b] = cells).
  const std::vector<std::vector<std::vector<int>>>* fibres = nullptr;

  // Optional markings: a marked source cell must land on a marked target cell.
  const std::vector<std::vector<char>>* src_marked = nullptr;
  const std::vector<std::vector<char>>* tgt_marked = nullptr;
};

std::vector<std::vector<std::vector<int>>> fibres_of(const CellMap& proj,
                                                     const CellTables& base);

// Visits every solution; the visitor returns false to stop early.
// Returns the number of solutions visited.
std::size_t search_maps(const MapProblem& problem,
                        const std::function<bool(const CellMap&)>& visit);

std::size_t count_maps(const MapProblem& problem, std::size_t limit = 0);
bool exists_map(const MapProblem& problem);

// True when m commutes with every face and degeneracy operator.
bool is_cell_map(const CellTables& src, const CellTables& tgt, const CellMap& m);

}  // namespace spanfib
