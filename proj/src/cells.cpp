#include "spanfib/cells.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace spanfib {

void CellTables::finalize() {
  const int nl = levels();
  witness.assign(nl, {});
  dependents.assign(nl, {});
  face_index.assign(nl, {});
  for (int L = 0; L < nl; ++L) {
    witness[L].assign(count[L], Witness{});
    dependents[L].assign(count[L], {});
  }
  for (int L = 0; L < nl; ++L) {
    for (int x = 0; x < count[L]; ++x) {
      bool found = false;
      for (const Op& f : faces[L]) {
        const int y = f.table[x];
        const int lower = f.target;
        for (int o = 0; o < static_cast<int>(degens[lower].size()) && !found; ++o) {
          const Op& s = degens[lower][o];
          if (s.target == L && s.table[y] == x) {
            witness[L][x] = Witness{lower, o, y};
            found = true;
          }
        }
        if (found) break;
      }
    }
  }
  for (int L = 0; L < nl; ++L)
    for (int x = 0; x < count[L]; ++x) {
      const Witness& w = witness[L][x];
      if (w.level >= 0) dependents[w.level][w.cell].push_back({L, x, w.op});
    }
  for (int L = 0; L < nl; ++L) {
    face_index[L].resize(faces[L].size());
    for (std::size_t o = 0; o < faces[L].size(); ++o) {
      const Op& f = faces[L][o];
      auto& idx = face_index[L][o];
      idx.assign(count[f.target], {});
      for (int x = 0; x < count[L]; ++x) idx[f.table[x]].push_back(x);
    }
  }
}

std::vector<std::vector<std::vector<int>>> fibres_of(const CellMap& proj,
                                                     const CellTables& base) {
  std::vector<std::vector<std::vector<int>>> out(proj.size());
  for (std::size_t L = 0; L < proj.size(); ++L) {
    out[L].assign(base.count[L], {});
    for (int x = 0; x < static_cast<int>(proj[L].size()); ++x)
      out[L][proj[L][x]].push_back(x);
  }
  return out;
}

namespace {

class Searcher {
 public:
  explicit Searcher(const MapProblem& p) : p_(p), src_(*p.src), tgt_(*p.tgt) {
    if (src_.levels() != tgt_.levels())
      throw std::invalid_argument("map search: level structure mismatch");
    val_.resize(src_.levels());
    for (int L = 0; L < src_.levels(); ++L) val_[L].assign(src_.count[L], -1);
    for (int L = 0; L < src_.levels(); ++L)
      for (int x = 0; x < src_.count[L]; ++x)
        if (!src_.degenerate(L, x)) free_.push_back({L, x});
    std::stable_sort(free_.begin(), free_.end(), [&](auto a, auto b) {
      return src_.rank[a.first] > src_.rank[b.first];
    });
  }

  std::size_t run(const std::function<bool(const CellMap&)>& visit) {
    visit_ = &visit;
    if (!p_.fixed.empty()) {
      for (int L = 0; L < src_.levels(); ++L)
        for (int x = 0; x < src_.count[L]; ++x) {
          int v = p_.fixed[L][x];
          if (v >= 0 && !assign(L, x, v)) return 0;
        }
    }
    recurse();
    return found_;
  }

 private:
  bool assign(int L0, int x0, int v0) {
    stack_.clear();
    stack_.push_back({L0, x0, v0});
    while (!stack_.empty()) {
      auto [L, x, v] = stack_.back();
      stack_.pop_back();
      int& slot = val_[L][x];
      if (slot >= 0) {
        if (slot != v) return false;
        continue;
      }
      if (!admissible(L, x, v)) return false;
      slot = v;
      trail_.push_back({L, x});
      const auto& fs = src_.faces[L];
      for (std::size_t o = 0; o < fs.size(); ++o)
        stack_.push_back({fs[o].target, fs[o].table[x], tgt_.faces[L][o].table[v]});
      for (const auto& d : src_.dependents[L][x]) {
        const auto& op = tgt_.degens[L][d.op];
        stack_.push_back({d.level, d.cell, op.table[v]});
      }
    }
    return true;
  }

  bool admissible(int L, int x, int v) const {
    if (!p_.fixed.empty() && p_.fixed[L][x] >= 0 && p_.fixed[L][x] != v) return false;
    if (p_.proj && !p_.over.empty() && p_.over[L][x] >= 0 &&
        (*p_.proj)[L][v] != p_.over[L][x])
      return false;
    if (p_.src_marked && p_.tgt_marked && !(*p_.src_marked)[L].empty() &&
        (*p_.src_marked)[L][x] && !(*p_.tgt_marked)[L][v])
      return false;
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [L, x] = trail_.back();
      trail_.pop_back();
      val_[L][x] = -1;
    }
  }

  // Candidate list for an unassigned cell; nullptr means "all cells of the level".
  const std::vector<int>* candidates(int L, int x, std::size_t& size) const {
    const std::vector<int>* best = nullptr;
    size = std::numeric_limits<std::size_t>::max();
    const auto& fs = src_.faces[L];
    for (std::size_t o = 0; o < fs.size(); ++o) {
      int fv = val_[fs[o].target][fs[o].table[x]];
      if (fv < 0) continue;
      const auto& lst = tgt_.face_index[L][o][fv];
      if (lst.size() < size) {
        size = lst.size();
        best = &lst;
      }
    }
    if (best) return best;
    if (p_.fibres && !p_.over.empty() && p_.over[L][x] >= 0) {
      const auto& lst = (*p_.fibres)[L][p_.over[L][x]];
      size = lst.size();
      return &lst;
    }
    size = static_cast<std::size_t>(tgt_.count[L]);
    return nullptr;
  }

  void recurse() {
    if (stop_) return;
    int bl = -1, bx = -1;
    std::size_t bsize = std::numeric_limits<std::size_t>::max();
    const std::vector<int>* blist = nullptr;
    for (auto [L, x] : free_) {
      if (val_[L][x] >= 0) continue;
      std::size_t sz;
      const std::vector<int>* lst = candidates(L, x, sz);
      if (sz < bsize) {
        bsize = sz;
        bl = L;
        bx = x;
        blist = lst;
        if (sz == 0) break;
      }
    }
    if (bl < 0) {
      ++found_;
      if (!(*visit_)(val_)) stop_ = true;
      return;
    }
    if (bsize == 0) return;
    const std::size_t mark = trail_.size();
    if (blist) {
      const std::vector<int> cands = *blist;
      for (int v : cands) {
        if (assign(bl, bx, v)) recurse();
        undo(mark);
        if (stop_) return;
      }
    } else {
      for (int v = 0; v < tgt_.count[bl]; ++v) {
        if (assign(bl, bx, v)) recurse();
        undo(mark);
        if (stop_) return;
      }
    }
  }

  struct Pending {
    int level, cell, value;
  };

  const MapProblem& p_;
  const CellTables& src_;
  const CellTables& tgt_;
  CellMap val_;
  std::vector<std::pair<int, int>> free_;
  std::vector<std::pair<int, int>> trail_;
  std::vector<Pending> stack_;
  const std::function<bool(const CellMap&)>* visit_ = nullptr;
  std::size_t found_ = 0;
  bool stop_ = false;
};

}  // namespace

std::size_t search_maps(const MapProblem& problem,
                        const std::function<bool(const CellMap&)>& visit) {
  Searcher s(problem);
  return s.run(visit);
}

std::size_t count_maps(const MapProblem& problem, std::size_t limit) {
  std::size_t n = 0;
  search_maps(problem, [&](const CellMap&) {
    ++n;
    return limit == 0 || n < limit;
  });
  return n;
}

bool exists_map(const MapProblem& problem) { return count_maps(problem, 1) > 0; }

bool is_cell_map(const CellTables& src, const CellTables& tgt, const CellMap& m) {
  if (static_cast<int>(m.size()) != src.levels()) return false;
  for (int L = 0; L < src.levels(); ++L) {
    if (static_cast<int>(m[L].size()) != src.count[L]) return false;
    for (int x = 0; x < src.count[L]; ++x) {
      int v = m[L][x];
      if (v < 0 || v >= tgt.count[L]) return false;
      for (std::size_t o = 0; o < src.faces[L].size(); ++o)
        if (m[src.faces[L][o].target][src.faces[L][o].table[x]] != tgt.faces[L][o].table[v])
          return false;
      for (std::size_t o = 0; o < src.degens[L].size(); ++o)
        if (m[src.degens[L][o].target][src.degens[L][o].table[x]] != tgt.degens[L][o].table[v])
          return false;
    }
  }
  return true;
}

}  // namespace spanfib
