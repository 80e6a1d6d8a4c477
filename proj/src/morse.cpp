#include "conley/morse.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace conley {

bool is_inward(const Relation& f, const CellSet& u) {
  return image(f, u).is_subset_of(set_interior(f.space(), u));
}

CellSet forward_limit(const Relation& f, const CellSet& u) {
  CellSet a = u;
  while (true) {
    CellSet next = image(f, a) & a;
    if (next == a) return a;
    a = std::move(next);
  }
}

CellSet backward_limit(const Relation& f, const CellSet& w) {
  CellSet b = w;
  while (true) {
    CellSet next = preimage(f, b) & b;
    if (next == b) return b;
    b = std::move(next);
  }
}

CellSet attractor_of_inward(const Relation& f, const CellSet& u) {
  if (!is_inward(f, u)) {
    throw std::invalid_argument("set is not inward: F(U) leaves interior(U)");
  }
  return forward_limit(f, u);
}

DualRepeller dual_repeller(const Relation& f, const CellSet& u) {
  DualRepeller r;
  r.u_plus_invariant = image(f, u).is_subset_of(u);
  r.repeller = backward_limit(f, set_interior(f.space(), u).complement());
  return r;
}

MorseGraph morse_graph(const ChainAnalysis& chain) {
  MorseGraph g;
  g.components = chain.components;
  const std::size_t m = g.components.size();
  std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i) {
    const CellId rep = *g.components[i].first();
    for (CellId y : chain.chain_relation.row(rep)) {
      const int j = chain.component_of[y];
      if (j >= 0 && static_cast<std::size_t>(j) != i) reach[i][j] = true;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!reach[i][j]) continue;
      bool direct = true;
      for (std::size_t k = 0; k < m && direct; ++k) {
        if (reach[i][k] && reach[k][j]) direct = false;
      }
      if (direct) g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return g;
}

MorseFamily ar_family(const Relation& f, Eps eps) {
  MorseFamily fam{chain_analysis(f, eps), {}, {}};
  const ChainAnalysis& ca = fam.chain;
  fam.graph = morse_graph(ca);
  const std::size_t n = f.size();
  const int m = static_cast<int>(ca.components.size());

  // Components chain-reachable from each cell.
  std::vector<std::vector<int>> reach_of(n);
  for (CellId c = 0; c < n; ++c) {
    std::set<int> ids;
    for (CellId y : ca.chain_relation.row(c)) {
      if (ca.component_of[y] >= 0) ids.insert(ca.component_of[y]);
    }
    reach_of[c].assign(ids.begin(), ids.end());
  }

  std::set<std::vector<int>> downsets;
  downsets.insert({});
  std::vector<int> all(m);
  for (int k = 0; k < m; ++k) all[k] = k;
  downsets.insert(all);
  for (const auto& r : reach_of) downsets.insert(r);

  for (const auto& d : downsets) {
    std::vector<bool> in_d(m, false);
    for (int k : d) in_d[k] = true;
    CellSet u(n);
    for (CellId c = 0; c < n; ++c) {
      if (std::all_of(reach_of[c].begin(), reach_of[c].end(),
                      [&](int k) { return in_d[k]; })) {
        u.insert(c);
      }
    }
    AttractorRepellerPair p;
    p.attractor = forward_limit(ca.step, u);
    p.repeller = backward_limit(ca.step, u.complement());
    p.inward_witness = std::move(u);
    p.component_downset = d;
    fam.pairs.push_back(std::move(p));
  }
  std::sort(fam.pairs.begin(), fam.pairs.end(),
            [](const AttractorRepellerPair& a, const AttractorRepellerPair& b) {
              if (a.attractor == b.attractor) return a.repeller < b.repeller;
              return a.attractor < b.attractor;
            });
  fam.pairs.erase(std::unique(fam.pairs.begin(), fam.pairs.end(),
                              [](const AttractorRepellerPair& a,
                                 const AttractorRepellerPair& b) {
                                return a.attractor == b.attractor &&
                                       a.repeller == b.repeller;
                              }),
                  fam.pairs.end());
  return fam;
}

bool signatures_injective(const MorseFamily& family) {
  std::set<std::vector<bool>> seen;
  for (const auto& comp : family.chain.components) {
    const CellId rep = *comp.first();
    std::vector<bool> sig;
    for (const auto& p : family.pairs) sig.push_back(p.attractor.contains(rep));
    if (!seen.insert(sig).second) return false;
  }
  return true;
}

}  // namespace conley
