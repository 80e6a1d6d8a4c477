#pragma once

#include <vector>

#include "conley/chain.hpp"

namespace conley {

/// F(U) ⊆ interior(U).
bool is_inward(const Relation& f, const CellSet& u);

/// Limit of A_0 = U, A_k = F(A_{k-1}) ∩ A_{k-1}. Throws std::invalid_argument
/// unless U is inward.
CellSet attractor_of_inward(const Relation& f, const CellSet& u);

/// Same fixpoint without the inwardness gate (used for U = X and for
/// family witnesses that are only +invariant).
CellSet forward_limit(const Relation& f, const CellSet& u);
/// Limit of B_0 = W, B_k = F⁻¹(B_{k-1}) ∩ B_{k-1}.
CellSet backward_limit(const Relation& f, const CellSet& w);

struct DualRepeller {
  CellSet repeller;
  /// The hypothesis F(U) ⊆ U; the repeller is computed either way.
  bool u_plus_invariant = false;
};

/// Greatest F⁻¹-viable subset of X \ interior(U).
DualRepeller dual_repeller(const Relation& f, const CellSet& u);

struct AttractorRepellerPair {
  CellSet attractor;
  CellSet repeller;
  CellSet inward_witness;
  std::vector<int> component_downset;
};

struct MorseGraph {
  std::vector<CellSet> components;
  /// Hasse edges (i, j): component j is chain-reachable from i, with no
  /// component in between.
  std::vector<std::pair<int, int>> edges;
};

struct MorseFamily {
  ChainAnalysis chain;
  MorseGraph graph;
  std::vector<AttractorRepellerPair> pairs;
};

MorseGraph morse_graph(const ChainAnalysis& chain);

/// Attractor–repeller pairs of G = V_eps ∘ F for the down-sets generated by
/// the chain components: every set R(c) of components chain-reachable from
/// a cell c, plus ∅ and the full set. Ordered by attractor member list.
MorseFamily ar_family(const Relation& f, Eps eps);

/// Components are told apart by their memberships in the family attractors.
bool signatures_injective(const MorseFamily& family);

}  // namespace conley
