#pragma once

#include <optional>
#include <vector>

#include "conley/relation.hpp"

namespace conley {

enum class ChainMode {
  /// V_eps ∘ F
  one_sided,
  /// V_eps ∘ F ∘ V_eps
  two_sided,
};

/// The one-step relation whose orbit relation is the chain relation.
Relation chain_step(const Relation& f, Eps eps,
                    ChainMode mode = ChainMode::one_sided);

struct ChainAnalysis {
  Eps eps;
  Relation step;
  Relation chain_relation;
  CellSet recurrent;
  /// Chain components ordered by least member.
  std::vector<CellSet> components;
  /// Component id per cell, -1 off the recurrent set.
  std::vector<int> component_of;
};

ChainAnalysis chain_analysis(const Relation& f, Eps eps,
                             ChainMode mode = ChainMode::one_sided);

/// BFS over V_eps ∘ F from F(x).
bool chain_reachable(const Relation& f, Eps eps, CellId x, CellId y);

/// Chain step of F_C on the subspace C: V_eps restricted to C after F_C.
Relation restricted_chain_step(const Relation& f, const CellSet& c, Eps eps);

/// True iff the chain relation of F_C on C is C × C.
bool chain_transitive(const Relation& f, const CellSet& c, Eps eps);

struct ChainBoundCheck {
  bool pass = false;
  /// The bound O(F_C) ∪ (C₊ × C₋) is transitive.
  bool bound_transitive = false;
  std::optional<Edge> witness;
};

/// Checks chain(F_C, eps) ⊆ O(F_C) ∪ (C₊ × C₋) on C. The inclusion is only
/// guaranteed at eps = 0 strict; larger eps may legitimately fail.
ChainBoundCheck restricted_chain_bound_check(const Relation& f, const CellSet& c,
                                             Eps eps = Eps::strict());

struct LadderLevel {
  Eps eps;
  std::size_t recurrent_size = 0;
  std::size_t component_count = 0;
  /// Same recurrent set and components as the previous rung.
  bool same_as_previous = false;
};

struct ChainLadder {
  std::vector<ChainAnalysis> levels;
  std::vector<LadderLevel> summary;
  /// First rung from which the result no longer changes, if any.
  std::optional<std::size_t> stabilized_at;
};

/// Runs chain_analysis on a strictly decreasing eps list.
ChainLadder chain_ladder(const Relation& f, const std::vector<Eps>& ladder,
                         ChainMode mode = ChainMode::one_sided);

}  // namespace conley
