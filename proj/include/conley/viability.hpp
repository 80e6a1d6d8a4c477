#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "conley/relation.hpp"

namespace conley {

/// Extended counts: kInfinite stands for ∞, kUndefined marks cells outside C.
inline constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max();
inline constexpr std::int64_t kUndefined = -1;

struct ViabilityReport {
  CellSet c_plus;
  CellSet c_minus;
  CellSet c_pm;
  /// Longest forward F_C path from each cell of C.
  std::vector<std::int64_t> nu;
  /// Longest backward F_C path.
  std::vector<std::int64_t> nu_bar;
  CellSet terminal;
};

ViabilityReport viability_report(const Relation& f, const CellSet& c);

/// Greatest S ⊆ C with S ⊆ F_C⁻¹(S): cells starting an infinite F_C path.
CellSet plus_viable_core(const Relation& f, const CellSet& c);
/// Greatest S ⊆ C with S ⊆ F_C(S).
CellSet minus_viable_core(const Relation& f, const CellSet& c);

struct InvariancePredicates {
  bool plus_invariant = false;
  bool invariant = false;
  bool plus_viable = false;
  bool minus_viable = false;
  bool viable = false;
};

InvariancePredicates invariance_predicates(const Relation& f, const CellSet& a);

struct MinimalViableResult {
  std::vector<CellSet> sets;
  bool truncated = false;
};

/// The ⊆-minimal nonempty viable subsets of C. On a finite relation these
/// are the vertex sets of cycles of F_C that contain no other cycle's vertex
/// set. Cycle enumeration stops after cycle_cap cycles or 64 * cycle_cap
/// search steps (flagged).
MinimalViableResult minimal_viable_subsets(const Relation& f, const CellSet& c,
                                           std::size_t cycle_cap = 100000);

struct LimitSet {
  CellSet set;
  /// Set when Dom(F) != X; the limsup is still computed.
  bool domain_not_full = false;
  std::size_t preperiod = 0;
  std::size_t period = 0;
};

/// Lim sup of the iterates F^k(A): union over one period of the eventually
/// periodic sequence of image sets.
LimitSet omega_limsup(const Relation& f, const CellSet& a);
LimitSet alpha_limsup(const Relation& f, const CellSet& a);

struct DerivativeRelation {
  std::vector<Edge> edge_index;
  Relation relation;
};

/// Nodes are the edges of F in lexicographic order; e1 -> e2 iff
/// target(e1) = source(e2).
DerivativeRelation derivative_relation(const Relation& f);

using FinitePath = std::vector<CellId>;

struct PathEnumeration {
  std::vector<FinitePath> paths;
  bool truncated = false;
};

/// All F_C paths with n steps (n + 1 cells), in lexicographic order, at most
/// cap of them.
PathEnumeration enumerate_paths(const Relation& f, const CellSet& c,
                                std::size_t n, std::size_t cap);

}  // namespace conley
