#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conley/chain.hpp"
#include "conley/viability.hpp"

namespace conley {

struct BoundaryReport {
  /// ρ_F(C) = closure(F(C) \ C)
  CellSet rho;
  /// δ_F(C) = C ∩ ρ_F(C)
  CellSet delta;
  bool plus_invariant = false;
};

BoundaryReport f_boundary(const Relation& f, const CellSet& c);

/// Replacement for δ_F in the index machinery (semiflow and hybrid systems
/// supply their own boundary). Empty function = δ_F of the relation.
using BoundaryFn = std::function<CellSet(const CellSet&)>;

struct IsolatingChecks {
  bool isolating = false;
  bool simple = false;
  bool index_type = false;
  bool minus_isolating = false;
  bool plus_isolating = false;
  CellSet c_plus;
  CellSet c_minus;
  CellSet c_pm;
  CellSet delta;
};

IsolatingChecks isolating_checks(const Relation& f, const CellSet& c,
                                 const BoundaryFn& boundary = {});

struct IndexPair {
  CellSet p1;
  CellSet p2;
  std::optional<CellSet> rel_neighborhood;
  /// (P1)±
  CellSet viable_set;
};

/// P2 = δ(P1) ∪ O(F_{P1})(δ(P1)). Throws std::invalid_argument naming the
/// failed condition when P1 is not of index type.
IndexPair build_index_pair(const Relation& f, const CellSet& p1,
                           const BoundaryFn& boundary = {});

struct PairValidation {
  bool pass = false;
  std::vector<std::string> failed_conditions;
  /// Only meaningful with a rel neighborhood.
  bool iva = false;
  bool v = false;
};

PairValidation validate_index_pair(const Relation& f, const IndexPair& pair,
                                   const BoundaryFn& boundary = {});

/// (P1 ∩ Q1, P1 ∩ Q1 ∩ (P2 ∪ Q2)). Throws when an input fails validation.
IndexPair wedge(const Relation& f, const IndexPair& a, const IndexPair& b);

struct PrecedesResult {
  bool precedes = false;
  /// When precedes holds: (Q1)₊ == Q1 ∩ (P1)₊.
  bool plus_consistent = false;
};

/// Q1 ≺ P1: Q1 ⊆ P1 and ρ_F(Q1) ∩ (P1)₊ = ∅. P1 must be of index type.
PrecedesResult precedes(const Relation& f, const CellSet& q1, const CellSet& p1);

struct QuotientRelation {
  /// Relation on N + 1 points; cells outside P1 \ P2 have empty rows.
  Relation relation;
  /// The nodes (P1 \ P2) ∪ {star}.
  CellSet nodes;
  CellId star = 0;
  bool domain_checked = false;
  bool full_domain = false;
  /// {star} is an attractor whose dual repeller is (P1)₊.
  bool star_attractor = false;
  CellSet dual_repeller;
  /// π((P1)₋) ∪ {star} is an attractor with empty dual repeller.
  bool minus_attractor = false;
  /// P2 = ∅: {star} is also a repeller with dual attractor (P1)₋.
  bool star_repeller = false;
};

QuotientRelation quotient_relation(const Relation& f, const IndexPair& pair);

struct StableUnstable {
  CellSet ws;
  CellSet wu;
};

/// Throws unless C is isolating.
StableUnstable stable_unstable(const Relation& f, const CellSet& c);

struct RobustnessResult {
  /// Largest ladder eps keeping C isolating for V∘F∘V with the viable set
  /// inside U; empty when no rung works.
  std::optional<Eps> eps_star;
  CellSet u;
  /// c_pm of (V∘F∘V)_C at eps_star.
  CellSet viable_bound;
};

/// U defaults to interior(C). Any F1 ⊆ V∘F∘V at eps_star inherits the
/// property, since C± is monotone in the relation.
RobustnessResult robust_isolation(const Relation& f, const CellSet& c,
                                  const std::vector<Eps>& ladder,
                                  std::optional<CellSet> u = std::nullopt);

struct ConleyReport {
  IsolatingChecks checks;
  BoundaryReport boundary;
  std::optional<IndexPair> pair;
  std::optional<PairValidation> validation;
  std::optional<QuotientRelation> quotient;
  std::optional<StableUnstable> stable_unstable;
  std::vector<std::string> notes;
};

/// Isolation checks, index pair, quotient and stable/unstable sets for C.
ConleyReport conley_analysis(const Relation& f, const CellSet& c,
                             const BoundaryFn& boundary = {});

}  // namespace conley
