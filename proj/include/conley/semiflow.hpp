#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "conley/conley_index.hpp"

namespace conley {

/// A semiflow sampled on the time lattice {k·Δ}, Δ = 1/K, through its
/// one-step relation φ^Δ.
struct SemiflowApprox {
  Relation step;
  std::uint32_t steps_per_unit = 1;

  double delta() const { return 1.0 / steps_per_unit; }
  bool complete() const { return domain(step).is_full(); }
  const GridSpace& space() const { return step.space(); }
};

/// Throws std::invalid_argument when K = 0.
SemiflowApprox make_semiflow(Relation step, std::uint32_t steps_per_unit);

/// t / Δ; throws std::invalid_argument for negative or off-lattice t.
std::uint32_t lattice_ticks(const SemiflowApprox& sf, double t);

/// φ^[t1,t2] = ⋃ step^k over the lattice window.
Relation interval_relation(const SemiflowApprox& sf, double t1, double t2);
Relation interval_relation_ticks(const SemiflowApprox& sf, std::uint32_t k1,
                                 std::uint32_t k2);

/// (φ_C)^[t1,t2]: pairs joined by step paths that stay in C. The k = 0 term is
/// the identity on X.
Relation restricted_interval_relation(const SemiflowApprox& sf, const CellSet& c,
                                      double t1, double t2);
Relation restricted_interval_relation_ticks(const SemiflowApprox& sf,
                                            const CellSet& c, std::uint32_t k1,
                                            std::uint32_t k2);

/// φ^{kΔ} for k = 0..horizon.
struct TimedRelationTable {
  std::vector<Relation> at;
};

TimedRelationTable timed_table(const SemiflowApprox& sf, std::uint32_t horizon);

/// (x, j, z), (z, k, y) in the table but (x, j + k, y) missing.
struct KolmogorovWitness {
  CellId x = 0;
  CellId z = 0;
  CellId y = 0;
  std::uint32_t j = 0;
  std::uint32_t k = 0;
};

std::optional<KolmogorovWitness> weak_kolmogorov_violation(const TimedRelationTable& t);

/// One application of Ψ ↦ Ψ′: keep (x, k, y) only if every j ≤ k has a
/// midpoint z with (x, j, z) and (z, k - j, y). Throws std::invalid_argument
/// if the table breaks weak Kolmogorov or φ^0 is not inside the identity.
TimedRelationTable refine_once(const TimedRelationTable& t);

struct RefinementResult {
  TimedRelationTable table;
  std::size_t rounds = 0;
  std::size_t removed = 0;
};

/// Iterates refine_once to the fixpoint Ψ∞.
RefinementResult refine_weak_semiflow(const TimedRelationTable& t);

/// Entries removed by refinement at lattice steps Δ and 2Δ (every other
/// entry), exposing sensitivity to the lattice resolution.
std::array<std::size_t, 2> refinement_sensitivity(const TimedRelationTable& t);

struct TauReport {
  /// Δ·ν_C per cell: +inf on C₊, -1 outside C.
  std::vector<double> tau;
  std::vector<double> tau_bar;
  CellSet terminal;
};

TauReport tau_and_terminal(const SemiflowApprox& sf, const CellSet& c);

/// δ_Φ(C) at the finest lattice step: C ∩ closure(step(C) \ C).
CellSet phi_boundary(const SemiflowApprox& sf, const CellSet& c);

/// Every step edge spans box distance at most L·Δ + bloat + the largest
/// cell width.
bool equicontinuity_check(const SemiflowApprox& sf, double lipschitz, double bloat);

struct SemiflowConley {
  /// (φ_C)^J, the relation handed to the index machinery.
  Relation phi_j;
  ConleyReport report;
};

SemiflowConley semiflow_conley(const SemiflowApprox& sf, const CellSet& c);

}  // namespace conley
