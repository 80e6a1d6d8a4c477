#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "conley/lyapunov.hpp"
#include "conley/semiflow.hpp"
#include "conley/viability.hpp"

namespace conley {

/// ℋ = (Φ_C, G): flow on C through the semiflow, jumps through G from D = Dom(G).
struct HybridSystem {
  SemiflowApprox sf;
  CellSet c;
  Relation jump;

  CellSet d() const { return domain(jump); }
  /// C ∪ D = X and the step is total.
  bool complete() const { return (c | d()).is_full() && sf.complete(); }
  /// Cells of C with no step into C lie in D. In the continuum this follows
  /// from completeness (terminal points sit on ∂C ⊆ D); on a grid it must
  /// be checked, and together with complete() it gives Dom(H) = X.
  bool terminals_jump() const {
    return (c - domain(restrict(sf.step, c))).is_subset_of(d());
  }
};

/// Throws std::invalid_argument when C or the jump live on another space.
HybridSystem make_hybrid(SemiflowApprox sf, CellSet c, Relation jump);

/// Hybrid time (t, n) with t in lattice ticks.
using HybridTime = std::pair<std::uint32_t, std::uint32_t>;

struct HybridTimeDomain {
  /// Corner points; consecutive anchors share n (horizontal) or t (vertical).
  std::vector<HybridTime> anchors;
  bool simple = false;
};

/// Anchors nondecreasing, each link horizontal or vertical; simple when no
/// two consecutive links have the same kind.
bool valid_time_domain(const HybridTimeDomain& dom);

enum class MoveKind { flow, jump };

struct HybridMove {
  MoveKind kind = MoveKind::flow;
  CellId to = 0;
};

/// A hybrid solution path: flow moves advance one lattice tick inside C,
/// jump moves follow G and advance n by one.
struct HybridPath {
  CellId start = 0;
  std::vector<HybridMove> moves;

  std::uint32_t ticks() const;
  std::uint32_t jumps() const;
  CellId end() const { return moves.empty() ? start : moves.back().to; }
  /// Cell after each prefix, start included.
  std::vector<CellId> cells() const;
};

/// Total length t + n in lattice units (K ticks per unit time).
double path_length(const HybridSystem& hs, const HybridPath& p);
/// Total length in ticks: t + K·n.
std::uint32_t path_length_ticks(const HybridSystem& hs, const HybridPath& p);

HybridTimeDomain time_domain(const HybridPath& p);
/// Every lattice point (t, n) the path passes through, in order.
std::vector<HybridTime> domain_points(const HybridPath& p);

/// Moves are legal for ℋ and every visited cell lies in K.
bool is_hybrid_path(const HybridSystem& hs, const HybridPath& p, const CellSet& k);

/// H = ((φ_C)^I ∘ G ∘ (φ_C)^I) ∪ (φ_C)^J.
Relation associated_relation(const HybridSystem& hs);

/// H̃: pairs joined by a hybrid path of length in [1, 3].
Relation teel_relation(const HybridSystem& hs);

struct HybridPathEnumeration {
  std::vector<HybridPath> paths;
  bool truncated = false;
};

/// Every hybrid path inside K of length at most max_ticks (t + K·n), trivial
/// paths on K ∩ (C ∪ D) included, ordered by start cell then moves (flow
/// before jump, then target). Stops at cap paths.
HybridPathEnumeration enumerate_hybrid_paths(const HybridSystem& hs, const CellSet& k,
                                             std::uint32_t max_ticks,
                                             std::size_t cap = 100000);

/// Cuts the path into k consecutive H-steps (the largest such k); returns
/// the k + 1 cut cells. Throws for paths of length below 1.
FinitePath span_decomposition(const HybridSystem& hs, const HybridPath& p);

/// A hybrid path spanning the H-orbit: each H-step is realized by a path
/// segment of length in [1, 3]. Throws if a consecutive pair is not in H.
HybridPath build_spanning_path(const HybridSystem& hs, const FinitePath& orbit);

/// H|K = ((φ_{C∩K})^I ∘ G_K ∘ (φ_{C∩K})^I) ∪ (φ_{C∩K})^J.
Relation restricted_associated_relation(const HybridSystem& hs, const CellSet& k);

ViabilityReport hybrid_viability(const HybridSystem& hs, const CellSet& k);

/// y ∈ O(V_eps ∘ H)(V_eps(x)).
bool hybrid_chain_query(const HybridSystem& hs, Eps eps, CellId x, CellId y);

/// δ_G(K) ∪ δ_{Φ_C}(K).
CellSet hybrid_boundary(const HybridSystem& hs, const CellSet& k);

/// Index machinery on H|K with δ replaced by hybrid_boundary.
ConleyReport hybrid_conley(const HybridSystem& hs, const CellSet& k);

struct HybridLevel {
  Rational value;
  CellSet set;
  /// G(U) ⊆ interior(U).
  bool jump_inward = false;
  /// step_C(U) ⊆ interior(U).
  bool flow_inward = false;
};

struct HybridLyapunov {
  LyapunovField field;
  LyapunovCheck check;
  /// Superlevel sets {L >= a} for every value a taken by L.
  std::vector<HybridLevel> levels;
};

HybridLyapunov hybrid_lyapunov(const HybridSystem& hs, Eps eps);

}  // namespace conley
