#pragma once

#include <optional>
#include <vector>

#include "conley/relation.hpp"

namespace conley {

struct DenseComplement {
  CellSet a;
  /// The dilation radius used for A = X \ V_delta(K).
  Eps delta;
  /// interior(closure(K)) = ∅.
  bool nowhere_dense = false;
};

/// Every cell lies within box distance eps of A.
bool is_eps_dense(const GridSpace& space, const CellSet& a, double eps);

/// A = X \ V_delta(K) for the largest delta on the ladder
/// diameter / 2^j (j = 0..40), touching, strict identity, such that A is
/// eps-dense. Throws std::invalid_argument with the smallest achievable
/// density radius when no rung works.
DenseComplement eps_dense_complement(const GridSpace& space, const CellSet& k,
                                     double eps);

/// R_A(c) = the cells of A whose centers are nearest to the center of c
/// (all ties kept). Exactly the identity on A.
Relation retraction_relation(std::shared_ptr<const GridSpace> space,
                             const CellSet& a);

struct PerturbationCertificate {
  double eps = 0;
  bool containment_fwd = false;
  bool containment_bwd = false;
  bool full_domain = false;
  bool surjective = false;
  /// Least N with (G_C)^N = ∅.
  std::optional<std::size_t> annihilation_n;
  /// Dom(G⁻¹) != X.
  bool inverse_domain_deficient = false;

  bool holds() const {
    return containment_fwd && containment_bwd && full_domain &&
           annihilation_n.has_value();
  }
};

/// Recomputes every certificate clause for G against F from scratch.
PerturbationCertificate certify_perturbation(const Relation& f, const Relation& g,
                                             const CellSet& c, double eps);

struct RepellerElimination {
  Relation g;
  PerturbationCertificate cert;
  CellSet c_plus;
  /// A = X \ C₊, the retraction target.
  CellSet target;
  /// Relative interior of C₊ in C is empty (the literal nowhere-density).
  bool c_plus_thin = false;
  /// G agrees with F row by row on C \ C₊.
  bool agrees_on_remainder = false;
};

/// G = R_A ∘ F with A = X \ C₊. Requires Dom(F) = X, C isolating and A
/// eps-dense; throws std::invalid_argument naming the failed gate.
RepellerElimination eliminate_repeller(const Relation& f, const CellSet& c,
                                       double eps);

struct SaddleBlock {
  CellSet k;
  CellId y = 0;
  CellId x = 0;
};

struct SaddleElimination {
  Relation g_hat;
  PerturbationCertificate cert;
  std::vector<SaddleBlock> blocks;
  bool c_plus_thin = false;
  bool c_minus_thin = false;
};

/// Ĝ = (R̂ ∘ F) ∪ M, where R̂ is the identity off C± and retracts C± onto
/// X \ C₊, and M joins each block K_i of C± to a preimage x_i of a nearby
/// cell y_i ∈ C₊ \ C₋. Requires F surjective, C isolating, X \ C₊ eps-dense.
SaddleElimination eliminate_saddle(const Relation& f, const CellSet& c, double eps);

}  // namespace conley
