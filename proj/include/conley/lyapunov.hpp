#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "conley/morse.hpp"

namespace conley {

using Rational = boost::multiprecision::cpp_rational;

struct LyapunovField {
  std::vector<Rational> values;
  std::vector<std::vector<Rational>> pair_fields;
  /// 2 / 3^{n+1} for pair n.
  std::vector<Rational> weights;

  std::vector<double> as_double() const;
};

/// Field that is 1 on the attractor, 0 on the repeller and strictly between
/// elsewhere, nondecreasing along V_eps ∘ F. Off A ∪ B the value is
/// (h_max + 1 - h) / (h_max + 2), where h is the longest condensation path
/// from the cell's component that avoids A and B.
std::vector<Rational> pair_lyapunov(const Relation& f,
                                    const AttractorRepellerPair& pair, Eps eps);

/// Σ 2/3^{n+1} L_n over the ar_family pairs, in family order.
LyapunovField complete_lyapunov(const Relation& f, Eps eps);
LyapunovField complete_lyapunov(const Relation& f, const MorseFamily& family);

struct LyapunovCheck {
  bool monotone = false;
  CellSet critical_set;
  bool separates_components = false;
  bool critical_is_recurrent = false;
  bool pass = false;
  /// Edges (x, y) of V_eps ∘ F with L(y) < L(x).
  std::vector<Edge> violations;
};

LyapunovCheck verify_lyapunov(const Relation& f, Eps eps,
                              const std::vector<Rational>& field);

struct Superlevel {
  CellSet set;
  bool inward = false;
};

/// {c : L(c) >= a} with its inwardness under F.
Superlevel sublevel_inward(const Relation& f, const std::vector<Rational>& field,
                           const Rational& a);

}  // namespace conley
