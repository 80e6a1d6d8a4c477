#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "conley/cell_set.hpp"
#include "conley/grid_space.hpp"

namespace conley {

using Edge = std::pair<CellId, CellId>;

/// A relation F on the cells of one space, stored as sorted adjacency rows.
/// Rows may be empty (F is allowed to be partial).
class Relation {
 public:
  explicit Relation(std::shared_ptr<const GridSpace> space);
  Relation(std::shared_ptr<const GridSpace> space,
           std::vector<std::vector<CellId>> rows);

  static Relation identity(std::shared_ptr<const GridSpace> space);
  static Relation full(std::shared_ptr<const GridSpace> space);
  static Relation from_edges(std::shared_ptr<const GridSpace> space,
                             std::span<const Edge> edges);
  /// Relation on an abstract n-point space.
  static Relation on_points(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const { return rows_.size(); }
  const GridSpace& space() const { return *space_; }
  const std::shared_ptr<const GridSpace>& space_ptr() const { return space_; }

  std::span<const CellId> row(CellId c) const { return rows_.at(c); }
  CellSet row_set(CellId c) const;
  bool contains(CellId x, CellId y) const;
  std::size_t edge_count() const;
  std::vector<Edge> edges() const;
  bool empty() const { return edge_count() == 0; }

  bool is_subset_of(const Relation& other) const;
  friend bool operator==(const Relation& a, const Relation& b) {
    return a.rows_ == b.rows_;
  }

 private:
  std::shared_ptr<const GridSpace> space_;
  std::vector<std::vector<CellId>> rows_;
};

CellSet image(const Relation& f, const CellSet& a);
CellSet preimage(const Relation& f, const CellSet& b);
CellSet image_of(const Relation& f, CellId c);

/// G ∘ F: apply F first, then G.
Relation compose(const Relation& g, const Relation& f);
Relation inverse(const Relation& f);
/// F^n; n = 0 is the identity, negative n iterates the inverse.
Relation iterate(const Relation& f, int n);
Relation unite(const Relation& f, const Relation& g);
Relation intersect(const Relation& f, const Relation& g);
/// F_C = F ∩ (C × C).
Relation restrict(const Relation& f, const CellSet& c);
/// Adds A × B to F.
Relation with_product(const Relation& f, const CellSet& a, const CellSet& b);

/// F*(V) = {x : F(x) ⊆ V}; cells with empty image always belong.
CellSet star(const Relation& f, const CellSet& v);
/// F^{*n}(A), with F^{*1} = F* and F^{*(n+1)}(A) = F*(A ∪ F^{*n}(A)).
CellSet star_n(const Relation& f, const CellSet& a, int n);

/// Transitive closure ⋃_{n ≥ 1} F^n.
Relation orbit_relation(const Relation& f);
/// The prolongation and generalized recurrence relations. Closure is
/// trivial on a finite relation, so both coincide with the orbit relation.
Relation prolongation_relation(const Relation& f);
Relation generalized_recurrence_relation(const Relation& f);

/// ⋃_{n ≥ 1} F^n(S), without building the closure.
CellSet forward_reach(const Relation& f, const CellSet& s);
CellSet backward_reach(const Relation& f, const CellSet& s);

/// |F| = {x : (x, x) ∈ F}.
CellSet cyclic_set(const Relation& f);
CellSet domain(const Relation& f);
CellSet range(const Relation& f);

struct StructuralPredicates {
  CellSet domain;
  bool surjective = false;
  bool irreducible = false;
};

/// Irreducible here means surjective with no proper subset A ⊊ X having
/// F(A) = X or F⁻¹(A) = X (every cell set counts as closed and open).
StructuralPredicates structural_predicates(const Relation& f);

/// Strongly connected components, numbered in reverse topological order
/// of the condensation (a component only reaches components with smaller
/// or equal numbers).
struct SccResult {
  std::vector<std::uint32_t> component_of;
  std::vector<std::vector<CellId>> members;
  /// True when the component carries an edge (size > 1 or a self-loop).
  std::vector<bool> cyclic;
};

SccResult strongly_connected(const Relation& f);

}  // namespace conley
