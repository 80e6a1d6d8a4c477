#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "conley/cell_set.hpp"

namespace conley {

/// Closed axis-aligned box.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// A compact box in R^d cut into a uniform grid of closed cells, or a
/// finite discrete space of abstract points.
///
/// Cells are numbered in lexicographic multi-index order with the last axis
/// varying fastest. Adjacent cells share faces, so two cells "touch" when
/// their multi-indices differ by at most one on every axis. The metric is
/// the sup-norm distance between closed boxes.
///
/// The discrete variant carries the metric d(x, y) = 1 for x != y. Every
/// cell touches only itself there, so closure and interior are identities.
class GridSpace {
 public:
  GridSpace(std::vector<double> lower, std::vector<double> upper,
            std::vector<std::uint32_t> divisions);

  static GridSpace discrete(std::size_t points);

  bool is_discrete() const { return discrete_; }
  std::size_t dim() const { return lower_.size(); }
  std::size_t cell_count() const { return cell_count_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<std::uint32_t>& divisions() const { return divisions_; }
  double width(std::size_t axis) const { return widths_[axis]; }

  std::vector<std::uint32_t> multi_index(CellId c) const;
  CellId cell_at(std::span<const std::uint32_t> index) const;
  Box cell_box(CellId c) const;
  std::vector<double> cell_center(CellId c) const;

  /// Sup-norm distance between the closed boxes of two cells (0 iff they
  /// touch).
  double box_distance(CellId i, CellId j) const;
  /// Sup-norm distance between cell centers.
  double center_distance(CellId i, CellId j) const;
  double diameter() const;

  bool touching(CellId i, CellId j) const;
  /// Every cell whose box meets the box of c, c included, in increasing order.
  std::vector<CellId> touching_cells(CellId c) const;

  /// Cells whose boxes meet the closed box [lo, hi].
  CellSet cells_meeting(std::span<const double> lo,
                        std::span<const double> hi) const;
  /// Cells whose boxes lie inside the closed box [lo, hi].
  CellSet cells_inside(std::span<const double> lo,
                       std::span<const double> hi) const;

  CellSet empty_set() const { return CellSet(cell_count_); }
  CellSet full_set() const { return CellSet::full(cell_count_); }

  friend bool operator==(const GridSpace& a, const GridSpace& b);

 private:
  GridSpace() = default;
  void check(CellId c) const;

  bool discrete_ = false;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::uint32_t> divisions_;
  std::vector<double> widths_;
  std::vector<std::size_t> strides_;
  std::size_t cell_count_ = 0;
};

/// Dilation radius for V_eps. `strict_identity` selects the degenerate
/// V_0 = identity; otherwise eps = 0 means "touching", the finest dilation
/// a grid can express.
struct Eps {
  double value = 0.0;
  bool strict_identity = false;

  static Eps strict() { return Eps{0.0, true}; }
  static Eps of(double v) { return Eps{v, false}; }
};

/// Distance comparison with a relative slack of 1e-12, so that grid
/// distances like 3 * 0.1 still count as within 0.3.
inline bool within_eps(double dist, double eps) {
  return dist <= eps + 1e-12 * (1.0 + eps);
}

CellSet set_closure(const GridSpace& space, const CellSet& s);
CellSet set_interior(const GridSpace& space, const CellSet& s);
CellSet set_boundary(const GridSpace& space, const CellSet& s);
/// Interior of s relative to the subspace c (s is expected inside c).
CellSet relative_interior(const GridSpace& space, const CellSet& s,
                          const CellSet& c);
/// A ⊂⊂ B: closure(A) ⊆ interior(B).
bool compactly_contained(const GridSpace& space, const CellSet& a,
                         const CellSet& b);

/// V_eps(S): all cells within box distance eps of some cell of S.
CellSet dilate(const GridSpace& space, const CellSet& s, Eps eps);

/// Hausdorff distance between the center point sets of two cell sets, with
/// d(∅, ∅) = 0 and d(∅, T) = d(T, ∅) = D + 1 for nonempty T, where D is the
/// space diameter.
double hausdorff_distance(const GridSpace& space, const CellSet& s,
                          const CellSet& t);

}  // namespace conley
