#include "conley/grid_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace conley {

GridSpace::GridSpace(std::vector<double> lower, std::vector<double> upper,
                     std::vector<std::uint32_t> divisions)
    : lower_(std::move(lower)),
      upper_(std::move(upper)),
      divisions_(std::move(divisions)) {
  if (lower_.empty()) throw std::invalid_argument("grid needs dim >= 1");
  if (lower_.size() != upper_.size() || lower_.size() != divisions_.size()) {
    throw std::invalid_argument("grid bounds and divisions differ in length");
  }
  const std::size_t d = lower_.size();
  widths_.resize(d);
  strides_.resize(d);
  cell_count_ = 1;
  for (std::size_t a = 0; a < d; ++a) {
    if (!(lower_[a] < upper_[a])) {
      throw std::invalid_argument("grid axis " + std::to_string(a) +
                                  " needs lower < upper");
    }
    if (divisions_[a] == 0) {
      throw std::invalid_argument("grid axis " + std::to_string(a) +
                                  " needs at least one division");
    }
    widths_[a] = (upper_[a] - lower_[a]) / divisions_[a];
  }
  for (std::size_t a = d; a-- > 0;) {
    strides_[a] = cell_count_;
    cell_count_ *= divisions_[a];
  }
}

GridSpace GridSpace::discrete(std::size_t points) {
  GridSpace g;
  g.discrete_ = true;
  g.cell_count_ = points;
  return g;
}

void GridSpace::check(CellId c) const {
  if (c >= cell_count_) {
    throw std::out_of_range("cell " + std::to_string(c) + " out of range [0," +
                            std::to_string(cell_count_) + ")");
  }
}

std::vector<std::uint32_t> GridSpace::multi_index(CellId c) const {
  check(c);
  if (discrete_) return {c};
  std::vector<std::uint32_t> idx(dim());
  std::size_t rest = c;
  for (std::size_t a = 0; a < dim(); ++a) {
    idx[a] = static_cast<std::uint32_t>(rest / strides_[a]);
    rest %= strides_[a];
  }
  return idx;
}

CellId GridSpace::cell_at(std::span<const std::uint32_t> index) const {
  if (discrete_) {
    if (index.size() != 1) throw std::invalid_argument("bad discrete index");
    check(index[0]);
    return index[0];
  }
  if (index.size() != dim()) throw std::invalid_argument("bad multi-index");
  std::size_t c = 0;
  for (std::size_t a = 0; a < dim(); ++a) {
    if (index[a] >= divisions_[a]) throw std::out_of_range("bad multi-index");
    c += index[a] * strides_[a];
  }
  return static_cast<CellId>(c);
}

Box GridSpace::cell_box(CellId c) const {
  if (discrete_) throw std::logic_error("discrete space has no boxes");
  auto idx = multi_index(c);
  Box b{std::vector<double>(dim()), std::vector<double>(dim())};
  for (std::size_t a = 0; a < dim(); ++a) {
    b.lo[a] = lower_[a] + idx[a] * widths_[a];
    b.hi[a] = idx[a] + 1 == divisions_[a] ? upper_[a]
                                          : lower_[a] + (idx[a] + 1) * widths_[a];
  }
  return b;
}

std::vector<double> GridSpace::cell_center(CellId c) const {
  auto b = cell_box(c);
  std::vector<double> mid(dim());
  for (std::size_t a = 0; a < dim(); ++a) mid[a] = 0.5 * (b.lo[a] + b.hi[a]);
  return mid;
}

double GridSpace::box_distance(CellId i, CellId j) const {
  check(i);
  check(j);
  if (discrete_) return i == j ? 0.0 : 1.0;
  auto a_idx = multi_index(i);
  auto b_idx = multi_index(j);
  double best = 0.0;
  for (std::size_t a = 0; a < dim(); ++a) {
    const auto lo = std::min(a_idx[a], b_idx[a]);
    const auto hi = std::max(a_idx[a], b_idx[a]);
    if (hi > lo + 1) {
      best = std::max(best, (hi - lo - 1) * widths_[a]);
    }
  }
  return best;
}

double GridSpace::center_distance(CellId i, CellId j) const {
  check(i);
  check(j);
  if (discrete_) return i == j ? 0.0 : 1.0;
  auto a_idx = multi_index(i);
  auto b_idx = multi_index(j);
  double best = 0.0;
  for (std::size_t a = 0; a < dim(); ++a) {
    const auto gap = a_idx[a] > b_idx[a] ? a_idx[a] - b_idx[a]
                                         : b_idx[a] - a_idx[a];
    best = std::max(best, gap * widths_[a]);
  }
  return best;
}

double GridSpace::diameter() const {
  if (discrete_) return cell_count_ >= 2 ? 1.0 : 0.0;
  double d = 0.0;
  for (std::size_t a = 0; a < dim(); ++a) d = std::max(d, upper_[a] - lower_[a]);
  return d;
}

bool GridSpace::touching(CellId i, CellId j) const {
  check(i);
  check(j);
  if (discrete_) return i == j;
  auto a_idx = multi_index(i);
  auto b_idx = multi_index(j);
  for (std::size_t a = 0; a < dim(); ++a) {
    if (a_idx[a] + 1 < b_idx[a] || b_idx[a] + 1 < a_idx[a]) return false;
  }
  return true;
}

std::vector<CellId> GridSpace::touching_cells(CellId c) const {
  check(c);
  if (discrete_) return {c};
  auto idx = multi_index(c);
  std::vector<std::uint32_t> lo(dim()), hi(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    lo[a] = idx[a] == 0 ? 0 : idx[a] - 1;
    hi[a] = std::min(idx[a] + 1, divisions_[a] - 1);
  }
  std::vector<CellId> out;
  std::vector<std::uint32_t> cur = lo;
  while (true) {
    out.push_back(cell_at(cur));
    std::size_t a = dim();
    while (a-- > 0) {
      if (cur[a] < hi[a]) {
        ++cur[a];
        break;
      }
      cur[a] = lo[a];
    }
    if (a == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

namespace {

// Enumerates the cells of an index box [lo, hi] (inclusive per axis).
CellSet index_block(const GridSpace& g, const std::vector<std::int64_t>& lo,
                    const std::vector<std::int64_t>& hi) {
  CellSet out(g.cell_count());
  std::vector<std::uint32_t> cur(g.dim());
  for (std::size_t a = 0; a < g.dim(); ++a) {
    if (lo[a] > hi[a]) return out;
    cur[a] = static_cast<std::uint32_t>(lo[a]);
  }
  while (true) {
    out.insert(g.cell_at(cur));
    std::size_t a = g.dim();
    while (a-- > 0) {
      if (cur[a] < hi[a]) {
        ++cur[a];
        break;
      }
      cur[a] = static_cast<std::uint32_t>(lo[a]);
    }
    if (a == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace

CellSet GridSpace::cells_meeting(std::span<const double> lo,
                                 std::span<const double> hi) const {
  if (discrete_) throw std::logic_error("discrete space has no regions");
  if (lo.size() != dim() || hi.size() != dim()) {
    throw std::invalid_argument("region dimension mismatch");
  }
  std::vector<std::int64_t> ilo(dim()), ihi(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    // Cell k = [lower + k w, lower + (k+1) w] meets [lo, hi] iff
    // lower + k w <= hi and lower + (k+1) w >= lo.
    const double w = widths_[a];
    const double first = std::ceil((lo[a] - lower_[a]) / w - 1.0);
    const double last = std::floor((hi[a] - lower_[a]) / w);
    ilo[a] = static_cast<std::int64_t>(std::max(first, 0.0));
    ihi[a] = static_cast<std::int64_t>(
        std::min(last, static_cast<double>(divisions_[a] - 1)));
  }
  return index_block(*this, ilo, ihi);
}

CellSet GridSpace::cells_inside(std::span<const double> lo,
                                std::span<const double> hi) const {
  if (discrete_) throw std::logic_error("discrete space has no regions");
  if (lo.size() != dim() || hi.size() != dim()) {
    throw std::invalid_argument("region dimension mismatch");
  }
  std::vector<std::int64_t> ilo(dim()), ihi(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    const double w = widths_[a];
    const double first = std::ceil((lo[a] - lower_[a]) / w);
    const double last = std::floor((hi[a] - lower_[a]) / w) - 1.0;
    ilo[a] = static_cast<std::int64_t>(std::max(first, 0.0));
    ihi[a] = static_cast<std::int64_t>(
        std::min(last, static_cast<double>(divisions_[a] - 1)));
  }
  return index_block(*this, ilo, ihi);
}

bool operator==(const GridSpace& a, const GridSpace& b) {
  return a.discrete_ == b.discrete_ && a.cell_count_ == b.cell_count_ &&
         a.lower_ == b.lower_ && a.upper_ == b.upper_ &&
         a.divisions_ == b.divisions_;
}

CellSet set_closure(const GridSpace& space, const CellSet& s) {
  if (space.is_discrete()) return s;
  CellSet out(space.cell_count());
  s.for_each([&](CellId c) {
    for (CellId t : space.touching_cells(c)) out.insert(t);
  });
  return out;
}

CellSet set_interior(const GridSpace& space, const CellSet& s) {
  if (space.is_discrete()) return s;
  CellSet out(space.cell_count());
  s.for_each([&](CellId c) {
    const auto nb = space.touching_cells(c);
    if (std::all_of(nb.begin(), nb.end(),
                    [&](CellId t) { return s.contains(t); })) {
      out.insert(c);
    }
  });
  return out;
}

CellSet set_boundary(const GridSpace& space, const CellSet& s) {
  return s - set_interior(space, s);
}

CellSet relative_interior(const GridSpace& space, const CellSet& s,
                          const CellSet& c) {
  if (space.is_discrete()) return s & c;
  CellSet out(space.cell_count());
  (s & c).for_each([&](CellId x) {
    const auto nb = space.touching_cells(x);
    if (std::all_of(nb.begin(), nb.end(), [&](CellId t) {
          return !c.contains(t) || s.contains(t);
        })) {
      out.insert(x);
    }
  });
  return out;
}

bool compactly_contained(const GridSpace& space, const CellSet& a,
                         const CellSet& b) {
  return set_closure(space, a).is_subset_of(set_interior(space, b));
}

CellSet dilate(const GridSpace& space, const CellSet& s, Eps eps) {
  if (eps.value < 0) throw std::invalid_argument("negative eps");
  if (eps.strict_identity) return s;
  CellSet out(space.cell_count());
  if (s.empty()) return out;
  if (space.is_discrete()) return eps.value >= 1.0 ? space.full_set() : s;
  const auto members = s.members();
  for (CellId c = 0; c < space.cell_count(); ++c) {
    for (CellId m : members) {
      if (within_eps(space.box_distance(c, m), eps.value)) {
        out.insert(c);
        break;
      }
    }
  }
  return out;
}

double hausdorff_distance(const GridSpace& space, const CellSet& s,
                          const CellSet& t) {
  if (s.universe() != space.cell_count() || t.universe() != space.cell_count()) {
    throw std::invalid_argument("cell sets do not belong to this space");
  }
  const double cap = space.diameter() + 1.0;
  // d(A/B) = sup over b in B of d(b, A), capped at D + 1 (attained iff A = ∅).
  auto directed = [&](const CellSet& a, const CellSet& b) {
    if (b.empty()) return 0.0;
    if (a.empty()) return cap;
    const auto am = a.members();
    double worst = 0.0;
    b.for_each([&](CellId y) {
      double best = std::numeric_limits<double>::infinity();
      for (CellId x : am) best = std::min(best, space.center_distance(x, y));
      worst = std::max(worst, best);
    });
    return std::min(cap, worst);
  };
  return std::max(directed(s, t), directed(t, s));
}

}  // namespace conley
