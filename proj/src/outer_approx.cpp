#include "conley/outer_approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace conley {

Relation v_eps_relation(std::shared_ptr<const GridSpace> space, Eps eps) {
  if (eps.value < 0 || std::isnan(eps.value)) {
    throw std::invalid_argument("eps must be nonnegative");
  }
  if (eps.strict_identity) return Relation::identity(std::move(space));
  const std::size_t n = space->cell_count();
  std::vector<std::vector<CellId>> rows(n);
  if (space->is_discrete()) {
    if (eps.value >= 1.0) return Relation::full(std::move(space));
    return Relation::identity(std::move(space));
  }
  // Per-axis index radius: gap (k - 1) * w <= eps.
  const std::size_t d = space->dim();
  std::vector<std::uint32_t> radius(d);
  for (std::size_t a = 0; a < d; ++a) {
    const double r = std::floor(eps.value / space->width(a) + 1e-9) + 1.0;
    radius[a] = static_cast<std::uint32_t>(
        std::min<double>(r, space->divisions()[a]));
  }
  for (CellId c = 0; c < n; ++c) {
    auto idx = space->multi_index(c);
    std::vector<double> lo(d), hi(d);
    for (std::size_t a = 0; a < d; ++a) {
      const double w = space->width(a);
      const double l = std::max<double>(0, double(idx[a]) - radius[a]);
      const double h =
          std::min<double>(space->divisions()[a] - 1, double(idx[a]) + radius[a]);
      lo[a] = space->lower()[a] + (l + 0.5) * w;
      hi[a] = space->lower()[a] + (h + 0.5) * w;
    }
    CellSet block = space->cells_meeting(lo, hi);
    block.for_each([&](CellId t) {
      if (within_eps(space->box_distance(c, t), eps.value)) rows[c].push_back(t);
    });
  }
  return Relation(std::move(space), std::move(rows));
}

Relation outer_approximate_map(std::shared_ptr<const GridSpace> space,
                               const Sampler& sampler,
                               const OuterApproxConfig& config) {
  if (space->is_discrete()) {
    throw std::invalid_argument("outer approximation needs a grid space");
  }
  if (config.bloat < 0 || std::isnan(config.bloat)) {
    throw std::invalid_argument("bloat must be nonnegative");
  }
  if (config.subdivisions < 1) {
    throw std::invalid_argument("stencil needs at least one subdivision");
  }
  const std::size_t d = space->dim();
  const std::size_t n = space->cell_count();
  const unsigned k = config.subdivisions;
  std::vector<std::vector<CellId>> rows(n);
  std::vector<unsigned> step(d);
  std::vector<double> point(d);
  for (CellId c = 0; c < n; ++c) {
    const Box box = space->cell_box(c);
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    std::fill(step.begin(), step.end(), 0u);
    while (true) {
      for (std::size_t a = 0; a < d; ++a) {
        point[a] = step[a] == k ? box.hi[a]
                                : box.lo[a] + (box.hi[a] - box.lo[a]) * step[a] / k;
      }
      const auto y = sampler(point);
      if (y.size() != d) {
        throw std::invalid_argument("sampler returned " + std::to_string(y.size()) +
                                    " coordinates, expected " + std::to_string(d));
      }
      for (std::size_t a = 0; a < d; ++a) {
        if (!std::isfinite(y[a])) {
          throw std::domain_error("sampler output is not finite at cell " +
                                  std::to_string(c));
        }
        lo[a] = std::min(lo[a], y[a]);
        hi[a] = std::max(hi[a], y[a]);
      }
      std::size_t a = d;
      while (a-- > 0) {
        if (step[a] < k) {
          ++step[a];
          break;
        }
        step[a] = 0;
      }
      if (a == static_cast<std::size_t>(-1)) break;
    }
    for (std::size_t a = 0; a < d; ++a) {
      lo[a] = std::clamp(lo[a] - config.bloat, space->lower()[a], space->upper()[a]);
      hi[a] = std::clamp(hi[a] + config.bloat, space->lower()[a], space->upper()[a]);
    }
    rows[c] = space->cells_meeting(lo, hi).members();
  }
  return Relation(std::move(space), std::move(rows));
}

}  // namespace conley
