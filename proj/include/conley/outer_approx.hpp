#pragma once

#include <functional>
#include <span>
#include <vector>

#include "conley/relation.hpp"

namespace conley {

/// V_eps = {(i, j) : box_distance(i, j) <= eps}; exactly the identity when
/// eps.strict_identity is set.
Relation v_eps_relation(std::shared_ptr<const GridSpace> space, Eps eps);

using Sampler = std::function<std::vector<double>(std::span<const double>)>;

struct OuterApproxConfig {
  double bloat = 0.0;
  /// Sample points per axis are lower + i * w / subdivisions, i = 0..subdivisions.
  /// 2 gives corners plus center.
  unsigned subdivisions = 2;
};

/// For each cell, samples the stencil, takes the bounding box of the images,
/// inflates it by the bloat, clamps it to the space box and relates the cell
/// to every cell meeting that box.
Relation outer_approximate_map(std::shared_ptr<const GridSpace> space,
                               const Sampler& sampler,
                               const OuterApproxConfig& config = {});

}  // namespace conley
