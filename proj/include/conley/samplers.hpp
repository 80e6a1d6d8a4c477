#pragma once

#include <string>
#include <vector>

#include "conley/outer_approx.hpp"

namespace conley {

/// Built-in maps on [-1, 1]^d:
///   "double"      x -> clamp(2x)                       (d = 1)
///   "saddle"      (x, y) -> (clamp(2x), y / 2)         (d = 2)
///   "saddle_onto" (x, y) -> (clamp(2x), s(y)), where s(y) = y / 2 for
///                 |y| <= 2/3 and sign(y)(2|y| - 1) beyond; a saddle at the
///                 origin that maps the square onto itself.
/// Throws std::invalid_argument for an unknown id.
Sampler make_sampler(const std::string& id);

/// Dimension the sampler expects, 0 for an unknown id.
std::size_t sampler_dimension(const std::string& id);

std::vector<std::string> sampler_ids();

}  // namespace conley
