#include "conley/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conley {

namespace {

double clamp1(double v) { return std::clamp(v, -1.0, 1.0); }

double onto_contraction(double y) {
  const double a = std::abs(y);
  if (a <= 2.0 / 3.0) return y / 2;
  return std::copysign(2 * a - 1, y);
}

}  // namespace

Sampler make_sampler(const std::string& id) {
  if (id == "double") {
    return [](std::span<const double> p) { return std::vector<double>{clamp1(2 * p[0])}; };
  }
  if (id == "saddle") {
    return [](std::span<const double> p) {
      return std::vector<double>{clamp1(2 * p[0]), p[1] / 2};
    };
  }
  if (id == "saddle_onto") {
    return [](std::span<const double> p) {
      return std::vector<double>{clamp1(2 * p[0]), onto_contraction(p[1])};
    };
  }
  throw std::invalid_argument("unknown sampler '" + id + "'");
}

std::size_t sampler_dimension(const std::string& id) {
  if (id == "double") return 1;
  if (id == "saddle" || id == "saddle_onto") return 2;
  return 0;
}

std::vector<std::string> sampler_ids() { return {"double", "saddle", "saddle_onto"}; }

}  // namespace conley
