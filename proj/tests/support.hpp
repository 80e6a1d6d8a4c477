#pragma once

// Shared fixtures and brute-force oracles for the test binaries. The oracles
// work on plain boolean matrices so they share no code with the library.

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "conley/hybrid.hpp"
#include "conley/outer_approx.hpp"
#include "conley/samplers.hpp"

namespace testing_support {

using conley::CellId;
using conley::CellSet;
using conley::Edge;
using conley::GridSpace;
using conley::Relation;

using Matrix = std::vector<std::vector<bool>>;

inline std::shared_ptr<const GridSpace> line_space(double lo, double hi, std::uint32_t n) {
  return std::make_shared<GridSpace>(std::vector<double>{lo}, std::vector<double>{hi},
                                     std::vector<std::uint32_t>{n});
}

inline std::shared_ptr<const GridSpace> square_space(std::uint32_t n) {
  return std::make_shared<GridSpace>(std::vector<double>{-1, -1}, std::vector<double>{1, 1},
                                     std::vector<std::uint32_t>{n, n});
}

inline Relation l3() {
  const std::vector<Edge> e{{0, 1}, {1, 2}};
  return Relation::on_points(3, e);
}

inline Relation c2() {
  const std::vector<Edge> e{{0, 1}, {1, 0}};
  return Relation::on_points(2, e);
}

/// clamp(2x) on [-1, 1] with n cells.
inline Relation dbl(std::uint32_t n) {
  return conley::outer_approximate_map(line_space(-1, 1, n), conley::make_sampler("double"));
}

inline Relation sdl(const char* sampler = "saddle", std::uint32_t n = 32) {
  return conley::outer_approximate_map(square_space(n), conley::make_sampler(sampler));
}

inline CellSet central_square(const GridSpace& sp, double half) {
  const std::vector<double> lo{-half, -half}, hi{half, half};
  return sp.cells_inside(lo, hi);
}

/// Each ordered pair is an edge with probability p.
inline Relation random_relation(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (CellId x = 0; x < n; ++x) {
    for (CellId y = 0; y < n; ++y) {
      if (coin(rng)) e.emplace_back(x, y);
    }
  }
  return Relation::on_points(n, e);
}

/// Random relation with every row nonempty.
inline Relation random_total_relation(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<CellId> pick(0, static_cast<CellId>(n - 1));
  std::vector<Edge> e;
  for (CellId x = 0; x < n; ++x) {
    e.emplace_back(x, pick(rng));
    for (CellId y = 0; y < n; ++y) {
      if (coin(rng)) e.emplace_back(x, y);
    }
  }
  return Relation::on_points(n, e);
}

inline CellSet random_set(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  CellSet s(n);
  for (CellId c = 0; c < n; ++c) {
    if (coin(rng)) s.insert(c);
  }
  return s;
}

inline CellSet subset_from_mask(std::size_t n, std::uint64_t mask) {
  CellSet s(n);
  for (CellId c = 0; c < n; ++c) {
    if (mask >> c & 1) s.insert(c);
  }
  return s;
}

inline Matrix to_matrix(const Relation& f) {
  const std::size_t n = f.size();
  Matrix m(n, std::vector<bool>(n, false));
  for (CellId x = 0; x < n; ++x) {
    for (CellId y = 0; y < n; ++y) m[x][y] = f.contains(x, y);
  }
  return m;
}

inline Matrix matrix_compose(const Matrix& g, const Matrix& f) {
  const std::size_t n = f.size();
  Matrix out(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (f[x][y])
        for (std::size_t z = 0; z < n; ++z)
          if (g[y][z]) out[x][z] = true;
  return out;
}

/// Transitive closure (no reflexive part) by Floyd–Warshall.
inline Matrix floyd_warshall(Matrix m) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k][j]) m[i][j] = true;
  return m;
}

/// Cells of C with an infinite path inside C (depth |C| + 1 search).
inline CellSet brute_plus_core(const Relation& f, const CellSet& c) {
  const std::size_t n = f.size();
  std::vector<bool> alive(n);
  for (CellId x = 0; x < n; ++x) alive[x] = c.contains(x);
  // A path of length |C| + 1 inside C must revisit a cell, hence extends forever.
  const std::size_t depth = c.size() + 1;
  std::vector<bool> reach(n);
  for (CellId x = 0; x < n; ++x) reach[x] = alive[x];
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<bool> next(n, false);
    for (CellId x = 0; x < n; ++x) {
      if (!alive[x]) continue;
      for (CellId y : f.row(x)) {
        if (alive[y] && reach[y]) next[x] = true;
      }
    }
    reach = next;
  }
  CellSet out(n);
  for (CellId x = 0; x < n; ++x) {
    if (reach[x]) out.insert(x);
  }
  return out;
}

inline CellSet brute_minus_core(const Relation& f, const CellSet& c) {
  return brute_plus_core(conley::inverse(f), c);
}

/// The toy cycler: 4 cells on [0, 4], step 0→1→2→3→3, flow on all cells,
/// jump 3→0, two steps per unit time.
inline conley::HybridSystem cycler() {
  auto sp = line_space(0, 4, 4);
  const std::vector<Edge> step{{0, 1}, {1, 2}, {2, 3}, {3, 3}};
  const std::vector<Edge> jump{{3, 0}};
  return conley::make_hybrid(conley::make_semiflow(Relation::from_edges(sp, step), 2),
                             sp->full_set(), Relation::from_edges(sp, jump));
}

/// Random hybrid system on a discrete space.
inline conley::HybridSystem random_hybrid(std::mt19937_64& rng, std::size_t n,
                                          std::uint32_t k) {
  const Relation step = random_total_relation(rng, n, 0.15);
  const Relation jump = random_relation(rng, n, 0.08);
  CellSet c = random_set(rng, n, 0.75);
  return conley::make_hybrid(conley::make_semiflow(step, k), c, jump);
}

}  // namespace testing_support
