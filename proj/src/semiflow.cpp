#include "conley/semiflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "conley/viability.hpp"

namespace conley {

SemiflowApprox make_semiflow(Relation step, std::uint32_t steps_per_unit) {
  if (steps_per_unit == 0) throw std::invalid_argument("steps_per_unit must be >= 1");
  return SemiflowApprox{std::move(step), steps_per_unit};
}

std::uint32_t lattice_ticks(const SemiflowApprox& sf, double t) {
  const double k = t * sf.steps_per_unit;
  const double r = std::round(k);
  if (!(t >= 0) || std::abs(k - r) > 1e-9 * (1.0 + std::abs(k))) {
    throw std::invalid_argument("time " + std::to_string(t) + " is not on the lattice");
  }
  return static_cast<std::uint32_t>(r);
}

namespace {

Relation window_union(const Relation& base, const Relation& power0,
                      std::uint32_t k1, std::uint32_t k2) {
  if (k1 > k2) throw std::invalid_argument("interval end before start");
  Relation acc(base.space_ptr());
  Relation p = k1 == 0 ? power0 : iterate(base, static_cast<int>(k1));
  for (std::uint32_t k = k1;; ++k) {
    acc = unite(acc, p);
    if (k == k2) break;
    p = compose(base, p);
  }
  return acc;
}

}  // namespace

Relation interval_relation_ticks(const SemiflowApprox& sf, std::uint32_t k1,
                                 std::uint32_t k2) {
  return window_union(sf.step, Relation::identity(sf.step.space_ptr()), k1, k2);
}

Relation interval_relation(const SemiflowApprox& sf, double t1, double t2) {
  return interval_relation_ticks(sf, lattice_ticks(sf, t1), lattice_ticks(sf, t2));
}

Relation restricted_interval_relation_ticks(const SemiflowApprox& sf,
                                            const CellSet& c, std::uint32_t k1,
                                            std::uint32_t k2) {
  return window_union(restrict(sf.step, c), Relation::identity(sf.step.space_ptr()),
                      k1, k2);
}

Relation restricted_interval_relation(const SemiflowApprox& sf, const CellSet& c,
                                      double t1, double t2) {
  return restricted_interval_relation_ticks(sf, c, lattice_ticks(sf, t1),
                                            lattice_ticks(sf, t2));
}

TimedRelationTable timed_table(const SemiflowApprox& sf, std::uint32_t horizon) {
  TimedRelationTable t;
  t.at.push_back(Relation::identity(sf.step.space_ptr()));
  for (std::uint32_t k = 1; k <= horizon; ++k) t.at.push_back(compose(sf.step, t.at.back()));
  return t;
}

std::optional<KolmogorovWitness> weak_kolmogorov_violation(const TimedRelationTable& t) {
  const std::size_t h = t.at.size();
  for (std::size_t j = 0; j < h; ++j) {
    for (std::size_t k = 0; j + k < h; ++k) {
      const Relation& target = t.at[j + k];
      for (const auto& [x, z] : t.at[j].edges()) {
        for (CellId y : t.at[k].row(z)) {
          if (!target.contains(x, y)) {
            return KolmogorovWitness{x, z, y, static_cast<std::uint32_t>(j),
                                     static_cast<std::uint32_t>(k)};
          }
        }
      }
    }
  }
  return std::nullopt;
}

TimedRelationTable refine_once(const TimedRelationTable& t) {
  if (t.at.empty()) return t;
  for (const auto& [x, y] : t.at[0].edges()) {
    if (x != y) throw std::invalid_argument("time-0 relation is not inside the identity");
  }
  if (auto w = weak_kolmogorov_violation(t)) {
    throw std::invalid_argument(
        "weak Kolmogorov violated: (" + std::to_string(w->x) + ", " +
        std::to_string(w->j) + ", " + std::to_string(w->z) + "), (" +
        std::to_string(w->z) + ", " + std::to_string(w->k) + ", " +
        std::to_string(w->y) + ") without (" + std::to_string(w->x) + ", " +
        std::to_string(w->j + w->k) + ", " + std::to_string(w->y) + ")");
  }
  TimedRelationTable out;
  out.at.push_back(t.at[0]);
  for (std::size_t k = 1; k < t.at.size(); ++k) {
    std::vector<Edge> keep;
    for (const auto& [x, y] : t.at[k].edges()) {
      bool ok = true;
      for (std::size_t j = 0; j <= k && ok; ++j) {
        bool found = false;
        for (CellId z : t.at[j].row(x)) {
          if (t.at[k - j].contains(z, y)) {
            found = true;
            break;
          }
        }
        ok = found;
      }
      if (ok) keep.emplace_back(x, y);
    }
    out.at.push_back(Relation::from_edges(t.at[k].space_ptr(), keep));
  }
  return out;
}

namespace {

std::size_t total_edges(const TimedRelationTable& t) {
  std::size_t n = 0;
  for (const auto& r : t.at) n += r.edge_count();
  return n;
}

}  // namespace

RefinementResult refine_weak_semiflow(const TimedRelationTable& t) {
  RefinementResult res{t, 0, 0};
  const std::size_t start = total_edges(t);
  while (true) {
    TimedRelationTable next = refine_once(res.table);
    ++res.rounds;
    if (next.at == res.table.at) break;
    res.table = std::move(next);
  }
  res.removed = start - total_edges(res.table);
  return res;
}

std::array<std::size_t, 2> refinement_sensitivity(const TimedRelationTable& t) {
  TimedRelationTable coarse;
  for (std::size_t k = 0; k < t.at.size(); k += 2) coarse.at.push_back(t.at[k]);
  return {refine_weak_semiflow(t).removed, refine_weak_semiflow(coarse).removed};
}

TauReport tau_and_terminal(const SemiflowApprox& sf, const CellSet& c) {
  const ViabilityReport v = viability_report(restrict(sf.step, c), c);
  auto scale = [&](const std::vector<std::int64_t>& nu) {
    std::vector<double> out(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i) {
      if (nu[i] == kInfinite) {
        out[i] = std::numeric_limits<double>::infinity();
      } else if (nu[i] == kUndefined) {
        out[i] = -1;
      } else {
        out[i] = static_cast<double>(nu[i]) * sf.delta();
      }
    }
    return out;
  };
  return TauReport{scale(v.nu), scale(v.nu_bar), v.terminal};
}

CellSet phi_boundary(const SemiflowApprox& sf, const CellSet& c) {
  return f_boundary(sf.step, c).delta;
}

bool equicontinuity_check(const SemiflowApprox& sf, double lipschitz, double bloat) {
  const GridSpace& sp = sf.space();
  double w = 0;
  if (!sp.is_discrete()) {
    for (std::size_t a = 0; a < sp.dim(); ++a) w = std::max(w, sp.width(a));
  }
  const double bound = lipschitz * sf.delta() + bloat + w;
  for (const auto& [x, y] : sf.step.edges()) {
    if (!within_eps(sp.box_distance(x, y), bound)) return false;
  }
  return true;
}

SemiflowConley semiflow_conley(const SemiflowApprox& sf, const CellSet& c) {
  SemiflowConley out{restricted_interval_relation_ticks(sf, c, sf.steps_per_unit,
                                                        2 * sf.steps_per_unit),
                     {}};
  BoundaryFn boundary = [&sf](const CellSet& s) { return phi_boundary(sf, s); };
  out.report = conley_analysis(out.phi_j, c, boundary);
  return out;
}

}  // namespace conley
