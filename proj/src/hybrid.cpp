#include "conley/hybrid.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "conley/outer_approx.hpp"

namespace conley {

HybridSystem make_hybrid(SemiflowApprox sf, CellSet c, Relation jump) {
  if (c.universe() != sf.step.size() || !(jump.space() == sf.space())) {
    throw std::invalid_argument("flow set, jump and step must share one space");
  }
  return HybridSystem{std::move(sf), std::move(c), std::move(jump)};
}

bool valid_time_domain(const HybridTimeDomain& dom) {
  if (dom.anchors.empty()) return false;
  int prev_kind = -1;
  bool alternating = true;
  for (std::size_t i = 1; i < dom.anchors.size(); ++i) {
    const auto [t0, n0] = dom.anchors[i - 1];
    const auto [t1, n1] = dom.anchors[i];
    int kind;
    if (n1 == n0 && t1 > t0) {
      kind = 0;
    } else if (t1 == t0 && n1 > n0) {
      kind = 1;
    } else {
      return false;
    }
    if (kind == prev_kind) alternating = false;
    prev_kind = kind;
  }
  return !dom.simple || alternating;
}

std::uint32_t HybridPath::ticks() const {
  return static_cast<std::uint32_t>(std::count_if(
      moves.begin(), moves.end(), [](const HybridMove& m) { return m.kind == MoveKind::flow; }));
}

std::uint32_t HybridPath::jumps() const {
  return static_cast<std::uint32_t>(moves.size()) - ticks();
}

std::vector<CellId> HybridPath::cells() const {
  std::vector<CellId> out{start};
  for (const auto& m : moves) out.push_back(m.to);
  return out;
}

double path_length(const HybridSystem& hs, const HybridPath& p) {
  return p.ticks() * hs.sf.delta() + p.jumps();
}

std::uint32_t path_length_ticks(const HybridSystem& hs, const HybridPath& p) {
  return p.ticks() + hs.sf.steps_per_unit * p.jumps();
}

HybridTimeDomain time_domain(const HybridPath& p) {
  HybridTimeDomain dom;
  dom.simple = true;
  HybridTime at{0, 0};
  dom.anchors.push_back(at);
  for (std::size_t i = 0; i < p.moves.size(); ++i) {
    if (i > 0 && p.moves[i].kind != p.moves[i - 1].kind) dom.anchors.push_back(at);
    if (p.moves[i].kind == MoveKind::flow) {
      ++at.first;
    } else {
      ++at.second;
    }
  }
  if (dom.anchors.back() != at) dom.anchors.push_back(at);
  return dom;
}

std::vector<HybridTime> domain_points(const HybridPath& p) {
  std::vector<HybridTime> out{{0, 0}};
  for (const auto& m : p.moves) {
    HybridTime next = out.back();
    if (m.kind == MoveKind::flow) {
      ++next.first;
    } else {
      ++next.second;
    }
    out.push_back(next);
  }
  return out;
}

bool is_hybrid_path(const HybridSystem& hs, const HybridPath& p, const CellSet& k) {
  if (p.start >= k.universe() || !k.contains(p.start)) return false;
  CellId at = p.start;
  for (const auto& m : p.moves) {
    if (m.to >= k.universe() || !k.contains(m.to)) return false;
    if (m.kind == MoveKind::flow) {
      if (!hs.c.contains(at) || !hs.c.contains(m.to) || !hs.sf.step.contains(at, m.to)) {
        return false;
      }
    } else if (!hs.jump.contains(at, m.to)) {
      return false;
    }
    at = m.to;
  }
  return true;
}

namespace {

Relation associated_on(const HybridSystem& hs, const CellSet& flow_set,
                       const Relation& jump) {
  const std::uint32_t k = hs.sf.steps_per_unit;
  const Relation phi_i = restricted_interval_relation_ticks(hs.sf, flow_set, 0, k);
  const Relation phi_j = restricted_interval_relation_ticks(hs.sf, flow_set, k, 2 * k);
  return unite(compose(phi_i, compose(jump, phi_i)), phi_j);
}

}  // namespace

Relation associated_relation(const HybridSystem& hs) {
  return associated_on(hs, hs.c, hs.jump);
}

Relation restricted_associated_relation(const HybridSystem& hs, const CellSet& k) {
  return associated_on(hs, hs.c & k, restrict(hs.jump, k));
}

Relation teel_relation(const HybridSystem& hs) {
  const std::size_t n = hs.sf.step.size();
  const std::uint32_t k = hs.sf.steps_per_unit;
  const Relation flow = restrict(hs.sf.step, hs.c);
  std::vector<std::vector<CellId>> rows(n);
  for (CellId x = 0; x < n; ++x) {
    std::vector<CellSet> reach(3 * k + 1, CellSet(n));
    reach[0].insert(x);
    CellSet hit(n);
    for (std::uint32_t len = 0; len <= 3 * k; ++len) {
      if (len >= k) hit |= reach[len];
      if (len + 1 <= 3 * k) reach[len + 1] |= image(flow, reach[len]);
      if (len + k <= 3 * k) reach[len + k] |= image(hs.jump, reach[len]);
    }
    rows[x] = hit.members();
  }
  return Relation(hs.sf.step.space_ptr(), std::move(rows));
}

HybridPathEnumeration enumerate_hybrid_paths(const HybridSystem& hs, const CellSet& k,
                                             std::uint32_t max_ticks, std::size_t cap) {
  HybridPathEnumeration out;
  const std::uint32_t unit = hs.sf.steps_per_unit;
  const CellSet flow_cells = hs.c & k;
  const Relation flow = restrict(hs.sf.step, flow_cells);
  const Relation jump = restrict(hs.jump, k);
  const CellSet starts = k & (hs.c | hs.d());

  HybridPath current;
  auto dfs = [&](auto&& self, CellId at, std::uint32_t used) -> void {
    if (out.truncated) return;
    if (out.paths.size() >= cap) {
      out.truncated = true;
      return;
    }
    out.paths.push_back(current);
    if (used + 1 <= max_ticks) {
      for (CellId y : flow.row(at)) {
        current.moves.push_back({MoveKind::flow, y});
        self(self, y, used + 1);
        current.moves.pop_back();
      }
    }
    if (used + unit <= max_ticks) {
      for (CellId y : jump.row(at)) {
        current.moves.push_back({MoveKind::jump, y});
        self(self, y, used + unit);
        current.moves.pop_back();
      }
    }
  };
  starts.for_each([&](CellId s) {
    current = HybridPath{s, {}};
    dfs(dfs, s, 0);
  });
  return out;
}

FinitePath span_decomposition(const HybridSystem& hs, const HybridPath& p) {
  const std::uint32_t unit = hs.sf.steps_per_unit;
  if (path_length_ticks(hs, p) < unit) {
    throw std::invalid_argument("path length below 1 has no H-step");
  }
  const std::size_t m = p.moves.size();
  auto piece_ok = [&](std::size_t i, std::size_t j) {
    std::uint32_t before = 0, after = 0, jumps = 0;
    for (std::size_t q = i; q < j; ++q) {
      if (p.moves[q].kind == MoveKind::jump) {
        ++jumps;
      } else if (jumps == 0) {
        ++before;
      } else {
        ++after;
      }
    }
    if (jumps == 0) return before >= unit && before <= 2 * unit;
    return jumps == 1 && before <= unit && after <= unit;
  };
  constexpr int kNone = -1;
  std::vector<int> best(m + 1, kNone);
  std::vector<std::size_t> parent(m + 1, 0);
  best[0] = 0;
  for (std::size_t j = 1; j <= m; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (best[i] == kNone || !piece_ok(i, j)) continue;
      if (best[i] + 1 > best[j]) {
        best[j] = best[i] + 1;
        parent[j] = i;
      }
    }
  }
  if (best[m] == kNone) throw std::invalid_argument("path has no H-step decomposition");
  const auto cells = p.cells();
  FinitePath orbit;
  for (std::size_t j = m;; j = parent[j]) {
    orbit.push_back(cells[j]);
    if (j == 0) break;
  }
  std::reverse(orbit.begin(), orbit.end());
  return orbit;
}

HybridPath build_spanning_path(const HybridSystem& hs, const FinitePath& orbit) {
  if (orbit.empty()) throw std::invalid_argument("empty orbit");
  const std::size_t n = hs.sf.step.size();
  const std::uint32_t unit = hs.sf.steps_per_unit;
  const Relation flow = restrict(hs.sf.step, hs.c);
  // State (cell, phase, t): phase 0 before the jump (t <= 2K), phase 1 after (t <= K).
  const std::size_t per_cell = 2 * unit + 1 + unit + 1;
  auto index = [&](CellId c, int phase, std::uint32_t t) {
    return c * per_cell + (phase == 0 ? t : 2 * unit + 1 + t);
  };
  struct Back {
    std::size_t from = 0;
    HybridMove move;
    bool seen = false;
  };

  HybridPath out{orbit.front(), {}};
  for (std::size_t s = 0; s + 1 < orbit.size(); ++s) {
    const CellId a = orbit[s];
    const CellId b = orbit[s + 1];
    std::vector<Back> back(n * per_cell);
    std::deque<std::tuple<CellId, int, std::uint32_t>> queue;
    back[index(a, 0, 0)].seen = true;
    queue.emplace_back(a, 0, 0);
    std::optional<std::size_t> goal;
    while (!queue.empty() && !goal) {
      const auto [c, phase, t] = queue.front();
      queue.pop_front();
      const std::size_t here = index(c, phase, t);
      if (c == b && (phase == 1 || (t >= unit && t <= 2 * unit))) {
        goal = here;
        break;
      }
      auto push = [&](CellId y, int ph, std::uint32_t tt, MoveKind kind) {
        const std::size_t id = index(y, ph, tt);
        if (back[id].seen) return;
        back[id] = Back{here, HybridMove{kind, y}, true};
        queue.emplace_back(y, ph, tt);
      };
      const std::uint32_t limit = phase == 0 ? 2 * unit : unit;
      if (t < limit) {
        for (CellId y : flow.row(c)) push(y, phase, t + 1, MoveKind::flow);
      }
      if (phase == 0 && t <= unit) {
        for (CellId y : hs.jump.row(c)) push(y, 1, 0, MoveKind::jump);
      }
    }
    if (!goal) {
      throw std::invalid_argument("orbit step " + std::to_string(a) + " -> " +
                                  std::to_string(b) + " is not in H");
    }
    std::vector<HybridMove> seg;
    for (std::size_t id = *goal; id != index(a, 0, 0); id = back[id].from) {
      seg.push_back(back[id].move);
    }
    out.moves.insert(out.moves.end(), seg.rbegin(), seg.rend());
  }
  return out;
}

ViabilityReport hybrid_viability(const HybridSystem& hs, const CellSet& k) {
  return viability_report(restricted_associated_relation(hs, k), k);
}

bool hybrid_chain_query(const HybridSystem& hs, Eps eps, CellId x, CellId y) {
  const Relation v = v_eps_relation(hs.sf.step.space_ptr(), eps);
  const Relation h = associated_relation(hs);
  const CellSet start = image(v, CellSet(h.size(), {x}));
  return forward_reach(compose(v, h), start).contains(y);
}

CellSet hybrid_boundary(const HybridSystem& hs, const CellSet& k) {
  return f_boundary(hs.jump, k).delta | f_boundary(restrict(hs.sf.step, hs.c), k).delta;
}

ConleyReport hybrid_conley(const HybridSystem& hs, const CellSet& k) {
  BoundaryFn boundary = [&hs](const CellSet& s) { return hybrid_boundary(hs, s); };
  return conley_analysis(restricted_associated_relation(hs, k), k, boundary);
}

HybridLyapunov hybrid_lyapunov(const HybridSystem& hs, Eps eps) {
  const Relation h = associated_relation(hs);
  HybridLyapunov out{complete_lyapunov(h, eps), {}, {}};
  out.check = verify_lyapunov(h, eps, out.field.values);
  const GridSpace& sp = hs.sf.space();
  const Relation flow = restrict(hs.sf.step, hs.c);
  const std::set<Rational> values(out.field.values.begin(), out.field.values.end());
  for (const Rational& a : values) {
    HybridLevel lvl{a, CellSet(h.size())};
    for (CellId c = 0; c < h.size(); ++c) {
      if (out.field.values[c] >= a) lvl.set.insert(c);
    }
    const CellSet inner = set_interior(sp, lvl.set);
    lvl.jump_inward = image(hs.jump, lvl.set).is_subset_of(inner);
    lvl.flow_inward = image(flow, lvl.set).is_subset_of(inner);
    out.levels.push_back(std::move(lvl));
  }
  return out;
}

}  // namespace conley
