#include "conley/chain.hpp"

#include <algorithm>
#include <stdexcept>

#include "conley/outer_approx.hpp"
#include "conley/viability.hpp"

namespace conley {

Relation chain_step(const Relation& f, Eps eps, ChainMode mode) {
  const Relation v = v_eps_relation(f.space_ptr(), eps);
  Relation step = compose(v, f);
  if (mode == ChainMode::two_sided) step = compose(step, v);
  return step;
}

namespace {

ChainAnalysis analyze_step(Relation step, Eps eps) {
  ChainAnalysis a{eps, std::move(step), Relation::on_points(0, {}), {}, {}, {}};
  a.chain_relation = orbit_relation(a.step);
  a.recurrent = cyclic_set(a.chain_relation);
  const auto scc = strongly_connected(a.step);
  std::vector<CellSet> comps;
  for (std::size_t k = 0; k < scc.members.size(); ++k) {
    if (!scc.cyclic[k]) continue;
    comps.emplace_back(a.step.size(),
                       std::span<const CellId>(scc.members[k]));
  }
  std::sort(comps.begin(), comps.end(), [](const CellSet& x, const CellSet& y) {
    return *x.first() < *y.first();
  });
  a.component_of.assign(a.step.size(), -1);
  for (std::size_t k = 0; k < comps.size(); ++k) {
    comps[k].for_each([&](CellId c) { a.component_of[c] = static_cast<int>(k); });
  }
  a.components = std::move(comps);
  return a;
}

}  // namespace

ChainAnalysis chain_analysis(const Relation& f, Eps eps, ChainMode mode) {
  return analyze_step(chain_step(f, eps, mode), eps);
}

bool chain_reachable(const Relation& f, Eps eps, CellId x, CellId y) {
  if (x >= f.size() || y >= f.size()) throw std::out_of_range("bad cell");
  const Relation step = chain_step(f, eps);
  CellSet start(f.size(), {x});
  return forward_reach(step, start).contains(y);
}

Relation restricted_chain_step(const Relation& f, const CellSet& c, Eps eps) {
  const Relation v = restrict(v_eps_relation(f.space_ptr(), eps), c);
  return compose(v, restrict(f, c));
}

bool chain_transitive(const Relation& f, const CellSet& c, Eps eps) {
  const Relation chain = orbit_relation(restricted_chain_step(f, c, eps));
  bool ok = true;
  c.for_each([&](CellId x) {
    if (ok && !(c.is_subset_of(chain.row_set(x)))) ok = false;
  });
  return ok;
}

ChainBoundCheck restricted_chain_bound_check(const Relation& f, const CellSet& c,
                                             Eps eps) {
  ChainBoundCheck out;
  const Relation fc = restrict(f, c);
  const CellSet plus = plus_viable_core(f, c);
  const CellSet minus = minus_viable_core(f, c);
  const Relation bound = with_product(orbit_relation(fc), plus, minus);
  out.bound_transitive = compose(bound, bound).is_subset_of(bound);
  const Relation chain = orbit_relation(restricted_chain_step(f, c, eps));
  out.pass = out.bound_transitive;
  for (CellId x = 0; x < chain.size() && !out.witness; ++x) {
    for (CellId y : chain.row(x)) {
      if (!bound.contains(x, y)) {
        out.witness = Edge{x, y};
        out.pass = false;
        break;
      }
    }
  }
  return out;
}

ChainLadder chain_ladder(const Relation& f, const std::vector<Eps>& ladder,
                         ChainMode mode) {
  ChainLadder out;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (i > 0) {
      const Eps& prev = ladder[i - 1];
      const Eps& cur = ladder[i];
      const bool decreasing =
          (!prev.strict_identity && cur.strict_identity) ||
          (!prev.strict_identity && !cur.strict_identity && cur.value < prev.value);
      if (!decreasing) throw std::invalid_argument("eps ladder must strictly decrease");
    }
    out.levels.push_back(chain_analysis(f, ladder[i], mode));
    const auto& cur = out.levels.back();
    LadderLevel lvl{ladder[i], cur.recurrent.size(), cur.components.size(), false};
    if (i > 0) {
      const auto& prev = out.levels[i - 1];
      lvl.same_as_previous =
          prev.recurrent == cur.recurrent && prev.components == cur.components;
      if (!lvl.same_as_previous) {
        out.stabilized_at.reset();
      } else if (!out.stabilized_at) {
        out.stabilized_at = i - 1;
      }
    }
    out.summary.push_back(lvl);
  }
  return out;
}

}  // namespace conley
