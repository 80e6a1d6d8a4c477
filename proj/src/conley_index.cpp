#include "conley/conley_index.hpp"

#include <stdexcept>

#include "conley/morse.hpp"

namespace conley {

BoundaryReport f_boundary(const Relation& f, const CellSet& c) {
  BoundaryReport r;
  const CellSet outside = image(f, c) - c;
  r.rho = set_closure(f.space(), outside);
  r.delta = c & r.rho;
  r.plus_invariant = outside.empty();
  return r;
}

namespace {

CellSet boundary_of(const Relation& f, const CellSet& c, const BoundaryFn& fn) {
  return fn ? fn(c) : f_boundary(f, c).delta;
}

}  // namespace

IsolatingChecks isolating_checks(const Relation& f, const CellSet& c,
                                 const BoundaryFn& boundary) {
  IsolatingChecks r;
  const CellSet inner = set_interior(f.space(), c);
  r.c_plus = plus_viable_core(f, c);
  r.c_minus = minus_viable_core(f, c);
  r.c_pm = r.c_plus & r.c_minus;
  r.isolating = r.c_pm.is_subset_of(inner);
  r.plus_isolating = r.c_plus.is_subset_of(inner);
  r.minus_isolating = r.c_minus.is_subset_of(inner);
  const Relation fc = restrict(f, c);
  r.simple = (image(fc, c) & preimage(fc, c)).is_subset_of(inner);
  r.delta = boundary_of(f, c, boundary);
  r.index_type = r.isolating && !r.delta.intersects(r.c_plus);
  return r;
}

IndexPair build_index_pair(const Relation& f, const CellSet& p1,
                           const BoundaryFn& boundary) {
  const IsolatingChecks chk = isolating_checks(f, p1, boundary);
  if (!chk.isolating) {
    throw std::invalid_argument("P1 is not isolating: (P1)± meets its boundary");
  }
  if (!chk.index_type) {
    throw std::invalid_argument("P1 is not of index type: δ(P1) meets (P1)₊");
  }
  IndexPair pair;
  pair.p1 = p1;
  pair.p2 = chk.delta | forward_reach(restrict(f, p1), chk.delta);
  pair.viable_set = chk.c_pm;
  return pair;
}

PairValidation validate_index_pair(const Relation& f, const IndexPair& pair,
                                   const BoundaryFn& boundary) {
  PairValidation v;
  const GridSpace& sp = f.space();
  const CellSet& p1 = pair.p1;
  const CellSet& p2 = pair.p2;
  auto fail = [&](const char* what) { v.failed_conditions.emplace_back(what); };

  if (!p2.is_subset_of(p1)) fail("i': P2 not inside P1");
  if (!image(restrict(f, p1), p2).is_subset_of(p2)) {
    fail("ii': P2 not +invariant under F_P1");
  }
  const CellSet pm = plus_viable_core(f, p1) & minus_viable_core(f, p1);
  if (!pm.is_subset_of(set_interior(sp, p1) - p2)) {
    fail("iii': (P1)± not inside interior(P1) \\ P2");
  }
  const CellSet delta = boundary_of(f, p1, boundary);
  if (!delta.is_subset_of(p2)) fail("iv': δ(P1) not inside P2");

  if (pair.rel_neighborhood) {
    const CellSet& c = *pair.rel_neighborhood;
    const Relation fc = restrict(f, c);
    const CellSet c_inner = set_interior(sp, c);
    const CellSet c_bd = c - c_inner;
    if (!(p2.is_subset_of(p1) && p1.is_subset_of(c))) fail("i: not P2 ⊆ P1 ⊆ C");
    if (!image(fc, p1).is_subset_of(p1) || !image(fc, p2).is_subset_of(p2)) {
      fail("ii: P1 or P2 not F_C +invariant");
    }
    const CellSet cpm = plus_viable_core(f, c) & minus_viable_core(f, c);
    if (!cpm.is_subset_of(set_interior(sp, p1) - p2)) {
      fail("iii: C± not inside interior(P1) \\ P2");
    }
    if (!(p1 & c_bd).is_subset_of(p2)) fail("iv: P1 ∩ ∂C not inside P2");
    v.iva = (p1 & c_bd).is_subset_of(relative_interior(sp, p2, p1));
    v.v = (p1 & c_bd) == delta;
  }
  v.pass = v.failed_conditions.empty();
  return v;
}

IndexPair wedge(const Relation& f, const IndexPair& a, const IndexPair& b) {
  for (const IndexPair* p : {&a, &b}) {
    const auto val = validate_index_pair(f, *p);
    if (!val.pass) {
      throw std::invalid_argument("wedge input is not an index pair: " +
                                  val.failed_conditions.front());
    }
  }
  IndexPair w;
  w.p1 = a.p1 & b.p1;
  w.p2 = w.p1 & (a.p2 | b.p2);
  w.viable_set = plus_viable_core(f, w.p1) & minus_viable_core(f, w.p1);
  return w;
}

PrecedesResult precedes(const Relation& f, const CellSet& q1, const CellSet& p1) {
  if (!isolating_checks(f, p1).index_type) {
    throw std::invalid_argument("P1 is not of index type");
  }
  PrecedesResult r;
  const CellSet p1_plus = plus_viable_core(f, p1);
  r.precedes = q1.is_subset_of(p1) && !f_boundary(f, q1).rho.intersects(p1_plus);
  if (r.precedes) r.plus_consistent = plus_viable_core(f, q1) == (q1 & p1_plus);
  return r;
}

QuotientRelation quotient_relation(const Relation& f, const IndexPair& pair) {
  const std::size_t n = f.size();
  const CellId star = static_cast<CellId>(n);
  const CellSet core = pair.p1 - pair.p2;
  std::vector<Edge> edges;
  core.for_each([&](CellId x) {
    bool to_star = false;
    for (CellId y : f.row(x)) {
      if (core.contains(y)) {
        edges.emplace_back(x, y);
      } else {
        to_star = true;
      }
    }
    if (to_star) edges.emplace_back(x, star);
  });
  edges.emplace_back(star, star);

  QuotientRelation q{Relation::on_points(n + 1, edges), CellSet(n + 1), star, false,
                     false, false, CellSet(n + 1), false, false};
  core.for_each([&](CellId x) { q.nodes.insert(x); });
  q.nodes.insert(star);

  const Relation& fq = q.relation;
  q.domain_checked = domain(f).is_full();
  q.full_domain = (domain(fq) & q.nodes) == q.nodes;

  // Dual repeller of {star}: the cells never forced into the star.
  CellSet star_set(n + 1, {star});
  const CellSet attractor = forward_limit(fq, star_set);
  q.dual_repeller = backward_limit(fq, q.nodes - star_set);
  CellSet p1_plus(n + 1);
  plus_viable_core(f, pair.p1).for_each([&](CellId c) { p1_plus.insert(c); });
  q.star_attractor = attractor == star_set && q.dual_repeller == p1_plus;

  CellSet minus_nodes = star_set;
  (minus_viable_core(f, pair.p1) - pair.p2).for_each([&](CellId c) {
    minus_nodes.insert(c);
  });
  q.minus_attractor = forward_limit(fq, q.nodes) == minus_nodes &&
                      backward_limit(fq, q.nodes - minus_nodes).empty();
  if (pair.p2.empty()) {
    q.star_repeller = preimage(fq, star_set) == star_set;
  }
  if (!q.domain_checked) {
    q.star_attractor = false;
    q.minus_attractor = false;
  }
  return q;
}

StableUnstable stable_unstable(const Relation& f, const CellSet& c) {
  const IsolatingChecks chk = isolating_checks(f, c);
  if (!chk.isolating) throw std::invalid_argument("C is not an isolating neighborhood");
  return {chk.c_plus | backward_reach(f, chk.c_plus),
          chk.c_minus | forward_reach(f, chk.c_minus)};
}

RobustnessResult robust_isolation(const Relation& f, const CellSet& c,
                                  const std::vector<Eps>& ladder,
                                  std::optional<CellSet> u) {
  RobustnessResult r;
  r.u = u ? *u : set_interior(f.space(), c);
  if (!r.u.is_subset_of(c)) throw std::invalid_argument("U must lie inside C");
  for (const Eps& e : ladder) {
    const Relation big = chain_step(f, e, ChainMode::two_sided);
    const CellSet pm = plus_viable_core(big, c) & minus_viable_core(big, c);
    if (pm.is_subset_of(r.u)) {
      r.eps_star = e;
      r.viable_bound = pm;
      break;
    }
  }
  return r;
}

ConleyReport conley_analysis(const Relation& f, const CellSet& c,
                             const BoundaryFn& boundary) {
  ConleyReport r;
  r.checks = isolating_checks(f, c, boundary);
  r.boundary = f_boundary(f, c);
  if (boundary) r.boundary.delta = r.checks.delta;
  if (!r.checks.isolating) {
    r.notes.emplace_back("not isolating: C± meets the boundary of C");
    return r;
  }
  r.stable_unstable = stable_unstable(f, c);
  if (!r.checks.index_type) {
    r.notes.emplace_back("not of index type: δ(C) meets C₊");
    return r;
  }
  r.pair = build_index_pair(f, c, boundary);
  r.validation = validate_index_pair(f, *r.pair, boundary);
  r.quotient = quotient_relation(f, *r.pair);
  if (!r.quotient->domain_checked) {
    r.notes.emplace_back("Dom(F) != X: quotient attractor checks skipped");
  }
  return r;
}

}  // namespace conley
