#include "conley/perturbation.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "conley/conley_index.hpp"
#include "conley/outer_approx.hpp"

namespace conley {

namespace {

double distance_to_set(const GridSpace& space, CellId c, const CellSet& a) {
  double best = std::numeric_limits<double>::infinity();
  a.for_each([&](CellId y) { best = std::min(best, space.box_distance(c, y)); });
  return best;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

bool is_eps_dense(const GridSpace& space, const CellSet& a, double eps) {
  if (a.empty()) return false;
  for (CellId c = 0; c < space.cell_count(); ++c) {
    if (a.contains(c)) continue;
    if (!within_eps(distance_to_set(space, c, a), eps)) return false;
  }
  return true;
}

DenseComplement eps_dense_complement(const GridSpace& space, const CellSet& k,
                                     double eps) {
  DenseComplement out;
  out.nowhere_dense = set_interior(space, set_closure(space, k)).empty();

  std::vector<Eps> ladder;
  const double d = space.diameter();
  for (int j = 0; j <= 40; ++j) ladder.push_back(Eps::of(d / std::ldexp(1.0, j)));
  ladder.push_back(Eps::of(0.0));
  ladder.push_back(Eps::strict());

  for (const Eps& delta : ladder) {
    CellSet a = space.full_set() - dilate(space, k, delta);
    if (is_eps_dense(space, a, eps)) {
      out.a = std::move(a);
      out.delta = delta;
      return out;
    }
  }
  const CellSet rest = space.full_set() - k;
  double need = 0;
  if (rest.empty()) {
    need = std::numeric_limits<double>::infinity();
  } else {
    k.for_each([&](CellId c) { need = std::max(need, distance_to_set(space, c, rest)); });
  }
  throw std::invalid_argument("no eps-dense complement: X \\ K is only " + fmt(need) +
                              "-dense, eps = " + fmt(eps));
}

Relation retraction_relation(std::shared_ptr<const GridSpace> space,
                             const CellSet& a) {
  if (a.empty()) throw std::invalid_argument("retraction onto the empty set");
  const GridSpace& sp = *space;
  std::vector<std::vector<CellId>> rows(sp.cell_count());
  for (CellId c = 0; c < sp.cell_count(); ++c) {
    if (a.contains(c)) {
      rows[c] = {c};
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    a.for_each([&](CellId y) { best = std::min(best, sp.center_distance(c, y)); });
    a.for_each([&](CellId y) {
      if (sp.center_distance(c, y) <= best + 1e-12 * (1.0 + best)) rows[c].push_back(y);
    });
  }
  return Relation(std::move(space), std::move(rows));
}

PerturbationCertificate certify_perturbation(const Relation& f, const Relation& g,
                                             const CellSet& c, double eps) {
  if (!(f.space() == g.space())) throw std::invalid_argument("space mismatch");
  PerturbationCertificate cert;
  cert.eps = eps;
  const Relation v = v_eps_relation(f.space_ptr(), Eps::of(eps));
  cert.containment_fwd = g.is_subset_of(compose(v, f));
  cert.containment_bwd = f.is_subset_of(compose(v, g));
  cert.full_domain = domain(g).is_full();
  cert.surjective = range(g).is_full();
  cert.inverse_domain_deficient = !cert.surjective;

  const Relation gc = restrict(g, c);
  CellSet s = c;
  for (std::size_t n = 0; n <= c.size() + 1; ++n) {
    if (s.empty()) {
      cert.annihilation_n = n;
      break;
    }
    s = image(gc, s);
  }
  return cert;
}

RepellerElimination eliminate_repeller(const Relation& f, const CellSet& c,
                                       double eps) {
  const GridSpace& sp = f.space();
  if (!domain(f).is_full()) throw std::invalid_argument("Dom(F) != X");
  const IsolatingChecks chk = isolating_checks(f, c);
  if (!chk.isolating) throw std::invalid_argument("C is not isolating");

  RepellerElimination out{Relation(f.space_ptr()), {}, chk.c_plus,
                          sp.full_set() - chk.c_plus};
  if (!is_eps_dense(sp, out.target, eps)) {
    throw std::invalid_argument("X \\ C+ is not eps-dense for eps = " + fmt(eps));
  }
  out.c_plus_thin = relative_interior(sp, chk.c_plus, c).empty();
  out.g = compose(retraction_relation(f.space_ptr(), out.target), f);
  out.cert = certify_perturbation(f, out.g, c, eps);

  out.agrees_on_remainder = true;
  (c - chk.c_plus).for_each([&](CellId x) {
    if (out.g.row_set(x) != f.row_set(x)) out.agrees_on_remainder = false;
  });
  return out;
}

SaddleElimination eliminate_saddle(const Relation& f, const CellSet& c, double eps) {
  const GridSpace& sp = f.space();
  if (!range(f).is_full()) throw std::invalid_argument("F is not surjective");
  if (!domain(f).is_full()) throw std::invalid_argument("Dom(F) != X");
  const IsolatingChecks chk = isolating_checks(f, c);
  if (!chk.isolating) throw std::invalid_argument("C is not isolating");
  const CellSet a = sp.full_set() - chk.c_plus;
  if (!is_eps_dense(sp, a, eps)) {
    throw std::invalid_argument("X \\ C+ is not eps-dense for eps = " + fmt(eps));
  }

  SaddleElimination out{Relation(f.space_ptr()), {}, {},
                        relative_interior(sp, chk.c_plus, c).empty(),
                        relative_interior(sp, chk.c_minus, c).empty()};
  const CellSet& k = chk.c_pm;

  const Relation ra = retraction_relation(f.space_ptr(), a);
  std::vector<std::vector<CellId>> rows(sp.cell_count());
  for (CellId x = 0; x < sp.cell_count(); ++x) {
    if (k.contains(x)) {
      auto r = ra.row(x);
      rows[x].assign(r.begin(), r.end());
    } else {
      rows[x] = {x};
    }
  }
  const Relation g1 = compose(Relation(f.space_ptr(), std::move(rows)), f);

  const CellSet targets = chk.c_plus - chk.c_minus;
  auto find_y = [&](const CellSet& block) -> std::optional<CellId> {
    std::optional<CellId> hit;
    targets.for_each([&](CellId y) {
      if (hit) return;
      bool near = true;
      block.for_each([&](CellId z) {
        near = near && within_eps(sp.box_distance(y, z), eps);
      });
      if (near) hit = y;
    });
    return hit;
  };

  std::vector<Edge> extra;
  CellSet uncovered = k;
  while (auto seed = uncovered.first()) {
    CellSet block(sp.cell_count());
    uncovered.for_each([&](CellId z) {
      if (within_eps(sp.box_distance(*seed, z), eps / 2)) block.insert(z);
    });
    auto y = find_y(block);
    if (!y) {
      block = CellSet(sp.cell_count(), {*seed});
      y = find_y(block);
    }
    if (!y) {
      const double need = distance_to_set(sp, *seed, targets);
      throw std::invalid_argument("no cell of C+ \\ C- within eps of C± cell " +
                                  std::to_string(*seed) + "; needs eps >= " +
                                  fmt(need));
    }
    const CellId x = *preimage(f, CellSet(sp.cell_count(), {*y})).first();
    block.for_each([&](CellId z) { extra.emplace_back(x, z); });
    out.blocks.push_back({block, *y, x});
    uncovered -= block;
  }

  out.g_hat = unite(g1, Relation::from_edges(f.space_ptr(), extra));
  out.cert = certify_perturbation(f, out.g_hat, c, eps);
  return out;
}

}  // namespace conley
