// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
// Every check is recomputed here by an independent oracle where one exists.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "conley/chain.hpp"
#include "conley/conley_index.hpp"
#include "conley/hybrid.hpp"
#include "conley/lyapunov.hpp"
#include "conley/morse.hpp"
#include "conley/perturbation.hpp"
#include "conley/system_io.hpp"
#include "support.hpp"

using namespace conley;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

/// Collects the first few failure messages of a criterion.
struct Log {
  int failures = 0;
  std::string first;
  void fail(const std::string& what) {
    if (failures++ == 0) first = what;
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

Relation random_line_relation(std::mt19937_64& rng, std::uint32_t n, double p) {
  return Relation::from_edges(line_space(0, n, n), random_relation(rng, n, p).edges());
}

bool rel_subset(const Relation& a, const Relation& b) {
  for (const auto& [x, y] : a.edges()) {
    if (!b.contains(x, y)) return false;
  }
  return true;
}

Matrix matrix_inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix out(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) out[y][x] = m[x][y];
  return out;
}

/// {x : every successor of x lies in v}, straight from the matrix.
CellSet matrix_star(const Matrix& m, const CellSet& v) {
  CellSet out(m.size());
  for (CellId x = 0; x < m.size(); ++x) {
    bool inside = true;
    for (CellId y = 0; y < m.size(); ++y) inside = inside && (!m[x][y] || v.contains(y));
    if (inside) out.insert(x);
  }
  return out;
}

CellSet matrix_image(const Matrix& m, const CellSet& a) {
  CellSet out(m.size());
  a.for_each([&](CellId x) {
    for (CellId y = 0; y < m.size(); ++y)
      if (m[x][y]) out.insert(y);
  });
  return out;
}

/// Cells of C starting a path of exactly k edges inside C.
CellSet has_path_in(const Relation& f, const CellSet& c, int k) {
  const std::size_t n = f.size();
  std::vector<bool> ok(n);
  for (CellId x = 0; x < n; ++x) ok[x] = c.contains(x);
  for (int step = 0; step < k; ++step) {
    std::vector<bool> next(n, false);
    for (CellId x = 0; x < n; ++x) {
      if (!c.contains(x)) continue;
      for (CellId y : f.row(x)) next[x] = next[x] || (c.contains(y) && ok[y]);
    }
    ok = next;
  }
  CellSet out(n);
  for (CellId x = 0; x < n; ++x)
    if (ok[x]) out.insert(x);
  return out;
}

/// G ⊆ V_eps ∘ F by direct search.
bool within_of(const Relation& g, const Relation& f, double eps) {
  const GridSpace& sp = f.space();
  for (const auto& [x, y] : g.edges()) {
    bool near = false;
    for (CellId z : f.row(x)) near = near || within_eps(sp.box_distance(z, y), eps);
    if (!near) return false;
  }
  return true;
}

/// Independent re-verification of a perturbation certificate.
void recheck_certificate(Log& log, const std::string& tag, const Relation& f,
                         const Relation& g, const CellSet& c, double eps,
                         const PerturbationCertificate& cert, bool want_onto) {
  const std::size_t n = f.size();
  log.expect(within_of(g, f, eps) && cert.containment_fwd, tag + ": G not in V_eps∘F");
  log.expect(within_of(f, g, eps) && cert.containment_bwd, tag + ": F not in V_eps∘G");
  bool full = true, onto = true;
  std::vector<bool> hit(n, false);
  for (CellId x = 0; x < n; ++x) {
    full = full && !g.row(x).empty();
    for (CellId y : g.row(x)) hit[y] = true;
  }
  for (CellId y = 0; y < n; ++y) onto = onto && hit[y];
  log.expect(full && cert.full_domain, tag + ": Dom(G) != X");
  if (want_onto) log.expect(onto && cert.surjective, tag + ": G not surjective");
  // Least N with no path of N edges inside C.
  std::optional<std::size_t> least;
  for (std::size_t k = 0; k <= c.size() + 1; ++k) {
    if (has_path_in(g, c, static_cast<int>(k)).empty()) {
      least = k;
      break;
    }
  }
  log.expect(least.has_value(), tag + ": (G_C)^N never empty");
  log.expect(least == cert.annihilation_n, tag + ": annihilation index differs");
}

/// Pairs (t, n) comparable under the product order and no lattice point of
/// the bounding rectangle can join without breaking comparability.
bool maximal_chain_oracle(const std::vector<HybridTime>& pts) {
  auto le = [](const HybridTime& a, const HybridTime& b) {
    return a.first <= b.first && a.second <= b.second;
  };
  for (const auto& a : pts)
    for (const auto& b : pts)
      if (!le(a, b) && !le(b, a)) return false;
  std::uint32_t tmax = 0, nmax = 0;
  for (const auto& [t, n] : pts) {
    tmax = std::max(tmax, t);
    nmax = std::max(nmax, n);
  }
  const std::set<HybridTime> in(pts.begin(), pts.end());
  for (std::uint32_t t = 0; t <= tmax; ++t)
    for (std::uint32_t n = 0; n <= nmax; ++n) {
      const HybridTime q{t, n};
      if (in.count(q)) continue;
      bool blocked = false;
      for (const auto& a : pts) blocked = blocked || (!le(a, q) && !le(q, a));
      if (!blocked) return false;
    }
  return in.count({0, 0}) == 1;
}

/// Hybrid move legality, checked move by move.
bool path_oracle_ok(const HybridSystem& hs, const HybridPath& p) {
  CellId at = p.start;
  for (const auto& m : p.moves) {
    if (m.kind == MoveKind::flow) {
      if (!hs.c.contains(at) || !hs.c.contains(m.to) || !hs.sf.step.contains(at, m.to))
        return false;
    } else if (!hs.jump.contains(at, m.to)) {
      return false;
    }
    at = m.to;
  }
  return true;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1. Relation calculus laws.
void relation_laws(Log& log) {
  std::mt19937_64 rng(1001);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + t % 12;
    const double p = 0.05 + 0.05 * (t % 6);
    const Relation f = random_relation(rng, n, p);
    const Relation g = random_relation(rng, n, p);
    const Matrix mf = to_matrix(f), mg = to_matrix(g);
    const std::string at = "relation " + std::to_string(t);
    log.expect(to_matrix(compose(g, f)) == matrix_compose(mg, mf), at + ": G∘F");
    log.expect(inverse(compose(g, f)) == compose(inverse(f), inverse(g)), at + ": (G∘F)⁻¹");
    log.expect(to_matrix(inverse(f)) == matrix_inverse(mf), at + ": F⁻¹");
    log.expect(to_matrix(orbit_relation(f)) == floyd_warshall(mf), at + ": orbit");
    for (int s = 0; s < 4; ++s) {
      const CellSet c = random_set(rng, n, 0.5);
      log.expect(star(f, c) == matrix_star(mf, c), at + ": F*");
      // X \ F*(X \ C) = F⁻¹(C).
      log.expect(star(f, c.complement()).complement() == matrix_image(matrix_inverse(mf), c),
                 at + ": star duality");
      log.expect(star(f, star(g, c)) == star(compose(g, f), c), at + ": F*(G*(C))");
    }
  }
}

// 2. Tower F ⊆ OF ⊆ chain(eps) and monotone in eps.
void tower(Log& log) {
  std::mt19937_64 rng(1001);
  const std::vector<Eps> ladder{Eps::strict(), Eps::of(0), Eps::of(0.5), Eps::of(1),
                                Eps::of(2.5)};
  for (int t = 0; t < 500; ++t) {
    const std::uint32_t n = 1 + t % 12;
    const Relation f = random_line_relation(rng, n, 0.05 + 0.05 * (t % 6));
    const Relation of = orbit_relation(f);
    const std::string at = "relation " + std::to_string(t);
    log.expect(rel_subset(f, of), at + ": F ⊄ OF");
    std::optional<Relation> prev;
    for (const Eps& e : ladder) {
      const Relation ch = chain_analysis(f, e).chain_relation;
      log.expect(rel_subset(of, ch), at + ": OF ⊄ chain");
      if (prev) log.expect(rel_subset(*prev, ch), at + ": chain not monotone in eps");
      prev = ch;
    }
  }
}

// 3. Restriction–star equivalence, all C.
void restriction_star(Log& log) {
  std::mt19937_64 rng(1003);
  for (int t = 0; t < 24; ++t) {
    const std::size_t n = 3 + t % 8;
    const Relation f = random_relation(rng, n, 0.1 + 0.05 * (t % 5));
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
      const CellSet c = subset_from_mask(n, mask);
      for (int k = 1; k <= 4; ++k) {
        const CellSet dead = c - has_path_in(f, c, k);
        if (dead != (c & star_n(f, c.complement(), k))) {
          log.fail("relation " + std::to_string(t) + " mask " + std::to_string(mask));
        }
      }
    }
  }
}

std::vector<std::pair<Relation, Eps>> ar_corpus() {
  std::mt19937_64 rng(1004);
  const std::vector<Eps> scales{Eps::strict(), Eps::of(0), Eps::of(1)};
  std::vector<std::pair<Relation, Eps>> out;
  for (int t = 0; t < 200; ++t) {
    out.emplace_back(random_line_relation(rng, 1 + t % 10, 0.15), scales[t % 3]);
  }
  return out;
}

// 4. Attractor–repeller soundness.
void ar_soundness(Log& log) {
  int t = 0;
  for (const auto& [f, eps] : ar_corpus()) {
    const std::string at = "relation " + std::to_string(t++);
    const MorseFamily fam = ar_family(f, eps);
    const Matrix step = to_matrix(fam.chain.step);
    const Matrix chain = floyd_warshall(step);
    CellSet recurrent(f.size());
    for (CellId x = 0; x < f.size(); ++x)
      if (chain[x][x]) recurrent.insert(x);
    log.expect(recurrent == fam.chain.recurrent, at + ": recurrent set");
    for (const auto& p : fam.pairs) {
      log.expect(matrix_image(step, p.attractor) == p.attractor, at + ": attractor invariance");
      log.expect(matrix_image(matrix_inverse(step), p.repeller) == p.repeller,
                 at + ": repeller invariance");
      log.expect(!p.attractor.intersects(p.repeller), at + ": A ∩ B");
      log.expect(recurrent.is_subset_of(p.attractor | p.repeller), at + ": coverage");
    }
    // Signatures: memberships tell every pair of components apart.
    const auto& comps = fam.chain.components;
    std::set<std::vector<bool>> sigs;
    for (const auto& comp : comps) {
      std::vector<bool> sig;
      for (const auto& p : fam.pairs) sig.push_back(p.attractor.contains(*comp.first()));
      sigs.insert(sig);
    }
    log.expect(sigs.size() == comps.size() && signatures_injective(fam), at + ": signatures");
  }
}

void lyapunov_on(Log& log, const std::string& tag, const Relation& f, Eps eps) {
  const LyapunovField field = complete_lyapunov(f, eps);
  const LyapunovCheck chk = verify_lyapunov(f, eps, field.values);
  log.expect(chk.pass, tag + ": verify_lyapunov");
  // Recheck the three clauses against the chain oracle.
  const ChainAnalysis ca = chain_analysis(f, eps);
  const Matrix chain = floyd_warshall(to_matrix(ca.step));
  const auto& v = field.values;
  for (const auto& [x, y] : ca.step.edges()) {
    const bool same = chain[x][y] && chain[y][x];
    if (v[y] < v[x] || (v[y] == v[x]) != same) {
      log.fail(tag + ": field at edge " + std::to_string(x) + "->" + std::to_string(y));
      return;
    }
  }
  for (CellId x = 0; x < f.size(); ++x)
    for (CellId y = 0; y < f.size(); ++y) {
      if (!chain[x][x] || !chain[y][y]) continue;
      const bool same = chain[x][y] && chain[y][x];
      if ((v[x] == v[y]) != same) {
        log.fail(tag + ": component separation");
        return;
      }
    }
}

// 5. Complete Lyapunov functions verify.
void lyapunov(Log& log) {
  int t = 0;
  for (const auto& [f, eps] : ar_corpus()) lyapunov_on(log, "relation " + std::to_string(t++), f, eps);
  lyapunov_on(log, "DBL64", dbl(64), Eps::strict());
  lyapunov_on(log, "SDL32", sdl(), Eps::strict());
}

// 6. Chain bound for restrictions.
void chain_bound(Log& log) {
  std::mt19937_64 rng(1006);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t n = 1 + t % 10;
    const Relation f = random_line_relation(rng, n, 0.2);
    const CellSet c = random_set(rng, n, 0.7);
    const ChainBoundCheck chk = restricted_chain_bound_check(f, c);
    const Matrix orbit = floyd_warshall(to_matrix(restrict(f, c)));
    const Matrix chain = floyd_warshall(to_matrix(restricted_chain_step(f, c, Eps::strict())));
    const CellSet plus = brute_plus_core(f, c), minus = brute_minus_core(f, c);
    bool bound = true;
    for (CellId x = 0; x < n; ++x)
      for (CellId y = 0; y < n; ++y)
        if (chain[x][y]) bound = bound && (orbit[x][y] || (plus.contains(x) && minus.contains(y)));
    log.expect(chk.pass && bound, "instance " + std::to_string(t));
  }
}

// 7. Index pairs: validation, minimality, quotient on the saddle.
void index_pairs(Log& log) {
  std::mt19937_64 rng(1007);
  int checked = 0;
  for (int t = 0; t < 4000 && checked < 150; ++t) {
    const std::uint32_t n = 4 + t % 9;
    const Relation f = random_line_relation(rng, n, 0.12);
    const CellId a = static_cast<CellId>(rng() % (n - 2));
    const CellId b = std::min<CellId>(n - 1, a + 2 + static_cast<CellId>(rng() % 6));
    CellSet p1(n);
    for (CellId x = a; x <= b; ++x) p1.insert(x);
    if (!isolating_checks(f, p1).index_type) continue;
    ++checked;
    const IndexPair pair = build_index_pair(f, p1);
    const std::string at = "instance " + std::to_string(t);
    log.expect(validate_index_pair(f, pair).pass, at + ": validation");
    // Oracle for i'–iv', then every strictly smaller P2 must fail it.
    const CellSet inner = set_interior(f.space(), p1);
    const CellSet pm = brute_plus_core(f, p1) & brute_minus_core(f, p1);
    const CellSet delta = f_boundary(f, p1).delta;
    const Relation fp = restrict(f, p1);
    auto valid = [&](const CellSet& p2) {
      return p2.is_subset_of(p1) && image(fp, p2).is_subset_of(p2) &&
             pm.is_subset_of(inner - p2) && delta.is_subset_of(p2);
    };
    log.expect(valid(pair.p2), at + ": oracle rejects built pair");
    const std::vector<CellId> members = pair.p2.members();
    for (std::uint64_t m = 0; m + 1 < (1ULL << members.size()); ++m) {
      CellSet smaller(n);
      for (std::size_t i = 0; i < members.size(); ++i)
        if (m >> i & 1) smaller.insert(members[i]);
      log.expect(!valid(smaller), at + ": smaller P2 valid");
    }
  }
  log.expect(checked >= 100, "too few index-type instances: " + std::to_string(checked));

  const Relation s = sdl();
  const CellSet sq = central_square(s.space(), 0.25);
  const ConleyReport r = conley_analysis(s, sq);
  if (!r.pair || !r.quotient) {
    log.fail("SDL: no index pair");
    return;
  }
  log.expect(r.validation->pass, "SDL: validation");
  const QuotientRelation& q = *r.quotient;
  log.expect(q.star_attractor, "SDL: star is not an attractor with dual (P1)₊");
  // The dual repeller, recomputed: cells of P1 \ P2 never forced into the star.
  const CellSet plus = brute_plus_core(s, sq);
  CellSet repeller(s.size() + 1);
  plus.for_each([&](CellId c) { repeller.insert(c); });
  log.expect(q.dual_repeller == repeller, "SDL: dual repeller != (P1)₊");
  const CellSet star_only(s.size() + 1, {q.star});
  log.expect(matrix_image(to_matrix(q.relation), star_only) == star_only, "SDL: star not fixed");
}

// 8. Anomalous perturbations.
void perturbations(Log& log) {
  const Relation d = dbl(64);
  const std::vector<double> lo{-0.5}, hi{0.5};
  const CellSet c = d.space().cells_inside(lo, hi);
  const RepellerElimination r = eliminate_repeller(d, c, 0.5);
  log.expect(r.cert.holds(), "DBL: certificate does not hold");
  recheck_certificate(log, "DBL", d, r.g, c, 0.5, r.cert, false);

  const Relation s = sdl("saddle_onto");
  const CellSet sq = central_square(s.space(), 0.25);
  const SaddleElimination e = eliminate_saddle(s, sq, 0.5);
  log.expect(e.cert.holds() && e.cert.surjective, "SDL: certificate does not hold");
  recheck_certificate(log, "SDL", s, e.g_hat, sq, 0.5, e.cert, true);
}

// 9. Robust isolation.
void robust(Log& log) {
  const Relation s = sdl();
  const CellSet sq = central_square(s.space(), 0.5);
  const std::vector<Eps> ladder{Eps::of(0.25),    Eps::of(0.125), Eps::of(0.0625),
                                Eps::of(0.03125), Eps::of(0),     Eps::strict()};
  const RobustnessResult r = robust_isolation(s, sq, ladder);
  if (!r.eps_star) {
    log.fail("no eps on the ladder isolates");
    return;
  }
  const Relation big = chain_step(s, *r.eps_star, ChainMode::two_sided);
  std::mt19937_64 rng(1009);
  std::uniform_real_distribution<double> keep_p(0.05, 1.0);
  for (int t = 0; t < 50; ++t) {
    std::bernoulli_distribution keep(keep_p(rng));
    std::vector<Edge> kept;
    for (const auto& e : big.edges())
      if (keep(rng)) kept.push_back(e);
    const Relation f1 = Relation::from_edges(s.space_ptr(), kept);
    const CellSet pm = brute_plus_core(f1, sq) & brute_minus_core(f1, sq);
    log.expect(pm.is_subset_of(r.u) && pm.is_subset_of(set_interior(s.space(), sq)),
               "sample " + std::to_string(t));
  }
}

// 10. Spanning bounds on the cycler.
void spanning(Log& log) {
  const HybridSystem hs = cycler();
  const std::uint32_t unit = hs.sf.steps_per_unit;
  const Relation h = associated_relation(hs);
  std::vector<HybridPath> pool;
  for (const auto& p : enumerate_hybrid_paths(hs, CellSet::full(4), 8 * unit).paths)
    if (path_length_ticks(hs, p) >= unit) pool.push_back(p);
  std::mt19937_64 rng(1010);
  if (pool.size() < 500) log.fail("only " + std::to_string(pool.size()) + " paths");
  std::shuffle(pool.begin(), pool.end(), rng);
  for (std::size_t i = 0; i < std::min<std::size_t>(500, pool.size()); ++i) {
    const HybridPath& p = pool[i];
    const std::uint32_t len = p.ticks() + unit * p.jumps();
    const FinitePath orbit = span_decomposition(hs, p);
    const std::size_t k = orbit.size() - 1;
    bool ok = path_oracle_ok(hs, p) && k * unit <= len && len <= 3 * k * unit &&
              orbit.front() == p.start && orbit.back() == p.end();
    for (std::size_t j = 0; j + 1 < orbit.size(); ++j) ok = ok && h.contains(orbit[j], orbit[j + 1]);
    log.expect(ok, "path " + std::to_string(i));
  }
  for (int i = 0; i < 500; ++i) {
    FinitePath orbit{static_cast<CellId>(rng() % 4)};
    const int steps = 1 + i % 8;
    for (int s = 0; s < steps; ++s) {
      const auto row = h.row(orbit.back());
      orbit.push_back(row[rng() % row.size()]);
    }
    const HybridPath p = build_spanning_path(hs, orbit);
    const std::size_t k = orbit.size() - 1;
    const std::uint32_t len = p.ticks() + unit * p.jumps();
    log.expect(path_oracle_ok(hs, p) && p.start == orbit.front() && p.end() == orbit.back() &&
                   k * unit <= len && len <= 3 * k * unit,
               "orbit " + std::to_string(i));
  }
}

void sandwich_on(Log& log, const std::string& tag, const HybridSystem& hs,
                 const std::vector<Eps>& ladder) {
  const Relation h = associated_relation(hs);
  const Relation teel = teel_relation(hs);
  const Relation upper = unite(h, unite(iterate(h, 2), iterate(h, 3)));
  log.expect(rel_subset(h, teel), tag + ": H ⊄ H̃");
  log.expect(rel_subset(teel, upper), tag + ": H̃ ⊄ H ∪ H² ∪ H³");
  for (const Eps& e : ladder) {
    const ChainAnalysis a = chain_analysis(h, e);
    const ChainAnalysis b = chain_analysis(teel, e);
    log.expect(a.chain_relation == b.chain_relation && a.recurrent == b.recurrent &&
                   a.components == b.components,
               tag + ": chains differ at eps " + eps_to_json(e).dump());
  }
}

// 11. Teel sandwich and chain equality.
void teel(Log& log) {
  const std::vector<Eps> ladder{Eps::of(2), Eps::of(1), Eps::of(0.5), Eps::of(0), Eps::strict()};
  sandwich_on(log, "cycler", cycler(), ladder);
  std::mt19937_64 rng(1011);
  sandwich_on(log, "random", random_hybrid(rng, 10, 2), ladder);
}

// 12. Hausdorff metric axioms.
void hausdorff(Log& log) {
  auto sp = line_space(0, 5, 5);
  const std::size_t n = 5;
  std::vector<CellSet> sets;
  for (std::uint64_t m = 1; m < (1ULL << n); ++m) sets.push_back(subset_from_mask(n, m));
  auto oracle = [](const CellSet& a, const CellSet& b) {
    // Centers sit at i + 0.5; one-sided distances over center pairs.
    auto one = [](const CellSet& s, const CellSet& t) {
      double worst = 0;
      s.for_each([&](CellId x) {
        double best = 1e9;
        t.for_each([&](CellId y) { best = std::min(best, std::abs(double(x) - double(y))); });
        worst = std::max(worst, best);
      });
      return worst;
    };
    return std::max(one(a, b), one(b, a));
  };
  const std::size_t m = sets.size();
  std::vector<std::vector<double>> d(m, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      d[i][j] = hausdorff_distance(*sp, sets[i], sets[j]);
      log.expect(d[i][j] == oracle(sets[i], sets[j]), "oracle mismatch");
      log.expect((d[i][j] == 0) == (i == j), "identity of indiscernibles");
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      log.expect(d[i][j] == d[j][i], "symmetry");
      for (std::size_t k = 0; k < m; ++k)
        if (d[i][k] > d[i][j] + d[j][k] + 1e-12) log.fail("triangle inequality");
    }
  const CellSet none(n);
  log.expect(hausdorff_distance(*sp, none, none) == 0, "d(∅, ∅)");
  for (const auto& s : sets) {
    log.expect(hausdorff_distance(*sp, none, s) == sp->diameter() + 1, "d(∅, T)");
    log.expect(hausdorff_distance(*sp, s, none) == sp->diameter() + 1, "d(T, ∅)");
  }
}

// 13. Hybrid time domains on the Δ = 0.5 lattice.
void time_domains(Log& log) {
  // One cell that may always flow and always jump: its paths realize every
  // staircase in the (t, n) lattice.
  auto sp = line_space(0, 1, 1);
  const std::vector<Edge> loop{{0, 0}};
  const HybridSystem hs = make_hybrid(make_semiflow(Relation::from_edges(sp, loop), 2),
                                      sp->full_set(), Relation::from_edges(sp, loop));
  const std::uint32_t tmax = 6, nmax = 3;
  std::set<std::vector<HybridTime>> seen;
  for (const auto& p : enumerate_hybrid_paths(hs, sp->full_set(), tmax + 2 * nmax).paths) {
    if (p.ticks() > tmax || p.jumps() > nmax) continue;
    const std::vector<HybridTime> pts = domain_points(p);
    seen.insert(pts);
    const HybridTimeDomain dom = time_domain(p);
    log.expect(valid_time_domain(dom), "invalid time domain");
    log.expect(maximal_chain_oracle(pts), "not a maximal chain");
    log.expect(pts.back() == HybridTime{p.ticks(), p.jumps()}, "domain end");
    // Anchors are the corners of the staircase.
    std::vector<HybridTime> corners{pts.front()};
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
      const bool turn = (pts[i].first - pts[i - 1].first) != (pts[i + 1].first - pts[i].first);
      if (turn) corners.push_back(pts[i]);
    }
    if (pts.size() > 1) corners.push_back(pts.back());
    log.expect(dom.anchors == corners, "anchors are not the corners");
  }
  // Every staircase ending in the rectangle: sum of binomials C(t + n, n).
  std::size_t want = 0;
  for (std::uint32_t t = 0; t <= tmax; ++t)
    for (std::uint32_t n = 0; n <= nmax; ++n) {
      std::size_t c = 1;
      for (std::uint32_t i = 1; i <= n; ++i) c = c * (t + i) / i;
      want += c;
    }
  log.expect(seen.size() == want,
             "enumerated " + std::to_string(seen.size()) + " of " + std::to_string(want));
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 14. CLI determinism and relation round trip.
void cli(Log& log) {
  const fs::path out = fs::temp_directory_path() / "conley_acceptance";
  fs::remove_all(out);
  std::vector<fs::path> fixtures;
  for (const auto& e : fs::directory_iterator(FIXTURE_DIR))
    if (e.path().extension() == ".json") fixtures.push_back(e.path());
  std::sort(fixtures.begin(), fixtures.end());
  for (const auto& fx : fixtures) {
    const std::string stem = fx.stem().string();
    const fs::path a = out / (stem + "_a"), b = out / (stem + "_b");
    const int ra = run_cli("analyze --spec " + fx.string() + " --out-dir " + a.string());
    const int rb = run_cli("analyze --spec " + fx.string() + " --out-dir " + b.string());
    log.expect(ra == 0 && rb == 0, stem + ": exit codes " + std::to_string(ra) + "/" +
                                       std::to_string(rb));
    const std::string ja = slurp(a / "report.json"), jb = slurp(b / "report.json");
    log.expect(!ja.empty() && ja == jb, stem + ": report bodies differ");
    if (ja.empty()) continue;

    const SystemSpec spec = load_spec(fx);
    const Json body = Json::parse(ja);
    const Json& rel = body["system"]["relation"];
    const Relation back = relation_from_json(rel);
    log.expect(back == spec.relation, stem + ": relation section does not round trip");
    log.expect(relation_to_json(back) == rel, stem + ": relation json not canonical");
    if (spec.jump) {
      log.expect(relation_from_json(body["system"]["jump"]) == *spec.jump,
                 stem + ": jump section does not round trip");
    }
  }
  log.expect(!fixtures.empty(), "no fixtures");
}

struct Criterion {
  int id;
  const char* name;
  /// Wall-clock limit in seconds; 0 when the criterion has none.
  double limit;
  std::function<void(Log&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "relation calculus laws", 5, relation_laws},
      {2, "tower and eps monotonicity", 5, tower},
      {3, "restriction-star equivalence", 0, restriction_star},
      {4, "attractor-repeller soundness", 0, ar_soundness},
      {5, "complete Lyapunov verification", 30, lyapunov},
      {6, "restricted chain bound", 0, chain_bound},
      {7, "index pairs and quotient", 30, index_pairs},
      {8, "anomalous perturbation certificates", 60, perturbations},
      {9, "robust isolation", 30, robust},
      {10, "hybrid spanning bounds", 10, spanning},
      {11, "Teel sandwich and chain equality", 0, teel},
      {12, "Hausdorff metric", 0, hausdorff},
      {13, "hybrid time domains", 0, time_domains},
      {14, "CLI determinism and round trip", 0, cli},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Log log;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(log);
    } catch (const std::exception& e) {
      log.fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && secs > c.limit) {
      log.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit) + " s");
    }
    const bool pass = log.failures == 0;
    failed += !pass;
    std::printf("%s %2d %-38s %8.3f s", pass ? "PASS" : "FAIL", c.id, c.name, secs);
    if (c.limit > 0) std::printf(" (limit %.0f s)", c.limit);
    if (!pass) std::printf("  [%d failures; first: %s]", log.failures, log.first.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
