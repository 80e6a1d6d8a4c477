#include "conley/viability.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace conley {

CellSet plus_viable_core(const Relation& f, const CellSet& c) {
  const Relation fc = restrict(f, c);
  CellSet s = c;
  while (true) {
    CellSet next = s & preimage(fc, s);
    if (next == s) return s;
    s = std::move(next);
  }
}

CellSet minus_viable_core(const Relation& f, const CellSet& c) {
  const Relation fc = restrict(f, c);
  CellSet s = c;
  while (true) {
    CellSet next = s & image(fc, s);
    if (next == s) return s;
    s = std::move(next);
  }
}

namespace {

// Longest F_C path lengths; cells of `infinite` get kInfinite.
std::vector<std::int64_t> longest_paths(const Relation& fc, const CellSet& c,
                                        const CellSet& infinite) {
  std::vector<std::int64_t> out(fc.size(), kUndefined);
  const auto scc = strongly_connected(fc);
  // Components come sink-first, so successors are settled before use.
  for (const auto& comp : scc.members) {
    for (CellId v : comp) {
      if (!c.contains(v)) continue;
      if (infinite.contains(v)) {
        out[v] = kInfinite;
        continue;
      }
      std::int64_t best = 0;
      for (CellId w : fc.row(v)) best = std::max(best, out[w] + 1);
      out[v] = best;
    }
  }
  return out;
}

}  // namespace

ViabilityReport viability_report(const Relation& f, const CellSet& c) {
  ViabilityReport r;
  const Relation fc = restrict(f, c);
  r.c_plus = plus_viable_core(f, c);
  r.c_minus = minus_viable_core(f, c);
  r.c_pm = r.c_plus & r.c_minus;
  r.nu = longest_paths(fc, c, r.c_plus);
  r.nu_bar = longest_paths(inverse(fc), c, r.c_minus);
  r.terminal = c - domain(fc);
  return r;
}

InvariancePredicates invariance_predicates(const Relation& f, const CellSet& a) {
  InvariancePredicates p;
  const CellSet fa = image(f, a);
  p.plus_invariant = fa.is_subset_of(a);
  p.invariant = fa == a;
  p.plus_viable = plus_viable_core(f, a) == a;
  p.minus_viable = minus_viable_core(f, a) == a;
  p.viable = p.plus_viable && p.minus_viable;
  return p;
}

MinimalViableResult minimal_viable_subsets(const Relation& f, const CellSet& c,
                                           std::size_t cycle_cap) {
  MinimalViableResult res;
  const CellSet core = plus_viable_core(f, c) & minus_viable_core(f, c);
  const Relation g = restrict(f, core);
  const std::size_t n = g.size();

  // Simple cycles through their least vertex, by backtracking.
  std::vector<CellSet> cycles;
  std::vector<CellId> path;
  CellSet on_path(n);
  std::size_t found = 0;
  std::size_t work = 0;
  for (CellId s : core.members()) {
    if (res.truncated) break;
    struct Frame {
      CellId v;
      std::size_t next;
    };
    std::vector<Frame> stack{{s, 0}};
    path.assign(1, s);
    on_path.clear();
    on_path.insert(s);
    while (!stack.empty() && !res.truncated) {
      if (++work > 64 * cycle_cap) {
        res.truncated = true;
        break;
      }
      Frame& fr = stack.back();
      auto row = g.row(fr.v);
      if (fr.next == row.size()) {
        on_path.erase(fr.v);
        path.pop_back();
        stack.pop_back();
        continue;
      }
      const CellId w = row[fr.next++];
      if (w == s) {
        cycles.emplace_back(n, std::span<const CellId>(path));
        if (++found >= cycle_cap) res.truncated = true;
      } else if (w > s && !on_path.contains(w)) {
        on_path.insert(w);
        path.push_back(w);
        stack.push_back({w, 0});
      }
    }
  }

  std::sort(cycles.begin(), cycles.end(),
            [](const CellSet& a, const CellSet& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  cycles.erase(std::unique(cycles.begin(), cycles.end()), cycles.end());
  for (const auto& cyc : cycles) {
    bool minimal = true;
    for (const auto& kept : res.sets) {
      if (kept.is_subset_of(cyc)) {
        minimal = false;
        break;
      }
    }
    if (minimal) res.sets.push_back(cyc);
  }
  std::sort(res.sets.begin(), res.sets.end());
  return res;
}

LimitSet omega_limsup(const Relation& f, const CellSet& a) {
  LimitSet out;
  out.domain_not_full = !domain(f).is_full();
  std::map<CellSet, std::size_t> seen;
  std::vector<CellSet> seq;
  CellSet s = a;
  while (true) {
    auto [it, fresh] = seen.emplace(s, seq.size());
    if (!fresh) {
      out.preperiod = it->second;
      out.period = seq.size() - it->second;
      break;
    }
    seq.push_back(s);
    s = image(f, s);
  }
  out.set = CellSet(f.size());
  for (std::size_t k = out.preperiod; k < seq.size(); ++k) out.set |= seq[k];
  return out;
}

LimitSet alpha_limsup(const Relation& f, const CellSet& a) {
  return omega_limsup(inverse(f), a);
}

DerivativeRelation derivative_relation(const Relation& f) {
  DerivativeRelation d{f.edges(), Relation::on_points(0, {})};
  const std::size_t m = d.edge_index.size();
  // First edge index of each source cell.
  std::vector<std::size_t> first(f.size() + 1, 0);
  for (const auto& [x, y] : d.edge_index) ++first[x + 1];
  for (std::size_t i = 0; i < f.size(); ++i) first[i + 1] += first[i];
  std::vector<Edge> links;
  for (std::size_t i = 0; i < m; ++i) {
    const CellId y = d.edge_index[i].second;
    for (std::size_t j = first[y]; j < first[y + 1]; ++j) {
      links.emplace_back(static_cast<CellId>(i), static_cast<CellId>(j));
    }
  }
  d.relation = Relation::on_points(m, links);
  return d;
}

PathEnumeration enumerate_paths(const Relation& f, const CellSet& c,
                                std::size_t n, std::size_t cap) {
  PathEnumeration out;
  const Relation fc = restrict(f, c);
  FinitePath path;
  std::vector<std::size_t> next;
  for (CellId s : c.members()) {
    path.assign(1, s);
    next.assign(1, 0);
    while (!path.empty()) {
      if (path.size() == n + 1) {
        if (out.paths.size() >= cap) {
          out.truncated = true;
          return out;
        }
        out.paths.push_back(path);
        path.pop_back();
        next.pop_back();
        continue;
      }
      auto row = fc.row(path.back());
      if (next.back() == row.size()) {
        path.pop_back();
        next.pop_back();
        continue;
      }
      path.push_back(row[next.back()++]);
      next.push_back(0);
    }
  }
  return out;
}

}  // namespace conley
