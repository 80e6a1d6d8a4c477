#include "conley/relation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <boost/dynamic_bitset.hpp>

namespace conley {

namespace {

using Bits = boost::dynamic_bitset<std::uint64_t>;

void normalize(std::vector<CellId>& r) {
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
}

void require_same(const Relation& a, const Relation& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("relations have different sizes (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

void require_set(const Relation& f, const CellSet& s) {
  if (s.universe() != f.size()) {
    throw std::invalid_argument("cell set does not live on the relation's space");
  }
}

}  // namespace

Relation::Relation(std::shared_ptr<const GridSpace> space)
    : space_(std::move(space)) {
  if (!space_) throw std::invalid_argument("relation needs a space");
  rows_.resize(space_->cell_count());
}

Relation::Relation(std::shared_ptr<const GridSpace> space,
                   std::vector<std::vector<CellId>> rows)
    : space_(std::move(space)), rows_(std::move(rows)) {
  if (!space_) throw std::invalid_argument("relation needs a space");
  if (rows_.size() != space_->cell_count()) {
    throw std::invalid_argument("row count does not match the space");
  }
  for (auto& r : rows_) {
    normalize(r);
    if (!r.empty() && r.back() >= rows_.size()) {
      throw std::out_of_range("edge target " + std::to_string(r.back()) +
                              " out of range");
    }
  }
}

Relation Relation::identity(std::shared_ptr<const GridSpace> space) {
  Relation r(std::move(space));
  for (CellId c = 0; c < r.size(); ++c) r.rows_[c] = {c};
  return r;
}

Relation Relation::full(std::shared_ptr<const GridSpace> space) {
  Relation r(std::move(space));
  std::vector<CellId> all(r.size());
  for (CellId c = 0; c < r.size(); ++c) all[c] = c;
  for (auto& row : r.rows_) row = all;
  return r;
}

Relation Relation::from_edges(std::shared_ptr<const GridSpace> space,
                              std::span<const Edge> edges) {
  const std::size_t n = space->cell_count();
  std::vector<std::vector<CellId>> rows(n);
  for (auto [x, y] : edges) {
    if (x >= n || y >= n) {
      throw std::out_of_range("edge (" + std::to_string(x) + "," +
                              std::to_string(y) + ") out of range");
    }
    rows[x].push_back(y);
  }
  return Relation(std::move(space), std::move(rows));
}

Relation Relation::on_points(std::size_t n, std::span<const Edge> edges) {
  return from_edges(std::make_shared<const GridSpace>(GridSpace::discrete(n)),
                    edges);
}

CellSet Relation::row_set(CellId c) const {
  return CellSet(size(), std::span<const CellId>(rows_.at(c)));
}

bool Relation::contains(CellId x, CellId y) const {
  if (x >= size()) return false;
  const auto& r = rows_[x];
  return std::binary_search(r.begin(), r.end(), y);
}

std::size_t Relation::edge_count() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

std::vector<Edge> Relation::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (CellId x = 0; x < size(); ++x) {
    for (CellId y : rows_[x]) out.emplace_back(x, y);
  }
  return out;
}

bool Relation::is_subset_of(const Relation& other) const {
  require_same(*this, other);
  for (CellId x = 0; x < size(); ++x) {
    const auto& a = rows_[x];
    const auto& b = other.rows_[x];
    if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) return false;
  }
  return true;
}

CellSet image(const Relation& f, const CellSet& a) {
  require_set(f, a);
  CellSet out(f.size());
  a.for_each([&](CellId x) {
    for (CellId y : f.row(x)) out.insert(y);
  });
  return out;
}

CellSet preimage(const Relation& f, const CellSet& b) {
  require_set(f, b);
  CellSet out(f.size());
  for (CellId x = 0; x < f.size(); ++x) {
    for (CellId y : f.row(x)) {
      if (b.contains(y)) {
        out.insert(x);
        break;
      }
    }
  }
  return out;
}

CellSet image_of(const Relation& f, CellId c) { return f.row_set(c); }

Relation compose(const Relation& g, const Relation& f) {
  require_same(g, f);
  const std::size_t n = f.size();
  std::vector<std::vector<CellId>> rows(n);
  Bits seen(n);
  for (CellId x = 0; x < n; ++x) {
    seen.reset();
    for (CellId y : f.row(x)) {
      for (CellId z : g.row(y)) seen.set(z);
    }
    for (auto z = seen.find_first(); z != Bits::npos; z = seen.find_next(z)) {
      rows[x].push_back(static_cast<CellId>(z));
    }
  }
  return Relation(f.space_ptr(), std::move(rows));
}

Relation inverse(const Relation& f) {
  std::vector<std::vector<CellId>> rows(f.size());
  for (CellId x = 0; x < f.size(); ++x) {
    for (CellId y : f.row(x)) rows[y].push_back(x);
  }
  return Relation(f.space_ptr(), std::move(rows));
}

Relation iterate(const Relation& f, int n) {
  if (n < 0) return iterate(inverse(f), -n);
  Relation result = Relation::identity(f.space_ptr());
  Relation base = f;
  // Square-and-multiply; powers of one relation commute.
  while (n > 0) {
    if (n & 1) result = compose(base, result);
    n >>= 1;
    if (n > 0) base = compose(base, base);
  }
  return result;
}

Relation unite(const Relation& f, const Relation& g) {
  require_same(f, g);
  std::vector<std::vector<CellId>> rows(f.size());
  for (CellId x = 0; x < f.size(); ++x) {
    auto a = f.row(x);
    auto b = g.row(x);
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(rows[x]));
  }
  return Relation(f.space_ptr(), std::move(rows));
}

Relation intersect(const Relation& f, const Relation& g) {
  require_same(f, g);
  std::vector<std::vector<CellId>> rows(f.size());
  for (CellId x = 0; x < f.size(); ++x) {
    auto a = f.row(x);
    auto b = g.row(x);
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(rows[x]));
  }
  return Relation(f.space_ptr(), std::move(rows));
}

Relation restrict(const Relation& f, const CellSet& c) {
  require_set(f, c);
  std::vector<std::vector<CellId>> rows(f.size());
  c.for_each([&](CellId x) {
    for (CellId y : f.row(x)) {
      if (c.contains(y)) rows[x].push_back(y);
    }
  });
  return Relation(f.space_ptr(), std::move(rows));
}

Relation with_product(const Relation& f, const CellSet& a, const CellSet& b) {
  require_set(f, a);
  require_set(f, b);
  std::vector<std::vector<CellId>> rows(f.size());
  const auto bm = b.members();
  for (CellId x = 0; x < f.size(); ++x) {
    auto r = f.row(x);
    rows[x].assign(r.begin(), r.end());
    if (a.contains(x)) rows[x].insert(rows[x].end(), bm.begin(), bm.end());
  }
  return Relation(f.space_ptr(), std::move(rows));
}

CellSet star(const Relation& f, const CellSet& v) {
  require_set(f, v);
  CellSet out(f.size());
  for (CellId x = 0; x < f.size(); ++x) {
    auto r = f.row(x);
    if (std::all_of(r.begin(), r.end(), [&](CellId y) { return v.contains(y); })) {
      out.insert(x);
    }
  }
  return out;
}

CellSet star_n(const Relation& f, const CellSet& a, int n) {
  if (n < 1) throw std::invalid_argument("star_n needs n >= 1");
  CellSet s = star(f, a);
  for (int k = 1; k < n; ++k) {
    CellSet next = star(f, a | s);
    if (next == s) break;
    s = std::move(next);
  }
  return s;
}

SccResult strongly_connected(const Relation& f) {
  // Iterative Tarjan.
  const std::size_t n = f.size();
  constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<CellId> stack;
  SccResult res;
  res.component_of.assign(n, kUnset);
  std::uint32_t counter = 0;

  struct Frame {
    CellId v;
    std::size_t next;
  };
  std::vector<Frame> call;
  for (CellId root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& fr = call.back();
      auto row = f.row(fr.v);
      if (fr.next < row.size()) {
        CellId w = row[fr.next++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[fr.v] = std::min(low[fr.v], index[w]);
        }
        continue;
      }
      const CellId v = fr.v;
      if (low[v] == index[v]) {
        const auto id = static_cast<std::uint32_t>(res.members.size());
        std::vector<CellId> comp;
        CellId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          res.component_of[w] = id;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        const bool cyc = comp.size() > 1 || f.contains(v, v);
        res.members.push_back(std::move(comp));
        res.cyclic.push_back(cyc);
      }
      call.pop_back();
      if (!call.empty()) {
        low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  return res;
}

Relation orbit_relation(const Relation& f) {
  const std::size_t n = f.size();
  const auto scc = strongly_connected(f);
  const std::size_t m = scc.members.size();
  // reach[k] = cells reachable from component k by a path of length >= 1.
  std::vector<Bits> reach(m, Bits(n));
  for (std::size_t k = 0; k < m; ++k) {
    Bits& r = reach[k];
    for (CellId v : scc.members[k]) {
      for (CellId w : f.row(v)) {
        r.set(w);
        const auto kw = scc.component_of[w];
        if (kw != k) r |= reach[kw];
      }
    }
    if (scc.cyclic[k]) {
      for (CellId v : scc.members[k]) r.set(v);
    }
  }
  std::vector<std::vector<CellId>> rows(n);
  for (CellId v = 0; v < n; ++v) {
    const Bits& r = reach[scc.component_of[v]];
    for (auto w = r.find_first(); w != Bits::npos; w = r.find_next(w)) {
      rows[v].push_back(static_cast<CellId>(w));
    }
  }
  return Relation(f.space_ptr(), std::move(rows));
}

Relation prolongation_relation(const Relation& f) { return orbit_relation(f); }

Relation generalized_recurrence_relation(const Relation& f) {
  return orbit_relation(f);
}

CellSet forward_reach(const Relation& f, const CellSet& s) {
  CellSet seen(f.size());
  std::vector<CellId> work;
  s.for_each([&](CellId x) {
    for (CellId y : f.row(x)) {
      if (!seen.contains(y)) {
        seen.insert(y);
        work.push_back(y);
      }
    }
  });
  while (!work.empty()) {
    CellId x = work.back();
    work.pop_back();
    for (CellId y : f.row(x)) {
      if (!seen.contains(y)) {
        seen.insert(y);
        work.push_back(y);
      }
    }
  }
  return seen;
}

CellSet backward_reach(const Relation& f, const CellSet& s) {
  return forward_reach(inverse(f), s);
}

CellSet cyclic_set(const Relation& f) {
  CellSet out(f.size());
  for (CellId x = 0; x < f.size(); ++x) {
    if (f.contains(x, x)) out.insert(x);
  }
  return out;
}

CellSet domain(const Relation& f) {
  CellSet out(f.size());
  for (CellId x = 0; x < f.size(); ++x) {
    if (!f.row(x).empty()) out.insert(x);
  }
  return out;
}

CellSet range(const Relation& f) {
  return image(f, CellSet::full(f.size()));
}

StructuralPredicates structural_predicates(const Relation& f) {
  StructuralPredicates p;
  p.domain = domain(f);
  const CellSet all = CellSet::full(f.size());
  p.surjective = p.domain == all && range(f) == all;
  if (!p.surjective) return p;
  // Images are monotone, so a proper A with F(A) = X exists iff some
  // X \ {c} already has full image.
  const Relation inv = inverse(f);
  p.irreducible = true;
  for (CellId c = 0; c < f.size() && p.irreducible; ++c) {
    CellSet rest = all;
    rest.erase(c);
    if (image(f, rest) == all || image(inv, rest) == all) p.irreducible = false;
  }
  return p;
}

}  // namespace conley
