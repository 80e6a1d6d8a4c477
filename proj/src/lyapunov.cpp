#include "conley/lyapunov.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace conley {

std::vector<double> LyapunovField::as_double() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.convert_to<double>());
  return out;
}

namespace {

std::vector<Rational> pair_field_on_step(const Relation& step,
                                         const SccResult& scc,
                                         const AttractorRepellerPair& pair) {
  const std::size_t n = step.size();
  const CellSet& a = pair.attractor;
  const CellSet& b = pair.repeller;
  if (a.intersects(b)) throw std::invalid_argument("attractor meets repeller");
  if (!image(step, a).is_subset_of(a)) {
    throw std::invalid_argument("attractor is not forward invariant");
  }
  if (!b.is_subset_of(preimage(step, b))) {
    throw std::invalid_argument("repeller is not backward viable");
  }

  const std::size_t m = scc.members.size();
  std::vector<std::int64_t> height(m, -1);
  std::int64_t h_max = 0;
  // Sink-first order: successors are settled before their predecessors.
  for (std::size_t k = 0; k < m; ++k) {
    const CellId rep = scc.members[k].front();
    if (a.contains(rep) || b.contains(rep)) continue;
    if (scc.cyclic[k]) {
      throw std::invalid_argument("recurrent cell outside attractor and repeller");
    }
    std::int64_t h = 0;
    for (CellId v : scc.members[k]) {
      for (CellId w : step.row(v)) {
        const auto kw = scc.component_of[w];
        if (kw != k && height[kw] >= 0) h = std::max(h, height[kw] + 1);
      }
    }
    height[k] = h;
    h_max = std::max(h_max, h);
  }
  std::vector<Rational> field(n);
  for (CellId c = 0; c < n; ++c) {
    if (a.contains(c)) {
      field[c] = 1;
    } else if (b.contains(c)) {
      field[c] = 0;
    } else {
      const auto h = height[scc.component_of[c]];
      field[c] = Rational(h_max + 1 - h, h_max + 2);
    }
  }
  return field;
}

}  // namespace

std::vector<Rational> pair_lyapunov(const Relation& f,
                                    const AttractorRepellerPair& pair, Eps eps) {
  const Relation step = chain_step(f, eps);
  return pair_field_on_step(step, strongly_connected(step), pair);
}

LyapunovField complete_lyapunov(const Relation& f, const MorseFamily& family) {
  LyapunovField out;
  const Relation& step = family.chain.step;
  const auto scc = strongly_connected(step);
  out.values.assign(f.size(), Rational(0));
  Rational w(2, 3);
  for (const auto& pair : family.pairs) {
    out.pair_fields.push_back(pair_field_on_step(step, scc, pair));
    out.weights.push_back(w);
    const auto& pf = out.pair_fields.back();
    for (std::size_t c = 0; c < f.size(); ++c) out.values[c] += w * pf[c];
    w /= 3;
  }
  return out;
}

LyapunovField complete_lyapunov(const Relation& f, Eps eps) {
  return complete_lyapunov(f, ar_family(f, eps));
}

LyapunovCheck verify_lyapunov(const Relation& f, Eps eps,
                              const std::vector<Rational>& field) {
  if (field.size() != f.size()) throw std::invalid_argument("field size mismatch");
  LyapunovCheck out;
  const ChainAnalysis ca = chain_analysis(f, eps);
  out.critical_set = CellSet(f.size());
  for (const auto& [x, y] : ca.step.edges()) {
    if (field[y] < field[x]) {
      out.violations.emplace_back(x, y);
    } else if (field[y] == field[x]) {
      out.critical_set.insert(x);
      out.critical_set.insert(y);
    }
  }
  out.monotone = out.violations.empty();
  std::map<Rational, int> value_to_component;
  out.separates_components = true;
  for (std::size_t k = 0; k < ca.components.size(); ++k) {
    const CellSet& comp = ca.components[k];
    const Rational v = field[*comp.first()];
    bool constant = true;
    comp.for_each([&](CellId c) { constant = constant && field[c] == v; });
    if (!constant || !value_to_component.emplace(v, static_cast<int>(k)).second) {
      out.separates_components = false;
    }
  }
  out.critical_is_recurrent = out.critical_set == ca.recurrent;
  out.pass = out.monotone && out.separates_components && out.critical_is_recurrent;
  return out;
}

Superlevel sublevel_inward(const Relation& f, const std::vector<Rational>& field,
                           const Rational& a) {
  if (field.size() != f.size()) throw std::invalid_argument("field size mismatch");
  Superlevel out{CellSet(f.size()), false};
  for (CellId c = 0; c < f.size(); ++c) {
    if (field[c] >= a) out.set.insert(c);
  }
  out.inward = is_inward(f, out.set);
  return out;
}

}  // namespace conley
