#include "conley/system_io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "conley/perturbation.hpp"
#include "conley/samplers.hpp"

namespace conley {

namespace {

const std::set<std::string> kKinds{"relation", "sampled_map", "semiflow", "hybrid"};
const std::vector<std::string> kAnalysisOrder{"chain",    "morse",  "lyapunov", "conley",
                                              "perturb",  "semiflow", "hybrid", "paths"};

std::string at_key(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at_index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SpecError(path.empty() ? "$" : path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SpecError(at_key(path, key), "missing field");
  return *it;
}

const Json* optional_field(const Json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SpecError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SpecError(path, "expected a finite number");
  return v;
}

std::uint64_t as_count(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    throw SpecError(path, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SpecError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> as_numbers(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SpecError(path, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], at_index(path, i)));
  return out;
}

CellId as_cell(const Json& j, const std::string& path, std::size_t n) {
  const auto v = as_count(j, path);
  if (v >= n) throw SpecError(path, "cell " + std::to_string(v) + " out of range");
  return static_cast<CellId>(v);
}

Eps parse_eps(const Json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "strict") return Eps::strict();
    throw SpecError(path, "expected a number or \"strict\"");
  }
  const double v = as_number(j, path);
  if (v < 0) throw SpecError(path, "eps must be >= 0");
  return Eps::of(v);
}

double eps_rank(Eps e) { return e.strict_identity ? -1.0 : e.value; }

std::shared_ptr<const GridSpace> parse_grid(const Json& j, const std::string& path) {
  if (const Json* pts = optional_field(j, "points")) {
    const auto n = as_count(*pts, at_key(path, "points"));
    if (n == 0) throw SpecError(at_key(path, "points"), "need at least one point");
    return std::make_shared<GridSpace>(GridSpace::discrete(n));
  }
  auto lower = as_numbers(require(j, "lower", path), at_key(path, "lower"));
  auto upper = as_numbers(require(j, "upper", path), at_key(path, "upper"));
  const Json& div = require(j, "divisions", path);
  if (!div.is_array()) throw SpecError(at_key(path, "divisions"), "expected an array");
  std::vector<std::uint32_t> divisions;
  for (std::size_t i = 0; i < div.size(); ++i) {
    const auto d = as_count(div[i], at_index(at_key(path, "divisions"), i));
    if (d == 0 || d > (1u << 16)) {
      throw SpecError(at_index(at_key(path, "divisions"), i), "divisions must be in 1..65536");
    }
    divisions.push_back(static_cast<std::uint32_t>(d));
  }
  if (lower.empty() || lower.size() != upper.size() || lower.size() != divisions.size()) {
    throw SpecError(path, "lower, upper and divisions need one equal nonzero length");
  }
  try {
    return std::make_shared<GridSpace>(std::move(lower), std::move(upper), std::move(divisions));
  } catch (const std::exception& e) {
    throw SpecError(path, e.what());
  }
}

CellSet parse_set(const Json& j, const std::string& path, const GridSpace& space) {
  const std::size_t n = space.cell_count();
  if (j.is_string()) {
    if (j.get<std::string>() == "all") return space.full_set();
    throw SpecError(path, "expected \"all\", a cell list or a box");
  }
  if (j.is_array()) {
    CellSet s(n);
    for (std::size_t i = 0; i < j.size(); ++i) s.insert(as_cell(j[i], at_index(path, i), n));
    return s;
  }
  if (j.is_object()) {
    const Json& box = require(j, "box", path);
    const std::string bp = at_key(path, "box");
    if (space.is_discrete()) throw SpecError(bp, "boxes need a grid space");
    const auto lo = as_numbers(require(box, "lower", bp), at_key(bp, "lower"));
    const auto hi = as_numbers(require(box, "upper", bp), at_key(bp, "upper"));
    if (lo.size() != space.dim() || hi.size() != space.dim()) {
      throw SpecError(bp, "box dimension does not match the grid");
    }
    return space.cells_inside(lo, hi);
  }
  throw SpecError(path, "expected \"all\", a cell list or a box");
}

Relation parse_relation_payload(const Json& j, const std::string& path,
                                const std::shared_ptr<const GridSpace>& space,
                                bool allow_edges, bool allow_sampler) {
  const Json* edges = optional_field(j, "edges");
  const Json* sampler = optional_field(j, "sampler");
  if ((edges != nullptr) == (sampler != nullptr)) {
    throw SpecError(path, "give exactly one of \"edges\" or \"sampler\"");
  }
  if (edges) {
    const std::string ep = at_key(path, "edges");
    if (!allow_edges) throw SpecError(ep, "this kind takes a sampler");
    if (!edges->is_array()) throw SpecError(ep, "expected an array of [from, to] pairs");
    std::vector<Edge> list;
    for (std::size_t i = 0; i < edges->size(); ++i) {
      const Json& e = (*edges)[i];
      const std::string p = at_index(ep, i);
      if (!e.is_array() || e.size() != 2) throw SpecError(p, "expected [from, to]");
      list.emplace_back(as_cell(e[0], at_index(p, 0), space->cell_count()),
                        as_cell(e[1], at_index(p, 1), space->cell_count()));
    }
    return Relation::from_edges(space, list);
  }
  const std::string sp = at_key(path, "sampler");
  if (!allow_sampler) throw SpecError(sp, "this kind takes an edge list");
  const std::string id = as_string(*sampler, sp);
  if (sampler_dimension(id) == 0) throw SpecError(sp, "unknown sampler '" + id + "'");
  if (space->is_discrete() || sampler_dimension(id) != space->dim()) {
    throw SpecError(sp, "sampler '" + id + "' needs a " +
                            std::to_string(sampler_dimension(id)) + "-d grid");
  }
  OuterApproxConfig cfg;
  if (const Json* b = optional_field(j, "bloat")) {
    cfg.bloat = as_number(*b, at_key(path, "bloat"));
    if (cfg.bloat < 0) throw SpecError(at_key(path, "bloat"), "bloat must be >= 0");
  }
  if (const Json* s = optional_field(j, "subdivisions")) {
    const auto v = as_count(*s, at_key(path, "subdivisions"));
    if (v == 0 || v > 64) throw SpecError(at_key(path, "subdivisions"), "must be in 1..64");
    cfg.subdivisions = static_cast<unsigned>(v);
  }
  return outer_approximate_map(space, make_sampler(id), cfg);
}

std::uint32_t parse_steps_per_unit(const Json& payload, const std::string& path) {
  const auto k = as_count(require(payload, "steps_per_unit", path), at_key(path, "steps_per_unit"));
  if (k == 0 || k > 1024) throw SpecError(at_key(path, "steps_per_unit"), "must be in 1..1024");
  if (const Json* d = optional_field(payload, "delta")) {
    const double delta = as_number(*d, at_key(path, "delta"));
    if (std::abs(delta * static_cast<double>(k) - 1.0) > 1e-9) {
      throw SpecError(at_key(path, "delta"), "steps_per_unit * delta must equal 1");
    }
  }
  return static_cast<std::uint32_t>(k);
}

AnalysisOptions parse_analysis(const Json* j, const std::string& kind, const GridSpace& space) {
  AnalysisOptions a;
  a.ladder = {Eps::strict()};
  a.analyses = {"chain"};
  if (!j) {
    a.eps = a.ladder.back();
    return a;
  }
  const std::string path = "analysis";
  if (!j->is_object()) throw SpecError(path, "expected an object");
  if (const Json* l = optional_field(*j, "eps_ladder")) {
    const std::string lp = at_key(path, "eps_ladder");
    if (!l->is_array() || l->empty()) throw SpecError(lp, "expected a nonempty array");
    a.ladder.clear();
    for (std::size_t i = 0; i < l->size(); ++i) {
      a.ladder.push_back(parse_eps((*l)[i], at_index(lp, i)));
      if (i > 0 && !(eps_rank(a.ladder[i]) < eps_rank(a.ladder[i - 1]))) {
        throw SpecError(at_index(lp, i), "eps ladder must be strictly decreasing");
      }
    }
  }
  a.eps = a.ladder.back();
  if (const Json* e = optional_field(*j, "eps")) a.eps = parse_eps(*e, at_key(path, "eps"));
  if (const Json* list = optional_field(*j, "analyses")) {
    const std::string ap = at_key(path, "analyses");
    if (!list->is_array()) throw SpecError(ap, "expected an array");
    a.analyses.clear();
    for (std::size_t i = 0; i < list->size(); ++i) {
      const std::string name = as_string((*list)[i], at_index(ap, i));
      if (std::find(kAnalysisOrder.begin(), kAnalysisOrder.end(), name) == kAnalysisOrder.end()) {
        throw SpecError(at_index(ap, i), "unknown analysis '" + name + "'");
      }
      if (name == "hybrid" && kind != "hybrid") {
        throw SpecError(at_index(ap, i), "hybrid analysis needs a hybrid system");
      }
      if (name == "semiflow" && kind != "semiflow" && kind != "hybrid") {
        throw SpecError(at_index(ap, i), "semiflow analysis needs a semiflow or hybrid system");
      }
      a.analyses.push_back(name);
    }
  }
  if (const Json* r = optional_field(*j, "region")) a.region = parse_set(*r, at_key(path, "region"), space);
  for (const char* needs : {"conley", "perturb"}) {
    if (std::find(a.analyses.begin(), a.analyses.end(), needs) != a.analyses.end() && !a.region) {
      throw SpecError(at_key(path, "region"), std::string(needs) + " analysis needs a region");
    }
  }
  if (const Json* p = optional_field(*j, "perturb")) {
    const std::string pp = at_key(path, "perturb");
    if (const Json* m = optional_field(*p, "mode")) {
      a.perturb_mode = as_string(*m, at_key(pp, "mode"));
      if (a.perturb_mode != "repeller" && a.perturb_mode != "saddle") {
        throw SpecError(at_key(pp, "mode"), "expected \"repeller\" or \"saddle\"");
      }
    }
    if (const Json* e = optional_field(*p, "eps")) {
      a.perturb_eps = as_number(*e, at_key(pp, "eps"));
      if (a.perturb_eps <= 0) throw SpecError(at_key(pp, "eps"), "must be > 0");
    }
  }
  if (const Json* c = optional_field(*j, "caps")) {
    const std::string cp = at_key(path, "caps");
    if (const Json* v = optional_field(*c, "path_length")) a.path_length = as_count(*v, at_key(cp, "path_length"));
    if (const Json* v = optional_field(*c, "paths")) a.path_cap = as_count(*v, at_key(cp, "paths"));
    if (const Json* v = optional_field(*c, "cycles")) a.cycle_cap = as_count(*v, at_key(cp, "cycles"));
  }
  return a;
}

std::string line_column(const std::string& text, std::size_t byte) {
  const std::size_t pos = std::min(byte == 0 ? 0 : byte - 1, text.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < pos; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Relation SystemSpec::analyzed_relation() const {
  if (kind == "hybrid") return associated_relation(hybrid());
  return relation;
}

SemiflowApprox SystemSpec::semiflow() const { return make_semiflow(relation, steps_per_unit); }

HybridSystem SystemSpec::hybrid() const {
  if (!flow_set || !jump) throw std::logic_error("spec is not hybrid");
  return make_hybrid(semiflow(), *flow_set, *jump);
}

SystemSpec parse_spec(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    if (auto p = msg.find("parse error"); p != std::string::npos) {
      const auto q = msg.find(": ", p);
      msg = q == std::string::npos ? msg.substr(p) : msg.substr(q + 2);
    }
    throw SpecError(line_column(text, e.byte), msg);
  }
  if (!doc.is_object()) throw SpecError("$", "expected an object");
  const auto version = as_count(require(doc, "schema_version", ""), "schema_version");
  if (version != kSchemaVersion) {
    throw SpecError("schema_version", "unsupported version " + std::to_string(version));
  }
  const std::string kind = as_string(require(doc, "kind", ""), "kind");
  if (!kKinds.count(kind)) throw SpecError("kind", "unknown kind '" + kind + "'");

  auto space = parse_grid(require(doc, "grid", ""), "grid");
  const Json& payload = require(doc, "payload", "");
  if (!payload.is_object()) throw SpecError("payload", "expected an object");

  SystemSpec spec{doc, kind, space, Relation(space), 1, std::nullopt, std::nullopt, {}};
  if (kind == "relation") {
    spec.relation = parse_relation_payload(payload, "payload", space, true, false);
  } else if (kind == "sampled_map") {
    spec.relation = parse_relation_payload(payload, "payload", space, false, true);
  } else {
    spec.relation = parse_relation_payload(require(payload, "step", "payload"), "payload.step",
                                           space, true, true);
    spec.steps_per_unit = parse_steps_per_unit(payload, "payload");
    if (kind == "hybrid") {
      spec.flow_set = parse_set(require(payload, "flow_set", "payload"), "payload.flow_set", *space);
      Relation jump = parse_relation_payload(require(payload, "jump", "payload"), "payload.jump",
                                             space, true, true);
      if (const Json* d = optional_field(payload, "jump_set")) {
        const CellSet dset = parse_set(*d, "payload.jump_set", *space);
        std::vector<Edge> kept;
        for (const auto& e : jump.edges()) {
          if (dset.contains(e.first)) kept.push_back(e);
        }
        jump = Relation::from_edges(space, kept);
      }
      spec.jump = std::move(jump);
    }
  }
  spec.analysis = parse_analysis(optional_field(doc, "analysis"), kind, *space);
  return spec;
}

SystemSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError(path.string(), "cannot open spec file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

namespace {

Json set_json(const CellSet& s) { return s.members(); }

Json grid_json(const GridSpace& sp) {
  if (sp.is_discrete()) return Json{{"points", sp.cell_count()}};
  return Json{{"lower", sp.lower()}, {"upper", sp.upper()}, {"divisions", sp.divisions()}};
}

Json edges_json(const Relation& f) {
  Json out = Json::array();
  for (const auto& [x, y] : f.edges()) out.push_back({x, y});
  return out;
}

}  // namespace

Json relation_to_json(const Relation& f) {
  return Json{{"grid", grid_json(f.space())}, {"edges", edges_json(f)}};
}

Relation relation_from_json(const Json& j) {
  auto space = parse_grid(require(j, "grid", ""), "grid");
  return parse_relation_payload(j, "", space, true, false);
}

Json eps_to_json(Eps e) {
  if (e.strict_identity) return "strict";
  return e.value;
}

std::string config_hash(const Json& doc) {
  const std::string text = doc.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string multi_index_text(const GridSpace& sp, CellId c) {
  if (sp.is_discrete()) return std::to_string(c);
  std::string out;
  for (auto i : sp.multi_index(c)) {
    if (!out.empty()) out += ';';
    out += std::to_string(i);
  }
  return out;
}

std::string morse_dot(const MorseGraph& g) {
  std::ostringstream os;
  os << "digraph morse {\n";
  for (std::size_t k = 0; k < g.components.size(); ++k) {
    const CellSet& comp = g.components[k];
    os << "  M" << k << " [label=\"M" << k << " (" << comp.size() << " cells, min "
       << *comp.first() << ")\"];\n";
  }
  for (const auto& [a, b] : g.edges) os << "  M" << a << " -> M" << b << ";\n";
  os << "}\n";
  return os.str();
}

Json chain_json(const ChainAnalysis& ca) {
  Json comps = Json::array();
  for (const auto& c : ca.components) comps.push_back(set_json(c));
  return Json{{"eps", eps_to_json(ca.eps)},
              {"recurrent", set_json(ca.recurrent)},
              {"components", comps}};
}

Json checks_json(const IsolatingChecks& c) {
  return Json{{"isolating", c.isolating},       {"simple", c.simple},
              {"index_type", c.index_type},     {"plus_isolating", c.plus_isolating},
              {"minus_isolating", c.minus_isolating}, {"c_plus", set_json(c.c_plus)},
              {"c_minus", set_json(c.c_minus)}, {"c_pm", set_json(c.c_pm)},
              {"delta", set_json(c.delta)}};
}

Json conley_json(const ConleyReport& r, std::vector<std::string>& failures,
                 const std::string& tag) {
  Json out{{"checks", checks_json(r.checks)}, {"notes", r.notes}};
  out["rho"] = set_json(r.boundary.rho);
  if (r.stable_unstable) {
    out["stable_set"] = set_json(r.stable_unstable->ws);
    out["unstable_set"] = set_json(r.stable_unstable->wu);
  }
  if (r.pair) {
    out["index_pair"] = Json{{"p1", set_json(r.pair->p1)}, {"p2", set_json(r.pair->p2)}};
    out["validation"] = Json{{"pass", r.validation->pass},
                             {"failed_conditions", r.validation->failed_conditions}};
    if (!r.validation->pass) failures.push_back(tag + ": index pair validation");
    const QuotientRelation& q = *r.quotient;
    out["quotient"] = Json{{"nodes", q.nodes.size()},
                           {"domain_checked", q.domain_checked},
                           {"star_attractor", q.star_attractor},
                           {"minus_attractor", q.minus_attractor},
                           {"star_repeller", q.star_repeller},
                           {"dual_repeller", set_json(q.dual_repeller)}};
    if (q.domain_checked && !(q.star_attractor && q.minus_attractor)) {
      failures.push_back(tag + ": quotient attractor check");
    }
  }
  return out;
}

Json certificate_json(const PerturbationCertificate& c) {
  Json out{{"eps", c.eps},
           {"containment_fwd", c.containment_fwd},
           {"containment_bwd", c.containment_bwd},
           {"full_domain", c.full_domain},
           {"surjective", c.surjective},
           {"inverse_domain_deficient", c.inverse_domain_deficient},
           {"holds", c.holds()}};
  out["annihilation_n"] = c.annihilation_n ? Json(*c.annihilation_n) : Json(nullptr);
  return out;
}

class Timer {
 public:
  Timer(Json& timing, std::string key)
      : timing_(timing), key_(std::move(key)), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    const auto d = std::chrono::steady_clock::now() - start_;
    timing_[key_] = std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  Json& timing_;
  std::string key_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

AnalysisReport run_analyses(const SystemSpec& spec) {
  AnalysisReport rep;
  const AnalysisOptions& opt = spec.analysis;
  const GridSpace& sp = *spec.space;
  auto wants = [&](const char* name) {
    return std::find(opt.analyses.begin(), opt.analyses.end(), name) != opt.analyses.end();
  };
  for (const auto& name : opt.analyses) {
    if (name == "hybrid" && spec.kind != "hybrid") {
      throw SpecError("analysis.analyses", "hybrid analysis needs a hybrid system");
    }
    if ((name == "conley" || name == "perturb") && !opt.region) {
      throw SpecError("analysis.region", name + " analysis needs a region");
    }
  }

  Json& body = rep.body;
  body["provenance"] = Json{{"config_hash", config_hash(spec.doc)},
                            {"schema_version", kSchemaVersion},
                            {"tool_version", kToolVersion}};
  Json system{{"kind", spec.kind}, {"cells", sp.cell_count()},
              {"relation", relation_to_json(spec.relation)}};
  if (spec.kind == "semiflow" || spec.kind == "hybrid") system["steps_per_unit"] = spec.steps_per_unit;
  if (spec.flow_set) system["flow_set"] = set_json(*spec.flow_set);
  if (spec.jump) system["jump"] = relation_to_json(*spec.jump);
  Json ladder = Json::array();
  for (const Eps& e : opt.ladder) ladder.push_back(eps_to_json(e));
  system["eps_ladder"] = ladder;
  system["eps"] = eps_to_json(opt.eps);
  system["analyses"] = opt.analyses;
  body["system"] = system;

  Relation f(spec.space);
  {
    Timer t(rep.timing, "build");
    f = spec.analyzed_relation();
  }
  const CellSet region = opt.region ? *opt.region : sp.full_set();

  std::optional<MorseFamily> family;
  auto need_family = [&]() -> const MorseFamily& {
    if (!family) family = ar_family(f, opt.eps);
    return *family;
  };

  if (wants("chain")) {
    Timer t(rep.timing, "chain");
    const ChainLadder cl = chain_ladder(f, opt.ladder);
    Json levels = Json::array();
    for (std::size_t i = 0; i < cl.levels.size(); ++i) {
      Json lvl = chain_json(cl.levels[i]);
      lvl["same_as_previous"] = cl.summary[i].same_as_previous;
      levels.push_back(lvl);
    }
    body["chain"] = Json{{"levels", levels},
                         {"stabilized_at", cl.stabilized_at ? Json(*cl.stabilized_at) : Json(nullptr)}};
  }

  if (wants("morse")) {
    Timer t(rep.timing, "morse");
    const MorseFamily& fam = need_family();
    Json pairs = Json::array();
    for (const auto& p : fam.pairs) {
      pairs.push_back(Json{{"attractor", set_json(p.attractor)}, {"repeller", set_json(p.repeller)}});
    }
    Json edges = Json::array();
    for (const auto& [a, b] : fam.graph.edges) edges.push_back({a, b});
    body["morse"] = Json{{"eps", eps_to_json(opt.eps)},
                         {"chain", chain_json(fam.chain)},
                         {"graph_edges", edges},
                         {"pairs", pairs},
                         {"signatures_injective", signatures_injective(fam)}};
    if (!signatures_injective(fam)) rep.failures.push_back("morse: component signatures");
    rep.morse_dot = morse_dot(fam.graph);
  }

  if (wants("lyapunov")) {
    Timer t(rep.timing, "lyapunov");
    const LyapunovField field = complete_lyapunov(f, need_family());
    const LyapunovCheck chk = verify_lyapunov(f, opt.eps, field.values);
    Json values = Json::array();
    std::ostringstream csv;
    csv << "cell,index,value,exact\n";
    char num[40];
    for (CellId c = 0; c < f.size(); ++c) {
      values.push_back(field.values[c].str());
      std::snprintf(num, sizeof num, "%.17g", field.values[c].convert_to<double>());
      csv << c << ',' << multi_index_text(sp, c) << ',' << num << ',' << field.values[c].str() << '\n';
    }
    body["lyapunov"] = Json{{"eps", eps_to_json(opt.eps)},
                            {"values", values},
                            {"monotone", chk.monotone},
                            {"separates_components", chk.separates_components},
                            {"critical_is_recurrent", chk.critical_is_recurrent},
                            {"critical_set", set_json(chk.critical_set)},
                            {"violations", chk.violations.size()},
                            {"pass", chk.pass}};
    if (!chk.pass) rep.failures.push_back("lyapunov: verification");
    rep.lyapunov_csv = csv.str();
  }

  if (wants("conley")) {
    Timer t(rep.timing, "conley");
    const ConleyReport cr = conley_analysis(f, region);
    body["conley"] = conley_json(cr, rep.failures, "conley");
    body["conley"]["region"] = set_json(region);
  }

  if (wants("perturb")) {
    Timer t(rep.timing, "perturb");
    Json out{{"mode", opt.perturb_mode}, {"eps", opt.perturb_eps}, {"region", set_json(region)}};
    try {
      if (opt.perturb_mode == "repeller") {
        const RepellerElimination r = eliminate_repeller(f, region, opt.perturb_eps);
        out["certificate"] = certificate_json(r.cert);
        out["c_plus"] = set_json(r.c_plus);
        out["c_plus_thin"] = r.c_plus_thin;
        out["agrees_on_remainder"] = r.agrees_on_remainder;
        out["relation"] = relation_to_json(r.g);
        if (!r.cert.holds() || !r.agrees_on_remainder) {
          rep.failures.push_back("perturb: certificate");
        }
      } else {
        const SaddleElimination r = eliminate_saddle(f, region, opt.perturb_eps);
        out["certificate"] = certificate_json(r.cert);
        out["blocks"] = r.blocks.size();
        out["c_plus_thin"] = r.c_plus_thin;
        out["c_minus_thin"] = r.c_minus_thin;
        out["relation"] = relation_to_json(r.g_hat);
        if (!r.cert.holds() || !r.cert.surjective) rep.failures.push_back("perturb: certificate");
      }
    } catch (const std::invalid_argument& e) {
      out["error"] = e.what();
      rep.failures.push_back(std::string("perturb: ") + e.what());
    }
    body["perturbation"] = out;
  }

  if (wants("semiflow")) {
    Timer t(rep.timing, "semiflow");
    const SemiflowApprox sf = spec.semiflow();
    const std::uint32_t k = sf.steps_per_unit;
    const TauReport tau = tau_and_terminal(sf, region);
    Json tau_json = Json::array();
    for (CellId c = 0; c < tau.tau.size(); ++c) {
      if (!region.contains(c)) continue;
      tau_json.push_back(std::isinf(tau.tau[c]) ? Json("inf") : Json(tau.tau[c]));
    }
    const Relation phi_i = interval_relation_ticks(sf, 0, k);
    const Relation phi_j = interval_relation_ticks(sf, k, 2 * k);
    const bool algebra = compose(phi_i, phi_i) == unite(phi_i, phi_j) &&
                         compose(phi_j, phi_i) == compose(phi_i, phi_j);

    TimedRelationTable table;
    for (std::uint32_t q = 0; q <= 2 * k; ++q) {
      table.at.push_back(restrict(interval_relation_ticks(sf, q, q), region));
    }
    const RefinementResult refined = refine_weak_semiflow(table);
    bool refined_ok = true;
    for (std::uint32_t q = 1; q <= 2 * k; ++q) {
      refined_ok = refined_ok &&
                   refined.table.at[q] == restricted_interval_relation_ticks(sf, region, q, q);
    }
    const auto sens = refinement_sensitivity(table);
    Json out{{"region", set_json(region)},
             {"complete", sf.complete()},
             {"delta", sf.delta()},
             {"tau", tau_json},
             {"terminal", set_json(tau.terminal)},
             {"phi_boundary", set_json(phi_boundary(sf, region))},
             {"interval_algebra", algebra},
             {"refinement", Json{{"rounds", refined.rounds},
                                 {"removed", refined.removed},
                                 {"matches_restriction", refined_ok},
                                 {"removed_at_delta", sens[0]},
                                 {"removed_at_two_delta", sens[1]}}}};
    if (opt.region) {
      out["conley"] = conley_json(semiflow_conley(sf, region).report, rep.failures, "semiflow");
    }
    if (!algebra) rep.failures.push_back("semiflow: interval algebra");
    if (!refined_ok) rep.failures.push_back("semiflow: refinement fixpoint");
    body["semiflow"] = out;
  }

  if (wants("hybrid")) {
    Timer t(rep.timing, "hybrid");
    const HybridSystem hs = spec.hybrid();
    const Relation& h = f;
    const Relation ht = teel_relation(hs);
    const Relation h2 = compose(h, h);
    const Relation upper = unite(unite(h, h2), compose(h, h2));
    const bool sandwich = h.is_subset_of(ht) && ht.is_subset_of(upper);
    bool chains_agree = true;
    for (const Eps& e : opt.ladder) {
      chains_agree = chains_agree &&
                     chain_analysis(h, e).chain_relation == chain_analysis(ht, e).chain_relation;
    }
    const bool domain_full = domain(h).is_full();
    const ViabilityReport via = hybrid_viability(hs, region);
    const HybridLyapunov hl = hybrid_lyapunov(hs, opt.eps);
    Json levels = Json::array();
    for (const auto& lvl : hl.levels) {
      levels.push_back(Json{{"value", lvl.value.str()},
                            {"size", lvl.set.size()},
                            {"jump_inward", lvl.jump_inward},
                            {"flow_inward", lvl.flow_inward}});
    }
    Json out{{"complete", hs.complete()},
             {"terminals_jump", hs.terminals_jump()},
             {"h_edges", h.edge_count()},
             {"teel_edges", ht.edge_count()},
             {"sandwich", sandwich},
             {"chains_agree", chains_agree},
             {"domain_full", domain_full},
             {"region", set_json(region)},
             {"k_plus", set_json(via.c_plus)},
             {"k_minus", set_json(via.c_minus)},
             {"k_pm", set_json(via.c_pm)},
             {"boundary", set_json(hybrid_boundary(hs, region))},
             {"lyapunov", Json{{"pass", hl.check.pass}, {"levels", levels}}}};
    if (opt.region) out["conley"] = conley_json(hybrid_conley(hs, region), rep.failures, "hybrid");
    if (!sandwich) rep.failures.push_back("hybrid: teel sandwich");
    if (!chains_agree) rep.failures.push_back("hybrid: chain relations of H and teel differ");
    if (hs.complete() && hs.terminals_jump() && !domain_full) rep.failures.push_back("hybrid: Dom(H) != X");
    if (!hl.check.pass) rep.failures.push_back("hybrid: lyapunov verification");
    body["hybrid"] = out;
  }

  if (wants("paths")) {
    Timer t(rep.timing, "paths");
    if (spec.kind == "hybrid") {
      const HybridSystem hs = spec.hybrid();
      const auto max_ticks = static_cast<std::uint32_t>(opt.path_length * spec.steps_per_unit);
      const auto en = enumerate_hybrid_paths(hs, region, max_ticks, opt.path_cap);
      std::size_t bound_violations = 0, bad_domains = 0, spanned = 0;
      for (const auto& p : en.paths) {
        if (!valid_time_domain(time_domain(p))) ++bad_domains;
        if (path_length_ticks(hs, p) < spec.steps_per_unit) continue;
        const auto orbit = span_decomposition(hs, p);
        const double l = path_length(hs, p);
        const double k = static_cast<double>(orbit.size() - 1);
        ++spanned;
        if (!(l / 3 <= k + 1e-12 && k <= l + 1e-12)) ++bound_violations;
      }
      body["paths"] = Json{{"count", en.paths.size()},
                           {"truncated", en.truncated},
                           {"max_ticks", max_ticks},
                           {"spanned", spanned},
                           {"span_bound_violations", bound_violations},
                           {"invalid_time_domains", bad_domains}};
      if (bound_violations || bad_domains) rep.failures.push_back("paths: span bounds");
    } else {
      const auto en = enumerate_paths(f, region, opt.path_length, opt.path_cap);
      body["paths"] = Json{{"count", en.paths.size()},
                           {"truncated", en.truncated},
                           {"length", opt.path_length}};
    }
  }

  body["verification"] = Json{{"pass", rep.failures.empty()}, {"failures", rep.failures}};
  return rep;
}

void emit_report(const AnalysisReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << text;
  };
  write("report.json", report.body.dump(2) + "\n");
  write("timing.json", report.timing.dump(2) + "\n");
  if (!report.morse_dot.empty()) write("morse_graph.dot", report.morse_dot);
  if (!report.lyapunov_csv.empty()) write("lyapunov.csv", report.lyapunov_csv);
}

}  // namespace conley
