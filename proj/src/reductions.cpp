#include "kg2/reductions.hpp"
#include "kg2/errors.hpp"

#include <algorithm>

namespace kg2 {

namespace {

Formula dneg(Formula f) { return Formula::gneg(Formula::gneg(std::move(f))); }

void require_classical(const Formula& phi) {
  if (!is_classical(phi)) throw IllegalConnective("'" + print(phi) + "' uses a connective outside 0, &, |, ->, [], <>");
}

Formula nabla(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Bot:
      return dneg(f);
    case Op::Box:
    case Op::Dia:
      return dneg(Formula::unary(f.op(), nabla(f.arg())));
    default:
      return dneg(Formula::binary(f.op(), nabla(f.lhs()), nabla(f.rhs())));
  }
}

Formula triangle(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
      return Formula::delta(f);
    case Op::Bot:
      return Formula::top();
    case Op::And:
      return Formula::disj(triangle(f.lhs()), triangle(f.rhs()));
    case Op::Or:
      return Formula::conj(triangle(f.lhs()), triangle(f.rhs()));
    case Op::Impl:
      return Formula::coimpl(triangle(f.rhs()), triangle(f.lhs()));
    case Op::Box:
      return Formula::dia(triangle(f.arg()));
    case Op::Dia:
      return Formula::box(triangle(f.arg()));
    default:
      throw IllegalConnective("unexpected connective");
  }
}

}  // namespace

Formula sat_falsif_reduce(const Formula& phi, ReduceMode mode) {
  if (mode == ReduceMode::SatToFalsif) return dneg(Formula::coimpl(phi, Formula::bot()));
  return dneg(Formula::coimpl(Formula::top(), phi));
}

Formula undesignated(const Formula& phi) {
  return Formula::gneg(Formula::conj(Formula::delta(phi), Formula::gneg(Formula::neg(phi))));
}

bool is_classical(const Formula& phi) {
  switch (phi.op()) {
    case Op::Atom:
    case Op::Bot:
      return true;
    case Op::Box:
    case Op::Dia:
      return is_classical(phi.arg());
    case Op::And:
    case Op::Or:
    case Op::Impl:
      return is_classical(phi.lhs()) && is_classical(phi.rhs());
    default:
      return false;
  }
}

Formula nabla_transform(const Formula& phi) {
  require_classical(phi);
  return nabla(phi);
}

Formula triangle_transform(const Formula& phi) {
  require_classical(phi);
  return triangle(phi);
}

bool ClassicalModel::has_world(const std::string& w) const {
  return std::find(worlds.begin(), worlds.end(), w) != worlds.end();
}

bool ClassicalModel::holds(const std::string& atom, const std::string& w) const {
  auto it = val.find(atom);
  return it != val.end() && it->second.count(w) > 0;
}

namespace {

bool k_eval_rec(const ClassicalModel& m, const std::string& w, const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
      return m.holds(f.name(), w);
    case Op::Bot:
      return false;
    case Op::And:
      return k_eval_rec(m, w, f.lhs()) && k_eval_rec(m, w, f.rhs());
    case Op::Or:
      return k_eval_rec(m, w, f.lhs()) || k_eval_rec(m, w, f.rhs());
    case Op::Impl:
      return !k_eval_rec(m, w, f.lhs()) || k_eval_rec(m, w, f.rhs());
    case Op::Box:
    case Op::Dia: {
      bool box = f.op() == Op::Box;
      for (const auto& u : m.worlds) {
        if (!m.rel.count({w, u})) continue;
        if (k_eval_rec(m, u, f.arg()) != box) return !box;
      }
      return box;
    }
    default:
      throw IllegalConnective("unexpected connective");
  }
}

}  // namespace

bool k_eval(const ClassicalModel& m, const std::string& w, const Formula& phi) {
  require_classical(phi);
  if (!m.has_world(w)) throw UnknownWorld(w);
  return k_eval_rec(m, w, phi);
}

KSearchResult k_countermodel_search(const Formula& phi, int max_worlds, std::uint64_t max_models) {
  require_classical(phi);
  if (max_worlds < 1) throw std::invalid_argument("max_worlds must be at least 1");
  std::vector<std::string> names = atoms(phi);
  KSearchResult out;
  for (int n = 1; n <= max_worlds; ++n) {
    int edges = n * n, bits = n * static_cast<int>(names.size());
    if (edges + bits >= 63) throw BudgetExceeded("classical search space too large");
    ClassicalModel m;
    for (int i = 0; i < n; ++i) m.worlds.push_back("w" + std::to_string(i));
    for (std::uint64_t r = 0; r < (1ULL << edges); ++r) {
      m.rel.clear();
      for (int e = 0; e < edges; ++e)
        if (r >> e & 1) m.rel.insert({m.worlds[e / n], m.worlds[e % n]});
      for (std::uint64_t v = 0; v < (1ULL << bits); ++v) {
        if (++out.examined > max_models)
          throw BudgetExceeded("classical search passed " + std::to_string(max_models) + " models");
        m.val.clear();
        for (int b = 0; b < bits; ++b)
          if (v >> b & 1) m.val[names[b / n]].insert(m.worlds[b % n]);
        for (const auto& w : m.worlds) {
          if (!k_eval_rec(m, w, phi)) {
            out.counter = true;
            out.model = m;
            out.world = w;
            return out;
          }
        }
      }
    }
  }
  return out;
}

Model embed_classical(const ClassicalModel& m, EmbedSide) {
  Model out;
  out.worlds = m.worlds;
  for (const auto& [a, b] : m.rel) {
    out.set_rel(Sign::Plus, a, b, 1);
    out.set_rel(Sign::Minus, a, b, 1);
  }
  for (const auto& [atom, ws] : m.val)
    for (const auto& w : ws) out.set_pair(atom, w, {1, 1});
  return out;
}

Json classical_to_json(const ClassicalModel& m) {
  Json doc = Json::object();
  doc["worlds"] = m.worlds;
  Json rel = Json::array();
  for (const auto& a : m.worlds)
    for (const auto& b : m.worlds)
      if (m.rel.count({a, b})) rel.push_back(Json::array({a, b}));
  doc["rel"] = rel;
  Json val = Json::object();
  for (const auto& [atom, ws] : m.val) {
    Json row = Json::object();
    for (const auto& w : m.worlds) row[w] = ws.count(w) ? "1" : "0";
    val[atom] = row;
  }
  doc["val"] = val;
  return doc;
}

ClassicalModel classical_from_json(const Json& doc) {
  if (!doc.is_object()) throw FormatError("document must be an object");
  for (const auto& [k, v] : doc.items())
    if (k != "worlds" && k != "rel" && k != "val") throw FormatError("unexpected field '" + k + "'");
  if (!doc.contains("worlds") || !doc.at("worlds").is_array()) throw FormatError("missing 'worlds' list");
  ClassicalModel m;
  for (const auto& w : doc.at("worlds")) {
    if (!w.is_string() || w.get<std::string>().empty()) throw FormatError("world labels must be non-empty strings");
    if (m.has_world(w.get<std::string>())) throw FormatError("duplicate world '" + w.get<std::string>() + "'");
    m.worlds.push_back(w.get<std::string>());
  }
  auto world = [&](const Json& j) {
    if (!j.is_string() || !m.has_world(j.get<std::string>())) throw FormatError("'rel' mentions an unknown world");
    return j.get<std::string>();
  };
  if (doc.contains("rel")) {
    if (!doc.at("rel").is_array()) throw FormatError("'rel' must be a list");
    for (const auto& e : doc.at("rel")) {
      if (!e.is_array() || e.size() != 2) throw FormatError("'rel' entries must be [from, to]");
      if (!m.rel.insert({world(e[0]), world(e[1])}).second) throw FormatError("duplicate edge in 'rel'");
    }
  }
  if (doc.contains("val")) {
    if (!doc.at("val").is_object()) throw FormatError("'val' must be an object");
    for (const auto& [atom, row] : doc.at("val").items()) {
      if (!row.is_object()) throw FormatError("valuation of '" + atom + "' must be an object");
      for (const auto& [w, v] : row.items()) {
        if (!m.has_world(w)) throw FormatError("valuation of '" + atom + "' mentions unknown world '" + w + "'");
        if (v != "0" && v != "1") throw FormatError("classical values must be \"0\" or \"1\"");
        if (v == "1") m.val[atom].insert(w);
      }
    }
  }
  return m;
}

}  // namespace kg2
