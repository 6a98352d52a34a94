#include "kg2/model_io.hpp"
#include "kg2/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace kg2 {

namespace {

Json edges_to_json(const Frame& f, Sign s) {
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, const Rational*>> rows;
  for (const auto& [e, v] : f.rel(s)) {
    if (v == 0) continue;
    auto a = f.world_index(e.first), b = f.world_index(e.second);
    rows.push_back({{a.value_or(SIZE_MAX), b.value_or(SIZE_MAX)}, &v});
  }
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Json out = Json::array();
  for (const auto& [ix, v] : rows)
    out.push_back(Json::array({f.worlds.at(ix.first), f.worlds.at(ix.second), to_string(*v)}));
  return out;
}

Json valuation_to_json(const Model& m, const Model::Valuation& val) {
  Json out = Json::object();
  for (const auto& [atom, per_world] : val) {
    Json row = Json::object();
    for (const auto& w : m.worlds) {
      auto it = per_world.find(w);
      if (it != per_world.end() && it->second != 0) row[w] = to_string(it->second);
    }
    if (!row.empty()) out[atom] = std::move(row);
  }
  return out;
}

std::string expect_string(const Json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Rational expect_value(const Json& j, const char* what) {
  Rational v = parse_rational(expect_string(j, what));
  if (!in_unit_interval(v)) throw FormatError(std::string(what) + " " + to_string(v) + " outside [0,1]");
  return v;
}

void read_edges(const Json& doc, const char* key, Sign s, Frame& f) {
  if (!doc.contains(key)) return;
  const Json& arr = doc.at(key);
  if (!arr.is_array()) throw FormatError(std::string("'") + key + "' must be a list");
  for (const auto& t : arr) {
    if (!t.is_array() || t.size() != 3) throw FormatError(std::string("'") + key + "' entries must be [from, to, value]");
    std::string from = expect_string(t[0], "edge source"), to = expect_string(t[1], "edge target");
    if (!f.has_world(from)) throw FormatError("edge source '" + from + "' is not a world");
    if (!f.has_world(to)) throw FormatError("edge target '" + to + "' is not a world");
    if (f.rel(s).count({from, to})) throw FormatError("duplicate edge (" + from + ", " + to + ")");
    Rational v = expect_value(t[2], "relation value");
    if (v != 0) f.set_rel(s, from, to, v);
  }
}

void read_valuation(const Json& doc, const char* key, int side, Model& m) {
  if (!doc.contains(key)) return;
  const Json& obj = doc.at(key);
  if (!obj.is_object()) throw FormatError(std::string("'") + key + "' must be an object");
  for (const auto& [atom, per_world] : obj.items()) {
    try {
      Formula a = parse(atom);
      if (a.op() != Op::Atom) throw FormatError("");
    } catch (const Error&) {
      throw FormatError("'" + atom + "' is not an atom name");
    }
    if (!per_world.is_object()) throw FormatError("valuation of '" + atom + "' must be an object");
    for (const auto& [w, v] : per_world.items()) {
      if (!m.has_world(w)) throw FormatError("valuation of '" + atom + "' mentions unknown world '" + w + "'");
      m.set_val(side, atom, w, expect_value(v, "atom value"));
    }
  }
}

Frame read_frame_part(const Json& doc, std::initializer_list<const char*> allowed) {
  if (!doc.is_object()) throw FormatError("document must be an object");
  for (const auto& [k, v] : doc.items())
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }) == allowed.end())
      throw FormatError("unexpected field '" + k + "'");
  if (!doc.contains("worlds") || !doc.at("worlds").is_array()) throw FormatError("missing 'worlds' list");
  Frame f;
  for (const auto& w : doc.at("worlds")) {
    std::string name = expect_string(w, "world label");
    if (name.empty()) throw FormatError("empty world label");
    if (f.has_world(name)) throw FormatError("duplicate world '" + name + "'");
    f.worlds.push_back(name);
  }
  read_edges(doc, "rplus", Sign::Plus, f);
  read_edges(doc, "rminus", Sign::Minus, f);
  return f;
}

}  // namespace

Json frame_to_json(const Frame& f) {
  Json doc = Json::object();
  doc["worlds"] = f.worlds;
  doc["rplus"] = edges_to_json(f, Sign::Plus);
  doc["rminus"] = edges_to_json(f, Sign::Minus);
  return doc;
}

Json model_to_json(const Model& m) {
  Json doc = frame_to_json(m);
  doc["v1"] = valuation_to_json(m, m.v1);
  doc["v2"] = valuation_to_json(m, m.v2);
  return doc;
}

Frame frame_from_json(const Json& doc) { return read_frame_part(doc, {"worlds", "rplus", "rminus"}); }

Model model_from_json(const Json& doc) {
  // Countermodel documents carry extra "world"/"side" fields; accept them.
  Model m(read_frame_part(doc, {"worlds", "rplus", "rminus", "v1", "v2", "world", "side"}));
  read_valuation(doc, "v1", 1, m);
  read_valuation(doc, "v2", 2, m);
  return m;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

Model read_model_file(const std::string& path) { return model_from_json(read_json_file(path)); }
Frame read_frame_file(const std::string& path) { return frame_from_json(read_json_file(path)); }

std::string model_to_dot(const Model& m, const std::optional<std::string>& root) {
  auto quote = [](const std::string& s) { return "\"" + s + "\""; };
  std::set<std::string> atom_names;
  for (const auto* val : {&m.v1, &m.v2})
    for (const auto& [a, _] : *val) atom_names.insert(a);
  std::ostringstream out;
  out << "digraph model {\n";
  for (const auto& w : m.worlds) {
    std::string label = w;
    for (const auto& a : atom_names) {
      TruthPair v{m.get_val(1, a, w), m.get_val(2, a, w)};
      if (v != TruthPair{0, 0}) label += "\\n" + a + "=" + to_string(v);
    }
    out << "  " << quote(w) << " [label=" << quote(label);
    if (root && *root == w) out << ", peripheries=2";
    out << "];\n";
  }
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    for (const auto& row : edges_to_json(m, s)) {
      out << "  " << quote(row[0].get<std::string>()) << " -> " << quote(row[1].get<std::string>())
          << " [label=" << quote(std::string(s == Sign::Plus ? "+:" : "-:") + row[2].get<std::string>()) << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace kg2
