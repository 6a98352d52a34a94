#include "kg2/frames.hpp"
#include "kg2/errors.hpp"

#include <random>
#include <set>
#include <sstream>

namespace kg2 {

namespace {

// Edges of one relation in world-list order.
std::vector<std::pair<Frame::Edge, Rational>> ordered_edges(const Frame& f, Sign s) {
  std::vector<std::pair<Frame::Edge, Rational>> out;
  for (const auto& a : f.worlds)
    for (const auto& b : f.worlds) {
      Rational v = f.get_rel(s, a, b);
      if (v != 0) out.push_back({{a, b}, v});
    }
  return out;
}

std::optional<Frame::Edge> first_fuzzy(const Frame& f, Sign s) {
  for (const auto& [e, v] : ordered_edges(f, s))
    if (v != 1) return e;
  return std::nullopt;
}

void require_world(const Frame& f, const std::string& w) {
  if (!f.has_world(w)) throw UnknownWorld(w);
}

const char* sign_char(Sign s) { return s == Sign::Plus ? "+" : "-"; }

}  // namespace

FrameReport frame_report(const Frame& f) {
  FrameReport r;
  r.crisp_plus_witness = first_fuzzy(f, Sign::Plus);
  r.crisp_minus_witness = first_fuzzy(f, Sign::Minus);
  r.crisp_plus = !r.crisp_plus_witness;
  r.crisp_minus = !r.crisp_minus_witness;
  for (const auto& a : f.worlds) {
    for (const auto& b : f.worlds) {
      if (f.get_rel(Sign::Plus, a, b) != f.get_rel(Sign::Minus, a, b)) {
        r.mono_witness = Frame::Edge{a, b};
        break;
      }
    }
    if (r.mono_witness) break;
  }
  r.mono_relational = !r.mono_witness;
  return r;
}

Model star(const Model& m, const std::vector<std::string>& atoms) {
  if (!m.crisp()) throw NotCrisp("star needs a crisp model");
  Model out;
  out.worlds = m.worlds;
  out.rplus = m.rminus;
  out.rminus = m.rplus;
  std::set<std::string> names(atoms.begin(), atoms.end());
  for (const auto* val : {&m.v1, &m.v2})
    for (const auto& [a, _] : *val) names.insert(a);
  for (const auto& a : names)
    for (const auto& w : m.worlds)
      out.set_pair(a, w, {1 - m.get_val(2, a, w), 1 - m.get_val(1, a, w)});
  return out;
}

std::string SplitLabel::name() const { return "(" + from.value_or("_") + "," + sign_char(sign) + "," + to + ")"; }

Splitting split(const Model& m) {
  Splitting out;
  for (const auto& w : m.worlds) out.correspondence[w];
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    for (const auto& [e, v] : ordered_edges(m, s)) out.labels.push_back({e.first, s, e.second});
    for (const auto& u : m.worlds) {
      bool has_pred = false;
      for (const auto& t : m.worlds)
        if (m.get_rel(s, t, u) != 0) has_pred = true;
      if (!has_pred) out.labels.push_back({std::nullopt, s, u});
    }
  }
  std::vector<std::string> atom_names;
  for (const auto* val : {&m.v1, &m.v2})
    for (const auto& [a, _] : *val) atom_names.push_back(a);
  for (const auto& l : out.labels) {
    std::string n = l.name();
    out.model.worlds.push_back(n);
    out.correspondence[l.to].push_back(n);
    for (const auto& a : atom_names) out.model.set_pair(a, n, {m.get_val(1, a, l.to), m.get_val(2, a, l.to)});
  }
  for (const auto& src : out.labels)
    for (const auto& dst : out.labels)
      if (dst.from && *dst.from == src.to)
        out.model.set_rel(dst.sign, src.name(), dst.name(), m.get_rel(dst.sign, *dst.from, dst.to));
  return out;
}

Countermodel crispness_countermodel(const Frame& f, Sign sign, const std::string& w, const std::string& w2) {
  require_world(f, w);
  require_world(f, w2);
  Rational r = f.get_rel(sign, w, w2);
  if (r <= 0 || r >= 1)
    throw EdgeNotFractional("edge (" + w + ", " + w2 + ") of R" + sign_char(sign) + " has value " + to_string(r));
  Model m(f);
  for (const auto& u : f.worlds) {
    if (u == w2)
      m.set_pair("p", u, sign == Sign::Plus ? TruthPair{r, 0} : TruthPair{1, r});
    else if (sign == Sign::Minus && f.get_rel(Sign::Minus, w, u) != 0)
      m.set_pair("p", u, {1, 1});
    else
      m.set_pair("p", u, {1, 0});
  }
  return {std::move(m), w, defining_formulas()[sign == Sign::Plus ? 0 : 1]};
}

Countermodel mono_countermodel(const Frame& f, const std::string& w, const std::string& w2) {
  require_world(f, w);
  require_world(f, w2);
  Rational x = f.get_rel(Sign::Plus, w, w2), y = f.get_rel(Sign::Minus, w, w2);
  if (x == y) throw EdgeNotDiffering("edge (" + w + ", " + w2 + ") has R+ = R- = " + to_string(x));
  Model m(f);
  for (const auto& u : f.worlds) m.set_pair("p", u, u == w2 ? TruthPair{x < y ? x : y, 0} : TruthPair{1, 0});
  return {std::move(m), w, defining_formulas()[2]};
}

const std::vector<Formula>& defining_formulas() {
  static const std::vector<Formula> fs = {
      parse("^[]p -> []^p"),
      parse("<>~~p -> ~~<>p"),
      parse("([]p -> !<>!p) & (!<>!p -> []p)"),
      parse("~~[](p | ~p)"),
      parse("1 -< <>!(p | ~p)"),
  };
  return fs;
}

DefinabilityReport definability_suite(const Frame& f, std::size_t samples, std::uint64_t seed) {
  const auto& fs = defining_formulas();
  DefinabilityReport r;
  r.seed = seed;
  r.samples = samples;
  r.violations_per_formula.assign(fs.size(), 0);
  std::vector<bool> recorded(fs.size(), false);
  std::mt19937_64 rng(seed);
  auto value = [&] {
    int d = std::uniform_int_distribution<int>(1, 6)(rng);
    return Rational(std::uniform_int_distribution<int>(0, d)(rng)) / d;
  };
  for (std::size_t s = 0; s < samples; ++s) {
    Model m(f);
    for (const auto& w : f.worlds) {
      Rational a = value();
      m.set_pair("p", w, {a, value()});
    }
    Evaluator ev(m);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      for (const auto& w : f.worlds) {
        if (ev.eval(w, fs[i]) == TruthPair{1, 0}) continue;
        ++r.violations_per_formula[i];
        if (!recorded[i]) {
          recorded[i] = true;
          r.first_violation.push_back({i, w, m});
        }
        break;
      }
    }
  }
  return r;
}

std::string DefinabilityReport::to_text() const {
  const auto& fs = defining_formulas();
  std::ostringstream out;
  out << "seed " << seed << ", " << samples << " valuations\n";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    out << print(fs[i]) << ": " << violations_per_formula[i] << " violating valuation"
        << (violations_per_formula[i] == 1 ? "" : "s");
    for (const auto& v : first_violation)
      if (v.formula == i) out << " (first at " << v.world << ")";
    out << "\n";
  }
  return out.str();
}

}  // namespace kg2
