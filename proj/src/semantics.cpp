#include "kg2/semantics.hpp"
#include "kg2/errors.hpp"

#include <algorithm>
#include <set>

namespace kg2 {

Rational g_meet(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational g_join(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational g_impl(const Rational& a, const Rational& b) { return a <= b ? Rational(1) : b; }
Rational g_coimpl(const Rational& a, const Rational& b) { return a <= b ? Rational(0) : a; }
Rational g_neg(const Rational& a) { return a == 0 ? Rational(1) : Rational(0); }
Rational g_delta(const Rational& a) { return a == 1 ? Rational(1) : Rational(0); }

std::string to_string(const TruthPair& v) { return "(" + to_string(v.pos) + ", " + to_string(v.neg) + ")"; }

bool Frame::has_world(const std::string& w) const { return world_index(w).has_value(); }

std::optional<std::size_t> Frame::world_index(const std::string& w) const {
  auto it = std::find(worlds.begin(), worlds.end(), w);
  if (it == worlds.end()) return std::nullopt;
  return static_cast<std::size_t>(it - worlds.begin());
}

void Frame::add_world(const std::string& w) {
  if (!has_world(w)) worlds.push_back(w);
}

Rational Frame::get_rel(Sign s, const std::string& from, const std::string& to) const {
  const auto& r = rel(s);
  auto it = r.find({from, to});
  return it == r.end() ? Rational(0) : it->second;
}

void Frame::set_rel(Sign s, const std::string& from, const std::string& to, const Rational& v) {
  auto& r = rel(s);
  if (v == 0)
    r.erase({from, to});
  else
    r[{from, to}] = v;
}

bool Frame::crisp(Sign s) const {
  for (const auto& [e, v] : rel(s))
    if (v != 0 && v != 1) return false;
  return true;
}

void Frame::validate() const {
  std::set<std::string> seen;
  for (const auto& w : worlds)
    if (!seen.insert(w).second) throw FormatError("duplicate world '" + w + "'");
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    for (const auto& [e, v] : rel(s)) {
      if (!seen.count(e.first) || !seen.count(e.second))
        throw FormatError("edge (" + e.first + ", " + e.second + ") mentions an unknown world");
      if (!in_unit_interval(v)) throw FormatError("relation value " + to_string(v) + " outside [0,1]");
    }
  }
}

bool operator==(const Frame& a, const Frame& b) {
  return a.worlds == b.worlds && a.rplus == b.rplus && a.rminus == b.rminus;
}

Rational Model::get_val(int side, const std::string& atom, const std::string& world) const {
  const Valuation& v = side == 1 ? v1 : v2;
  auto it = v.find(atom);
  if (it == v.end()) return 0;
  auto jt = it->second.find(world);
  return jt == it->second.end() ? Rational(0) : jt->second;
}

void Model::set_val(int side, const std::string& atom, const std::string& world, const Rational& val) {
  Valuation& v = side == 1 ? v1 : v2;
  if (val == 0) {
    auto it = v.find(atom);
    if (it == v.end()) return;
    it->second.erase(world);
    if (it->second.empty()) v.erase(it);
  } else {
    v[atom][world] = val;
  }
}

void Model::set_pair(const std::string& atom, const std::string& world, const TruthPair& val) {
  set_val(1, atom, world, val.pos);
  set_val(2, atom, world, val.neg);
}

void Model::validate() const {
  Frame::validate();
  for (const Valuation* v : {&v1, &v2}) {
    for (const auto& [atom, per_world] : *v) {
      for (const auto& [w, x] : per_world) {
        if (!has_world(w)) throw FormatError("valuation of '" + atom + "' mentions unknown world '" + w + "'");
        if (!in_unit_interval(x)) throw FormatError("value " + to_string(x) + " outside [0,1]");
      }
    }
  }
}

bool operator==(const Model& a, const Model& b) {
  return a.frame() == b.frame() && a.v1 == b.v1 && a.v2 == b.v2;
}

Evaluator::Evaluator(const Model& m) : names_(m.worlds) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names_.size(); ++i) index[names_[i]] = i;
  auto lookup = [&](const std::string& w) {
    auto it = index.find(w);
    if (it == index.end()) throw UnknownWorld(w);
    return it->second;
  };
  for (int s = 0; s < 2; ++s) {
    succ_[s].resize(names_.size());
    for (const auto& [e, v] : m.rel(s == 0 ? Sign::Plus : Sign::Minus))
      if (v != 0) succ_[s][lookup(e.first)].emplace_back(lookup(e.second), v);
  }
  for (int side = 1; side <= 2; ++side) {
    for (const auto& [atom, per_world] : side == 1 ? m.v1 : m.v2) {
      auto& vals = atoms_[atom];
      vals.resize(names_.size(), TruthPair{0, 0});
      for (const auto& [w, x] : per_world) (side == 1 ? vals[lookup(w)].pos : vals[lookup(w)].neg) = x;
    }
  }
}

TruthPair Evaluator::eval(const std::string& world, const Formula& f) {
  auto it = std::find(names_.begin(), names_.end(), world);
  if (it == names_.end()) throw UnknownWorld(world);
  return eval(static_cast<std::size_t>(it - names_.begin()), f);
}

TruthPair Evaluator::eval(std::size_t world, const Formula& f) {
  if (world >= names_.size()) throw UnknownWorld("#" + std::to_string(world));
  // Cached entries are keyed by node address; holding the root keeps those nodes alive.
  if (!root_ || root_->id() != f.id()) {
    memo_.clear();
    root_ = f;
  }
  return value(world, f);
}

TruthPair Evaluator::value(std::size_t w, const Formula& f) {
  Key key{f.id(), w};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  TruthPair r;
  switch (f.op()) {
    case Op::Atom: {
      auto it = atoms_.find(f.name());
      r = it == atoms_.end() ? TruthPair{0, 0} : it->second[w];
      break;
    }
    case Op::Top: r = {1, 0}; break;
    case Op::Bot: r = {0, 1}; break;
    case Op::Neg: {
      TruthPair a = value(w, f.arg());
      r = {a.neg, a.pos};
      break;
    }
    case Op::GNeg: {
      TruthPair a = value(w, f.arg());
      r = {g_neg(a.pos), g_coimpl(1, a.neg)};
      break;
    }
    case Op::Delta: {
      TruthPair a = value(w, f.arg());
      r = {g_delta(a.pos), g_neg(g_neg(a.neg))};
      break;
    }
    case Op::And: {
      TruthPair a = value(w, f.lhs()), b = value(w, f.rhs());
      r = {g_meet(a.pos, b.pos), g_join(a.neg, b.neg)};
      break;
    }
    case Op::Or: {
      TruthPair a = value(w, f.lhs()), b = value(w, f.rhs());
      r = {g_join(a.pos, b.pos), g_meet(a.neg, b.neg)};
      break;
    }
    case Op::Impl: {
      TruthPair a = value(w, f.lhs()), b = value(w, f.rhs());
      r = {g_impl(a.pos, b.pos), g_coimpl(b.neg, a.neg)};
      break;
    }
    case Op::Coimpl: {
      TruthPair a = value(w, f.lhs()), b = value(w, f.rhs());
      r = {g_coimpl(a.pos, b.pos), g_impl(b.neg, a.neg)};
      break;
    }
    case Op::Box: {
      r = {1, 0};
      for (const auto& [u, x] : succ_[0][w]) r.pos = g_meet(r.pos, g_impl(x, value(u, f.arg()).pos));
      for (const auto& [u, x] : succ_[1][w]) r.neg = g_join(r.neg, g_meet(x, value(u, f.arg()).neg));
      break;
    }
    case Op::Dia: {
      r = {0, 1};
      for (const auto& [u, x] : succ_[0][w]) r.pos = g_join(r.pos, g_meet(x, value(u, f.arg()).pos));
      for (const auto& [u, x] : succ_[1][w]) r.neg = g_meet(r.neg, g_impl(x, value(u, f.arg()).neg));
      break;
    }
  }
  memo_.emplace(key, r);
  return r;
}

TruthPair eval(const Model& m, const std::string& world, const Formula& f) {
  if (!m.has_world(world)) throw UnknownWorld(world);
  return Evaluator(m).eval(world, f);
}

ModelCheck check_valid_on_model(const Model& m, const Formula& f) {
  Evaluator ev(m);
  ModelCheck out;
  for (std::size_t w = 0; w < m.worlds.size(); ++w) {
    if (ev.eval(w, f) != TruthPair{1, 0}) {
      out.holds = false;
      out.failing_world = m.worlds[w];
      break;
    }
  }
  return out;
}

}  // namespace kg2
