#include "kg2/labelled.hpp"
#include "kg2/errors.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <unordered_map>

namespace kg2 {

namespace {

struct Label {
  int fid;
  int side;
  int val;
};

// A solved world: atom levels and the successors that witness its modal labels.
struct Tree {
  std::map<std::string, int> v1, v2;
  struct Kid {
    int sign;  // 0: R+, 1: R-
    int rel;
  };
  std::vector<Kid> kids;
  std::vector<Tree> subs;
};

class Solver {
 public:
  Solver(int denom, const TableauLimits& limits) : d_(denom), limits_(limits), start_(std::chrono::steady_clock::now()) {}

  FormulaPool pool;
  std::uint64_t steps = 0;
  std::size_t max_live = 0;

  bool solve_world(const std::vector<Label>& init, Tree& out) {
    if (++steps > limits_.max_states) throw LimitExceeded(LimitExceeded::Resource::States, "labelled solver");
    if ((steps & 255) == 0) {
      std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
      if (dt.count() > limits_.max_seconds) throw LimitExceeded(LimitExceeded::Resource::Time, "labelled solver");
    }
    World w;
    live_ += 1;  // the relational entry leading here
    bool ok = true;
    for (const auto& l : init)
      if (!add(w, l)) ok = false;
    if (ok) ok = propositional(w, 0, out);
    live_ -= w.labels.size() + 1;
    return ok;
  }

 private:
  struct World {
    std::vector<Label> labels;
    std::unordered_map<long long, int> value;  // key: fid * 2 + side - 1
  };

  static long long key(int fid, int side) { return static_cast<long long>(fid) * 2 + side - 1; }

  bool add(World& w, const Label& l) {
    auto [it, fresh] = w.value.emplace(key(l.fid, l.side), l.val);
    if (!fresh) return it->second == l.val;
    w.labels.push_back(l);
    ++live_;
    max_live = std::max(max_live, live_);
    return true;
  }

  void truncate(World& w, std::size_t n) {
    while (w.labels.size() > n) {
      const Label& l = w.labels.back();
      w.value.erase(key(l.fid, l.side));
      w.labels.pop_back();
      --live_;
    }
  }

  bool inf_type(Op op, int side) const { return (op == Op::Box) == (side == 1); }

  std::vector<std::vector<Label>> options(const Label& l) const {
    const auto& e = pool.at(l.fid);
    const int v = l.val, D = d_;
    std::vector<std::vector<Label>> out;
    switch (e.op) {
      case Op::Atom:
      case Op::Box:
      case Op::Dia:
        out.push_back({});
        break;
      case Op::Top:
        if (v == (l.side == 1 ? D : 0)) out.push_back({});
        break;
      case Op::Bot:
        if (v == (l.side == 1 ? 0 : D)) out.push_back({});
        break;
      case Op::Neg:
        out.push_back({{e.a, 3 - l.side, v}});
        break;
      case Op::And:
        // side 1 is a minimum, side 2 a maximum
        for (int x = 0; x <= D; ++x)
          for (int y = 0; y <= D; ++y)
            if ((l.side == 1 ? std::min(x, y) : std::max(x, y)) == v) out.push_back({{e.a, l.side, x}, {e.b, l.side, y}});
        break;
      case Op::Impl:
        for (int x = 0; x <= D; ++x) {
          for (int y = 0; y <= D; ++y) {
            // side 1: x ->G y ; side 2: y -<G x
            int r = l.side == 1 ? (x <= y ? D : y) : (y <= x ? 0 : y);
            if (r == v) out.push_back({{e.a, l.side, x}, {e.b, l.side, y}});
          }
        }
        break;
      default:
        throw InternalError("non-core connective in labelled solver");
    }
    return out;
  }

  bool propositional(World& w, std::size_t idx, Tree& out) {
    if (idx == w.labels.size()) return modal(w, out);
    Label l = w.labels[idx];
    for (const auto& opt : options(l)) {
      std::size_t mark = w.labels.size();
      bool ok = true;
      for (const auto& c : opt)
        if (!add(w, c)) {
          ok = false;
          break;
        }
      if (ok && propositional(w, idx + 1, out)) return true;
      truncate(w, mark);
    }
    return false;
  }

  bool modal(World& w, Tree& out) {
    Tree t;
    for (const auto& l : w.labels) {
      const auto& e = pool.at(l.fid);
      if (e.op == Op::Atom && l.val > 0) (l.side == 1 ? t.v1 : t.v2)[e.atom] = l.val;
    }
    for (const auto& l : w.labels) {
      const auto& e = pool.at(l.fid);
      if (e.op != Op::Box && e.op != Op::Dia) continue;
      bool inf = inf_type(e.op, l.side);
      if (inf ? l.val == d_ : l.val == 0) continue;  // no witness needed
      std::vector<std::pair<int, int>> choices;    // (relation value, witness value)
      if (inf) {
        for (int r = l.val + 1; r <= d_; ++r) choices.push_back({r, l.val});
      } else {
        for (int x = l.val; x <= d_; ++x) choices.push_back({l.val, x});
        for (int r = l.val + 1; r <= d_; ++r) choices.push_back({r, l.val});
      }
      bool found = false;
      for (auto [r, x] : choices) {
        if (successor(w, l.side, e.a, r, x, t)) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    out = std::move(t);
    return true;
  }

  // Tries to build a successor reached with value r through the relation of `side`,
  // where w:side:arg takes value x, subject to every modal label of that side at w.
  bool successor(const World& w, int side, int arg, int r, int x, Tree& parent) {
    std::map<int, std::pair<int, int>> bounds;  // fid -> [lo, hi]
    bounds[arg] = {x, x};
    for (const auto& l : w.labels) {
      const auto& e = pool.at(l.fid);
      if ((e.op != Op::Box && e.op != Op::Dia) || l.side != side) continue;
      auto it = bounds.emplace(e.a, std::make_pair(0, d_)).first;
      if (inf_type(e.op, side))
        it->second.first = std::max(it->second.first, std::min(r, l.val));  // r ->G y >= b
      else if (r > l.val)
        it->second.second = std::min(it->second.second, l.val);  // min(r, y) <= b
    }
    std::vector<std::pair<int, std::pair<int, int>>> slots;
    for (const auto& [fid, b] : bounds) {
      if (b.first > b.second) return false;
      if (b.first == 0 && b.second == d_) continue;
      slots.push_back({fid, b});
    }
    std::vector<int> cur;
    for (const auto& s : slots) cur.push_back(s.second.first);
    for (;;) {
      std::vector<Label> init;
      for (std::size_t i = 0; i < slots.size(); ++i) init.push_back({slots[i].first, side, cur[i]});
      Tree sub;
      if (solve_world(init, sub)) {
        parent.kids.push_back({side - 1, r});
        parent.subs.push_back(std::move(sub));
        return true;
      }
      std::size_t i = slots.size();
      while (i > 0) {
        --i;
        if (cur[i] < slots[i].second.second) {
          ++cur[i];
          break;
        }
        cur[i] = slots[i].second.first;
        if (i == 0) return false;
      }
      if (slots.empty()) return false;
    }
  }

  int d_;
  const TableauLimits& limits_;
  std::chrono::steady_clock::time_point start_;
  std::size_t live_ = 0;
};

void flatten(const Tree& t, int denom, Model& m, int& counter) {
  std::string name = "w" + std::to_string(counter++);
  m.worlds.push_back(name);
  for (const auto& [a, v] : t.v1) m.set_val(1, a, name, Rational(v) / denom);
  for (const auto& [a, v] : t.v2) m.set_val(2, a, name, Rational(v) / denom);
  for (std::size_t i = 0; i < t.kids.size(); ++i) {
    std::string child = "w" + std::to_string(counter);
    m.set_rel(t.kids[i].sign == 0 ? Sign::Plus : Sign::Minus, name, child, Rational(t.kids[i].rel) / denom);
    flatten(t.subs[i], denom, m, counter);
  }
}

}  // namespace

LabelledResult labelled_solve(const Formula& phi, int denom, const TableauLimits& limits) {
  if (denom < 1) throw std::invalid_argument("denominator must be at least 1");
  Solver s(denom, limits);
  int root = s.pool.intern(phi);
  Tree t;
  LabelledResult out;
  out.sat = s.solve_world({{root, 1, denom}, {root, 2, 0}}, t);
  out.steps = s.steps;
  out.max_live = s.max_live;
  if (!out.sat) return out;
  Model m;
  int counter = 0;
  flatten(t, denom, m, counter);
  out.world = "w0";
  if (eval(m, out.world, phi) != TruthPair{1, 0}) throw InternalError("labelled solver built a model that fails the formula");
  out.model = std::move(m);
  return out;
}

}  // namespace kg2
