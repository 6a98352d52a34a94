#include "kg2/oracle.hpp"
#include "kg2/errors.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <unordered_map>

namespace kg2 {

namespace {

struct Node {
  Op op;
  int a = -1;
  int b = -1;
  int atom = -1;
};

struct Flat {
  std::vector<Node> nodes;  // post-order; root is last
  std::vector<std::string> atom_names;
};

Flat flatten(const Formula& f) {
  Flat out;
  auto subs = subformulas(f);
  std::unordered_map<Formula, int, FormulaHash> index;
  out.atom_names = atoms(f);
  for (const auto& g : subs) {
    Node n{g.op()};
    if (g.op() == Op::Atom)
      n.atom = static_cast<int>(std::lower_bound(out.atom_names.begin(), out.atom_names.end(), g.name()) -
                                out.atom_names.begin());
    if (is_unary(g.op()) || is_binary(g.op())) n.a = index.at(g.arg());
    if (is_binary(g.op())) n.b = index.at(g.rhs());
    index.emplace(g, static_cast<int>(out.nodes.size()));
    out.nodes.push_back(n);
  }
  return out;
}

// Which atom components and relations can influence the given components of the root.
struct Relevance {
  std::set<std::pair<int, int>> atom_sides;  // (atom, side)
  bool rel[2] = {false, false};             // R+, R-
};

Relevance relevance(const Flat& fl, std::initializer_list<int> root_sides) {
  Relevance r;
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> todo;
  for (int s : root_sides) todo.push_back({static_cast<int>(fl.nodes.size()) - 1, s});
  while (!todo.empty()) {
    auto [i, s] = todo.back();
    todo.pop_back();
    if (!seen.insert({i, s}).second) continue;
    const Node& n = fl.nodes[i];
    switch (n.op) {
      case Op::Atom: r.atom_sides.insert({n.atom, s}); break;
      case Op::Top:
      case Op::Bot: break;
      case Op::Neg: todo.push_back({n.a, 3 - s}); break;
      case Op::GNeg:
      case Op::Delta: todo.push_back({n.a, s}); break;
      case Op::And:
      case Op::Or:
      case Op::Impl:
      case Op::Coimpl:
        todo.push_back({n.a, s});
        todo.push_back({n.b, s});
        break;
      case Op::Box:
      case Op::Dia:
        r.rel[s - 1] = true;
        todo.push_back({n.a, s});
        break;
    }
  }
  return r;
}

enum class Goal { FailSide1, FailSide2, Satisfy };

class GridSearch {
 public:
  GridSearch(const Flat& fl, int worlds, int denom, const Relevance& rel, Goal goal, std::uint64_t& examined,
             std::uint64_t cap)
      : fl_(fl), n_(worlds), d_(denom), goal_(goal), examined_(examined), cap_(cap) {
    for (int s = 0; s < 2; ++s) {
      if (!rel.rel[s]) continue;
      for (int u = 0; u < n_; ++u)
        for (int v = 0; v < n_; ++v) rel_slots_.push_back({s, u, v});
    }
    for (auto [atom, side] : rel.atom_sides)
      for (int w = 0; w < n_; ++w) atom_slots_.push_back({atom, side, w});
    relv_.assign(2, std::vector<int>(n_ * n_, 0));
    atomv_.assign(fl_.atom_names.size() * 2, std::vector<int>(n_, 0));
    pos_.assign(fl_.nodes.size(), std::vector<int>(n_, 0));
    neg_ = pos_;
  }

  bool run() {
    std::vector<int> rv(rel_slots_.size(), 0);
    do {
      for (std::size_t i = 0; i < rel_slots_.size(); ++i) relv_[rel_slots_[i][0]][rel_slots_[i][1] * n_ + rel_slots_[i][2]] = rv[i];
      if (!all_reachable()) continue;
      std::vector<int> av(atom_slots_.size(), 0);
      do {
        for (std::size_t i = 0; i < atom_slots_.size(); ++i) {
          const auto& s = atom_slots_[i];
          atomv_[s[0] * 2 + (s[1] - 1)][s[2]] = av[i];
        }
        if (++examined_ > cap_) throw BudgetExceeded("oracle enumeration passed " + std::to_string(cap_) + " models");
        if (hit()) return true;
      } while (advance(av));
    } while (advance(rv));
    return false;
  }

  Model model() const {
    Model m;
    for (int w = 0; w < n_; ++w) m.worlds.push_back("w" + std::to_string(w));
    for (int s = 0; s < 2; ++s)
      for (int u = 0; u < n_; ++u)
        for (int v = 0; v < n_; ++v)
          m.set_rel(s == 0 ? Sign::Plus : Sign::Minus, m.worlds[u], m.worlds[v], Rational(relv_[s][u * n_ + v]) / d_);
    for (std::size_t a = 0; a < fl_.atom_names.size(); ++a)
      for (int side = 1; side <= 2; ++side)
        for (int w = 0; w < n_; ++w)
          m.set_val(side, fl_.atom_names[a], m.worlds[w], Rational(atomv_[a * 2 + side - 1][w]) / d_);
    return m;
  }

 private:
  bool advance(std::vector<int>& digits) const {
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (digits[i] < d_) {
        ++digits[i];
        return true;
      }
      digits[i] = 0;
    }
    return false;
  }

  bool all_reachable() const {
    std::vector<char> seen(n_, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n_; ++v) {
        if (seen[v] || (relv_[0][u * n_ + v] == 0 && relv_[1][u * n_ + v] == 0)) continue;
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
    return count == n_;
  }

  bool hit() {
    const int top = d_;
    for (std::size_t i = 0; i < fl_.nodes.size(); ++i) {
      const Node& nd = fl_.nodes[i];
      auto& P = pos_[i];
      auto& N = neg_[i];
      for (int w = 0; w < n_; ++w) {
        int p = 0, q = 0;
        switch (nd.op) {
          case Op::Atom:
            p = atomv_[nd.atom * 2][w];
            q = atomv_[nd.atom * 2 + 1][w];
            break;
          case Op::Top: p = top; q = 0; break;
          case Op::Bot: p = 0; q = top; break;
          case Op::Neg: p = neg_[nd.a][w]; q = pos_[nd.a][w]; break;
          case Op::GNeg:
            p = pos_[nd.a][w] == 0 ? top : 0;
            q = neg_[nd.a][w] >= top ? 0 : top;
            break;
          case Op::Delta:
            p = pos_[nd.a][w] == top ? top : 0;
            q = neg_[nd.a][w] > 0 ? top : 0;
            break;
          case Op::And:
            p = std::min(pos_[nd.a][w], pos_[nd.b][w]);
            q = std::max(neg_[nd.a][w], neg_[nd.b][w]);
            break;
          case Op::Or:
            p = std::max(pos_[nd.a][w], pos_[nd.b][w]);
            q = std::min(neg_[nd.a][w], neg_[nd.b][w]);
            break;
          case Op::Impl: {
            int a1 = pos_[nd.a][w], b1 = pos_[nd.b][w], a2 = neg_[nd.a][w], b2 = neg_[nd.b][w];
            p = a1 <= b1 ? top : b1;
            q = b2 <= a2 ? 0 : b2;
            break;
          }
          case Op::Coimpl: {
            int a1 = pos_[nd.a][w], b1 = pos_[nd.b][w], a2 = neg_[nd.a][w], b2 = neg_[nd.b][w];
            p = a1 <= b1 ? 0 : a1;
            q = b2 <= a2 ? top : a2;
            break;
          }
          case Op::Box:
            p = top;
            q = 0;
            for (int v = 0; v < n_; ++v) {
              int rp = relv_[0][w * n_ + v], rm = relv_[1][w * n_ + v];
              if (rp > 0) p = std::min(p, rp <= pos_[nd.a][v] ? top : pos_[nd.a][v]);
              if (rm > 0) q = std::max(q, std::min(rm, neg_[nd.a][v]));
            }
            break;
          case Op::Dia:
            p = 0;
            q = top;
            for (int v = 0; v < n_; ++v) {
              int rp = relv_[0][w * n_ + v], rm = relv_[1][w * n_ + v];
              if (rp > 0) p = std::max(p, std::min(rp, pos_[nd.a][v]));
              if (rm > 0) q = std::min(q, rm <= neg_[nd.a][v] ? top : neg_[nd.a][v]);
            }
            break;
        }
        P[w] = p;
        N[w] = q;
      }
    }
    int p = pos_.back()[0], q = neg_.back()[0];
    switch (goal_) {
      case Goal::FailSide1: return p < top;
      case Goal::FailSide2: return q > 0;
      case Goal::Satisfy: return p == top && q == 0;
    }
    return false;
  }

  const Flat& fl_;
  int n_;
  int d_;
  Goal goal_;
  std::uint64_t& examined_;
  std::uint64_t cap_;
  std::vector<std::array<int, 3>> rel_slots_;   // (sign, from, to)
  std::vector<std::array<int, 3>> atom_slots_;  // (atom, side, world)
  std::vector<std::vector<int>> relv_;
  std::vector<std::vector<int>> atomv_;
  std::vector<std::vector<int>> pos_, neg_;
};

void check_args(int max_worlds, int denom) {
  if (max_worlds < 1) throw std::invalid_argument("max_worlds must be at least 1");
  if (denom < 1) throw std::invalid_argument("denominator must be at least 1");
}

void verify(const OracleResult& r, const Formula& f, Goal goal) {
  TruthPair v = eval(*r.model, r.world, f);
  bool ok = goal == Goal::FailSide1   ? v.pos < 1
            : goal == Goal::FailSide2 ? v.neg > 0
                                      : v == TruthPair{1, 0};
  if (!ok) throw InternalError("grid search reported a model the evaluator rejects");
}

}  // namespace

OracleResult oracle_valid(const Formula& f, int max_worlds, int denom, const OracleLimits& limits) {
  check_args(max_worlds, denom);
  Flat fl = flatten(f);
  Relevance rel1 = relevance(fl, {1}), rel2 = relevance(fl, {2});
  OracleResult out;
  for (int n = 1; n <= max_worlds; ++n) {
    for (Goal g : {Goal::FailSide1, Goal::FailSide2}) {
      GridSearch s(fl, n, denom, g == Goal::FailSide1 ? rel1 : rel2, g, out.examined, limits.max_models);
      if (s.run()) {
        out.found = true;
        out.model = s.model();
        out.world = "w0";
        out.side = g == Goal::FailSide1 ? 1 : 2;
        verify(out, f, g);
        return out;
      }
    }
  }
  return out;
}

OracleResult oracle_sat(const Formula& f, int max_worlds, int denom, const OracleLimits& limits) {
  check_args(max_worlds, denom);
  Flat fl = flatten(f);
  Relevance rel = relevance(fl, {1, 2});
  OracleResult out;
  for (int n = 1; n <= max_worlds; ++n) {
    GridSearch s(fl, n, denom, rel, Goal::Satisfy, out.examined, limits.max_models);
    if (s.run()) {
      out.found = true;
      out.model = s.model();
      out.world = "w0";
      verify(out, f, Goal::Satisfy);
      return out;
    }
  }
  return out;
}

}  // namespace kg2
