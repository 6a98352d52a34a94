// Seeded random formulas and models shared by the property tests and the acceptance suite.
#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "kg2/formula.hpp"
#include "kg2/semantics.hpp"

namespace kg2::testing {

struct FormulaShape {
  int max_size = 9;
  int max_modalities = 3;
  std::vector<std::string> atoms = {"p", "q"};
  bool sugar = true;      ///< allow | -< ~ ^
  bool constants = true;  ///< allow 0 and 1
};

class FormulaGen {
 public:
  FormulaGen(std::uint64_t seed, FormulaShape shape) : rng_(seed), shape_(std::move(shape)) {}

  /// A formula with exactly `size` nodes and at most `modal_budget` modalities.
  Formula make(int size, int& modal_budget) {
    if (size <= 1) return leaf();
    std::vector<Op> ops = {Op::Neg, Op::Box, Op::Dia};
    if (shape_.sugar) {
      ops.push_back(Op::GNeg);
      ops.push_back(Op::Delta);
    }
    if (size >= 3) {
      for (Op op : {Op::And, Op::Impl}) ops.push_back(op);
      if (shape_.sugar)
        for (Op op : {Op::Or, Op::Coimpl}) ops.push_back(op);
    }
    Op op;
    do {
      op = ops[pick(ops.size())];
    } while (is_modal(op) && modal_budget == 0);
    if (is_modal(op)) --modal_budget;
    if (is_unary(op)) return Formula::unary(op, make(size - 1, modal_budget));
    int left = 1 + static_cast<int>(pick(static_cast<std::size_t>(size - 2)));
    Formula l = make(left, modal_budget);
    return Formula::binary(op, l, make(size - 1 - left, modal_budget));
  }

  Formula next() {
    int size = 1 + static_cast<int>(pick(static_cast<std::size_t>(shape_.max_size)));
    int budget = shape_.max_modalities;
    return make(size, budget);
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  Formula leaf() {
    std::size_t n = shape_.atoms.size() + (shape_.constants ? 2 : 0);
    std::size_t k = pick(n);
    if (k < shape_.atoms.size()) return Formula::atom(shape_.atoms[k]);
    return k == shape_.atoms.size() ? Formula::top() : Formula::bot();
  }

  std::mt19937_64 rng_;
  FormulaShape shape_;
};

/// `count` distinct formulas (structural equality), deterministic in `seed`.
inline std::vector<Formula> corpus(std::uint64_t seed, std::size_t count, FormulaShape shape = {}) {
  FormulaGen gen(seed, shape);
  std::vector<Formula> out;
  std::set<Formula> seen;
  while (out.size() < count) {
    Formula f = gen.next();
    if (seen.insert(f).second) out.push_back(f);
  }
  return out;
}

struct ModelShape {
  int min_worlds = 1;
  int max_worlds = 3;
  int denom = 6;          ///< values drawn from {0, 1/denom, ..., 1}
  double edge_prob = 0.5;
  bool crisp = false;     ///< relation values in {0,1}
  bool mono = false;      ///< R- = R+
  std::vector<std::string> atoms = {"p", "q"};
};

inline Model random_model(std::mt19937_64& rng, const ModelShape& s) {
  auto coin = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };
  auto value = [&] { return Rational(std::uniform_int_distribution<int>(0, s.denom)(rng)) / s.denom; };
  auto rel_value = [&] {
    if (s.crisp) return Rational(1);
    return Rational(std::uniform_int_distribution<int>(1, s.denom)(rng)) / s.denom;
  };
  Model m;
  int n = std::uniform_int_distribution<int>(s.min_worlds, s.max_worlds)(rng);
  for (int i = 0; i < n; ++i) m.worlds.push_back("w" + std::to_string(i));
  for (const auto& u : m.worlds) {
    for (const auto& v : m.worlds) {
      if (coin(s.edge_prob)) m.set_rel(Sign::Plus, u, v, rel_value());
      if (s.mono)
        m.set_rel(Sign::Minus, u, v, m.get_rel(Sign::Plus, u, v));
      else if (coin(s.edge_prob))
        m.set_rel(Sign::Minus, u, v, rel_value());
    }
  }
  for (const auto& a : s.atoms)
    for (const auto& w : m.worlds) m.set_pair(a, w, {value(), value()});
  return m;
}

}  // namespace kg2::testing
