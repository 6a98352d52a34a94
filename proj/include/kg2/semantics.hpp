#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kg2/formula.hpp"
#include "kg2/rational.hpp"

namespace kg2 {

// Operations of the bi-Goedel algebra on [0,1].
Rational g_meet(const Rational& a, const Rational& b);
Rational g_join(const Rational& a, const Rational& b);
Rational g_impl(const Rational& a, const Rational& b);    ///< 1 if a <= b, else b
Rational g_coimpl(const Rational& a, const Rational& b);  ///< 0 if a <= b, else a
Rational g_neg(const Rational& a);                        ///< 1 iff a = 0
Rational g_delta(const Rational& a);                      ///< 1 iff a = 1

/// (support of truth, support of falsity).
struct TruthPair {
  Rational pos;
  Rational neg;
  friend bool operator==(const TruthPair&, const TruthPair&) = default;
};

/// "(x, y)"
std::string to_string(const TruthPair& v);

enum class Sign { Plus, Minus };

/// Worlds plus the two fuzzy accessibility relations. Absent edges have value 0;
/// stored edges are always non-zero.
struct Frame {
  using Edge = std::pair<std::string, std::string>;

  std::vector<std::string> worlds;
  std::map<Edge, Rational> rplus;
  std::map<Edge, Rational> rminus;

  bool has_world(const std::string& w) const;
  std::optional<std::size_t> world_index(const std::string& w) const;
  void add_world(const std::string& w);

  const std::map<Edge, Rational>& rel(Sign s) const { return s == Sign::Plus ? rplus : rminus; }
  std::map<Edge, Rational>& rel(Sign s) { return s == Sign::Plus ? rplus : rminus; }
  Rational get_rel(Sign s, const std::string& from, const std::string& to) const;
  /// Setting 0 erases the edge.
  void set_rel(Sign s, const std::string& from, const std::string& to, const Rational& v);

  bool crisp(Sign s) const;
  bool crisp() const { return crisp(Sign::Plus) && crisp(Sign::Minus); }
  bool mono_relational() const { return rplus == rminus; }

  /// Throws FormatError on duplicate worlds, unknown endpoints or values outside [0,1].
  void validate() const;
};

/// A frame with the two valuations, each atom -> world -> value.
struct Model : Frame {
  using Valuation = std::map<std::string, std::map<std::string, Rational>>;

  Valuation v1;
  Valuation v2;

  Model() = default;
  explicit Model(Frame f) : Frame(std::move(f)) {}

  const Frame& frame() const { return *this; }

  Rational get_val(int side, const std::string& atom, const std::string& world) const;
  /// Setting 0 erases the entry.
  void set_val(int side, const std::string& atom, const std::string& world, const Rational& v);
  void set_pair(const std::string& atom, const std::string& world, const TruthPair& v);

  void validate() const;
  friend bool operator==(const Model&, const Model&);
};

bool operator==(const Frame& a, const Frame& b);

/// Evaluates formulas on one model. Subformula values are cached per call.
class Evaluator {
 public:
  explicit Evaluator(const Model& m);

  TruthPair eval(const std::string& world, const Formula& f);
  TruthPair eval(std::size_t world, const Formula& f);

  std::size_t world_count() const { return names_.size(); }

 private:
  struct Key {
    const void* node;
    std::size_t world;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<const void*>{}(k.node) * 31 + k.world;
    }
  };

  TruthPair value(std::size_t w, const Formula& f);

  std::vector<std::string> names_;
  // succ_[sign][w] = list of (successor, value)
  std::vector<std::vector<std::pair<std::size_t, Rational>>> succ_[2];
  std::map<std::string, std::vector<TruthPair>> atoms_;
  std::unordered_map<Key, TruthPair, KeyHash> memo_;
  std::optional<Formula> root_;
};

/// One-shot evaluation. Throws UnknownWorld.
TruthPair eval(const Model& m, const std::string& world, const Formula& f);

struct ModelCheck {
  bool holds = true;
  std::optional<std::string> failing_world;
};

/// holds iff f has value (1,0) at every world.
ModelCheck check_valid_on_model(const Model& m, const Formula& f);

}  // namespace kg2
