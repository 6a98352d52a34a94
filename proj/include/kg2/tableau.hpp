#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kg2/formula.hpp"
#include "kg2/semantics.hpp"

namespace kg2 {

/// Hash-consed store of desugared formulas. Ids are dense and stable.
class FormulaPool {
 public:
  struct Entry {
    Op op;
    int a = -1;
    int b = -1;
    std::string atom;
  };

  /// Interns desugar(f) and all its subformulas.
  int intern(const Formula& f);

  const Entry& at(int id) const { return entries_[id]; }
  const Formula& formula(int id) const { return formulas_[id]; }
  std::size_t size() const { return entries_.size(); }

 private:
  int intern_core(const Formula& f);

  std::vector<Entry> entries_;
  std::vector<Formula> formulas_;
  std::unordered_map<Formula, int, FormulaHash> index_;
};

/// Term of a constraint: a constant, w:i:phi, or a relational term w R+/- w'.
struct Structure {
  enum class Kind : std::uint8_t { Const, At, Rel };

  Kind kind = Kind::Const;
  std::uint8_t tag = 0;  ///< Const: value 0/1; At: side 1/2; Rel: 0 for R+, 1 for R-
  int a = 0;             ///< At: world; Rel: source world
  int b = 0;             ///< At: formula id; Rel: target world

  static Structure constant(int v) { return {Kind::Const, static_cast<std::uint8_t>(v), 0, 0}; }
  static Structure rel(Sign s, int from, int to) {
    return {Kind::Rel, static_cast<std::uint8_t>(s == Sign::Plus ? 0 : 1), from, to};
  }
  /// w:side:phi; folds 1 and 0 into the constants they denote.
  static Structure at(const FormulaPool& pool, int world, int side, int fid);

  bool is_const(int v) const { return kind == Kind::Const && tag == v; }
  bool is_rel() const { return kind == Kind::Rel; }

  auto operator<=>(const Structure&) const = default;
};

struct StructureHash {
  std::size_t operator()(const Structure& s) const {
    return (static_cast<std::size_t>(s.kind) * 7 + s.tag) * 1000003u ^ (static_cast<std::size_t>(s.a) * 9176u) ^
           (static_cast<std::size_t>(s.b) << 20);
  }
};

/// lhs < rhs (strict) or lhs <= rhs.
struct Constraint {
  Structure lhs;
  bool strict = false;
  Structure rhs;

  auto operator<=>(const Constraint&) const = default;
};

struct ConstraintHash {
  std::size_t operator()(const Constraint& c) const {
    StructureHash h;
    return h(c.lhs) * 31 + h(c.rhs) * 7 + c.strict;
  }
};

enum class GoalKind { Falsify1, Falsify2, Satisfy };

struct TableauLimits {
  std::uint64_t max_states = 10'000;         ///< rule applications over the whole search
  std::size_t max_constraints = 200'000;     ///< constraints on a single branch
  double max_seconds = 60.0;
};

/// One instantiated rule: conclusions per alternative. A world id of -1 in a
/// conclusion stands for the (possibly not yet created) witness world.
struct RuleInstance {
  std::string rule;
  int priority = 0;
  std::size_t trigger = 0;  ///< index of the premise constraint on the branch
  int role = 0;             ///< 0: premise formula on the left, 1: on the right
  int rel_target = -1;      ///< universal rules: the successor world used
  /// Witness rules: (world, side, formula id) keying the shared witness world.
  std::optional<std::tuple<int, int, int>> witness_key;
  std::vector<std::vector<Constraint>> alternatives;
};

/// A tableau branch: constraints in insertion order plus saturation bookkeeping.
class Branch {
 public:
  enum class Status { Open, Closed, CompleteOpen };

  explicit Branch(std::shared_ptr<FormulaPool> pool);

  const FormulaPool& pool() const { return *pool_; }
  std::shared_ptr<FormulaPool> pool_ptr() const { return pool_; }
  const std::vector<Constraint>& constraints() const { return cons_; }
  bool contains(const Constraint& c) const { return set_.count(c) > 0; }
  int world_count() const { return worlds_; }
  /// Parent world of each world (-1 for the root), in creation order.
  const std::vector<int>& parents() const { return parents_; }
  Status status() const { return status_; }
  void set_status(Status s) { status_ = s; }

  /// Adds c unless it is trivially true; returns whether the branch changed.
  bool add(const Constraint& c);
  int new_world(int parent);

  /// Witness world shared by every witness rule triggered on (world, side, formula).
  std::optional<int> witness(int world, int side, int fid) const;
  int ensure_witness(int world, int side, int fid);

  bool expanded(const RuleInstance& r) const;
  void mark_expanded(const RuleInstance& r);

  /// Relational terms on the branch in order of first appearance.
  const std::vector<Structure>& rel_terms() const { return rels_; }

  std::string show(const Structure& s) const;
  std::string show(const Constraint& c) const;

 private:
  static bool trivial(const Constraint& c);
  void note_rel(const Structure& s);

  std::shared_ptr<FormulaPool> pool_;
  std::vector<Constraint> cons_;
  std::unordered_set<Constraint, ConstraintHash> set_;
  std::vector<Structure> rels_;
  std::unordered_set<Structure, StructureHash> rel_set_;
  int worlds_ = 0;
  std::vector<int> parents_;
  std::map<std::tuple<int, int, int>, int> witnesses_;
  std::set<std::tuple<std::string, std::size_t, int, int>> expanded_;
  Status status_ = Status::Open;
};

/// Seeds: Falsify1 {w0:1:phi < 1}, Falsify2 {0 < w0:2:phi}, Satisfy {1 <= w0:1:phi, w0:2:phi <= 0}.
Branch init_tableau(GoalKind goal, const Formula& phi);

/// Rule instances whose premises occur on the branch and which have not been applied,
/// in saturation order (priority, then trigger order, role, relational term).
std::vector<RuleInstance> applicable_rules(const Branch& b);

/// Closed iff the constraint graph, with implicit 0 <= s <= 1 and 0 < 1, has a
/// strongly connected component containing a strict edge.
bool is_closed(const Branch& b);

struct SaturationStats {
  std::uint64_t states = 0;
  std::size_t branches_closed = 0;
  std::size_t max_constraints = 0;
};

struct SaturationResult {
  bool closed = false;
  std::optional<Branch> open;  ///< first complete open branch in search order
  SaturationStats stats;
  std::vector<std::string> trace;
};

/// Depth-first saturation. Throws LimitExceeded.
SaturationResult saturate(const Branch& b, const TableauLimits& limits = {}, bool trace = false);

struct Extraction {
  Model model;
  std::string root;
  std::size_t class_count = 0;        ///< number of order classes used for ranking (#str)
  std::size_t atomic_structures = 0;  ///< |AStr(B)|
};

/// Builds a model realising a complete open branch; world i is named "wi".
/// Every constraint is checked against the model; failure raises InternalError.
Extraction extract_model(const Branch& b);

/// True iff the model realises every constraint of the branch, with branch world i as model world "wi".
bool realises(const Model& m, const Branch& b);

struct ProveResult {
  bool valid = false;
  std::optional<Model> model;
  std::string world;
  int side = 0;  ///< 1: v1 < 1 at world; 2: v2 > 0 at world
  SaturationStats stats[2];
  std::vector<std::string> trace;
};

ProveResult prove_valid(const Formula& phi, const TableauLimits& limits = {}, bool trace = false);

struct SatResult {
  bool sat = false;
  std::optional<Model> model;
  std::string world;
  SaturationStats stats;
  std::vector<std::string> trace;
};

SatResult check_sat(const Formula& phi, const TableauLimits& limits = {}, bool trace = false);

}  // namespace kg2
