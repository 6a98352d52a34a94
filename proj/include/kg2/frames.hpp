#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kg2/formula.hpp"
#include "kg2/semantics.hpp"

namespace kg2 {

struct FrameReport {
  bool crisp_plus = true;
  bool crisp_minus = true;
  bool mono_relational = true;
  bool finitely_branching = true;  ///< stored frames are finite
  /// First offending edge per false flag, in world-list order.
  std::optional<Frame::Edge> crisp_plus_witness;
  std::optional<Frame::Edge> crisp_minus_witness;
  std::optional<Frame::Edge> mono_witness;
};

FrameReport frame_report(const Frame& f);

/// Swaps R+ and R- and maps each atom value (x, y) to (1-y, 1-x). Atoms that never
/// occur in m read as (0,0) and turn into (1,1) only when listed in `atoms`.
/// Throws NotCrisp.
Model star(const Model& m, const std::vector<std::string>& atoms = {});

/// One world of a split model: the edge from -> to of relation `sign` it stands
/// for, or an orphan of `sign` when `from` is empty.
struct SplitLabel {
  std::optional<std::string> from;
  Sign sign = Sign::Plus;
  std::string to;

  /// "(w,+,v)", or "(_,+,v)" for an orphan.
  std::string name() const;
};

struct Splitting {
  Model model;
  std::vector<SplitLabel> labels;  ///< parallel to model.worlds
  /// Original world -> split worlds standing for it (never empty).
  std::map<std::string, std::vector<std::string>> correspondence;
};

/// Builds one world per non-zero edge w S w' and per world with no S-predecessor
/// (for each S). Each world copies the valuation of its target; a world with
/// target u has an S-edge to the world of every edge u S u', with the same value.
Splitting split(const Model& m);

struct Countermodel {
  Model model;
  std::string world;
  Formula formula;
};

/// Sign +: w R+ w' = x in (0,1); p = (x,0) at w', (1,0) elsewhere; formula ^[]p -> []^p.
/// Sign -: w R- w' = y in (0,1); p = (1,y) at w', (1,1) at the other R- successors of w,
/// (1,0) elsewhere; formula <>~~p -> ~~<>p. Throws EdgeNotFractional.
Countermodel crispness_countermodel(const Frame& f, Sign sign, const std::string& w, const std::string& w2);

/// w R+ w' = x differs from w R- w' = y. p = (min(x,y), 0) at w', (1,0) elsewhere;
/// formula ([]p -> !<>!p) & (!<>!p -> []p). Throws EdgeNotDiffering.
Countermodel mono_countermodel(const Frame& f, const std::string& w, const std::string& w2);

/// ^[]p -> []^p, <>~~p -> ~~<>p, ([]p -> !<>!p) & (!<>!p -> []p), ~~[](p | ~p), 1 -< <>!(p | ~p)
const std::vector<Formula>& defining_formulas();

struct Violation {
  std::size_t formula = 0;  ///< index into defining_formulas()
  std::string world;
  Model model;
};

struct DefinabilityReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<std::size_t> violations_per_formula;
  std::vector<Violation> first_violation;  ///< at most one per formula, in formula order

  std::string to_text() const;
};

/// Evaluates the defining formulas at every world under `samples` seeded random
/// valuations of p with values in {0, 1/6, ..., 1}.
DefinabilityReport definability_suite(const Frame& f, std::size_t samples, std::uint64_t seed);

}  // namespace kg2
