#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kg2/formula.hpp"
#include "kg2/model_io.hpp"
#include "kg2/semantics.hpp"

namespace kg2 {

enum class ReduceMode { SatToFalsif, FalsifToSat };

/// SatToFalsif: ~~(phi -< 0), falsifiable iff phi is satisfiable.
/// FalsifToSat: ~~(1 -< phi), satisfiable iff phi is falsifiable.
Formula sat_falsif_reduce(const Formula& phi, ReduceMode mode);

/// ~(^phi & ~!phi): (0,1) where phi has value (1,0) and (1,0) everywhere else.
/// phi is satisfiable iff this is falsifiable, and falsifiable iff this is satisfiable.
Formula undesignated(const Formula& phi);

/// True iff phi only uses atoms, 0, &, |, ->, [] and <>.
bool is_classical(const Formula& phi);

/// Wraps every subformula occurrence, the root included, in ~~.
Formula nabla_transform(const Formula& phi);

/// Dualizing translation: atoms p become ^p, & and | swap, chi -> psi becomes
/// psi' -< chi', [] and <> swap, and 0 becomes 1.
Formula triangle_transform(const Formula& phi);

/// A Kripke model with a single crisp relation and a two-valued valuation.
struct ClassicalModel {
  std::vector<std::string> worlds;
  std::set<std::pair<std::string, std::string>> rel;
  std::map<std::string, std::set<std::string>> val;  ///< atom -> worlds where it holds

  bool has_world(const std::string& w) const;
  bool holds(const std::string& atom, const std::string& w) const;
};

/// Classical K satisfaction; 0 is falsum. Throws UnknownWorld and IllegalConnective.
bool k_eval(const ClassicalModel& m, const std::string& w, const Formula& phi);

struct KSearchResult {
  bool counter = false;  ///< false: no countermodel within the bound
  std::optional<ClassicalModel> model;
  std::string world;
  std::uint64_t examined = 0;
};

/// Exhaustive search over classical models with 1..max_worlds worlds on the atoms
/// of phi for a world falsifying phi. Throws BudgetExceeded past `max_models`.
KSearchResult k_countermodel_search(const Formula& phi, int max_worlds, std::uint64_t max_models = 100'000'000);

enum class EmbedSide { Positive, Negative };

/// Crisp image of m: both relations equal m.rel and both valuations equal m.val.
/// The side argument names the component the reduction reads; the image is the same.
Model embed_classical(const ClassicalModel& m, EmbedSide side);

/// {"worlds": [...], "rel": [[from, to], ...], "val": {atom: {world: "0"|"1"}}}
Json classical_to_json(const ClassicalModel& m);
ClassicalModel classical_from_json(const Json& doc);

}  // namespace kg2
