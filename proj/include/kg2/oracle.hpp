#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "kg2/formula.hpp"
#include "kg2/semantics.hpp"

namespace kg2 {

struct OracleLimits {
  /// Maximal number of candidate models evaluated before BudgetExceeded.
  std::uint64_t max_models = 4'000'000'000ULL;
};

/// Result of a grid search. `found` means a countermodel (validity search) or a
/// satisfying model (satisfiability search) was located.
struct OracleResult {
  bool found = false;
  std::optional<Model> model;
  std::string world;
  int side = 0;  ///< validity search: 1 if v1 < 1 at `world`, 2 if v2 > 0
  std::uint64_t examined = 0;
};

/// Exhaustive search for a countermodel with at most `max_worlds` worlds and all
/// relation and atom values in {0, 1/denom, ..., 1}. Worlds are named w0, w1, ...
///
/// The search is exact over that class but skips models that are provably
/// redundant: failure is only tested at w0 (every model is enumerated under every
/// labelling), models in which some world is unreachable from w0 are skipped
/// (their reachable part is enumerated with fewer worlds), values that cannot
/// influence the tested component are fixed to 0, and the two ways of failing
/// (v1 < 1, v2 > 0) are searched one after the other.
OracleResult oracle_valid(const Formula& f, int max_worlds, int denom, const OracleLimits& limits = {});

/// Same grid class; looks for a world with value exactly (1,0).
OracleResult oracle_sat(const Formula& f, int max_worlds, int denom, const OracleLimits& limits = {});

}  // namespace kg2
