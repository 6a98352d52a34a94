#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "kg2/formula.hpp"
#include "kg2/semantics.hpp"
#include "kg2/tableau.hpp"

namespace kg2 {

struct LabelledResult {
  bool sat = false;  ///< a model with value (1,0) at `world` exists in the grid
  std::optional<Model> model;
  std::string world;
  std::uint64_t steps = 0;     ///< world labellings attempted
  std::size_t max_live = 0;    ///< largest number of labelled entries held at once
};

/// Searches for a model in which phi takes value (1,0), with every relation and
/// atom value in {0, 1/denom, ..., 1}.
///
/// Each world carries labels w:i:psi = v. Propositional labels are decomposed by
/// guessing exact child values; a modal label that needs a witness gets one
/// successor, reached through the relation of its side only, whose labels are the
/// witness value plus the bounds imposed by every other modal label of that side.
/// Successors are solved one at a time and forgotten once solved, so the live
/// labels are those of a single root-to-leaf path. `limits.max_states` caps the
/// number of world labellings tried.
LabelledResult labelled_solve(const Formula& phi, int denom, const TableauLimits& limits = {});

}  // namespace kg2
