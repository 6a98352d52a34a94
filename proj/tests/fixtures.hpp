// Hand-built models shared by several test files.
#pragma once

#include "kg2/semantics.hpp"

namespace kg2::testing {

inline Rational q(long n, long d = 1) { return Rational(n) / d; }

// w0 sees w1 through R+, w2 through R-, w3 through both; crisp.
inline Model four_world_model() {
  Model m;
  m.worlds = {"w0", "w1", "w2", "w3"};
  m.set_rel(Sign::Plus, "w0", "w1", 1);
  m.set_rel(Sign::Minus, "w0", "w2", 1);
  m.set_rel(Sign::Plus, "w0", "w3", 1);
  m.set_rel(Sign::Minus, "w0", "w3", 1);
  m.set_pair("p", "w1", {q(4, 5), q(1, 4)});
  m.set_pair("p", "w2", {q(2, 5), q(3, 4)});
  m.set_pair("p", "w3", {q(3, 5), q(2, 4)});
  return m;
}

// One edge of value 1/2 on both relations, p = (1, 2/3) at its target.
inline Model half_edge_model() {
  Model m;
  m.worlds = {"w", "v"};
  m.set_rel(Sign::Plus, "w", "v", q(1, 2));
  m.set_rel(Sign::Minus, "w", "v", q(1, 2));
  m.set_pair("p", "v", {1, q(2, 3)});
  return m;
}

}  // namespace kg2::testing
