#pragma once

#include <string>
#include <vector>

#include "padic/elements.hpp"
#include "padic/rational.hpp"

namespace padic {

/// A history: strictly increasing epochs t_0 = 0 < t_1 < ... paired with a
/// route of balls of the same length. The associated cylinder set is the set
/// of paths that sit inside route[i] at time epochs[i]; it has positive
/// probability only when route[0] contains 0.
struct History {
  std::vector<Rat> epochs;
  std::vector<Ball> route;

  /// Throws std::invalid_argument unless the epochs start at 0, increase
  /// strictly, and match the route in length (nonempty).
  void validate() const;

  unsigned max_radius_exp() const;

  std::string to_string() const;  // "(0, B(0,p^-0)), (1, B(0,p^-1))"
};

}  // namespace padic
