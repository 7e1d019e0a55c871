#include "padic/history.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace padic {

void History::validate() const {
  if (epochs.empty() || epochs.size() != route.size())
    throw std::invalid_argument("History: epochs and route must be nonempty and equal length");
  if (!epochs[0].is_zero())
    throw std::invalid_argument("History: first epoch must be 0");
  for (std::size_t i = 1; i < epochs.size(); ++i)
    if (!(epochs[i - 1] < epochs[i]))
      throw std::invalid_argument("History: epochs must increase strictly");
}

unsigned History::max_radius_exp() const {
  unsigned j = 0;
  for (const Ball& b : route) j = std::max(j, b.radius_exp());
  return j;
}

std::string History::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < epochs.size(); ++i) {
    if (i) os << ", ";
    os << "(" << epochs[i].to_string() << ", " << route[i].to_string() << ")";
  }
  return os.str();
}

}  // namespace padic
