#pragma once

#include <string>
#include <vector>

#include "mechlin/error.hpp"

namespace mechlin {

/// Multiple choice graded as "closest option not larger than the true
/// value": the largest option <= true_value.
inline double mc_floor_answer(double true_value, const std::vector<double>& options) {
  bool found = false;
  double best = 0.0;
  for (double o : options) {
    if (o <= true_value && (!found || o > best)) {
      best = o;
      found = true;
    }
  }
  if (!found)
    throw Error(ErrorCode::NoValidOption, "every option exceeds the true value",
                {{"true_value", std::to_string(true_value)}});
  return best;
}

}  // namespace mechlin
