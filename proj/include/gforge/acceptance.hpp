#pragma once

#include <string>
#include <vector>

#include "gforge/fibre.hpp"

namespace gforge {

struct AcceptanceOptions {
  int jobs = 1;
  int quotient_degree = 5;
};

struct AcceptanceResult {
  int criterion = 0;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// The numbered exit-gate checks, 1..9. Each runs end to end, measures wall
// clock, and enforces its own time bound where one is part of the criterion.
AcceptanceResult run_criterion(int criterion, const AcceptanceOptions& opt = {});
int num_criteria();

// Hand-built fixtures: a two-generator group with central kernel generator
// over a free quotient, and the same over a trivial quotient. Small enough
// to cross-check the emitted pullback presentations against known answers.
FibreInput toy_commuting_input();
FibreInput toy_collapsing_input();

}  // namespace gforge
