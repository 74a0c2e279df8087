#pragma once

#include <string>
#include <vector>

#include "mdvsp/network.hpp"

namespace mdvsp {

/// Arc values x_ij for a ConnectionNetwork, indexed by arc id.
struct FlowSolution {
  std::vector<double> x;
  double objective = 0.0;
  bool integral = false;
};

/// Recomputes the objective from the network's costs (never trust a file).
double compute_objective(const ConnectionNetwork& net, const std::vector<double>& x);

/// Exact 64-bit objective of an integral solution.
long long integral_objective(const ConnectionNetwork& net, const FlowSolution& sol);

/// Degree-equation residual: max over nodes of |in-flow - r| and |out-flow - r|.
double max_degree_violation(const ConnectionNetwork& net, const std::vector<double>& x);

/// Rounded copy of an integral value; callers must have checked integrality.
long long rounded_flow(double v);

}  // namespace mdvsp
