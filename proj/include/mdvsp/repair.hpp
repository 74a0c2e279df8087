#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mdvsp/network.hpp"
#include "mdvsp/schedules.hpp"
#include "mdvsp/solution.hpp"

namespace mdvsp {

enum class RepairKind {
  kKeepStart,     // P': reroute the pull-in back to the start depot
  kSwapStart,     // P'': restart the block from the end depot
  kPairCrossing,  // exchange tails with a compatible subtour
};

/// One candidate repair. Ineligible options carry no penalty value at all;
/// +infinity is a state, never a number.
struct RepairOption {
  RepairKind kind = RepairKind::kKeepStart;
  bool eligible = false;
  long long penalty = 0;  // meaningful only when eligible
  int cut_h = 0;          // pair: position in P1 (1-based)
  int cut_k = 0;          // pair: position in P2 (1-based)
  int partner = -1;       // pair: index of P2 in the subtour list
};

/// Weight matrix entry for the bipartite repair graph; nullopt = ineligible.
using RepairWeights = std::vector<std::vector<std::optional<long long>>>;

/// Bipartite graph H = (S, T; E) on the subtours: self edges P P' and pair
/// edges P1 P2' for compatible pairs, weighted by gamma' / gamma'' which
/// differ only on the self edges.
struct RepairGraph {
  int size = 0;
  RepairWeights gamma_keep;  // gamma': self edge = c'(P)
  RepairWeights gamma_swap;  // gamma'': self edge = c''(P)
  std::vector<std::pair<RepairOption, RepairOption>> self_options;  // (P', P'')
  std::vector<std::vector<RepairOption>> pair_options;              // [a][b]
};

/// (P', P'') options for one infeasible subtour. `spare` holds the current
/// number of unused vehicles per depot; P'' needs spare at the new start.
std::pair<RepairOption, RepairOption> self_repair_options(
    const Subtour& p, const ConnectionNetwork& net, const std::vector<long long>& spare);

/// Cheapest crossing of a compatible pair (P1: i->j, P2: j->i) over all cut
/// positions (h, k); boundary cuts may reroute through the depot, and
/// (h, k) = (p, 1) parks P2's vehicle. Ineligible when no cut has both
/// inserted arcs in G.
RepairOption pair_repair_option(const Subtour& p1, const Subtour& p2,
                                const ConnectionNetwork& net);

RepairGraph build_repair_graph(const std::vector<Subtour>& subs,
                               const ConnectionNetwork& net,
                               const std::vector<long long>& spare);

struct MatchingResult {
  std::vector<int> match;  // left index -> right index
  long long weight = 0;
};

/// Minimum-weight perfect matching (Hungarian / Kuhn-Munkres, O(k^3)).
/// Ties are resolved by the lowest-index augmenting choice. Throws
/// RepairError when no all-eligible perfect matching exists.
MatchingResult min_weight_perfect_matching(const RepairWeights& w);

struct RepairOutcome {
  FlowSolution solution;
  std::vector<Block> blocks;
  long long objective = 0;
  long long penalty_applied = 0;
  int subtours_fixed = 0;
  // Diagnostics for the matching strategy.
  long long matching_weight = 0;
  std::optional<long long> all_self_weight;  // same gamma; nullopt if not all eligible
  char gamma_used = '\'';                    // '\'' or '"'
};

/// Global repair via the two minimum-weight matchings; the cheaper one is
/// post-processed so that each subtour is repaired exactly once. See README
/// for the exact application order.
RepairOutcome repair_all_matching(const FlowSolution& sol, const ConnectionNetwork& net);

/// Baseline: every subtour repaired independently by its cheaper eligible
/// self option.
RepairOutcome repair_all_iterative(const FlowSolution& sol, const ConnectionNetwork& net);

}  // namespace mdvsp
