#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mdvsp/network.hpp"
#include "mdvsp/solution.hpp"

namespace mdvsp {

/// One vehicle block: pull-out from start_depot, the trip sequence, pull-in
/// to end_depot. start != end marks an infeasible subtour.
struct Block {
  int start_depot = -1;
  int end_depot = -1;
  std::vector<int> trips;  // node ids in G, in service order
  long long cost = 0;

  bool feasible() const { return start_depot == end_depot; }
  bool operator==(const Block& o) const {
    return start_depot == o.start_depot && end_depot == o.end_depot && trips == o.trips;
  }
};

using Subtour = Block;

/// Splits an integral solution into blocks. Walks start from each depot in
/// index order, taking pull-out arcs in ascending head order, so the
/// decomposition is deterministic.
std::vector<Block> decompose(const FlowSolution& sol, const ConnectionNetwork& net);

/// The blocks whose endpoints differ, in their original order.
std::vector<Subtour> find_infeasible(const std::vector<Block>& blocks);

struct DepotDigraphArc {
  int from = -1;
  int to = -1;
  std::vector<int> subtour_indices;  // indices into the input subtour list
};

/// Auxiliary digraph H on the depots; arc weight w_ij counts the subtours
/// running i -> j.
struct DepotDigraph {
  int num_depots = 0;
  std::vector<DepotDigraphArc> arcs;

  int weight(int i, int j) const;
};

DepotDigraph build_depot_digraph(const std::vector<Subtour>& subs, int num_depots);

/// Rebuilds arc values (including depot loops) from a set of blocks.
/// Throws RepairError if some depot would need more than r_d vehicles.
FlowSolution blocks_to_flow_solution(const std::vector<Block>& blocks,
                                     const ConnectionNetwork& net);

/// Recomputes a block's cost from the network (pull-out + links + pull-in).
long long block_cost(const Block& b, const ConnectionNetwork& net);

/// Text format used by the CLI: one line per block,
/// "depot: t1 t2 ... tp -> depot (cost)".
std::string format_blocks(const std::vector<Block>& blocks);
std::vector<Block> parse_blocks(std::istream& in);

}  // namespace mdvsp
