#pragma once

#include <vector>

#include "mdvsp/network.hpp"
#include "mdvsp/solution.hpp"

namespace mdvsp {

enum class CircArcKind {
  kMapped,  // mirrors a non-loop arc of G; origin = G arc id
  kTrip,    // j- -> j+ with l = u = 1, cost 0; origin = trip node in G
  kBypass,  // depot source -> sink with u = r_d, cost 0; origin = depot
};

struct CircArc {
  int tail;
  int head;
  long long lower;
  long long upper;
  long long cost;
  CircArcKind kind;
  int origin;
};

/// The transformed transportation network R = (G', b, l, u, c'): per depot a
/// source (supply r_d) and a sink (demand r_d), per trip a split pair of
/// transit nodes joined by a saturated unit arc.
class CirculationNetwork {
 public:
  explicit CirculationNetwork(const ConnectionNetwork& g);

  int num_depots() const { return num_depots_; }
  int num_trips() const { return num_trips_; }
  int num_nodes() const { return 2 * (num_depots_ + num_trips_); }
  int g_arc_count() const { return g_arc_count_; }

  int depot_source(int d) const { return d; }
  int depot_sink(int d) const { return num_depots_ + d; }
  /// t is the trip's node id in G (m .. m+n-1).
  int trip_in(int t) const { return 2 * num_depots_ + 2 * (t - num_depots_); }
  int trip_out(int t) const { return trip_in(t) + 1; }

  const std::vector<CircArc>& arcs() const { return arcs_; }
  const std::vector<long long>& supply() const { return supply_; }
  int depot_loop_g_arc(int d) const { return loop_g_arc_[d]; }
  long long max_capacity() const { return max_capacity_; }

 private:
  int num_depots_;
  int num_trips_;
  int g_arc_count_;
  long long max_capacity_;
  std::vector<CircArc> arcs_;
  std::vector<long long> supply_;
  std::vector<int> loop_g_arc_;
};

inline CirculationNetwork build_circulation_network(const ConnectionNetwork& g) {
  return CirculationNetwork(g);
}

/// Integral flow per arc of the circulation network.
struct Circulation {
  std::vector<long long> flow;
  long long cost = 0;
};

/// Exact min-cost circulation by successive shortest paths with capacity
/// scaling. Throws InfeasibleError when some trip cannot be saturated.
/// Optimality is certified internally via node potentials.
Circulation solve_min_cost_circulation(const CirculationNetwork& net);

/// Maps a circulation back to arc values on G: mapped arcs carry their flow,
/// bypass flow becomes the depot self-loop value x_dd (unused vehicles).
FlowSolution circulation_to_flow_solution(const Circulation& c, const CirculationNetwork& net);

}  // namespace mdvsp
