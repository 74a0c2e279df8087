#pragma once

#include <iosfwd>
#include <vector>

#include "mdvsp/instance.hpp"

namespace mdvsp {

struct Arc {
  int tail;
  int head;
  long long cost;
};

/// The connection digraph G: one arc per present cost entry, including the
/// cost-0 depot self-loops. Arcs are ordered row-major by (tail, head), so
/// two networks built from equal instances index arcs identically.
/// Immutable after construction; the instance must outlive the network.
class ConnectionNetwork {
 public:
  explicit ConnectionNetwork(const Instance& inst);

  const Instance& instance() const { return *inst_; }
  int num_nodes() const { return inst_->num_nodes(); }
  int num_depots() const { return inst_->num_depots(); }
  int num_trips() const { return inst_->num_trips(); }
  bool is_depot(int v) const { return inst_->is_depot(v); }
  bool is_trip(int v) const { return inst_->is_trip(v); }

  const std::vector<Arc>& arcs() const { return arcs_; }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  const Arc& arc(int id) const { return arcs_[id]; }

  /// -1 when the arc does not exist.
  int arc_id(int i, int j) const { return lookup_[static_cast<std::size_t>(i) * num_nodes() + j]; }
  bool has_arc(int i, int j) const { return arc_id(i, j) >= 0; }
  long long arc_cost(int i, int j) const { return arcs_[arc_id(i, j)].cost; }

  /// Arc ids leaving / entering v, ascending by the other endpoint.
  const std::vector<int>& out_arcs(int v) const { return out_[v]; }
  const std::vector<int>& in_arcs(int v) const { return in_[v]; }

  int depot_loop_arc(int d) const { return loop_arc_[d]; }

  /// DOT dump of G for visualization tooling.
  void dump_graph(std::ostream& out) const;

 private:
  const Instance* inst_;
  std::vector<Arc> arcs_;
  std::vector<int> lookup_;
  std::vector<std::vector<int>> out_, in_;
  std::vector<int> loop_arc_;
};

inline ConnectionNetwork build_connection_network(const Instance& inst) {
  return ConnectionNetwork(inst);
}

}  // namespace mdvsp
