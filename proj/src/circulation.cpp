#include "mdvsp/circulation.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>

#include "mdvsp/errors.hpp"

namespace mdvsp {

CirculationNetwork::CirculationNetwork(const ConnectionNetwork& g)
    : num_depots_(g.num_depots()),
      num_trips_(g.num_trips()),
      g_arc_count_(g.num_arcs()) {
  supply_.assign(num_nodes(), 0);
  loop_g_arc_.assign(num_depots_, -1);
  max_capacity_ = 1;

  const auto& caps = g.instance().depot_capacity();
  for (int d = 0; d < num_depots_; ++d) {
    supply_[depot_source(d)] = caps[d];
    supply_[depot_sink(d)] = -caps[d];
    loop_g_arc_[d] = g.depot_loop_arc(d);
    max_capacity_ = std::max(max_capacity_, caps[d]);
  }
  for (int t = num_depots_; t < g.num_nodes(); ++t)
    arcs_.push_back({trip_in(t), trip_out(t), 1, 1, 0, CircArcKind::kTrip, t});
  for (int d = 0; d < num_depots_; ++d)
    arcs_.push_back({depot_source(d), depot_sink(d), 0, caps[d], 0, CircArcKind::kBypass, d});
  for (int id = 0; id < g.num_arcs(); ++id) {
    const Arc& a = g.arc(id);
    if (a.tail == a.head) continue;  // depot loops are represented by the bypass
    int tail, head;
    if (g.is_depot(a.tail)) {
      tail = depot_source(a.tail);
      head = trip_in(a.head);
    } else if (g.is_depot(a.head)) {
      tail = trip_out(a.tail);
      head = depot_sink(a.head);
    } else {
      tail = trip_out(a.tail);
      head = trip_in(a.head);
    }
    arcs_.push_back({tail, head, 0, 1, a.cost, CircArcKind::kMapped, id});
  }
}

namespace {

constexpr long long kInfDist = std::numeric_limits<long long>::max() / 4;

// Residual edge; pair edges live at indices 2k / 2k+1.
struct ResidualEdge {
  int to;
  long long cap;
  long long cost;
};

struct SspState {
  int n = 0;
  std::vector<std::vector<int>> adj;  // node -> residual edge ids
  std::vector<ResidualEdge> edges;
  std::vector<long long> excess;
  std::vector<long long> pi;

  void add_edge(int from, int to, long long cap, long long cost) {
    adj[from].push_back(static_cast<int>(edges.size()));
    edges.push_back({to, cap, cost});
    adj[to].push_back(static_cast<int>(edges.size()));
    edges.push_back({from, 0, -cost});
  }

  long long reduced_cost(int from, const ResidualEdge& e) const {
    return e.cost + pi[from] - pi[e.to];
  }
};

// Label-correcting pass so arbitrary-sign costs yield valid potentials.
void init_potentials(SspState& s) {
  bool has_negative = false;
  for (std::size_t i = 0; i < s.edges.size(); ++i)
    if (s.edges[i].cap > 0 && s.edges[i].cost < 0) {
      has_negative = true;
      break;
    }
  if (!has_negative) return;

  std::vector<long long> dist(s.n, 0);  // virtual source at distance 0 to all
  std::deque<int> queue;
  std::vector<char> queued(s.n, 1);
  for (int v = 0; v < s.n; ++v) queue.push_back(v);
  long long pulls = 0;
  const long long pull_limit = 4LL * s.n * static_cast<long long>(s.edges.size() + 1);
  while (!queue.empty()) {
    if (++pulls > pull_limit)
      throw std::logic_error("negative cycle in circulation network");
    int v = queue.front();
    queue.pop_front();
    queued[v] = 0;
    for (int id : s.adj[v]) {
      const ResidualEdge& e = s.edges[id];
      if (e.cap <= 0) continue;
      if (dist[v] + e.cost < dist[e.to]) {
        dist[e.to] = dist[v] + e.cost;
        if (!queued[e.to]) {
          queued[e.to] = 1;
          queue.push_back(e.to);
        }
      }
    }
  }
  s.pi = dist;
}

// Dijkstra over residual edges with cap >= delta, early exit at the nearest
// deficit node. Ties pop the lowest node index. Returns that node or -1.
int shortest_path(SspState& s, int source, long long delta,
                  std::vector<long long>& dist, std::vector<int>& parent_edge) {
  dist.assign(s.n, kInfDist);
  parent_edge.assign(s.n, -1);
  dist[source] = 0;
  using Item = std::pair<long long, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0, source});
  std::vector<char> done(s.n, 0);
  int found = -1;
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = 1;
    if (s.excess[v] <= -delta) {
      found = v;
      break;
    }
    for (int id : s.adj[v]) {
      const ResidualEdge& e = s.edges[id];
      if (e.cap < delta || done[e.to]) continue;
      const long long nd = d + s.reduced_cost(v, e);
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        parent_edge[e.to] = id;
        heap.push({nd, e.to});
      }
    }
  }
  if (found < 0) return -1;
  // pi(v) -= min(dist(v), dist(target)) keeps reduced costs non-negative on
  // delta-capacitated residual arcs after early termination.
  const long long dt = dist[found];
  for (int v = 0; v < s.n; ++v) s.pi[v] -= std::min(dist[v], dt);
  return found;
}

}  // namespace

Circulation solve_min_cost_circulation(const CirculationNetwork& net) {
  SspState s;
  s.n = net.num_nodes();
  s.adj.assign(s.n, {});
  s.excess = net.supply();
  s.pi.assign(s.n, 0);

  // Strip lower bounds: route l units up front and shift the imbalances.
  const auto& arcs = net.arcs();
  s.edges.reserve(2 * arcs.size());
  for (const CircArc& a : arcs) {
    s.add_edge(a.tail, a.head, a.upper - a.lower, a.cost);
    if (a.lower > 0) {
      s.excess[a.tail] -= a.lower;
      s.excess[a.head] += a.lower;
    }
  }

  init_potentials(s);

  long long max_cap = 1;
  for (const CircArc& a : arcs) max_cap = std::max(max_cap, a.upper - a.lower);
  long long delta = 1;
  while (delta * 2 <= max_cap) delta *= 2;

  std::vector<long long> dist;
  std::vector<int> parent_edge;
  for (; delta >= 1; delta /= 2) {
    // Restore delta-optimality: saturate residual arcs that became eligible.
    for (int v = 0; v < s.n; ++v)
      for (int id : s.adj[v]) {
        ResidualEdge& e = s.edges[id];
        if (e.cap >= delta && s.reduced_cost(v, e) < 0) {
          s.excess[v] -= e.cap;
          s.excess[e.to] += e.cap;
          s.edges[id ^ 1].cap += e.cap;
          e.cap = 0;
        }
      }
    bool progress = true;
    while (progress) {
      progress = false;
      for (int v = 0; v < s.n; ++v) {
        while (s.excess[v] >= delta) {
          const int target = shortest_path(s, v, delta, dist, parent_edge);
          if (target < 0) break;
          long long push = std::min(s.excess[v], -s.excess[target]);
          for (int u = target; u != v;) {
            const int id = parent_edge[u];
            push = std::min(push, s.edges[id].cap);
            u = s.edges[id ^ 1].to;
          }
          for (int u = target; u != v;) {
            const int id = parent_edge[u];
            s.edges[id].cap -= push;
            s.edges[id ^ 1].cap += push;
            u = s.edges[id ^ 1].to;
          }
          s.excess[v] -= push;
          s.excess[target] += push;
          progress = true;
        }
      }
    }
  }

  for (int v = 0; v < s.n; ++v) {
    if (s.excess[v] == 0) continue;
    // Prefer a trip witness; j- nodes carry deficits, j+ nodes excesses.
    const int m = net.num_depots();
    for (int t = m; t < m + net.num_trips(); ++t) {
      if (s.excess[net.trip_in(t)] < 0 || s.excess[net.trip_out(t)] > 0)
        throw InfeasibleError("infeasible: trip " + std::to_string(t) +
                                  " cannot be saturated",
                              t);
    }
    throw InfeasibleError("infeasible: depot supply/demand cannot be routed");
  }

  // Optimality certificate: no residual arc with negative reduced cost.
  for (int v = 0; v < s.n; ++v)
    for (int id : s.adj[v]) {
      const ResidualEdge& e = s.edges[id];
      if (e.cap > 0 && s.reduced_cost(v, e) < 0)
        throw std::logic_error("optimality certificate violated");
    }

  Circulation out;
  out.flow.resize(arcs.size());
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const long long used = s.edges[2 * k + 1].cap;  // reverse cap == flow above lower
    out.flow[k] = arcs[k].lower + used;
    out.cost += out.flow[k] * arcs[k].cost;
  }
  return out;
}

FlowSolution circulation_to_flow_solution(const Circulation& c, const CirculationNetwork& net) {
  FlowSolution sol;
  sol.integral = true;
  sol.x.assign(net.g_arc_count(), 0.0);
  long long obj = 0;
  const auto& arcs = net.arcs();
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const CircArc& a = arcs[k];
    if (a.kind == CircArcKind::kMapped) {
      sol.x[a.origin] = static_cast<double>(c.flow[k]);
      obj += c.flow[k] * a.cost;
    } else if (a.kind == CircArcKind::kBypass) {
      sol.x[net.depot_loop_g_arc(a.origin)] = static_cast<double>(c.flow[k]);
    }
  }
  sol.objective = static_cast<double>(obj);
  return sol;
}

}  // namespace mdvsp
