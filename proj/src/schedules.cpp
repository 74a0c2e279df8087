#include "mdvsp/schedules.hpp"

#include <cmath>
#include <istream>
#include <sstream>

#include "mdvsp/errors.hpp"

namespace mdvsp {

namespace {

std::vector<long long> integral_flows(const FlowSolution& sol, const ConnectionNetwork& net) {
  if (!sol.integral) throw ValidationError("decompose needs an integral solution");
  std::vector<long long> f(net.num_arcs());
  for (int a = 0; a < net.num_arcs(); ++a) {
    if (std::abs(sol.x[a] - std::llround(sol.x[a])) > 1e-6)
      throw ValidationError("fractional value on arc " + std::to_string(a));
    f[a] = std::llround(sol.x[a]);
    if (f[a] < 0) throw ValidationError("negative flow on arc " + std::to_string(a));
  }
  return f;
}

}  // namespace

std::vector<Block> decompose(const FlowSolution& sol, const ConnectionNetwork& net) {
  std::vector<long long> flow = integral_flows(sol, net);
  const int m = net.num_depots();

  for (int t = m; t < net.num_nodes(); ++t) {
    long long in = 0, out = 0;
    for (int a : net.in_arcs(t)) in += flow[a];
    for (int a : net.out_arcs(t)) out += flow[a];
    if (in != 1 || out != 1)
      throw ValidationError("trip " + std::to_string(t) + " has in/out flow " +
                            std::to_string(in) + "/" + std::to_string(out));
  }

  std::vector<Block> blocks;
  for (int d = 0; d < m; ++d) {
    for (int a : net.out_arcs(d)) {  // ascending head order
      const Arc& pull_out = net.arc(a);
      if (pull_out.head == d) continue;  // unused-vehicle loop
      while (flow[a] > 0) {
        --flow[a];
        Block b;
        b.start_depot = d;
        b.cost = pull_out.cost;
        int v = pull_out.head;
        while (net.is_trip(v)) {
          b.trips.push_back(v);
          int next_arc = -1;
          for (int oa : net.out_arcs(v))
            if (flow[oa] > 0) {
              next_arc = oa;
              break;
            }
          if (next_arc < 0)
            throw ValidationError("walk stuck at trip " + std::to_string(v));
          --flow[next_arc];
          b.cost += net.arc(next_arc).cost;
          v = net.arc(next_arc).head;
        }
        b.end_depot = v;
        blocks.push_back(std::move(b));
      }
    }
  }
  return blocks;
}

std::vector<Subtour> find_infeasible(const std::vector<Block>& blocks) {
  std::vector<Subtour> subs;
  for (const Block& b : blocks)
    if (!b.feasible()) subs.push_back(b);
  return subs;
}

int DepotDigraph::weight(int i, int j) const {
  for (const auto& a : arcs)
    if (a.from == i && a.to == j) return static_cast<int>(a.subtour_indices.size());
  return 0;
}

DepotDigraph build_depot_digraph(const std::vector<Subtour>& subs, int num_depots) {
  DepotDigraph h;
  h.num_depots = num_depots;
  for (int k = 0; k < static_cast<int>(subs.size()); ++k) {
    const Subtour& s = subs[k];
    DepotDigraphArc* arc = nullptr;
    for (auto& a : h.arcs)
      if (a.from == s.start_depot && a.to == s.end_depot) {
        arc = &a;
        break;
      }
    if (!arc) {
      h.arcs.push_back({s.start_depot, s.end_depot, {}});
      arc = &h.arcs.back();
    }
    arc->subtour_indices.push_back(k);
  }
  return h;
}

long long block_cost(const Block& b, const ConnectionNetwork& net) {
  if (b.trips.empty()) return 0;  // parked vehicle
  long long c = net.arc_cost(b.start_depot, b.trips.front());
  for (std::size_t k = 0; k + 1 < b.trips.size(); ++k)
    c += net.arc_cost(b.trips[k], b.trips[k + 1]);
  c += net.arc_cost(b.trips.back(), b.end_depot);
  return c;
}

FlowSolution blocks_to_flow_solution(const std::vector<Block>& blocks,
                                     const ConnectionNetwork& net) {
  const int m = net.num_depots();
  std::vector<long long> starts(m, 0);
  FlowSolution sol;
  sol.integral = true;
  sol.x.assign(net.num_arcs(), 0.0);
  long long obj = 0;

  auto use_arc = [&](int i, int j) {
    const int a = net.arc_id(i, j);
    if (a < 0)
      throw ValidationError("block uses missing arc (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
    sol.x[a] += 1.0;
    obj += net.arc(a).cost;
  };

  for (const Block& b : blocks) {
    if (b.trips.empty()) continue;
    ++starts[b.start_depot];
    use_arc(b.start_depot, b.trips.front());
    for (std::size_t k = 0; k + 1 < b.trips.size(); ++k)
      use_arc(b.trips[k], b.trips[k + 1]);
    use_arc(b.trips.back(), b.end_depot);
  }
  for (int d = 0; d < m; ++d) {
    const long long idle = net.instance().depot_capacity()[d] - starts[d];
    if (idle < 0)
      throw RepairError("depot " + std::to_string(d) + " capacity exceeded: " +
                        std::to_string(starts[d]) + " > " +
                        std::to_string(net.instance().depot_capacity()[d]));
    sol.x[net.depot_loop_arc(d)] = static_cast<double>(idle);
  }
  sol.objective = static_cast<double>(obj);
  return sol;
}

std::string format_blocks(const std::vector<Block>& blocks) {
  std::ostringstream out;
  for (const Block& b : blocks) {
    out << b.start_depot << ':';
    for (int t : b.trips) out << ' ' << t;
    out << " -> " << b.end_depot << " (" << b.cost << ")\n";
  }
  return out.str();
}

std::vector<Block> parse_blocks(std::istream& in) {
  std::vector<Block> blocks;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    if (line[0] == '#') continue;
    Block b;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok) || tok.size() < 2 || tok.back() != ':')
      throw ParseError("line " + std::to_string(lineno) + ": expected 'depot:'");
    try {
      b.start_depot = std::stoi(tok.substr(0, tok.size() - 1));
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad depot '" + tok + "'");
    }
    bool saw_arrow = false;
    while (ss >> tok) {
      if (tok == "->") {
        saw_arrow = true;
        break;
      }
      try {
        b.trips.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": bad trip '" + tok + "'");
      }
    }
    if (!saw_arrow || !(ss >> b.end_depot))
      throw ParseError("line " + std::to_string(lineno) + ": expected '-> depot (cost)'");
    if (ss >> tok) {
      if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
        throw ParseError("line " + std::to_string(lineno) + ": bad cost '" + tok + "'");
      try {
        b.cost = std::stoll(tok.substr(1, tok.size() - 2));
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": bad cost '" + tok + "'");
      }
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

}  // namespace mdvsp
