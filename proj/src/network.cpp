#include "mdvsp/network.hpp"

#include <cmath>
#include <ostream>

#include "mdvsp/errors.hpp"
#include "mdvsp/solution.hpp"

namespace mdvsp {

ConnectionNetwork::ConnectionNetwork(const Instance& inst) : inst_(&inst) {
  if (auto violations = validate(inst); !violations.empty())
    throw ValidationError("invalid instance: " + violations.front() +
                          (violations.size() > 1
                               ? " (+" + std::to_string(violations.size() - 1) + " more)"
                               : ""));
  const int nn = inst.num_nodes();
  lookup_.assign(static_cast<std::size_t>(nn) * nn, -1);
  out_.assign(nn, {});
  in_.assign(nn, {});
  loop_arc_.assign(inst.num_depots(), -1);
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j)
      if (inst.has_arc(i, j)) {
        const int id = static_cast<int>(arcs_.size());
        arcs_.push_back({i, j, inst.arc_cost(i, j)});
        lookup_[static_cast<std::size_t>(i) * nn + j] = id;
        out_[i].push_back(id);
        in_[j].push_back(id);
        if (i == j) loop_arc_[i] = id;
      }
}

void ConnectionNetwork::dump_graph(std::ostream& out) const {
  out << "digraph G {\n";
  for (int d = 0; d < num_depots(); ++d)
    out << "  " << d << " [shape=box label=\"D" << d << " r=" << inst_->depot_capacity()[d]
        << "\"];\n";
  for (int t = num_depots(); t < num_nodes(); ++t)
    out << "  " << t << " [label=\"T" << t << "\"];\n";
  for (const Arc& a : arcs_)
    out << "  " << a.tail << " -> " << a.head << " [label=\"" << a.cost << "\"];\n";
  out << "}\n";
}

double compute_objective(const ConnectionNetwork& net, const std::vector<double>& x) {
  double obj = 0;
  for (int a = 0; a < net.num_arcs(); ++a) obj += static_cast<double>(net.arc(a).cost) * x[a];
  return obj;
}

long long integral_objective(const ConnectionNetwork& net, const FlowSolution& sol) {
  long long obj = 0;
  for (int a = 0; a < net.num_arcs(); ++a)
    obj += net.arc(a).cost * rounded_flow(sol.x[a]);
  return obj;
}

double max_degree_violation(const ConnectionNetwork& net, const std::vector<double>& x) {
  const int nn = net.num_nodes();
  double worst = 0;
  for (int v = 0; v < nn; ++v) {
    const double r = net.is_depot(v) ? static_cast<double>(net.instance().depot_capacity()[v])
                                     : 1.0;
    double in = 0, out = 0;
    for (int a : net.in_arcs(v)) in += x[a];
    for (int a : net.out_arcs(v)) out += x[a];
    worst = std::max(worst, std::abs(in - r));
    worst = std::max(worst, std::abs(out - r));
  }
  return worst;
}

long long rounded_flow(double v) { return std::llround(v); }

}  // namespace mdvsp
