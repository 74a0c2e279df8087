#include "mdvsp/repair.hpp"

#include <algorithm>
#include <limits>

#include "mdvsp/errors.hpp"

namespace mdvsp {

namespace {

bool compatible(const Subtour& p1, const Subtour& p2) {
  return p1.start_depot != p1.end_depot && p2.start_depot == p1.end_depot &&
         p2.end_depot == p1.start_depot;
}

// nullopt-aware "less" treating nullopt as +infinity.
bool cheaper(const std::optional<long long>& a, const std::optional<long long>& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

}  // namespace

std::pair<RepairOption, RepairOption> self_repair_options(
    const Subtour& p, const ConnectionNetwork& net, const std::vector<long long>& spare) {
  if (p.feasible() || p.trips.empty())
    throw ValidationError("self_repair_options needs an infeasible subtour");
  const int i = p.start_depot, j = p.end_depot;
  const int first = p.trips.front(), last = p.trips.back();

  RepairOption keep;
  keep.kind = RepairKind::kKeepStart;
  if (net.has_arc(last, i)) {
    keep.eligible = true;
    keep.penalty = net.arc_cost(last, i) - net.arc_cost(last, j);
  }

  RepairOption swap;
  swap.kind = RepairKind::kSwapStart;
  // Restarting from j occupies one more vehicle there.
  if (net.has_arc(j, first) && spare[j] >= 1) {
    swap.eligible = true;
    swap.penalty = net.arc_cost(j, first) - net.arc_cost(i, first);
  }
  return {keep, swap};
}

RepairOption pair_repair_option(const Subtour& p1, const Subtour& p2,
                                const ConnectionNetwork& net) {
  if (!compatible(p1, p2)) throw ValidationError("pair_repair_option needs a compatible pair");
  const int i = p1.start_depot, j = p1.end_depot;
  const int p = static_cast<int>(p1.trips.size());
  const int q = static_cast<int>(p2.trips.size());

  RepairOption best;
  best.kind = RepairKind::kPairCrossing;
  for (int h = 1; h <= p; ++h) {
    for (int k = 1; k <= q; ++k) {
      const int t1_h = p1.trips[h - 1];
      const int t2_k = p2.trips[k - 1];
      // Depot boundary conventions: t2_0 = j and t1_{p+1} = j.
      const int after_h = (h == p) ? j : p1.trips[h];
      const int before_k = (k == 1) ? j : p2.trips[k - 2];

      if (!net.has_arc(t1_h, t2_k)) continue;
      long long delta = net.arc_cost(t1_h, t2_k);
      if (h == p && k == 1) {
        // P2' degenerates to a parked vehicle at j; no second arc needed.
      } else {
        if (!net.has_arc(before_k, after_h)) continue;
        delta += net.arc_cost(before_k, after_h);
      }
      delta -= net.arc_cost(t1_h, after_h);
      delta -= net.arc_cost(before_k, t2_k);

      if (!best.eligible || delta < best.penalty) {
        best.eligible = true;
        best.penalty = delta;
        best.cut_h = h;
        best.cut_k = k;
      }
    }
  }
  (void)i;
  return best;
}

RepairGraph build_repair_graph(const std::vector<Subtour>& subs,
                               const ConnectionNetwork& net,
                               const std::vector<long long>& spare) {
  const int k = static_cast<int>(subs.size());
  RepairGraph g;
  g.size = k;
  g.gamma_keep.assign(k, std::vector<std::optional<long long>>(k));
  g.gamma_swap.assign(k, std::vector<std::optional<long long>>(k));
  g.pair_options.assign(k, std::vector<RepairOption>(k));
  g.self_options.reserve(k);

  for (int a = 0; a < k; ++a) {
    g.self_options.push_back(self_repair_options(subs[a], net, spare));
    const auto& [keep, swap] = g.self_options.back();
    if (keep.eligible) g.gamma_keep[a][a] = keep.penalty;
    if (swap.eligible) g.gamma_swap[a][a] = swap.penalty;
    for (int b = 0; b < k; ++b) {
      if (a == b || !compatible(subs[a], subs[b])) continue;
      RepairOption opt = pair_repair_option(subs[a], subs[b], net);
      opt.partner = b;
      g.pair_options[a][b] = opt;
      if (opt.eligible) {
        g.gamma_keep[a][b] = opt.penalty;
        g.gamma_swap[a][b] = opt.penalty;
      }
    }
  }
  return g;
}

MatchingResult min_weight_perfect_matching(const RepairWeights& w) {
  const int n = static_cast<int>(w.size());
  MatchingResult res;
  if (n == 0) return res;
  for (const auto& row : w)
    if (static_cast<int>(row.size()) != n)
      throw ValidationError("matching matrix must be square");

  using Wide = __int128;
  // Internal sentinels only: forbidden edges can never win against finite
  // ones, and the tree-search bound dwarfs any reachable label.
  constexpr Wide kForbidden = Wide(1) << 80;
  constexpr Wide kHuge = Wide(1) << 124;

  // Kuhn-Munkres with potentials, 1-based; row 0 / col 0 are scratch.
  std::vector<Wide> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  auto cost = [&](int i, int j) -> Wide {
    const auto& c = w[i - 1][j - 1];
    return c ? Wide(*c) : kForbidden;
  };

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kHuge);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      Wide delta = kHuge;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Wide cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  res.match.assign(n, -1);
  Wide total = 0;
  for (int j = 1; j <= n; ++j) {
    res.match[p[j] - 1] = j - 1;
    total += cost(p[j], j);
  }
  if (total >= kForbidden)
    throw RepairError("no all-eligible perfect matching in the repair graph");
  res.weight = static_cast<long long>(total);
  return res;
}

namespace {

struct RepairState {
  std::vector<Block> blocks;        // final blocks (feasible ones pass through)
  std::vector<long long> spare;     // unused vehicles per depot, updated live
  long long penalty = 0;
  int fixed = 0;
};

Block crossed_block_1(const Subtour& p1, const Subtour& p2, int h, int k) {
  Block b;
  b.start_depot = p1.start_depot;
  b.end_depot = p1.start_depot;
  b.trips.assign(p1.trips.begin(), p1.trips.begin() + h);
  b.trips.insert(b.trips.end(), p2.trips.begin() + (k - 1), p2.trips.end());
  return b;
}

Block crossed_block_2(const Subtour& p1, const Subtour& p2, int h, int k) {
  Block b;
  b.start_depot = p1.end_depot;
  b.end_depot = p1.end_depot;
  b.trips.assign(p2.trips.begin(), p2.trips.begin() + (k - 1));
  b.trips.insert(b.trips.end(), p1.trips.begin() + h, p1.trips.end());
  return b;
}

void apply_pair(RepairState& st, const Subtour& p1, const Subtour& p2,
                const RepairOption& opt, const ConnectionNetwork& net) {
  Block b1 = crossed_block_1(p1, p2, opt.cut_h, opt.cut_k);
  Block b2 = crossed_block_2(p1, p2, opt.cut_h, opt.cut_k);
  b1.cost = block_cost(b1, net);
  st.blocks.push_back(std::move(b1));
  if (b2.trips.empty()) {
    ++st.spare[p1.end_depot];  // P2's vehicle stays parked at its own depot
  } else {
    b2.cost = block_cost(b2, net);
    st.blocks.push_back(std::move(b2));
  }
  st.penalty += opt.penalty;
  st.fixed += 2;
}

void apply_self(RepairState& st, const Subtour& p, const RepairOption& opt,
                const ConnectionNetwork& net) {
  Block b = p;
  if (opt.kind == RepairKind::kKeepStart) {
    b.end_depot = p.start_depot;
  } else {
    b.start_depot = p.end_depot;
    --st.spare[p.end_depot];
    ++st.spare[p.start_depot];
  }
  b.cost = block_cost(b, net);
  st.blocks.push_back(std::move(b));
  st.penalty += opt.penalty;
  ++st.fixed;
}

// Cheapest currently-eligible self option, recomputed against live spare
// counts. preferred: 0 = keep-start bias (gamma'), 1 = swap-start bias.
void apply_best_self(RepairState& st, const Subtour& p, const ConnectionNetwork& net,
                     int preferred) {
  const auto [keep, swap] = self_repair_options(p, net, st.spare);
  const bool keep_ok = keep.eligible;
  const bool swap_ok = swap.eligible;
  if (!keep_ok && !swap_ok)
    throw RepairError("subtour " + std::to_string(p.start_depot) + "->" +
                      std::to_string(p.end_depot) + " has no eligible repair");
  bool use_swap;
  if (keep_ok && swap_ok) {
    if (keep.penalty == swap.penalty)
      use_swap = preferred == 1;
    else
      use_swap = swap.penalty < keep.penalty;
  } else {
    use_swap = swap_ok;
  }
  apply_self(st, p, use_swap ? swap : keep, net);
}

RepairOutcome finalize(RepairState&& st, const ConnectionNetwork& net) {
  RepairOutcome out;
  out.blocks = std::move(st.blocks);
  out.solution = blocks_to_flow_solution(out.blocks, net);
  out.objective = static_cast<long long>(out.solution.objective);
  out.penalty_applied = st.penalty;
  out.subtours_fixed = st.fixed;
  return out;
}

std::vector<long long> spare_counts(const FlowSolution& sol, const ConnectionNetwork& net) {
  std::vector<long long> spare(net.num_depots());
  for (int d = 0; d < net.num_depots(); ++d)
    spare[d] = rounded_flow(sol.x[net.depot_loop_arc(d)]);
  return spare;
}

}  // namespace

RepairOutcome repair_all_matching(const FlowSolution& sol, const ConnectionNetwork& net) {
  const std::vector<Block> blocks = decompose(sol, net);
  const std::vector<Subtour> subs = find_infeasible(blocks);

  RepairState st;
  st.spare = spare_counts(sol, net);
  for (const Block& b : blocks)
    if (b.feasible()) st.blocks.push_back(b);

  RepairOutcome base;
  if (subs.empty()) {
    base = finalize(std::move(st), net);
    base.solution = sol;  // nothing to repair: hand back the input unchanged
    base.blocks = blocks;
    base.objective = integral_objective(net, sol);
    return base;
  }

  const RepairGraph graph = build_repair_graph(subs, net, st.spare);

  std::optional<MatchingResult> keep_match, swap_match;
  try {
    keep_match = min_weight_perfect_matching(graph.gamma_keep);
  } catch (const RepairError&) {
  }
  try {
    swap_match = min_weight_perfect_matching(graph.gamma_swap);
  } catch (const RepairError&) {
  }
  if (!keep_match && !swap_match) {
    // Surface the subtour that blocks everything, if there is one.
    for (int a = 0; a < graph.size; ++a) {
      bool any = graph.gamma_keep[a][a].has_value() || graph.gamma_swap[a][a].has_value();
      for (int b = 0; b < graph.size && !any; ++b) any = graph.gamma_keep[a][b].has_value();
      if (!any)
        throw RepairError("subtour " + std::to_string(subs[a].start_depot) + "->" +
                          std::to_string(subs[a].end_depot) +
                          " has no eligible repair (all options ineligible)");
    }
    throw RepairError("no all-eligible perfect matching in either repair graph");
  }

  // Pick the cheaper matching; ties go to gamma'.
  bool use_swap_gamma;
  if (keep_match && swap_match)
    use_swap_gamma = swap_match->weight < keep_match->weight;
  else
    use_swap_gamma = !keep_match.has_value();
  const MatchingResult& chosen = use_swap_gamma ? *swap_match : *keep_match;
  const RepairWeights& gamma = use_swap_gamma ? graph.gamma_swap : graph.gamma_keep;

  RepairOutcome diag;  // filled at the end
  long long all_self = 0;
  bool all_self_ok = true;
  for (int a = 0; a < graph.size; ++a) {
    if (gamma[a][a])
      all_self += *gamma[a][a];
    else
      all_self_ok = false;
  }

  // Apply the matching: symmetric pair matches apply the crossing once;
  // asymmetric ones fall back to the subtour's cheaper eligible self repair.
  std::vector<char> processed(graph.size, 0);
  for (int a = 0; a < graph.size; ++a) {
    if (processed[a]) continue;
    const int b = chosen.match[a];
    if (b == a) {
      const auto& [keep, swap] = graph.self_options[a];
      const RepairOption& want = use_swap_gamma ? swap : keep;
      const RepairOption& other = use_swap_gamma ? keep : swap;
      // Re-check against live spare counts; the matching used a snapshot.
      const auto [keep_now, swap_now] = self_repair_options(subs[a], net, st.spare);
      const RepairOption& want_now = use_swap_gamma ? swap_now : keep_now;
      const RepairOption& other_now = use_swap_gamma ? keep_now : swap_now;
      (void)want;
      (void)other;
      if (want_now.eligible)
        apply_self(st, subs[a], want_now, net);
      else if (other_now.eligible)
        apply_self(st, subs[a], other_now, net);
      else
        throw RepairError("subtour " + std::to_string(subs[a].start_depot) + "->" +
                          std::to_string(subs[a].end_depot) +
                          " lost all eligible repairs during application");
      processed[a] = 1;
    } else if (!processed[b] && chosen.match[b] == a) {
      apply_pair(st, subs[a], subs[b], graph.pair_options[a][b], net);
      processed[a] = processed[b] = 1;
    } else {
      apply_best_self(st, subs[a], net, use_swap_gamma ? 1 : 0);
      processed[a] = 1;
    }
  }

  diag = finalize(std::move(st), net);
  diag.matching_weight = chosen.weight;
  if (all_self_ok) diag.all_self_weight = all_self;
  diag.gamma_used = use_swap_gamma ? '"' : '\'';
  return diag;
}

RepairOutcome repair_all_iterative(const FlowSolution& sol, const ConnectionNetwork& net) {
  const std::vector<Block> blocks = decompose(sol, net);
  const std::vector<Subtour> subs = find_infeasible(blocks);

  RepairState st;
  st.spare = spare_counts(sol, net);
  for (const Block& b : blocks)
    if (b.feasible()) st.blocks.push_back(b);

  if (subs.empty()) {
    RepairOutcome out = finalize(std::move(st), net);
    out.solution = sol;
    out.blocks = blocks;
    out.objective = integral_objective(net, sol);
    return out;
  }
  for (const Subtour& p : subs) apply_best_self(st, p, net, 0);
  return finalize(std::move(st), net);
}

}  // namespace mdvsp
