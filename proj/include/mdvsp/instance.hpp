#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mdvsp {

/// In files an absent arc is written as -1. In memory absence is a distinct
/// state so missing arcs can never leak into cost arithmetic.
inline constexpr long long kAbsentArc = -1;

/// A scheduling instance: m depots (nodes 0..m-1), n trips (nodes m..m+n-1),
/// per-depot vehicle counts and an (m+n)x(m+n) arc cost matrix.
///
/// Mutation (set_arc / clear_arc) is a build-phase affordance; once populated
/// an Instance is treated as an immutable value and is safe to share
/// read-only across threads.
class Instance {
 public:
  Instance(int num_depots, int num_trips, std::vector<long long> depot_capacity,
           std::string name = "");

  int num_depots() const { return num_depots_; }
  int num_trips() const { return num_trips_; }
  int num_nodes() const { return num_depots_ + num_trips_; }
  bool is_depot(int v) const { return v >= 0 && v < num_depots_; }
  bool is_trip(int v) const { return v >= num_depots_ && v < num_nodes(); }

  const std::vector<long long>& depot_capacity() const { return depot_capacity_; }
  long long total_capacity() const;

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  bool has_arc(int i, int j) const { return present_[index(i, j)] != 0; }
  /// Cost of a present arc; throws if the arc is absent.
  long long arc_cost(int i, int j) const;
  std::optional<long long> arc_cost_opt(int i, int j) const;

  void set_arc(int i, int j, long long cost);
  void clear_arc(int i, int j);

  int num_arcs() const;

  bool operator==(const Instance& other) const;

 private:
  std::size_t index(int i, int j) const;

  int num_depots_;
  int num_trips_;
  std::vector<long long> depot_capacity_;
  std::string name_;
  std::vector<long long> cost_;
  std::vector<std::uint8_t> present_;
};

/// Timetable view of an instance: trip times, deadheads and depot movement
/// costs; arc existence is derived from these by build_costs_from_trips.
struct TripTable {
  int num_depots = 0;
  int num_trips = 0;
  std::vector<int> start_time;  // sigma, minutes
  std::vector<int> end_time;    // tau, minutes
  std::vector<std::vector<int>> deadhead;         // theta[i][j], n x n
  std::vector<std::vector<long long>> link_cost;  // n x n, used when the pair is feasible
  std::vector<std::vector<long long>> pull_out_cost;          // m x n
  std::vector<std::vector<long long>> pull_in_cost;           // m x n
  std::vector<std::vector<std::uint8_t>> pull_out_allowed;    // m x n
  std::vector<std::vector<std::uint8_t>> pull_in_allowed;     // m x n
  std::string name;
};

/// Trip pair (i, j) is feasible when tau_i + theta_ij <= sigma_j.
bool trip_pair_feasible(const TripTable& t, int i, int j);

/// Returns every invariant violation as a human-readable line; empty means
/// the instance is valid and every trip has at least one pull-out and one
/// pull-in arc.
std::vector<std::string> validate(const Instance& inst);

/// Canonical text format (see README): "m n" header, capacities line, then
/// m+n rows of m+n integers with -1 for absent arcs. The importer also
/// accepts the benchmark dialect where the capacities trail the header line.
Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);

void write_instance(const Instance& inst, std::ostream& out);
std::string write_instance(const Instance& inst);

Instance build_costs_from_trips(const TripTable& t);

struct GenParams {
  int num_depots = 4;
  int num_trips = 500;
  // 0/0 means: derive from n and m (roughly n/(2m) .. n/m per depot).
  int cap_min = 0;
  int cap_max = 0;
  int horizon = 960;  // minutes
  int dur_min = 30;
  int dur_max = 120;
  int deadhead_min = 5;
  int deadhead_max = 45;
  long long link_cost_min = 2;
  long long link_cost_max = 60;
  long long pull_cost_min = 300;
  long long pull_cost_max = 800;
};

TripTable generate_random_trip_table(const GenParams& p, std::uint64_t seed);
/// Deterministic in (params, seed); the result always passes validate().
Instance generate_random(const GenParams& p, std::uint64_t seed);

}  // namespace mdvsp
