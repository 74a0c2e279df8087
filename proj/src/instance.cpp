#include "mdvsp/instance.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <string>

#include "mdvsp/errors.hpp"
#include "mdvsp/util.hpp"

namespace mdvsp {

namespace {

void check_node(const Instance& inst, int v, const char* what) {
  if (v < 0 || v >= inst.num_nodes())
    throw std::out_of_range(std::string(what) + " node index " + std::to_string(v));
}

}  // namespace

Instance::Instance(int num_depots, int num_trips, std::vector<long long> depot_capacity,
                   std::string name)
    : num_depots_(num_depots),
      num_trips_(num_trips),
      depot_capacity_(std::move(depot_capacity)),
      name_(std::move(name)) {
  if (num_depots_ < 1 || num_trips_ < 1)
    throw ValidationError("instance needs at least one depot and one trip");
  if (static_cast<int>(depot_capacity_.size()) != num_depots_)
    throw ValidationError("capacity list length != number of depots");
  const std::size_t nn = static_cast<std::size_t>(num_nodes()) * num_nodes();
  cost_.assign(nn, 0);
  present_.assign(nn, 0);
  for (int d = 0; d < num_depots_; ++d) present_[index(d, d)] = 1;  // loop cost 0
}

std::size_t Instance::index(int i, int j) const {
  return static_cast<std::size_t>(i) * num_nodes() + j;
}

long long Instance::total_capacity() const {
  long long s = 0;
  for (long long r : depot_capacity_) s += r;
  return s;
}

long long Instance::arc_cost(int i, int j) const {
  if (!has_arc(i, j))
    throw std::logic_error("arc_cost on absent arc (" + std::to_string(i) + "," +
                           std::to_string(j) + ")");
  return cost_[index(i, j)];
}

std::optional<long long> Instance::arc_cost_opt(int i, int j) const {
  if (!has_arc(i, j)) return std::nullopt;
  return cost_[index(i, j)];
}

void Instance::set_arc(int i, int j, long long cost) {
  check_node(*this, i, "set_arc tail");
  check_node(*this, j, "set_arc head");
  cost_[index(i, j)] = cost;
  present_[index(i, j)] = 1;
}

void Instance::clear_arc(int i, int j) {
  check_node(*this, i, "clear_arc tail");
  check_node(*this, j, "clear_arc head");
  cost_[index(i, j)] = 0;
  present_[index(i, j)] = 0;
}

int Instance::num_arcs() const {
  int c = 0;
  for (std::uint8_t p : present_) c += p;
  return c;
}

bool Instance::operator==(const Instance& other) const {
  if (num_depots_ != other.num_depots_ || num_trips_ != other.num_trips_ ||
      depot_capacity_ != other.depot_capacity_ || present_ != other.present_)
    return false;
  for (std::size_t k = 0; k < cost_.size(); ++k)
    if (present_[k] && cost_[k] != other.cost_[k]) return false;
  return true;
}

std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> v;
  const int m = inst.num_depots();
  const int n = inst.num_trips();
  for (int d = 0; d < m; ++d)
    if (inst.depot_capacity()[d] < 0)
      v.push_back("negative capacity at depot " + std::to_string(d));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) {
        if (!inst.has_arc(i, i))
          v.push_back("missing depot self-loop " + std::to_string(i));
        else if (inst.arc_cost(i, i) != 0)
          v.push_back("depot self-loop " + std::to_string(i) + " has nonzero cost");
      } else if (inst.has_arc(i, j)) {
        v.push_back("forbidden depot-depot arc (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
      }
    }
  }
  for (int t = m; t < m + n; ++t)
    if (inst.has_arc(t, t))
      v.push_back("forbidden trip self-loop (" + std::to_string(t) + "," +
                  std::to_string(t) + ")");
  for (int t = m; t < m + n; ++t) {
    bool has_out = false, has_in = false;
    for (int d = 0; d < m; ++d) {
      has_out |= inst.has_arc(d, t);
      has_in |= inst.has_arc(t, d);
    }
    if (!has_out)
      v.push_back("uncoverable trip " + std::to_string(t) + ": no pull-out arc");
    if (!has_in)
      v.push_back("uncoverable trip " + std::to_string(t) + ": no pull-in arc");
  }
  return v;
}

namespace {

std::vector<std::string> read_nonblank_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

std::vector<long long> tokenize_ints(const std::string& line, std::size_t lineno) {
  std::vector<long long> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad integer '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  const auto lines = read_nonblank_lines(in);
  if (lines.empty()) throw ParseError("empty instance file");

  auto header = tokenize_ints(lines[0], 1);
  if (header.size() < 2) throw ParseError("malformed header: expected 'm n'");
  const long long m_ll = header[0], n_ll = header[1];
  if (m_ll < 1 || n_ll < 1 || m_ll > 100000 || n_ll > 100000)
    throw ParseError("malformed header: m and n must be positive");
  const int m = static_cast<int>(m_ll), n = static_cast<int>(n_ll);

  std::vector<long long> caps;
  std::size_t row_start;
  if (header.size() == 2) {
    if (lines.size() < 2) throw ParseError("missing capacity line");
    caps = tokenize_ints(lines[1], 2);
    if (static_cast<int>(caps.size()) != m)
      throw ParseError("capacity line: expected " + std::to_string(m) + " entries, got " +
                       std::to_string(caps.size()));
    row_start = 2;
  } else if (static_cast<int>(header.size()) == 2 + m) {
    // Benchmark dialect: capacities trail the header line.
    caps.assign(header.begin() + 2, header.end());
    row_start = 1;
  } else {
    throw ParseError("malformed header: expected 'm n' or 'm n r_0 .. r_{m-1}'");
  }
  for (long long r : caps)
    if (r < 0) throw ParseError("negative capacity");

  if (lines.size() - row_start != static_cast<std::size_t>(m + n))
    throw ParseError("expected " + std::to_string(m + n) + " matrix rows, got " +
                     std::to_string(lines.size() - row_start));

  Instance inst(m, n, caps);
  for (int i = 0; i < m + n; ++i) {
    const std::size_t lineno = row_start + i + 1;
    auto row = tokenize_ints(lines[row_start + i], lineno);
    if (static_cast<int>(row.size()) != m + n)
      throw ParseError("row " + std::to_string(i) + " length mismatch: expected " +
                       std::to_string(m + n) + " entries, got " +
                       std::to_string(row.size()));
    for (int j = 0; j < m + n; ++j) {
      const long long c = row[j];
      if (i == j && i < m) {
        // Depot diagonal: -1 normalizes to the cost-0 self-loop.
        if (c != kAbsentArc && c != 0)
          throw ParseError("depot diagonal entry (" + std::to_string(i) + "," +
                           std::to_string(i) + ") must be -1 or 0");
        continue;  // loop already present with cost 0
      }
      if (c == kAbsentArc) continue;
      inst.set_arc(i, j, c);
    }
  }

  if (auto violations = validate(inst); !violations.empty())
    throw ParseError("invalid instance: " + violations.front() +
                     (violations.size() > 1
                          ? " (+" + std::to_string(violations.size() - 1) + " more)"
                          : ""));
  return inst;
}

Instance parse_instance(const std::string& text) {
  std::istringstream ss(text);
  return parse_instance(ss);
}

void write_instance(const Instance& inst, std::ostream& out) {
  const int nn = inst.num_nodes();
  out << inst.num_depots() << ' ' << inst.num_trips() << '\n';
  for (int d = 0; d < inst.num_depots(); ++d) {
    if (d) out << ' ';
    out << inst.depot_capacity()[d];
  }
  out << '\n';
  for (int i = 0; i < nn; ++i) {
    for (int j = 0; j < nn; ++j) {
      if (j) out << ' ';
      if (inst.has_arc(i, j))
        out << inst.arc_cost(i, j);
      else
        out << kAbsentArc;
    }
    out << '\n';
  }
}

std::string write_instance(const Instance& inst) {
  std::ostringstream ss;
  write_instance(inst, ss);
  return ss.str();
}

bool trip_pair_feasible(const TripTable& t, int i, int j) {
  return i != j &&
         static_cast<long long>(t.end_time[i]) + t.deadhead[i][j] <= t.start_time[j];
}

namespace {

void check_trip_table(const TripTable& t) {
  if (t.num_depots < 1 || t.num_trips < 1)
    throw ValidationError("trip table needs at least one depot and one trip");
  for (int i = 0; i < t.num_trips; ++i) {
    if (t.start_time[i] >= t.end_time[i])
      throw ValidationError("trip " + std::to_string(i) + " has start >= end");
    for (int j = 0; j < t.num_trips; ++j)
      if (t.deadhead[i][j] < 0)
        throw ValidationError("negative deadhead (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
  }
}

}  // namespace

Instance build_costs_from_trips(const TripTable& t) {
  check_trip_table(t);
  const int m = t.num_depots, n = t.num_trips;
  Instance inst(m, n, std::vector<long long>(m, 0), t.name);
  for (int d = 0; d < m; ++d)
    for (int k = 0; k < n; ++k) {
      if (t.pull_out_allowed[d][k]) inst.set_arc(d, m + k, t.pull_out_cost[d][k]);
      if (t.pull_in_allowed[d][k]) inst.set_arc(m + k, d, t.pull_in_cost[d][k]);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (trip_pair_feasible(t, i, j)) inst.set_arc(m + i, m + j, t.link_cost[i][j]);
  return inst;
}

TripTable generate_random_trip_table(const GenParams& p, std::uint64_t seed) {
  if (p.num_depots < 1 || p.num_trips < 1)
    throw ValidationError("generator needs m >= 1 and n >= 1");
  if (p.dur_min > p.dur_max || p.deadhead_min > p.deadhead_max ||
      p.link_cost_min > p.link_cost_max || p.pull_cost_min > p.pull_cost_max ||
      p.cap_min > p.cap_max || p.dur_min <= 0 || p.deadhead_min < 0 ||
      p.horizon <= p.dur_max)
    throw ValidationError("generator parameter range is empty or inverted");

  const int m = p.num_depots, n = p.num_trips;
  std::mt19937_64 rng(mix_seed(seed, 0x6d647673ULL));

  TripTable t;
  t.num_depots = m;
  t.num_trips = n;
  t.name = "rand_m" + std::to_string(m) + "n" + std::to_string(n) + "s" +
           std::to_string(seed);
  t.start_time.resize(n);
  t.end_time.resize(n);
  for (int i = 0; i < n; ++i) {
    const int dur = static_cast<int>(uniform_int(rng, p.dur_min, p.dur_max));
    const int start = static_cast<int>(uniform_int(rng, 0, p.horizon - dur));
    t.start_time[i] = start;
    t.end_time[i] = start + dur;
  }
  t.deadhead.assign(n, std::vector<int>(n, 0));
  t.link_cost.assign(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      t.deadhead[i][j] = static_cast<int>(uniform_int(rng, p.deadhead_min, p.deadhead_max));
      t.link_cost[i][j] =
          2 * t.deadhead[i][j] + uniform_int(rng, p.link_cost_min, p.link_cost_max);
    }
  t.pull_out_cost.assign(m, std::vector<long long>(n, 0));
  t.pull_in_cost.assign(m, std::vector<long long>(n, 0));
  t.pull_out_allowed.assign(m, std::vector<std::uint8_t>(n, 1));
  t.pull_in_allowed.assign(m, std::vector<std::uint8_t>(n, 1));
  for (int d = 0; d < m; ++d)
    for (int k = 0; k < n; ++k) {
      t.pull_out_cost[d][k] = uniform_int(rng, p.pull_cost_min, p.pull_cost_max);
      t.pull_in_cost[d][k] = uniform_int(rng, p.pull_cost_min, p.pull_cost_max);
    }
  return t;
}

Instance generate_random(const GenParams& p, std::uint64_t seed) {
  TripTable t = generate_random_trip_table(p, seed);
  Instance inst = build_costs_from_trips(t);

  const int m = p.num_depots, n = p.num_trips;
  int lo = p.cap_min, hi = p.cap_max;
  if (lo == 0 && hi == 0) {
    lo = std::max(1, n / (2 * m));
    hi = std::max(lo, (n + m - 1) / m);
  }
  if (lo < 0 || lo > hi) throw ValidationError("empty capacity range");
  std::mt19937_64 rng(mix_seed(seed, 0x63617073ULL));
  std::vector<long long> caps(m);
  for (int d = 0; d < m; ++d) caps[d] = uniform_int(rng, lo, hi);

  Instance out(m, n, caps, inst.name());
  for (int i = 0; i < inst.num_nodes(); ++i)
    for (int j = 0; j < inst.num_nodes(); ++j)
      if (inst.has_arc(i, j) && i != j) out.set_arc(i, j, inst.arc_cost(i, j));
  return out;
}

}  // namespace mdvsp
