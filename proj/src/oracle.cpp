#include "carpool/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace carpool {

namespace {

void check_guards(const MarketInstance& instance) {
  if (instance.num_riders() > 8)
    throw std::invalid_argument("brute-force guard: more than 8 riders");
  if (instance.network().routes().size() > 32)
    throw std::invalid_argument("brute-force guard: more than 32 routes");
}

std::vector<std::pair<Group, int>> canonical_trips(const TripVector& x) {
  std::vector<std::pair<Group, int>> v;
  for (const Trip& t : x.trips) v.emplace_back(t.group, t.route);
  std::sort(v.begin(), v.end());
  return v;
}

// Exhaustive search over partitions of riders into trips. The capacity
// model is either per-edge (loads) or per-route (k).
struct Searcher {
  const MarketInstance& instance;
  const std::vector<long long>* route_caps = nullptr;  // nullptr: edge model

  std::vector<long long> edge_residual;
  std::vector<long long> route_residual;
  std::vector<bool> assigned;
  TripVector current;
  Rat current_value{0};

  IpResult best;
  bool have_best = false;

  explicit Searcher(const MarketInstance& inst,
                    const std::vector<long long>* caps)
      : instance(inst), route_caps(caps) {
    for (const Edge& e : inst.network().edges())
      edge_residual.push_back(e.capacity);
    if (caps) route_residual = *caps;
    assigned.assign(inst.num_riders(), false);
  }

  bool route_open(int r) const {
    if (route_caps) return route_residual[r] > 0;
    for (int e : instance.network().routes()[r].edges)
      if (edge_residual[e] <= 0) return false;
    return true;
  }

  void take_route(int r, int delta) {
    if (route_caps) {
      route_residual[r] += delta;
    } else {
      for (int e : instance.network().routes()[r].edges)
        edge_residual[e] += delta;
    }
  }

  void consider() {
    if (!have_best || current_value > best.welfare ||
        (current_value == best.welfare &&
         canonical_trips(current) < canonical_trips(best.x))) {
      best.x = current;
      best.welfare = current_value;
      have_best = true;
    }
  }

  void run(int rider) {
    while (rider < instance.num_riders() && assigned[rider]) ++rider;
    if (rider == instance.num_riders()) {
      consider();
      return;
    }

    // Branch 1: rider stays unassigned.
    assigned[rider] = true;
    run(rider + 1);
    assigned[rider] = false;

    // Branch 2: rider is the lowest member of a new trip.
    std::vector<int> pool;
    for (int m = rider + 1; m < instance.num_riders(); ++m)
      if (!assigned[m]) pool.push_back(m);
    int extra = std::min<int>(instance.car_capacity() - 1,
                              static_cast<int>(pool.size()));

    for (unsigned mask = 0; mask < (1u << pool.size()); ++mask) {
      if (__builtin_popcount(mask) > extra) continue;
      Group group{rider};
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (mask & (1u << i)) group.push_back(pool[i]);

      for (int r = 0; r < static_cast<int>(instance.network().routes().size());
           ++r) {
        if (!route_open(r)) continue;
        Rat value = social_trip_value(instance, group, r);
        take_route(r, -1);
        for (int m : group) assigned[m] = true;
        current.trips.push_back({group, r});
        current_value += value;

        run(rider + 1);

        current_value -= value;
        current.trips.pop_back();
        for (int m : group) assigned[m] = false;
        take_route(r, +1);
      }
    }
  }
};

}  // namespace

Rat group_value_intercept(const MarketInstance& instance, const Group& group) {
  Rat z(0);
  for (int m : group) z += instance.riders().at(m).alpha;
  return z;
}

Rat group_time_sensitivity(const MarketInstance& instance, const Group& group) {
  Rat g(0);
  int size = static_cast<int>(group.size());
  for (int m : group)
    g += instance.riders().at(m).beta + instance.gamma(m, size);
  return g + instance.delta() * size;
}

IpResult brute_force_ip(const MarketInstance& instance) {
  check_guards(instance);
  Searcher s(instance, nullptr);
  s.run(0);
  return s.best;
}

IpResult brute_force_ip_subnetwork(const MarketInstance& instance,
                                   const RouteCapacityVector& k) {
  check_guards(instance);
  Searcher s(instance, &k.k);
  s.run(0);
  return s.best;
}

namespace {

// Full-column relaxation: one variable per (group, route).
LinearProgram build_relaxation_lp(const MarketInstance& instance,
                                  std::vector<std::pair<Group, int>>& columns) {
  const Network& net = instance.network();
  int n_riders = instance.num_riders();
  int n_routes = static_cast<int>(net.routes().size());

  columns.clear();
  for (unsigned mask = 1; mask < (1u << n_riders); ++mask) {
    if (__builtin_popcount(mask) > instance.car_capacity()) continue;
    Group group;
    for (int m = 0; m < n_riders; ++m)
      if (mask & (1u << m)) group.push_back(m);
    for (int r = 0; r < n_routes; ++r) columns.emplace_back(group, r);
  }

  LinearProgram lp;
  lp.objective.reserve(columns.size());
  for (const auto& [group, r] : columns)
    lp.objective.push_back(social_trip_value(instance, group, r));

  for (int m = 0; m < n_riders; ++m) {
    std::vector<Rat> row(columns.size(), Rat(0));
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (std::binary_search(columns[c].first.begin(), columns[c].first.end(), m))
        row[c] = 1;
    lp.add_row(std::move(row), Sense::LE, Rat(1));
  }
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    std::vector<Rat> row(columns.size(), Rat(0));
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const Route& route = net.routes()[columns[c].second];
      if (std::find(route.edges.begin(), route.edges.end(),
                    static_cast<int>(e)) != route.edges.end())
        row[c] = 1;
    }
    lp.add_row(std::move(row), Sense::LE, Rat(net.edges()[e].capacity));
  }
  return lp;
}

}  // namespace

LpRelaxationResult solve_lp_relaxation(const MarketInstance& instance) {
  check_guards(instance);
  std::vector<std::pair<Group, int>> columns;
  LinearProgram lp = build_relaxation_lp(instance, columns);
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw std::runtime_error("relaxation did not solve");  // cannot happen

  LpRelaxationResult result;
  result.welfare = sol.value;
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (sol.x[c] != 0)
      result.x.trips.push_back({columns[c].first, columns[c].second, sol.x[c]});
  return result;
}

std::size_t count_lp_optimal_vertices(const MarketInstance& instance,
                                      std::size_t cap) {
  check_guards(instance);
  std::vector<std::pair<Group, int>> columns;
  LinearProgram lp = build_relaxation_lp(instance, columns);
  return enumerate_optimal_vertices(lp, cap).size();
}

FractionalTripVector reassign_to_subnetwork(const MarketInstance& instance,
                                            const FractionalTripVector& xhat,
                                            const RouteCapacityVector& k) {
  if (!decompose_series_parallel(instance.network()).is_series_parallel())
    throw std::invalid_argument(
        "reassignment guarantee requires a series-parallel network");

  // Group weights f(b), merged across routes.
  std::map<Group, Rat> weight;
  for (const FractionalTrip& t : xhat.trips)
    if (t.weight > 0) weight[t.group] += t.weight;

  std::vector<std::pair<Group, Rat>> groups(weight.begin(), weight.end());
  std::stable_sort(groups.begin(), groups.end(),
                   [&](const auto& a, const auto& b) {
                     return group_time_sensitivity(instance, a.first) >
                            group_time_sensitivity(instance, b.first);
                   });

  std::vector<int> order = k.support();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& routes = instance.network().routes();
    if (routes[a].travel_time != routes[b].travel_time)
      return routes[a].travel_time < routes[b].travel_time;
    return a < b;
  });

  FractionalTripVector out;
  std::size_t slot = 0;
  Rat used(0);
  for (auto& [group, f] : groups) {
    Rat remaining = f;
    while (remaining > 0) {
      if (slot >= order.size())
        throw std::runtime_error(
            "greedy sub-network capacity exhausted before all weight was "
            "re-assigned");
      int route = order[slot];
      Rat room = Rat(k.k[route]) - used;
      Rat take = std::min(room, remaining);
      if (take > 0) out.trips.push_back({group, route, take});
      remaining -= take;
      used += take;
      if (used == k.k[route]) {
        ++slot;
        used = 0;
      }
    }
  }
  return out;
}

MarketInstance wheatstone_fixture() {
  std::vector<Edge> edges = {
      {"e1", "o", "a", 1, Rat(1)}, {"e2", "a", "d", 1, Rat(3)},
      {"e3", "o", "b", 1, Rat(3)}, {"e4", "b", "d", 1, Rat(1)},
      {"e5", "a", "b", 4, Rat(0)},
  };
  Network net = Network::build({"o", "a", "b", "d"}, "o", "d", std::move(edges));
  std::vector<RiderPreferences> riders;
  for (int m = 1; m <= 3; ++m)
    riders.push_back({"m" + std::to_string(m), Rat(7), Rat(1), {Rat(0), Rat(0)}});
  return MarketInstance(std::move(net), std::move(riders), Rat(0), 2);
}

}  // namespace carpool
