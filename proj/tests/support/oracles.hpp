#pragma once

// Independent re-implementations used as ground truth in tests. These
// deliberately use different algorithms than the library.

#include "carpool/network.hpp"
#include "carpool/preferences.hpp"
#include "carpool/simplex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace carpool::testing {

// Route enumeration by DFS scanning edges in REVERSE index order; the result
// is returned as a sorted set of edge-index sequences.
inline std::set<std::vector<int>> reference_routes(const Network& net) {
  std::set<std::vector<int>> found;
  std::vector<int> path;
  std::set<std::string> on_path;

  auto dfs = [&](auto&& self, const std::string& node) -> void {
    if (node == net.destination()) {
      found.insert(path);
      return;
    }
    for (int e = static_cast<int>(net.edges().size()) - 1; e >= 0; --e) {
      const Edge& edge = net.edges()[e];
      if (edge.from != node || on_path.count(edge.to)) continue;
      path.push_back(e);
      on_path.insert(edge.to);
      self(self, edge.to);
      on_path.erase(edge.to);
      path.pop_back();
    }
  };
  on_path.insert(net.origin());
  dfs(dfs, net.origin());
  return found;
}

// Top-down recursive series/parallel-split test (the production code works
// bottom-up by reductions instead). Routes are origin->destination edge
// sequences restricted to the given edge subset.
inline bool reference_is_sp(const Network& net, const std::vector<int>& edges,
                            const std::string& s, const std::string& t) {
  if (edges.size() == 1) {
    const Edge& e = net.edges()[edges[0]];
    return e.from == s && e.to == t;
  }
  if (edges.empty()) return false;

  // Routes s -> t inside the subset, as node sequences + edge sequences.
  std::vector<std::vector<int>> routes;
  std::vector<int> path;
  std::set<std::string> on_path{s};
  auto dfs = [&](auto&& self, const std::string& node) -> void {
    if (node == t) {
      routes.push_back(path);
      return;
    }
    for (int e : edges) {
      const Edge& edge = net.edges()[e];
      if (edge.from != node || on_path.count(edge.to)) continue;
      path.push_back(e);
      on_path.insert(edge.to);
      self(self, edge.to);
      on_path.erase(edge.to);
      path.pop_back();
    }
  };
  dfs(dfs, s);
  if (routes.empty()) return false;
  std::set<int> on_routes;
  for (const auto& r : routes) on_routes.insert(r.begin(), r.end());
  if (on_routes.size() != edges.size()) return false;  // dead edge

  // Parallel split: components connected through internal nodes.
  {
    std::map<std::string, int> comp;
    int next = 0;
    std::vector<int> edge_comp(edges.size(), -1);
    bool changed = true;
    for (std::size_t i = 0; i < edges.size(); ++i) edge_comp[i] = next++;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = 0; j < edges.size(); ++j) {
          if (edge_comp[i] == edge_comp[j]) continue;
          const Edge& a = net.edges()[edges[i]];
          const Edge& b = net.edges()[edges[j]];
          for (const std::string& node : {a.from, a.to})
            if (node != s && node != t && (node == b.from || node == b.to)) {
              int from = std::max(edge_comp[i], edge_comp[j]);
              int to = std::min(edge_comp[i], edge_comp[j]);
              for (int& c : edge_comp)
                if (c == from) c = to;
              changed = true;
            }
        }
    }
    std::set<int> ids(edge_comp.begin(), edge_comp.end());
    if (ids.size() > 1) {
      for (int id : ids) {
        std::vector<int> part;
        for (std::size_t i = 0; i < edges.size(); ++i)
          if (edge_comp[i] == id) part.push_back(edges[i]);
        if (!reference_is_sp(net, part, s, t)) return false;
      }
      return true;
    }
  }

  // Series split: an internal node every route passes through.
  std::set<std::string> internal;
  for (int e : edges) {
    const Edge& edge = net.edges()[e];
    for (const std::string& node : {edge.from, edge.to})
      if (node != s && node != t) internal.insert(node);
  }
  for (const std::string& v : internal) {
    bool all_pass = true;
    std::vector<int> first, second;
    std::set<int> first_set, second_set;
    for (const auto& r : routes) {
      bool passed = false;
      for (int e : r) {
        const Edge& edge = net.edges()[e];
        if (!passed && edge.from == v) passed = true;
        (passed ? second_set : first_set).insert(e);
        if (edge.to == v) passed = true;
      }
      if (!passed) {
        all_pass = false;
        break;
      }
    }
    if (!all_pass) continue;
    bool overlap = false;
    for (int e : first_set)
      if (second_set.count(e)) overlap = true;
    if (overlap) continue;
    first.assign(first_set.begin(), first_set.end());
    second.assign(second_set.begin(), second_set.end());
    if (reference_is_sp(net, first, s, v) &&
        reference_is_sp(net, second, v, t))
      return true;
  }
  return false;
}

inline bool reference_is_sp(const Network& net) {
  std::vector<int> all;
  for (std::size_t e = 0; e < net.edges().size(); ++e)
    all.push_back(static_cast<int>(e));
  return reference_is_sp(net, all, net.origin(), net.destination());
}

// Exhaustive best-feasible-subset value, written without the library greedy.
struct ReferenceAugmented {
  Rat value;
  Group representative;
};
inline ReferenceAugmented reference_augmented_value(
    const MarketInstance& instance, const Group& group_bar,
    const Rat& travel_time) {
  ReferenceAugmented best{Rat(0), {}};
  int n = static_cast<int>(group_bar.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Group subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) subset.push_back(group_bar[i]);
    if (static_cast<int>(subset.size()) > instance.car_capacity()) continue;
    Rat value(0);
    for (int m : subset) {
      const RiderPreferences& r = instance.riders()[m];
      value += r.alpha - r.beta * travel_time -
               instance.gamma(m, static_cast<int>(subset.size())) * travel_time;
    }
    value -= instance.delta() * static_cast<int>(subset.size()) * travel_time;
    if (value > best.value ||
        (value == best.value && !best.representative.empty() &&
         std::lexicographical_compare(subset.begin(), subset.end(),
                                      best.representative.begin(),
                                      best.representative.end())))
      best = {value, subset};
  }
  return best;
}

// Best achievable demand surplus Vbar(holding ∪ J) - sum_J (u + eps) over all
// candidate sets J, by enumeration.
inline Rat reference_demand_surplus(const MarketInstance& instance,
                                    const Rat& travel_time,
                                    const Group& holding,
                                    const std::vector<Rat>& utilities,
                                    const Rat& epsilon,
                                    const std::vector<int>& active) {
  std::vector<int> outside;
  for (int m : active)
    if (!std::binary_search(holding.begin(), holding.end(), m))
      outside.push_back(m);
  int n = static_cast<int>(outside.size());
  Rat best =
      reference_augmented_value(instance, holding, travel_time).value;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Group merged = holding;
    Rat price(0);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        merged.insert(
            std::upper_bound(merged.begin(), merged.end(), outside[i]),
            outside[i]);
        price += utilities[outside[i]] + epsilon;
      }
    Rat value =
        reference_augmented_value(instance, merged, travel_time).value - price;
    best = std::max(best, value);
  }
  return best;
}

// Second independent integer optimizer: recursion from the HIGHEST
// unassigned rider, groups formed downward, value-only.
inline Rat reference_ip_value(const MarketInstance& instance) {
  const Network& net = instance.network();
  std::vector<long long> residual;
  for (const Edge& e : net.edges()) residual.push_back(e.capacity);
  std::vector<bool> assigned(instance.num_riders(), false);

  auto value_of = [&](const Group& g, int r) -> Rat {
    Rat v(0);
    for (int m : g) {
      const RiderPreferences& rider = instance.riders()[m];
      Rat t = net.routes()[r].travel_time;
      v += rider.alpha - rider.beta * t -
           instance.gamma(m, static_cast<int>(g.size())) * t;
    }
    return v - instance.delta() * static_cast<int>(g.size()) *
                   net.routes()[r].travel_time;
  };

  auto rec = [&](auto&& self, int rider) -> Rat {
    while (rider >= 0 && assigned[rider]) --rider;
    if (rider < 0) return Rat(0);

    assigned[rider] = true;
    Rat best = self(self, rider - 1);  // leave unassigned
    std::vector<int> pool;
    for (int m = rider - 1; m >= 0; --m)
      if (!assigned[m]) pool.push_back(m);
    int n = static_cast<int>(pool.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) + 1 > instance.car_capacity()) continue;
      Group group;
      for (int i = n - 1; i >= 0; --i)
        if (mask & (1u << i)) group.push_back(pool[i]);
      group.push_back(rider);
      std::sort(group.begin(), group.end());
      for (int r = 0; r < static_cast<int>(net.routes().size()); ++r) {
        bool open = true;
        for (int e : net.routes()[r].edges)
          if (residual[e] <= 0) open = false;
        if (!open) continue;
        for (int e : net.routes()[r].edges) --residual[e];
        for (int m : group) assigned[m] = true;
        Rat candidate = value_of(group, r) + self(self, rider - 1);
        for (int m : group)
          if (m != rider) assigned[m] = false;
        for (int e : net.routes()[r].edges) ++residual[e];
        best = std::max(best, candidate);
      }
    }
    assigned[rider] = false;
    return best;
  };
  return rec(rec, instance.num_riders() - 1);
}

// Max-flow via the path-formulation LP (exact simplex), to cross-check the
// augmenting-path implementation.
inline Rat reference_max_flow(const Network& net) {
  LinearProgram lp;
  lp.objective.assign(net.routes().size(), Rat(1));
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    std::vector<Rat> row(net.routes().size(), Rat(0));
    for (std::size_t r = 0; r < net.routes().size(); ++r)
      if (std::find(net.routes()[r].edges.begin(), net.routes()[r].edges.end(),
                    static_cast<int>(e)) != net.routes()[r].edges.end())
        row[r] = 1;
    lp.add_row(std::move(row), Sense::LE, Rat(net.edges()[e].capacity));
  }
  return solve_lp(lp).value;
}

}  // namespace carpool::testing
