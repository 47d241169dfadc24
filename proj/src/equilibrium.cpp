#include "carpool/equilibrium.hpp"

#include "carpool/oracle.hpp"
#include "carpool/simplex.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace carpool {

namespace {

// Dual variables are laid out as u_0..u_{M-1}, tau_0..tau_{E-1}. The min
// program becomes a max program by negating the objective.
LinearProgram make_dual_lp(const MarketInstance& instance, bool monotone) {
  LinearProgram lp;
  for (int m = 0; m < instance.num_riders(); ++m) lp.objective.push_back(Rat(-1));
  for (const Edge& e : instance.network().edges())
    lp.objective.push_back(Rat(-e.capacity));

  // Optional tie-break rows: shorter routes must not carry lower tolls. The
  // trip constraints only pin tolls on routes that carry an optimal trip, so
  // an arbitrary optimal vertex can violate this on unused routes. When a
  // monotone point exists on the optimal face these rows select it; they can
  // also raise the optimum (a route sharing a saturated edge with a faster
  // route may be forced to carry a toll), so callers compare against the
  // unrestricted optimum and fall back.
  if (monotone) {
    const auto& routes = instance.network().routes();
    int n = instance.num_riders();
    for (std::size_t a = 0; a < routes.size(); ++a)
      for (std::size_t b = 0; b < routes.size(); ++b) {
        if (a == b || routes[a].travel_time < routes[b].travel_time) continue;
        std::vector<Rat> row(lp.num_vars(), Rat(0));
        for (int e : routes[a].edges) row[n + e] += 1;
        for (int e : routes[b].edges) row[n + e] -= 1;
        lp.add_row(std::move(row), Sense::LE, Rat(0));
      }
  }
  return lp;
}

void add_dual_row(LinearProgram& lp, const MarketInstance& instance,
                  const Group& group, int route) {
  std::vector<Rat> row(lp.num_vars(), Rat(0));
  for (int m : group) row[m] = 1;
  for (int e : instance.network().routes().at(route).edges)
    row[instance.num_riders() + e] = 1;
  lp.add_row(std::move(row), Sense::GE,
             social_trip_value(instance, group, route));
}

DualSolution unpack(const MarketInstance& instance, const LpSolution& sol) {
  DualSolution dual;
  dual.utilities.assign(sol.x.begin(), sol.x.begin() + instance.num_riders());
  dual.tolls.assign(sol.x.begin() + instance.num_riders(), sol.x.end());
  dual.objective = -sol.value;
  return dual;
}

// Every nonempty group of size <= A, paired with every route.
std::vector<std::pair<Group, int>> all_dual_rows(const MarketInstance& instance) {
  int n = instance.num_riders();
  if (n > 8)
    throw std::invalid_argument("dual enumeration limited to 8 riders");
  std::vector<std::pair<Group, int>> rows;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) > instance.car_capacity()) continue;
    Group group;
    for (int m = 0; m < n; ++m)
      if (mask & (1u << m)) group.push_back(m);
    for (int r = 0; r < static_cast<int>(instance.network().routes().size());
         ++r)
      rows.emplace_back(group, r);
  }
  return rows;
}

std::string group_names(const MarketInstance& instance, const Group& group) {
  std::string s = "{";
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (i) s += ",";
    s += instance.riders()[group[i]].id;
  }
  return s + "}";
}

}  // namespace

BlockingGroup best_blocking_group(const MarketInstance& instance,
                                  const Rat& travel_time,
                                  const std::vector<Rat>& utilities) {
  BlockingGroup best;
  best.surplus = 0;

  if (instance.homogeneous_gamma()) {
    // Same greedy as the augmented value, with eta shifted by -u: the
    // objective sum(eta - u) - theta(d) t keeps the gross-substitutes shape.
    std::vector<std::pair<Rat, int>> order;
    for (int m = 0; m < instance.num_riders(); ++m)
      order.emplace_back(instance.eta(m, travel_time) - utilities[m], m);
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) {
                       if (a.first != b.first) return a.first > b.first;
                       return a.second < b.second;
                     });
    int size = 0;
    for (const auto& [shifted, m] : order) {
      if (size == instance.car_capacity()) break;
      Rat marginal = shifted -
          (instance.theta(size + 1) - instance.theta(size)) * travel_time;
      if (marginal <= 0) break;
      best.surplus += marginal;
      ++size;
      best.group.push_back(m);
    }
    std::sort(best.group.begin(), best.group.end());
    return best;
  }

  int n = instance.num_riders();
  if (n > 8)
    throw std::invalid_argument(
        "heterogeneous blocking-group search limited to 8 riders");
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) > instance.car_capacity()) continue;
    Group group;
    for (int m = 0; m < n; ++m)
      if (mask & (1u << m)) group.push_back(m);
    Rat surplus = social_trip_value(instance, group, travel_time);
    for (int m : group) surplus -= utilities[m];
    if (surplus > best.surplus ||
        (surplus == best.surplus && !best.group.empty() &&
         std::lexicographical_compare(group.begin(), group.end(),
                                      best.group.begin(), best.group.end()))) {
      best.surplus = surplus;
      best.group = group;
    }
  }
  return best;
}

static DualSolution solve_dual_once(const MarketInstance& instance,
                                    bool use_augmented, bool monotone) {
  LinearProgram lp = make_dual_lp(instance, monotone);

  if (!use_augmented) {
    for (const auto& [group, r] : all_dual_rows(instance))
      add_dual_row(lp, instance, group, r);
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
      throw std::runtime_error("dual program did not solve");
    return unpack(instance, sol);
  }

  if (!instance.homogeneous_gamma())
    throw std::invalid_argument(
        "separation-oracle dual solve requires homogeneous carpool "
        "disutility");

  // Constraint generation: solve the restricted dual, then let the greedy
  // oracle hunt for a violated trip constraint on each route.
  std::set<std::pair<Group, int>> added;
  const auto& routes = instance.network().routes();
  while (true) {
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
      throw std::runtime_error("restricted dual did not solve");
    DualSolution dual = unpack(instance, sol);

    bool violated = false;
    for (int r = 0; r < static_cast<int>(routes.size()); ++r) {
      BlockingGroup bg =
          best_blocking_group(instance, routes[r].travel_time, dual.utilities);
      if (bg.group.empty()) continue;
      if (bg.surplus <= route_toll(instance.network(), dual.tolls, r)) continue;
      if (!added.insert({bg.group, r}).second)
        throw std::runtime_error("separation revisited a satisfied constraint");
      add_dual_row(lp, instance, bg.group, r);
      violated = true;
    }
    if (!violated) return dual;
  }
}

DualSolution solve_dual(const MarketInstance& instance, bool use_augmented) {
  // Stage one fixes the true dual optimum; stage two retries with the
  // toll-monotonicity rows and keeps that point when it is still optimal
  // (always the case when routes are edge-disjoint, and whenever some
  // monotone point lies on the optimal face).
  DualSolution plain = solve_dual_once(instance, use_augmented, false);
  if (instance.network().routes().size() <= 1) return plain;
  DualSolution shaped = solve_dual_once(instance, use_augmented, true);
  return shaped.objective == plain.objective ? shaped : plain;
}

DualSolution solve_dual(const MarketInstance& instance) {
  return solve_dual(instance, instance.homogeneous_gamma());
}

std::vector<DualSolution> enumerate_dual_vertices(
    const MarketInstance& instance) {
  if (instance.num_riders() > 4)
    throw std::invalid_argument("dual vertex enumeration limited to 4 riders");
  LinearProgram lp = make_dual_lp(instance, false);
  for (const auto& [group, r] : all_dual_rows(instance))
    add_dual_row(lp, instance, group, r);
  std::vector<DualSolution> out;
  for (const LpSolution& sol : enumerate_optimal_vertices(lp))
    out.push_back(unpack(instance, sol));
  return out;
}

RouteTollDual solve_route_toll_dual(const MarketInstance& instance,
                                    const RouteCapacityVector& k) {
  int n = instance.num_riders();
  if (n > 8)
    throw std::invalid_argument("route-toll dual limited to 8 riders");
  std::vector<int> support = k.support();

  // Variables: u_0..u_{n-1}, then one lambda per supported route.
  LinearProgram lp;
  for (int m = 0; m < n; ++m) lp.objective.push_back(Rat(-1));
  for (int r : support) lp.objective.push_back(Rat(-k.k[r]));

  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) > instance.car_capacity()) continue;
    Group group;
    for (int m = 0; m < n; ++m)
      if (mask & (1u << m)) group.push_back(m);
    for (std::size_t i = 0; i < support.size(); ++i) {
      std::vector<Rat> row(lp.num_vars(), Rat(0));
      for (int m : group) row[m] = 1;
      row[n + i] = 1;
      lp.add_row(std::move(row), Sense::GE,
                 social_trip_value(instance, group, support[i]));
    }
  }

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw std::runtime_error("route-toll dual did not solve");

  RouteTollDual dual;
  dual.utilities.assign(sol.x.begin(), sol.x.begin() + n);
  dual.route_tolls.assign(instance.network().routes().size(), Rat(0));
  for (std::size_t i = 0; i < support.size(); ++i)
    dual.route_tolls[support[i]] = sol.x[n + i];
  dual.objective = -sol.value;
  return dual;
}

std::vector<Rat> payments_from_utilities(const MarketInstance& instance,
                                         const TripVector& x,
                                         const std::vector<Rat>& utilities) {
  if (static_cast<int>(utilities.size()) != instance.num_riders())
    throw std::invalid_argument("one utility per rider required");
  std::vector<Rat> payments(instance.num_riders(), Rat(0));
  for (int m = 0; m < instance.num_riders(); ++m) {
    if (utilities[m] < 0)
      throw std::invalid_argument("negative utility for rider " +
                                  instance.riders()[m].id);
    int t = x.trip_of(m);
    if (t < 0) continue;
    payments[m] =
        rider_trip_value(instance, m, x.trips[t].group, x.trips[t].route) -
        utilities[m];
  }
  return payments;
}

std::vector<Rat> outcome_utilities(const MarketInstance& instance,
                                   const Outcome& outcome) {
  std::vector<Rat> u(instance.num_riders(), Rat(0));
  for (int m = 0; m < instance.num_riders(); ++m) {
    int t = outcome.x.trip_of(m);
    u[m] = -outcome.payments[m];
    if (t >= 0)
      u[m] += rider_trip_value(instance, m, outcome.x.trips[t].group,
                               outcome.x.trips[t].route);
  }
  return u;
}

Rat route_toll(const Network& network, const std::vector<Rat>& tolls,
               int route) {
  Rat total(0);
  for (int e : network.routes().at(route).edges) total += tolls.at(e);
  return total;
}

EquilibriumReport verify_equilibrium(const MarketInstance& instance,
                                     const Outcome& outcome) {
  const Network& net = instance.network();
  EquilibriumReport report;

  if (static_cast<int>(outcome.payments.size()) != instance.num_riders() ||
      outcome.tolls.size() != net.edges().size())
    throw std::invalid_argument("payment/toll vector sizes do not match");

  std::string err = outcome.x.feasibility_error(instance);
  if (!err.empty()) {
    report.feasible = false;
    report.witnesses.push_back("infeasible assignment: " + err);
    return report;
  }
  for (const Rat& toll : outcome.tolls)
    if (toll < 0) {
      report.feasible = false;
      report.witnesses.push_back("negative edge toll");
      return report;
    }

  std::vector<Rat> u = outcome_utilities(instance, outcome);

  for (int m = 0; m < instance.num_riders(); ++m)
    if (u[m] < 0) {
      report.individual_rationality = false;
      report.witnesses.push_back("rider " + instance.riders()[m].id +
                                 " has utility " + to_fraction_string(u[m]));
    }

  // Stability: no group prefers forming its own trip on any route at the
  // posted tolls.
  for (int r = 0; r < static_cast<int>(net.routes().size()); ++r) {
    BlockingGroup bg = best_blocking_group(instance, net.routes()[r].travel_time, u);
    if (bg.group.empty()) continue;
    if (bg.surplus > route_toll(net, outcome.tolls, r)) {
      report.stability = false;
      report.witnesses.push_back(
          "blocking trip: group " + group_names(instance, bg.group) +
          " on route " + net.route_label(r));
    }
  }

  for (const Trip& trip : outcome.x.trips) {
    Rat collected(0);
    for (int m : trip.group) collected += outcome.payments[m];
    Rat cost = route_toll(net, outcome.tolls, trip.route) +
               instance.delta() * static_cast<int>(trip.group.size()) *
                   net.routes()[trip.route].travel_time;
    if (collected != cost) {
      report.budget_balance = false;
      report.witnesses.push_back(
          "trip " + group_names(instance, trip.group) + " on route " +
          net.route_label(trip.route) + " collects " +
          to_fraction_string(collected) + " but costs " +
          to_fraction_string(cost));
    }
  }
  for (int m = 0; m < instance.num_riders(); ++m)
    if (outcome.x.trip_of(m) < 0 && outcome.payments[m] != 0) {
      report.budget_balance = false;
      report.witnesses.push_back("unassigned rider " + instance.riders()[m].id +
                                 " pays " +
                                 to_fraction_string(outcome.payments[m]));
    }

  std::vector<long long> loads = outcome.x.edge_loads(net);
  for (std::size_t e = 0; e < net.edges().size(); ++e)
    if (outcome.tolls[e] > 0 && loads[e] < net.edges()[e].capacity) {
      report.market_clearing = false;
      report.witnesses.push_back("edge " + net.edges()[e].id +
                                 " has slack capacity but toll " +
                                 to_fraction_string(outcome.tolls[e]));
    }

  // Complementary slackness against the implied dual point (u, tau).
  for (const Trip& trip : outcome.x.trips) {
    Rat lhs = route_toll(net, outcome.tolls, trip.route);
    for (int m : trip.group) lhs += u[m];
    Rat value = social_trip_value(instance, trip.group, trip.route);
    if (lhs != value) {
      report.complementary_slackness = false;
      report.witnesses.push_back(
          "organized trip " + group_names(instance, trip.group) +
          " on route " + net.route_label(trip.route) +
          " is not tight: " + to_fraction_string(lhs) + " vs " +
          to_fraction_string(value));
    }
  }
  for (int m = 0; m < instance.num_riders(); ++m)
    if (u[m] > 0 && outcome.x.trip_of(m) < 0) {
      report.complementary_slackness = false;
      report.witnesses.push_back("unassigned rider " + instance.riders()[m].id +
                                 " has positive utility");
    }

  // Shorter routes never cost less in tolls.
  for (int a = 0; a < static_cast<int>(net.routes().size()); ++a)
    for (int b = 0; b < static_cast<int>(net.routes().size()); ++b) {
      if (net.routes()[a].travel_time < net.routes()[b].travel_time) continue;
      if (route_toll(net, outcome.tolls, a) <=
          route_toll(net, outcome.tolls, b))
        continue;
      report.toll_monotonicity = false;
      report.witnesses.push_back("route " + net.route_label(a) +
                                 " is no shorter than " + net.route_label(b) +
                                 " yet carries a higher toll");
    }

  return report;
}

ExistenceResult equilibrium_exists(const MarketInstance& instance) {
  ExistenceResult result;
  result.lp_value = solve_lp_relaxation(instance).welfare;
  IpResult ip = brute_force_ip(instance);
  result.ip_value = ip.welfare;
  result.exists = (result.lp_value == result.ip_value);
  if (!result.exists) return result;

  DualSolution dual = solve_dual(instance);
  Outcome outcome;
  outcome.x = ip.x;
  outcome.tolls = dual.tolls;
  outcome.payments = payments_from_utilities(instance, ip.x, dual.utilities);
  result.outcome = std::move(outcome);
  return result;
}

}  // namespace carpool
