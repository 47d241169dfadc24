#include "carpool/vcg.hpp"

#include "carpool/auction.hpp"
#include "carpool/simplex.hpp"

#include <stdexcept>

namespace carpool {

std::vector<Rat> vcg_tolls(const MarketInstance& instance, const TripVector& x,
                           const RouteCapacityVector& k,
                           const std::vector<Rat>& utilities) {
  const Network& net = instance.network();
  const auto& routes = net.routes();

  // Pure feasibility: zero objective over tau >= 0.
  LinearProgram lp;
  lp.objective.assign(net.edges().size(), Rat(0));

  std::vector<long long> loads = x.edge_loads(net);
  for (std::size_t e = 0; e < net.edges().size(); ++e)
    if (loads[e] < net.edges()[e].capacity) {
      std::vector<Rat> row(lp.num_vars(), Rat(0));
      row[e] = 1;
      lp.add_row(std::move(row), Sense::EQ, Rat(0));
    }

  // Route tolls meet the best blocking surplus exactly on the sub-network
  // support and dominate it elsewhere.
  for (std::size_t r = 0; r < routes.size(); ++r) {
    std::vector<Rat> row(lp.num_vars(), Rat(0));
    for (int e : routes[r].edges) row[e] = 1;
    Rat rhs =
        best_blocking_group(instance, routes[r].travel_time, utilities).surplus;
    lp.add_row(std::move(row), k.k[r] > 0 ? Sense::EQ : Sense::GE, rhs);
  }

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw std::runtime_error("toll feasibility system has no solution");
  return sol.x;
}

VcgResult vcg_payments(const MarketInstance& instance) {
  const Network& net = instance.network();
  if (!instance.homogeneous_gamma())
    throw std::invalid_argument(
        "mechanism requires homogeneous carpool disutility");
  if (!decompose_series_parallel(net).is_series_parallel())
    throw std::invalid_argument("mechanism requires a series-parallel network");

  VcgResult result;
  result.k = greedy_route_capacities(net);
  AuxiliaryRouteSet aux = build_auxiliary(net, result.k);

  AuctionResult auction = kelso_crawford(instance, aux);
  result.x = chi(instance, aux, auction.holdings);
  result.welfare = result.x.welfare(instance);

  int n = instance.num_riders();
  result.counterfactual_welfare.assign(n, Rat(0));
  result.utilities.assign(n, Rat(0));
  result.payments.assign(n, Rat(0));
  for (int m = 0; m < n; ++m) {
    std::vector<int> others;
    for (int j = 0; j < n; ++j)
      if (j != m) others.push_back(j);
    if (!others.empty())
      result.counterfactual_welfare[m] =
          kelso_crawford(instance, aux, others).augmented_welfare;

    result.utilities[m] = result.welfare - result.counterfactual_welfare[m];
    if (result.utilities[m] < 0)
      throw std::runtime_error("negative externality utility");

    int t = result.x.trip_of(m);
    Rat value = t >= 0 ? rider_trip_value(instance, m, result.x.trips[t].group,
                                          result.x.trips[t].route)
                       : Rat(0);
    result.payments[m] = value - result.utilities[m];
  }

  result.tolls = vcg_tolls(instance, result.x, result.k, result.utilities);
  return result;
}

ProbeResult strategyproofness_probe(const MarketInstance& instance, int rider,
                                    const Rat& alpha, const Rat& beta) {
  if (rider < 0 || rider >= instance.num_riders())
    throw std::invalid_argument("no such rider");
  if (beta < 0) throw std::invalid_argument("misreported beta must be >= 0");

  ProbeResult probe;
  probe.truthful_utility = vcg_payments(instance).utilities[rider];

  VcgResult mis = vcg_payments(instance.with_reported(rider, alpha, beta));
  int t = mis.x.trip_of(rider);
  Rat value = t >= 0 ? rider_trip_value(instance, rider, mis.x.trips[t].group,
                                        mis.x.trips[t].route)
                     : Rat(0);
  probe.misreport_utility = value - mis.payments[rider];
  probe.profitable = probe.misreport_utility > probe.truthful_utility;
  return probe;
}

}  // namespace carpool
