#pragma once

#include "carpool/network.hpp"
#include "carpool/preferences.hpp"
#include "carpool/simplex.hpp"
#include "carpool/trips.hpp"

namespace carpool {

// Desk-scale ground truth. Guards: |M| <= 8 and |R| <= 32.

// z(b) = sum alpha; g(b) = sum beta + sum gamma(|b|) + delta |b|, so that
// V_r(b) = z(b) - g(b) t_r.
Rat group_value_intercept(const MarketInstance& instance, const Group& group);
Rat group_time_sensitivity(const MarketInstance& instance, const Group& group);

struct IpResult {
  TripVector x;
  Rat welfare;
};

// Exhaustive optimum of the integer trip organization problem. Ties resolve
// to the lowest-lexicographic trip list.
IpResult brute_force_ip(const MarketInstance& instance);

// Same search on the sub-network: route capacities k instead of edge
// capacities.
IpResult brute_force_ip_subnetwork(const MarketInstance& instance,
                                   const RouteCapacityVector& k);

struct LpRelaxationResult {
  FractionalTripVector x;
  Rat welfare;
};

// Exact LP relaxation over the full (group, route) column set.
LpRelaxationResult solve_lp_relaxation(const MarketInstance& instance);

// Number of distinct optimal vertices of the relaxation (capped); 1 means the
// optimum is unique.
std::size_t count_lp_optimal_vertices(const MarketInstance& instance,
                                      std::size_t cap = 64);

// Constructive re-assignment of a fractional solution onto the greedy
// sub-network: groups in decreasing time sensitivity pour onto R* routes in
// increasing travel time, splitting at capacity boundaries. Requires a
// series-parallel network.
FractionalTripVector reassign_to_subnetwork(const MarketInstance& instance,
                                            const FractionalTripVector& xhat,
                                            const RouteCapacityVector& k);

// The Example 1 instance: Wheatstone network, three identical riders.
MarketInstance wheatstone_fixture();

}  // namespace carpool
