#pragma once

#include "carpool/network.hpp"
#include "carpool/preferences.hpp"
#include "carpool/trips.hpp"

#include <optional>
#include <vector>

namespace carpool {

// Unit-capacity copy of a parent route.
struct AuxRoute {
  int route = -1;
  int copy = 0;
  Rat travel_time;
};

struct AuxiliaryRouteSet {
  std::vector<AuxRoute> routes;

  std::size_t size() const { return routes.size(); }
};

// k*_r unit-capacity copies per supported route, in route order.
AuxiliaryRouteSet build_auxiliary(const Network& network,
                                  const RouteCapacityVector& k);

struct AuctionResult {
  // bbar_l per auxiliary route at termination (the support of y*).
  std::vector<Group> holdings;
  // Ascending auction prices (epsilon-coarse; exact equilibrium utilities
  // come from the dual solve instead).
  std::vector<Rat> utilities;
  Rat epsilon;
  Int scale;  // lcm of value denominators: every trip value is k/scale
  long long iterations = 0;
  long long iteration_bound = 0;  // M * Vmax / epsilon

  // sum of W_l(bbar_l), the welfare of the augmented assignment y*.
  Rat augmented_welfare;
};

// Kelso-Crawford ascending auction on the auxiliary routes, restricted to
// the riders in `active` (all riders when empty). Requires homogeneous
// carpool disutility. Default epsilon is 1/(2|M|+1) in units of 1/scale,
// small enough that the integer-valued scaled welfare is maximized exactly.
AuctionResult kelso_crawford(const MarketInstance& instance,
                             const AuxiliaryRouteSet& aux,
                             std::vector<int> active = {},
                             std::optional<Rat> epsilon = std::nullopt);

// Demand set J_l of one auxiliary route given current holdings/prices:
// greedy accumulation by exact marginal value against the epsilon-shifted
// prices. Exposed for tests.
Group demand_set(const MarketInstance& instance, const AuxRoute& l,
                 const Group& holding, const std::vector<Rat>& utilities,
                 const Rat& epsilon, const std::vector<int>& active);

// chi: collapse an augmented assignment to a feasible trip vector, keeping
// the representative group of every held bundle (lowest-id tie-break).
TripVector chi(const MarketInstance& instance, const AuxiliaryRouteSet& aux,
               const std::vector<Group>& holdings);

}  // namespace carpool
