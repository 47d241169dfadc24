#pragma once

#include "carpool/preferences.hpp"
#include "carpool/trips.hpp"

#include <optional>
#include <string>
#include <vector>

namespace carpool {

struct DualSolution {
  std::vector<Rat> utilities;  // u^m, one per rider
  std::vector<Rat> tolls;      // tau_e, one per edge
  Rat objective;               // sum u + sum q tau
};

// Best blocking group for a route at prices u: argmax over groups b
// (|b| <= A, possibly empty) of V_r(b) - sum_{m in b} u^m. Greedy under
// homogeneous gamma, enumeration otherwise (|M| <= 8).
struct BlockingGroup {
  Group group;
  Rat surplus;  // V_r(b) - sum u; 0 when group is empty
};
BlockingGroup best_blocking_group(const MarketInstance& instance,
                                  const Rat& travel_time,
                                  const std::vector<Rat>& utilities);

// Exact optimum of the dual program: min sum u + sum q tau subject to
// sum_{m in b} u + sum_{e in r} tau >= V_r(b) for all trips, u, tau >= 0.
// use_augmented selects constraint generation driven by the greedy
// separation oracle (homogeneous gamma only); otherwise the full
// constraint set is enumerated (|M| <= 8).
DualSolution solve_dual(const MarketInstance& instance, bool use_augmented);
DualSolution solve_dual(const MarketInstance& instance);

// All vertices of the dual optimal face (tiny instances, |M| <= 4).
std::vector<DualSolution> enumerate_dual_vertices(const MarketInstance& instance);

// Dual of the sub-network program: one route-toll variable lambda_r per
// supported route instead of per-edge tolls. Test aid for checking that the
// sub-network and full duals agree.
struct RouteTollDual {
  std::vector<Rat> utilities;
  std::vector<Rat> route_tolls;  // indexed by route; 0 off the support
  Rat objective;                 // sum u + sum k_r lambda_r
};
RouteTollDual solve_route_toll_dual(const MarketInstance& instance,
                                    const RouteCapacityVector& k);

// p^m = (value of m's trip) - u^m for assigned riders, 0 otherwise.
std::vector<Rat> payments_from_utilities(const MarketInstance& instance,
                                         const TripVector& x,
                                         const std::vector<Rat>& utilities);

struct Outcome {
  TripVector x;
  std::vector<Rat> payments;  // p^m per rider
  std::vector<Rat> tolls;     // tau_e per edge
};

// u^m = sum of m's trip values under x minus p^m.
std::vector<Rat> outcome_utilities(const MarketInstance& instance,
                                   const Outcome& outcome);

Rat route_toll(const Network& network, const std::vector<Rat>& tolls,
               int route);

struct EquilibriumReport {
  bool feasible = true;
  bool individual_rationality = true;
  bool stability = true;
  bool budget_balance = true;
  bool market_clearing = true;
  bool complementary_slackness = true;
  bool toll_monotonicity = true;
  std::vector<std::string> witnesses;

  bool all_ok() const {
    return feasible && individual_rationality && stability && budget_balance &&
           market_clearing && complementary_slackness && toll_monotonicity;
  }
};

// Exact check of every market-equilibrium property plus complementary
// slackness and the shorter-routes-cost-more toll ordering.
EquilibriumReport verify_equilibrium(const MarketInstance& instance,
                                     const Outcome& outcome);

struct ExistenceResult {
  bool exists = false;
  Rat lp_value;
  Rat ip_value;
  std::optional<Outcome> outcome;  // present iff exists
};

// Equilibrium exists iff the LP relaxation has zero integrality gap; on
// existence the assembled outcome is the certificate, otherwise the two
// optima are.
ExistenceResult equilibrium_exists(const MarketInstance& instance);

}  // namespace carpool
