#pragma once

#include "carpool/equilibrium.hpp"
#include "carpool/preferences.hpp"
#include "carpool/trips.hpp"

#include <vector>

namespace carpool {

struct VcgResult {
  TripVector x;
  std::vector<Rat> payments;   // p-dagger per rider
  std::vector<Rat> utilities;  // u-dagger per rider
  std::vector<Rat> tolls;      // tau-dagger per edge
  std::vector<Rat> counterfactual_welfare;  // S without rider m, per rider
  Rat welfare;                              // S(x*)
  RouteCapacityVector k;
};

// Strategyproof outcome: auction pipeline for x*, per-rider counterfactual
// auctions on the SAME auxiliary routes for the externality payments,
// toll feasibility solve for tau-dagger. Requires a series-parallel network
// and homogeneous carpool disutility.
VcgResult vcg_payments(const MarketInstance& instance);

// Minimum-revenue tolls supporting the utilities u-dagger: route tolls equal
// the best blocking surplus on supported routes, dominate it elsewhere, and
// vanish on slack edges.
std::vector<Rat> vcg_tolls(const MarketInstance& instance, const TripVector& x,
                           const RouteCapacityVector& k,
                           const std::vector<Rat>& utilities);

struct ProbeResult {
  Rat truthful_utility;   // u-dagger of the rider when reporting truthfully
  Rat misreport_utility;  // true-preference utility under the misreport
  bool profitable = false;
};

// Re-runs the whole mechanism with rider `rider` reporting (alpha, beta) and
// evaluates that rider's true utility under the resulting outcome.
ProbeResult strategyproofness_probe(const MarketInstance& instance, int rider,
                                    const Rat& alpha, const Rat& beta);

}  // namespace carpool
