#pragma once

#include "carpool/preferences.hpp"

#include <string>
#include <vector>

namespace carpool {

struct Trip {
  Group group;
  int route = -1;
};

// Integer trip assignment: the support of x.
struct TripVector {
  std::vector<Trip> trips;

  // Social welfare of the organized trips.
  Rat welfare(const MarketInstance& instance) const;

  // Trips-per-edge load vector.
  std::vector<long long> edge_loads(const Network& network) const;

  // Route of rider m, or -1; trip index of rider m, or -1.
  int trip_of(int rider) const;

  // Checks each rider in at most one trip, group sizes within the car
  // capacity, and edge loads within capacity. Returns a diagnostic or "".
  std::string feasibility_error(const MarketInstance& instance) const;
};

// Fractional assignment: weighted (group, route) columns.
struct FractionalTrip {
  Group group;
  int route = -1;
  Rat weight;
};

struct FractionalTripVector {
  std::vector<FractionalTrip> trips;

  Rat welfare(const MarketInstance& instance) const;
};

}  // namespace carpool
