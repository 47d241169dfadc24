#include "carpool/trips.hpp"

namespace carpool {

Rat TripVector::welfare(const MarketInstance& instance) const {
  Rat total(0);
  for (const Trip& t : trips)
    total += social_trip_value(instance, t.group, t.route);
  return total;
}

std::vector<long long> TripVector::edge_loads(const Network& network) const {
  std::vector<long long> loads(network.edges().size(), 0);
  for (const Trip& t : trips)
    for (int e : network.routes().at(t.route).edges) ++loads[e];
  return loads;
}

int TripVector::trip_of(int rider) const {
  for (std::size_t i = 0; i < trips.size(); ++i)
    for (int m : trips[i].group)
      if (m == rider) return static_cast<int>(i);
  return -1;
}

std::string TripVector::feasibility_error(const MarketInstance& instance) const {
  std::vector<int> seen(instance.num_riders(), 0);
  for (const Trip& t : trips) {
    if (t.group.empty()) return "empty trip group";
    if (static_cast<int>(t.group.size()) > instance.car_capacity())
      return "group exceeds car capacity";
    if (t.route < 0 ||
        t.route >= static_cast<int>(instance.network().routes().size()))
      return "unknown route";
    for (int m : t.group) {
      if (m < 0 || m >= instance.num_riders()) return "unknown rider";
      if (seen[m]++) return "rider " + instance.riders()[m].id +
                            " assigned to more than one trip";
    }
  }
  auto loads = edge_loads(instance.network());
  for (std::size_t e = 0; e < loads.size(); ++e)
    if (loads[e] > instance.network().edges()[e].capacity)
      return "edge " + instance.network().edges()[e].id + " over capacity";
  return "";
}

Rat FractionalTripVector::welfare(const MarketInstance& instance) const {
  Rat total(0);
  for (const FractionalTrip& t : trips)
    total += t.weight * social_trip_value(instance, t.group, t.route);
  return total;
}

}  // namespace carpool
