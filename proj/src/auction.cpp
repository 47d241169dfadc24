#include "carpool/auction.hpp"

#include <algorithm>
#include <stdexcept>

namespace carpool {

AuxiliaryRouteSet build_auxiliary(const Network& network,
                                  const RouteCapacityVector& k) {
  AuxiliaryRouteSet aux;
  for (std::size_t r = 0; r < k.k.size(); ++r)
    for (long long c = 0; c < k.k[r]; ++c)
      aux.routes.push_back({static_cast<int>(r), static_cast<int>(c),
                            network.routes().at(r).travel_time});
  return aux;
}

namespace {

Group remove_rider(const Group& group, int rider) {
  Group out;
  for (int m : group)
    if (m != rider) out.push_back(m);
  return out;
}

Group insert_rider(const Group& group, int rider) {
  Group out = group;
  out.insert(std::upper_bound(out.begin(), out.end(), rider), rider);
  return out;
}

// lcm of denominators of every eta^m_r and theta(d) t_r value, so all
// augmented trip values are integer multiples of 1/scale.
Int value_scale(const MarketInstance& instance, const AuxiliaryRouteSet& aux) {
  Int scale = 1;
  std::vector<Rat> times;
  for (const AuxRoute& l : aux.routes)
    if (std::find(times.begin(), times.end(), l.travel_time) == times.end())
      times.push_back(l.travel_time);
  for (const Rat& t : times) {
    for (int m = 0; m < instance.num_riders(); ++m)
      scale = lcm(scale, denominator(instance.eta(m, t)));
    for (int d = 1; d <= instance.car_capacity(); ++d)
      scale = lcm(scale, denominator(instance.theta(d) * t));
  }
  return scale;
}

}  // namespace

Group demand_set(const MarketInstance& instance, const AuxRoute& l,
                 const Group& holding, const std::vector<Rat>& utilities,
                 const Rat& epsilon, const std::vector<int>& active) {
  if (!instance.homogeneous_gamma())
    throw std::invalid_argument(
        "demand oracle requires homogeneous carpool disutility");

  Group chosen = holding;
  Rat current = augmented_value(instance, chosen, l.travel_time).value;
  Group demanded;

  while (true) {
    int best = -1;
    Rat best_gain;
    Rat best_value;
    for (int j : active) {
      if (std::binary_search(chosen.begin(), chosen.end(), j)) continue;
      Rat with_j =
          augmented_value(instance, insert_rider(chosen, j), l.travel_time)
              .value;
      Rat gain = with_j - current - utilities[j] - epsilon;
      if (gain > 0 && (best < 0 || gain > best_gain)) {
        best = j;
        best_gain = gain;
        best_value = with_j;
      }
    }
    if (best < 0) break;
    chosen = insert_rider(chosen, best);
    current = best_value;
    demanded = insert_rider(demanded, best);
  }
  return demanded;
}

AuctionResult kelso_crawford(const MarketInstance& instance,
                             const AuxiliaryRouteSet& aux,
                             std::vector<int> active,
                             std::optional<Rat> epsilon) {
  if (!instance.homogeneous_gamma())
    throw std::invalid_argument(
        "auction requires homogeneous carpool disutility");
  if (active.empty())
    for (int m = 0; m < instance.num_riders(); ++m) active.push_back(m);
  std::sort(active.begin(), active.end());

  AuctionResult result;
  result.scale = value_scale(instance, aux);
  result.epsilon = epsilon.value_or(
      Rat(1, Int(2 * instance.num_riders() + 1) * result.scale));
  if (result.epsilon <= 0) throw std::invalid_argument("epsilon must be > 0");

  result.holdings.assign(aux.size(), Group{});
  result.utilities.assign(instance.num_riders(), Rat(0));

  // Monotonicity makes the grand bundle the most valuable one.
  Rat v_max(0);
  for (const AuxRoute& l : aux.routes)
    v_max = std::max(v_max,
                     augmented_value(instance, active, l.travel_time).value);
  Rat bound = Rat(static_cast<int>(active.size())) * v_max / result.epsilon;
  result.iteration_bound =
      static_cast<long long>(numerator(bound) / denominator(bound)) + 1;
  long long hard_stop = 2 * result.iteration_bound + 2;

  while (true) {
    std::size_t picked = aux.size();
    Group demanded;
    for (std::size_t l = 0; l < aux.size(); ++l) {
      demanded = demand_set(instance, aux.routes[l], result.holdings[l],
                            result.utilities, result.epsilon, active);
      if (!demanded.empty()) {
        picked = l;
        break;
      }
    }
    if (picked == aux.size()) break;

    if (++result.iterations > hard_stop)
      throw std::runtime_error("auction exceeded its iteration bound");

    for (std::size_t l = 0; l < aux.size(); ++l) {
      if (l == picked) continue;
      Group& holding = result.holdings[l];
      for (int j : demanded) holding = remove_rider(holding, j);
    }
    for (int j : demanded) {
      result.holdings[picked] = insert_rider(result.holdings[picked], j);
      result.utilities[j] += result.epsilon;
    }
  }

  result.augmented_welfare = 0;
  for (std::size_t l = 0; l < aux.size(); ++l)
    result.augmented_welfare +=
        augmented_value(instance, result.holdings[l], aux.routes[l].travel_time)
            .value;
  return result;
}

TripVector chi(const MarketInstance& instance, const AuxiliaryRouteSet& aux,
               const std::vector<Group>& holdings) {
  if (holdings.size() != aux.size())
    throw std::invalid_argument("holdings/auxiliary size mismatch");
  std::vector<int> owner(instance.num_riders(), -1);
  for (std::size_t l = 0; l < holdings.size(); ++l)
    for (int m : holdings[l]) {
      if (owner[m] >= 0)
        throw std::invalid_argument("rider held by two auxiliary routes");
      owner[m] = static_cast<int>(l);
    }

  TripVector x;
  for (std::size_t l = 0; l < holdings.size(); ++l) {
    AugmentedValue av =
        augmented_value(instance, holdings[l], aux.routes[l].travel_time);
    if (!av.representative.empty())
      x.trips.push_back({av.representative, aux.routes[l].route});
  }
  return x;
}

}  // namespace carpool
