#include "carpool/preferences.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace carpool {

namespace {

bool contains(const Group& group, int rider) {
  return std::binary_search(group.begin(), group.end(), rider);
}

Group mask_to_group(unsigned mask) {
  Group g;
  for (int m = 0; mask; ++m, mask >>= 1)
    if (mask & 1u) g.push_back(m);
  return g;
}

}  // namespace

MarketInstance::MarketInstance(Network network,
                               std::vector<RiderPreferences> riders, Rat delta,
                               int car_capacity)
    : network_(std::move(network)),
      riders_(std::move(riders)),
      delta_(std::move(delta)),
      car_capacity_(car_capacity) {
  if (car_capacity_ < 1) throw ValidationError("car capacity must be >= 1");
  if (delta_ < 0) throw ValidationError("delta must be >= 0");
  if (riders_.empty()) throw ValidationError("no riders");

  std::set<std::string> ids;
  for (const RiderPreferences& r : riders_) {
    if (!ids.insert(r.id).second)
      throw ValidationError("duplicate rider id: " + r.id);
    if (r.beta < 0)
      throw ValidationError("rider " + r.id + " has negative beta");
    if (static_cast<int>(r.gamma.size()) != car_capacity_)
      throw ValidationError("rider " + r.id + " needs gamma(1.." +
                            std::to_string(car_capacity_) + ")");
    if (r.gamma[0] != 0)
      throw ValidationError("rider " + r.id + " must have gamma(1) = 0");
    for (int d = 1; d <= car_capacity_; ++d)
      if (r.gamma[d - 1] < 0)
        throw ValidationError("rider " + r.id + " has negative gamma");
    for (int d = 3; d <= car_capacity_; ++d)
      if (r.gamma[d - 1] - r.gamma[d - 2] < r.gamma[d - 2] - r.gamma[d - 3])
        throw ValidationError("rider " + r.id +
                              " has decreasing marginal carpool disutility");
  }

  homogeneous_gamma_ = true;
  for (const RiderPreferences& r : riders_)
    if (r.gamma != riders_.front().gamma) {
      homogeneous_gamma_ = false;
      break;
    }

  if (homogeneous_gamma_) {
    // theta(d+1) - theta(d) non-decreasing follows from the gamma invariants.
    for (int d = 1; d + 1 <= car_capacity_; ++d)
      if (theta(d + 1) - theta(d) < theta(d) - theta(d - 1))
        throw ValidationError("theta marginals are decreasing");
  }
}

const Rat& MarketInstance::gamma(int rider, int size) const {
  return riders_.at(rider).gamma.at(size - 1);
}

Rat MarketInstance::eta(int rider, const Rat& travel_time) const {
  return riders_.at(rider).alpha - riders_.at(rider).beta * travel_time;
}

Rat MarketInstance::eta(int rider, int route) const {
  return eta(rider, network_.routes().at(route).travel_time);
}

Rat MarketInstance::theta(int size) const {
  if (size == 0) return Rat(0);
  return size * riders_.front().gamma.at(size - 1) + delta_ * size;
}

MarketInstance MarketInstance::with_reported(int rider, const Rat& alpha,
                                             const Rat& beta) const {
  std::vector<RiderPreferences> riders = riders_;
  riders.at(rider).alpha = alpha;
  riders.at(rider).beta = beta;
  return MarketInstance(network_, std::move(riders), delta_, car_capacity_);
}

Rat rider_trip_value(const MarketInstance& instance, int rider,
                     const Group& group, const Rat& travel_time) {
  if (!contains(group, rider))
    throw std::invalid_argument("rider not in group");
  if (static_cast<int>(group.size()) > instance.car_capacity())
    throw std::invalid_argument("group exceeds car capacity");
  const RiderPreferences& r = instance.riders().at(rider);
  return r.alpha - r.beta * travel_time -
         instance.gamma(rider, static_cast<int>(group.size())) * travel_time;
}

Rat rider_trip_value(const MarketInstance& instance, int rider,
                     const Group& group, int route) {
  return rider_trip_value(instance, rider, group,
                          instance.network().routes().at(route).travel_time);
}

Rat social_trip_value(const MarketInstance& instance, const Group& group,
                      const Rat& travel_time) {
  if (group.empty() ||
      static_cast<int>(group.size()) > instance.car_capacity())
    throw std::invalid_argument("infeasible group size");
  Rat total(0);
  for (int m : group) total += rider_trip_value(instance, m, group, travel_time);
  return total - instance.delta() * static_cast<int>(group.size()) * travel_time;
}

Rat social_trip_value(const MarketInstance& instance, const Group& group,
                      int route) {
  return social_trip_value(instance, group,
                           instance.network().routes().at(route).travel_time);
}

AugmentedValue augmented_value(const MarketInstance& instance,
                               const Group& group_bar,
                               const Rat& travel_time) {
  AugmentedValue best;  // empty subset, value 0
  best.value = 0;

  if (group_bar.empty()) return best;

  if (instance.homogeneous_gamma()) {
    // Riders in decreasing eta, ties to the lowest id; keep adding while the
    // marginal eta^m - (theta(d) - theta(d-1)) t stays positive.
    std::vector<std::pair<Rat, int>> order;
    for (int m : group_bar) order.emplace_back(instance.eta(m, travel_time), m);
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    Rat value(0);
    int size = 0;
    for (const auto& [eta, m] : order) {
      if (size == instance.car_capacity()) break;
      Rat marginal =
          eta - (instance.theta(size + 1) - instance.theta(size)) * travel_time;
      if (marginal <= 0) break;
      value += marginal;
      ++size;
      best.representative.push_back(m);
    }
    std::sort(best.representative.begin(), best.representative.end());
    best.value = value;
    return best;
  }

  // Heterogeneous gamma: exhaust subsets; ties prefer the lexicographically
  // smallest member sequence (so also the smallest size).
  int n = static_cast<int>(group_bar.size());
  if (n > 20) throw std::invalid_argument("augmented group too large to enumerate");
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Group subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) subset.push_back(group_bar[i]);
    if (static_cast<int>(subset.size()) > instance.car_capacity()) continue;
    Rat value = social_trip_value(instance, subset, travel_time);
    if (value > best.value ||
        (value == best.value && !best.representative.empty() &&
         std::lexicographical_compare(subset.begin(), subset.end(),
                                      best.representative.begin(),
                                      best.representative.end()))) {
      best.value = value;
      best.representative = subset;
    }
  }
  return best;
}

AugmentedValue augmented_value(const MarketInstance& instance,
                               const Group& group_bar, int route) {
  return augmented_value(instance, group_bar,
                         instance.network().routes().at(route).travel_time);
}

MonotonicityReport check_monotonicity(const MarketInstance& instance,
                                      int route) {
  int n = instance.num_riders();
  if (n > 12) throw std::invalid_argument("monotonicity check limited to 12 riders");
  const Rat t = instance.network().routes().at(route).travel_time;

  std::vector<Rat> value(1u << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    value[mask] = augmented_value(instance, mask_to_group(mask), t).value;

  MonotonicityReport report;
  for (unsigned a = 0; a < (1u << n); ++a)
    for (unsigned b = 0; b < (1u << n); ++b)
      if (value[a | b] < value[a]) {
        report.holds = false;
        report.set_a = mask_to_group(a);
        report.set_b = mask_to_group(b);
        return report;
      }
  return report;
}

GrossSubstitutesReport check_gross_substitutes(const MarketInstance& instance,
                                               int route) {
  int n = instance.num_riders();
  if (n > 8)
    throw std::invalid_argument("gross substitutes check limited to 8 riders");
  const Rat t = instance.network().routes().at(route).travel_time;

  std::vector<Rat> value(1u << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    value[mask] = augmented_value(instance, mask_to_group(mask), t).value;

  auto marginal = [&](unsigned add, unsigned base) -> Rat {
    return value[base | add] - value[base];
  };

  GrossSubstitutesReport report;

  // (a) submodularity: marginal of a single rider shrinks on supersets.
  for (unsigned sup = 0; sup < (1u << n); ++sup) {
    for (unsigned sub = sup;; sub = (sub - 1) & sup) {
      for (int i = 0; i < n; ++i) {
        unsigned bit = 1u << i;
        if (sup & bit) continue;
        if (marginal(bit, sup) > marginal(bit, sub)) {
          report.holds = false;
          report.condition = "submodularity";
          report.base = mask_to_group(sub);
          report.i = i;
          return report;
        }
      }
      if (sub == 0) break;
    }
  }

  // (b) exchange inequality over all (base, i, j, k).
  for (unsigned base = 0; base < (1u << n); ++base) {
    for (int i = 0; i < n; ++i) {
      if (base & (1u << i)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (base & (1u << j)) continue;
        for (int k = 0; k < n; ++k) {
          if (k == i || k == j || (base & (1u << k))) continue;
          Rat lhs = marginal((1u << i) | (1u << j), base) +
                    marginal(1u << k, base);
          Rat rhs1 = marginal(1u << i, base) +
                     marginal((1u << j) | (1u << k), base);
          Rat rhs2 = marginal(1u << j, base) +
                     marginal((1u << i) | (1u << k), base);
          if (lhs > rhs1 && lhs > rhs2) {
            report.holds = false;
            report.condition = "exchange";
            report.base = mask_to_group(base);
            report.i = i;
            report.j = j;
            report.k = k;
            return report;
          }
        }
      }
    }
  }
  return report;
}

}  // namespace carpool
