#pragma once

#include "carpool/network.hpp"
#include "carpool/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace carpool {

// Sorted set of rider indices.
using Group = std::vector<int>;

struct RiderPreferences {
  std::string id;
  Rat alpha;                // value of arrival
  Rat beta;                 // value of time, >= 0
  std::vector<Rat> gamma;   // gamma[d-1] = carpool disutility at group size d
};

class MarketInstance {
 public:
  MarketInstance(Network network, std::vector<RiderPreferences> riders,
                 Rat delta, int car_capacity);

  const Network& network() const { return network_; }
  const std::vector<RiderPreferences>& riders() const { return riders_; }
  int num_riders() const { return static_cast<int>(riders_.size()); }
  const Rat& delta() const { return delta_; }
  int car_capacity() const { return car_capacity_; }
  bool homogeneous_gamma() const { return homogeneous_gamma_; }

  const Rat& gamma(int rider, int size) const;

  // eta^m_r = alpha^m - beta^m t_r
  Rat eta(int rider, const Rat& travel_time) const;
  Rat eta(int rider, int route) const;

  // theta(d) = d*gamma(d) + delta*d; homogeneous gamma only.
  Rat theta(int size) const;

  // Same market with one rider's reported (alpha, beta) replaced.
  MarketInstance with_reported(int rider, const Rat& alpha,
                               const Rat& beta) const;

 private:
  Network network_;
  std::vector<RiderPreferences> riders_;
  Rat delta_;
  int car_capacity_;
  bool homogeneous_gamma_;
};

// v^m_r(b) = alpha^m - beta^m t_r - gamma^m(|b|) t_r, for m in b, |b| <= A.
Rat rider_trip_value(const MarketInstance& instance, int rider,
                     const Group& group, const Rat& travel_time);
Rat rider_trip_value(const MarketInstance& instance, int rider,
                     const Group& group, int route);

// V_r(b) = sum_m v^m_r(b) - delta |b| t_r.
Rat social_trip_value(const MarketInstance& instance, const Group& group,
                      const Rat& travel_time);
Rat social_trip_value(const MarketInstance& instance, const Group& group,
                      int route);

struct AugmentedValue {
  Rat value;             // Vbar_r(bbar); 0 for the empty set
  Group representative;  // arg-max feasible subset, lowest-id tie-break
};

// Vbar_r(bbar) = max over feasible subsets b of bbar, |b| <= A, of V_r(b).
// Greedy eta-ordering under homogeneous gamma, subset enumeration otherwise.
AugmentedValue augmented_value(const MarketInstance& instance,
                               const Group& group_bar, const Rat& travel_time);
AugmentedValue augmented_value(const MarketInstance& instance,
                               const Group& group_bar, int route);

struct MonotonicityReport {
  bool holds = true;
  Group set_a;  // first violation: Vbar(a ∪ b) < Vbar(a)
  Group set_b;
};

// Checks Vbar_r(bbar ∪ bbar') >= Vbar_r(bbar) over all pairs. |M| <= 12.
MonotonicityReport check_monotonicity(const MarketInstance& instance,
                                      int route);

struct GrossSubstitutesReport {
  bool holds = true;
  // Condition (a) witness: marginal of rider i grew from base to superset.
  // Condition (b) witness: exchange inequality fails at (base, i, j, k).
  std::string condition;
  Group base;
  int i = -1, j = -1, k = -1;
};

// Enumeration check of submodularity (a) and the three-rider exchange
// inequality (b). |M| <= 8.
GrossSubstitutesReport check_gross_substitutes(const MarketInstance& instance,
                                               int route);

}  // namespace carpool
