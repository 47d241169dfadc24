#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carpool/oracle.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace carpool;

TEST_CASE("bridge fixture reproduces the published numbers") {
  MarketInstance inst = wheatstone_fixture();

  IpResult ip = brute_force_ip(inst);
  CHECK(ip.welfare == 10);
  REQUIRE(ip.x.trips.size() == 1);
  CHECK(ip.x.trips[0].route == 1);  // the pair rides e1-e5-e4
  CHECK(ip.x.trips[0].group.size() == 2);

  LpRelaxationResult lp = solve_lp_relaxation(inst);
  CHECK(lp.welfare == 11);
  // the half-integral optimum: three pair-trips at weight 1/2
  Rat half(1, 2);
  CHECK(lp.x.trips.size() == 3);
  for (const FractionalTrip& t : lp.x.trips) {
    CHECK(t.weight == half);
    CHECK(t.group.size() == 2);
  }
  // the optimum is unique up to relabeling the three identical riders: the
  // 3! bijections of distinct pairs onto routes are all optimal vertices
  CHECK(count_lp_optimal_vertices(inst) == 6);
}

TEST_CASE("single rider brute force takes the trip iff it has positive value") {
  Network net = Network::build({"o", "d"}, "o", "d",
                               {{"e1", "o", "d", 1, Rat(1)}});
  MarketInstance good(net, {{"m1", Rat(5), Rat(1), {Rat(0)}}}, Rat(0), 1);
  IpResult ip = brute_force_ip(good);
  CHECK(ip.welfare == 4);
  CHECK(ip.x.trips.size() == 1);

  MarketInstance bad(net, {{"m1", Rat(1), Rat(5), {Rat(0)}}}, Rat(0), 1);
  IpResult none = brute_force_ip(bad);
  CHECK(none.welfare == 0);
  CHECK(none.x.trips.empty());
}

TEST_CASE("brute force agrees with the second enumerator") {
  testing::InstanceGenerator gen(53);
  for (int i = 0; i < 40; ++i) {
    MarketInstance inst = gen.random_instance(5, 6);
    CHECK(brute_force_ip(inst).welfare == testing::reference_ip_value(inst));
  }
}

TEST_CASE("lp relaxation dominates the integer optimum") {
  testing::InstanceGenerator gen(59);
  for (int i = 0; i < 25; ++i) {
    MarketInstance inst = gen.random_instance(5, 6);
    LpRelaxationResult lp = solve_lp_relaxation(inst);
    IpResult ip = brute_force_ip(inst);
    CHECK(lp.welfare >= ip.welfare);
    CHECK(lp.welfare == lp.x.welfare(inst));
  }
}

TEST_CASE("slack single-route relaxation is integral") {
  Network net = Network::build({"o", "d"}, "o", "d",
                               {{"e1", "o", "d", 10, Rat(1)}});
  std::vector<RiderPreferences> riders;
  for (int m = 1; m <= 3; ++m)
    riders.push_back({"m" + std::to_string(m), Rat(2 + m), Rat(1), {Rat(0)}});
  MarketInstance inst(net, std::move(riders), Rat(0), 1);
  CHECK(solve_lp_relaxation(inst).welfare == brute_force_ip(inst).welfare);
}

TEST_CASE("guards reject oversized instances") {
  Network net = Network::build({"o", "d"}, "o", "d",
                               {{"e1", "o", "d", 1, Rat(1)}});
  std::vector<RiderPreferences> riders;
  for (int m = 0; m < 9; ++m)
    riders.push_back({"m" + std::to_string(m), Rat(1), Rat(0), {Rat(0)}});
  MarketInstance inst(net, std::move(riders), Rat(0), 1);
  CHECK_THROWS(brute_force_ip(inst));
  CHECK_THROWS(solve_lp_relaxation(inst));
}

TEST_CASE("z/g decomposition identity across random instances") {
  testing::InstanceGenerator gen(61);
  for (int i = 0; i < 20; ++i) {
    MarketInstance inst = gen.random_instance(4, 6);
    int n = inst.num_riders();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Group g;
      for (int m = 0; m < n; ++m)
        if (mask & (1u << m)) g.push_back(m);
      if (static_cast<int>(g.size()) > inst.car_capacity()) continue;
      for (int r = 0; r < static_cast<int>(inst.network().routes().size()); ++r)
        CHECK(group_value_intercept(inst, g) -
                  group_time_sensitivity(inst, g) *
                      inst.network().routes()[r].travel_time ==
              social_trip_value(inst, g, r));
    }
  }
}

TEST_CASE("reassignment pours heavy groups onto short routes") {
  // two groups g = (5, 3) on two routes t = (1, 2) with k = 1 each
  Network net = Network::build({"o", "d"}, "o", "d",
                               {{"fast", "o", "d", 1, Rat(1)},
                                {"slow", "o", "d", 1, Rat(2)}});
  std::vector<RiderPreferences> riders = {
      {"m1", Rat(20), Rat(5), {Rat(0)}},  // g({m1}) = 5
      {"m2", Rat(20), Rat(3), {Rat(0)}},  // g({m2}) = 3
  };
  MarketInstance inst(net, std::move(riders), Rat(0), 1);
  RouteCapacityVector k = greedy_route_capacities(net);
  REQUIRE(k.k == std::vector<long long>{1, 1});

  // start from the wrong-way-round assignment
  FractionalTripVector bad;
  bad.trips = {{{0}, 1, Rat(1)}, {{1}, 0, Rat(1)}};
  FractionalTripVector fixed = reassign_to_subnetwork(inst, bad, k);
  REQUIRE(fixed.trips.size() == 2);
  CHECK(fixed.trips[0].group == Group{0});
  CHECK(fixed.trips[0].route == 0);
  CHECK(fixed.trips[1].group == Group{1});
  CHECK(fixed.trips[1].route == 1);
  CHECK(fixed.welfare(inst) >= bad.welfare(inst));
  // other ordering is strictly worse
  CHECK(fixed.welfare(inst) == 29);
  CHECK(bad.welfare(inst) == 27);
}

TEST_CASE("reassignment is a fixed point on conforming inputs") {
  Network net = Network::build({"o", "d"}, "o", "d",
                               {{"fast", "o", "d", 1, Rat(1)},
                                {"slow", "o", "d", 1, Rat(2)}});
  std::vector<RiderPreferences> riders = {
      {"m1", Rat(20), Rat(5), {Rat(0)}},
      {"m2", Rat(20), Rat(3), {Rat(0)}},
  };
  MarketInstance inst(net, std::move(riders), Rat(0), 1);
  RouteCapacityVector k = greedy_route_capacities(net);
  FractionalTripVector good;
  good.trips = {{{0}, 0, Rat(1)}, {{1}, 1, Rat(1)}};
  FractionalTripVector out = reassign_to_subnetwork(inst, good, k);
  CHECK(out.welfare(inst) == good.welfare(inst));
}

TEST_CASE("reassignment splits weight at capacity boundaries") {
  testing::InstanceGenerator gen(67);
  int done = 0;
  for (int i = 0; done < 30 && i < 200; ++i) {
    MarketInstance inst = gen.random_instance(5, 6);
    LpRelaxationResult lp = solve_lp_relaxation(inst);
    RouteCapacityVector k = greedy_route_capacities(inst.network());
    FractionalTripVector out = reassign_to_subnetwork(inst, lp.x, k);
    ++done;
    CHECK(out.welfare(inst) >= lp.x.welfare(inst));
    // feasibility in the sub-network: per-route load within k, riders <= 1
    std::vector<Rat> route_load(inst.network().routes().size(), Rat(0));
    std::vector<Rat> rider_load(inst.num_riders(), Rat(0));
    for (const FractionalTrip& t : out.trips) {
      CHECK(t.weight > 0);
      route_load[t.route] += t.weight;
      for (int m : t.group) rider_load[m] += t.weight;
    }
    for (std::size_t r = 0; r < route_load.size(); ++r)
      CHECK(route_load[r] <= k.k[r]);
    for (const Rat& load : rider_load) CHECK(load <= 1);
  }
  CHECK(done == 30);
}

TEST_CASE("reassignment refuses the bridge network") {
  MarketInstance inst = wheatstone_fixture();
  LpRelaxationResult lp = solve_lp_relaxation(inst);
  RouteCapacityVector k = greedy_route_capacities(inst.network());
  CHECK_THROWS(reassign_to_subnetwork(inst, lp.x, k));
}
