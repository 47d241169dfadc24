#include "carpool/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

namespace carpool {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

std::vector<Rat> parse_gamma(const Json& arr, const std::string& where) {
  if (!arr.is_array()) fail(where, "gamma must be an array");
  std::vector<Rat> gamma;
  for (const Json& g : arr) gamma.push_back(rat_from_json(g));
  return gamma;
}

}  // namespace

Rat rat_from_json(const Json& value) {
  if (value.is_number_integer()) return Rat(value.get<long long>());
  if (value.is_number_unsigned()) return Rat(value.get<unsigned long long>());
  if (value.is_number_float()) return Rat(value.get<double>());
  if (value.is_string()) {
    if (auto r = parse_rational(value.get<std::string>())) return *r;
    fail("rational", "cannot parse \"" + value.get<std::string>() + "\"");
  }
  fail("rational", "expected a number or a string like \"1/3\"");
}

Json rat_to_json(const Rat& value, bool as_float) {
  if (as_float) return std::stod(to_decimal_string(value, 12));
  return to_fraction_string(value);
}

MarketInstance parse_instance(const Json& doc, std::size_t max_routes) {
  if (!doc.is_object()) fail("instance", "document must be a JSON object");
  for (const char* key :
       {"nodes", "origin", "destination", "edges", "riders", "delta",
        "car_capacity"})
    if (!doc.contains(key)) fail("instance", std::string("missing ") + key);

  std::vector<std::string> nodes;
  for (const Json& n : doc.at("nodes")) nodes.push_back(n.get<std::string>());

  std::vector<Edge> edges;
  for (const Json& e : doc.at("edges")) {
    for (const char* key : {"id", "from", "to", "capacity", "travel_time"})
      if (!e.contains(key)) fail("edges", std::string("missing ") + key);
    if (!e.at("capacity").is_number_integer())
      fail("edges", "capacity must be an integer");
    edges.push_back({e.at("id").get<std::string>(),
                     e.at("from").get<std::string>(),
                     e.at("to").get<std::string>(),
                     e.at("capacity").get<long long>(),
                     rat_from_json(e.at("travel_time"))});
  }

  int car_capacity = doc.at("car_capacity").get<int>();
  bool shared_gamma = doc.contains("gamma");
  std::vector<Rat> shared;
  if (shared_gamma) shared = parse_gamma(doc.at("gamma"), "instance.gamma");

  std::vector<RiderPreferences> riders;
  for (const Json& r : doc.at("riders")) {
    for (const char* key : {"id", "alpha", "beta"})
      if (!r.contains(key)) fail("riders", std::string("missing ") + key);
    if (r.contains("gamma") == shared_gamma)
      fail("riders", "gamma must appear either once at the top level or on "
                     "every rider, not both");
    riders.push_back({r.at("id").get<std::string>(),
                      rat_from_json(r.at("alpha")), rat_from_json(r.at("beta")),
                      shared_gamma ? shared
                                   : parse_gamma(r.at("gamma"), "riders.gamma")});
  }

  Network net = Network::build(std::move(nodes),
                               doc.at("origin").get<std::string>(),
                               doc.at("destination").get<std::string>(),
                               std::move(edges), max_routes);
  return MarketInstance(std::move(net), std::move(riders),
                        rat_from_json(doc.at("delta")), car_capacity);
}

MarketInstance load_instance(const std::string& path, std::size_t max_routes) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& err) {
    fail(path, err.what());
  }
  return parse_instance(doc, max_routes);
}

Json instance_to_json(const MarketInstance& instance, bool as_float) {
  const Network& net = instance.network();
  Json doc;
  doc["nodes"] = net.nodes();
  doc["origin"] = net.origin();
  doc["destination"] = net.destination();
  doc["edges"] = Json::array();
  for (const Edge& e : net.edges())
    doc["edges"].push_back({{"id", e.id},
                            {"from", e.from},
                            {"to", e.to},
                            {"capacity", e.capacity},
                            {"travel_time", rat_to_json(e.travel_time, as_float)}});
  doc["riders"] = Json::array();
  for (const RiderPreferences& r : instance.riders()) {
    Json rider = {{"id", r.id},
                  {"alpha", rat_to_json(r.alpha, as_float)},
                  {"beta", rat_to_json(r.beta, as_float)}};
    if (!instance.homogeneous_gamma()) {
      Json gamma = Json::array();
      for (const Rat& g : r.gamma) gamma.push_back(rat_to_json(g, as_float));
      rider["gamma"] = gamma;
    }
    doc["riders"].push_back(rider);
  }
  if (instance.homogeneous_gamma()) {
    Json gamma = Json::array();
    for (const Rat& g : instance.riders().front().gamma)
      gamma.push_back(rat_to_json(g, as_float));
    doc["gamma"] = gamma;
  }
  doc["delta"] = rat_to_json(instance.delta(), as_float);
  doc["car_capacity"] = instance.car_capacity();
  return doc;
}

Json outcome_to_json(const MarketInstance& instance, const Outcome& outcome,
                     bool as_float) {
  const Network& net = instance.network();
  Json doc;
  doc["trips"] = Json::array();
  for (const Trip& trip : outcome.x.trips) {
    Json riders = Json::array();
    for (int m : trip.group) riders.push_back(instance.riders()[m].id);
    doc["trips"].push_back(
        {{"riders", riders},
         {"route", net.route_label(trip.route)},
         {"value",
          rat_to_json(social_trip_value(instance, trip.group, trip.route),
                      as_float)}});
  }
  doc["payments"] = Json::object();
  for (int m = 0; m < instance.num_riders(); ++m)
    doc["payments"][instance.riders()[m].id] =
        rat_to_json(outcome.payments[m], as_float);
  doc["tolls"] = Json::object();
  for (std::size_t e = 0; e < net.edges().size(); ++e)
    doc["tolls"][net.edges()[e].id] = rat_to_json(outcome.tolls[e], as_float);
  doc["utilities"] = Json::object();
  std::vector<Rat> u = outcome_utilities(instance, outcome);
  for (int m = 0; m < instance.num_riders(); ++m)
    doc["utilities"][instance.riders()[m].id] = rat_to_json(u[m], as_float);
  return doc;
}

Outcome outcome_from_json(const MarketInstance& instance, const Json& doc) {
  const Network& net = instance.network();
  std::map<std::string, int> rider_of;
  for (int m = 0; m < instance.num_riders(); ++m)
    rider_of[instance.riders()[m].id] = m;
  std::map<std::string, int> route_of;
  for (int r = 0; r < static_cast<int>(net.routes().size()); ++r)
    route_of[net.route_label(r)] = r;

  for (const char* key : {"trips", "payments", "tolls"})
    if (!doc.contains(key)) fail("outcome", std::string("missing ") + key);

  Outcome outcome;
  for (const Json& t : doc.at("trips")) {
    Trip trip;
    for (const Json& id : t.at("riders")) {
      auto it = rider_of.find(id.get<std::string>());
      if (it == rider_of.end())
        fail("outcome.trips", "unknown rider " + id.get<std::string>());
      trip.group.push_back(it->second);
    }
    std::sort(trip.group.begin(), trip.group.end());
    auto it = route_of.find(t.at("route").get<std::string>());
    if (it == route_of.end())
      fail("outcome.trips", "unknown route " + t.at("route").get<std::string>());
    trip.route = it->second;
    outcome.x.trips.push_back(std::move(trip));
  }

  outcome.payments.assign(instance.num_riders(), Rat(0));
  for (const auto& [id, value] : doc.at("payments").items()) {
    auto it = rider_of.find(id);
    if (it == rider_of.end()) fail("outcome.payments", "unknown rider " + id);
    outcome.payments[it->second] = rat_from_json(value);
  }
  outcome.tolls.assign(net.edges().size(), Rat(0));
  for (const auto& [id, value] : doc.at("tolls").items()) {
    int e = net.edge_index(id);
    if (e < 0) fail("outcome.tolls", "unknown edge " + id);
    outcome.tolls[e] = rat_from_json(value);
  }
  return outcome;
}

Json report_to_json(const EquilibriumReport& report) {
  return Json{{"feasible", report.feasible},
              {"individual_rationality", report.individual_rationality},
              {"stability", report.stability},
              {"budget_balance", report.budget_balance},
              {"market_clearing", report.market_clearing},
              {"complementary_slackness", report.complementary_slackness},
              {"toll_monotonicity", report.toll_monotonicity},
              {"all_ok", report.all_ok()},
              {"witnesses", report.witnesses}};
}

}  // namespace carpool
