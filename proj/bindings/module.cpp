#include "carpool/auction.hpp"
#include "carpool/equilibrium.hpp"
#include "carpool/io.hpp"
#include "carpool/network.hpp"
#include "carpool/oracle.hpp"
#include "carpool/vcg.hpp"

#include <nlohmann/json.hpp>
#include <pybind11/pybind11.h>

#include <string>

namespace py = pybind11;

namespace {

using carpool::Json;

carpool::MarketInstance parse(const std::string& text, long long max_routes) {
  return carpool::parse_instance(Json::parse(text),
                                 static_cast<std::size_t>(max_routes));
}

std::string solve(const std::string& instance_json, bool vcg,
                  long long max_routes) {
  carpool::MarketInstance instance = parse(instance_json, max_routes);
  const carpool::Network& net = instance.network();

  Json doc;
  if (instance.num_riders() <= 8 && net.routes().size() <= 32) {
    carpool::ExistenceResult existence = carpool::equilibrium_exists(instance);
    doc["lp_value"] = carpool::rat_to_json(existence.lp_value, false);
    doc["ip_value"] = carpool::rat_to_json(existence.ip_value, false);
    if (!existence.exists) {
      doc["equilibrium_exists"] = false;
      return doc.dump();
    }
  }

  carpool::Outcome outcome;
  if (vcg) {
    carpool::VcgResult result = carpool::vcg_payments(instance);
    outcome = {result.x, result.payments, result.tolls};
  } else {
    carpool::RouteCapacityVector k = carpool::greedy_route_capacities(net);
    carpool::AuxiliaryRouteSet aux = carpool::build_auxiliary(net, k);
    carpool::AuctionResult auction = carpool::kelso_crawford(instance, aux);
    outcome.x = carpool::chi(instance, aux, auction.holdings);
    carpool::DualSolution dual = carpool::solve_dual(instance);
    outcome.tolls = dual.tolls;
    outcome.payments =
        carpool::payments_from_utilities(instance, outcome.x, dual.utilities);
  }

  Json out = carpool::outcome_to_json(instance, outcome, false);
  for (auto& [key, value] : doc.items()) out[key] = value;
  out["equilibrium_exists"] = true;
  out["report"] =
      carpool::report_to_json(carpool::verify_equilibrium(instance, outcome));
  return out.dump();
}

std::string verify(const std::string& instance_json,
                   const std::string& outcome_json, long long max_routes) {
  carpool::MarketInstance instance = parse(instance_json, max_routes);
  carpool::Outcome outcome =
      carpool::outcome_from_json(instance, Json::parse(outcome_json));
  return carpool::report_to_json(carpool::verify_equilibrium(instance, outcome))
      .dump();
}

std::string inspect(const std::string& instance_json, long long max_routes) {
  carpool::MarketInstance instance = parse(instance_json, max_routes);
  const carpool::Network& net = instance.network();

  Json doc;
  doc["routes"] = Json::array();
  for (int r = 0; r < static_cast<int>(net.routes().size()); ++r)
    doc["routes"].push_back(
        {{"route", net.route_label(r)},
         {"travel_time", carpool::rat_to_json(net.routes()[r].travel_time, false)}});
  doc["series_parallel"] =
      carpool::decompose_series_parallel(net).is_series_parallel();
  carpool::RouteCapacityVector k = carpool::greedy_route_capacities(net);
  Json kjson = Json::object();
  for (int r : k.support()) kjson[net.route_label(r)] = k.k[r];
  doc["k_star"] = kjson;
  doc["network_capacity"] = carpool::network_capacity(net);
  return doc.dump();
}

std::string oracle(const std::string& instance_json, long long max_routes) {
  carpool::MarketInstance instance = parse(instance_json, max_routes);
  carpool::LpRelaxationResult lp = carpool::solve_lp_relaxation(instance);
  carpool::IpResult ip = carpool::brute_force_ip(instance);
  Json doc;
  doc["lp_value"] = carpool::rat_to_json(lp.welfare, false);
  doc["ip_value"] = carpool::rat_to_json(ip.welfare, false);
  doc["equilibrium_exists"] = (lp.welfare == ip.welfare);
  return doc.dump();
}

}  // namespace

PYBIND11_MODULE(_carpool, m) {
  m.doc() = "competitive equilibria for an autonomous carpooling market";
  m.def("solve_json", &solve, py::arg("instance_json"), py::arg("vcg") = false,
        py::arg("max_routes") = 10000,
        "Solve an instance document; returns a result document JSON string.");
  m.def("verify_json", &verify, py::arg("instance_json"),
        py::arg("outcome_json"), py::arg("max_routes") = 10000,
        "Check every equilibrium property of an outcome document.");
  m.def("inspect_json", &inspect, py::arg("instance_json"),
        py::arg("max_routes") = 10000,
        "Routes, series-parallel verdict, greedy capacities, max flow.");
  m.def("oracle_json", &oracle, py::arg("instance_json"),
        py::arg("max_routes") = 10000,
        "Brute-force LP/IP optima (small instances only).");
}
