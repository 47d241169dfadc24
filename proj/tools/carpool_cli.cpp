#include "carpool/auction.hpp"
#include "carpool/equilibrium.hpp"
#include "carpool/io.hpp"
#include "carpool/network.hpp"
#include "carpool/oracle.hpp"
#include "carpool/vcg.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using carpool::Json;
using carpool::Rat;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;  // proven nonexistence / failed verification

std::size_t route_cap(std::optional<long long> flag) {
  if (flag) return static_cast<std::size_t>(*flag);
  if (const char* env = std::getenv("CARPOOL_MAX_ROUTES"))
    return static_cast<std::size_t>(std::stoll(env));
  return carpool::Network::kDefaultMaxRoutes;
}

void emit(const Json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << doc.dump(2) << "\n";
  }
}

bool within_oracle_guards(const carpool::MarketInstance& instance) {
  return instance.num_riders() <= 8 &&
         instance.network().routes().size() <= 32;
}

int cmd_solve(const std::string& path, bool vcg,
              const std::optional<std::string>& epsilon_text,
              std::optional<long long> seed,
              std::optional<long long> max_routes, bool as_float,
              const std::string& out_path) {
  carpool::MarketInstance instance =
      carpool::load_instance(path, route_cap(max_routes));
  const carpool::Network& net = instance.network();
  bool sp = carpool::decompose_series_parallel(net).is_series_parallel();
  bool pipeline_ok = sp && instance.homogeneous_gamma();

  Json diag;
  diag["series_parallel"] = sp;
  diag["homogeneous_gamma"] = instance.homogeneous_gamma();
  if (seed) diag["seed"] = *seed;  // recorded only: the solver is deterministic

  if (within_oracle_guards(instance)) {
    carpool::ExistenceResult existence = carpool::equilibrium_exists(instance);
    diag["lp_value"] = carpool::rat_to_json(existence.lp_value, as_float);
    diag["ip_value"] = carpool::rat_to_json(existence.ip_value, as_float);
    if (!existence.exists) {
      Json doc;
      doc["equilibrium_exists"] = false;
      doc["diagnostics"] = diag;
      emit(doc, out_path);
      return kExitNegative;
    }
    if (!pipeline_ok) {
      // Zero gap without the structural guarantees: serve the oracle outcome.
      if (vcg)
        throw std::invalid_argument(
            "--vcg needs a series-parallel network and homogeneous carpool "
            "disutility");
      const carpool::Outcome& outcome = *existence.outcome;
      Json doc = carpool::outcome_to_json(instance, outcome, as_float);
      doc["equilibrium_exists"] = true;
      doc["report"] =
          carpool::report_to_json(carpool::verify_equilibrium(instance, outcome));
      doc["diagnostics"] = diag;
      emit(doc, out_path);
      return kExitOk;
    }
  } else if (!pipeline_ok) {
    throw std::invalid_argument(
        "instance exceeds the brute-force guards and lacks the structural "
        "guarantees (series-parallel + homogeneous carpool disutility)");
  }

  carpool::RouteCapacityVector k = carpool::greedy_route_capacities(net);
  Json kjson = Json::object();
  for (int r : k.support()) kjson[net.route_label(r)] = k.k[r];
  diag["k_star"] = kjson;

  carpool::Outcome outcome;
  if (vcg) {
    carpool::VcgResult result = carpool::vcg_payments(instance);
    outcome = {result.x, result.payments, result.tolls};
    diag["welfare"] = carpool::rat_to_json(result.welfare, as_float);
  } else {
    carpool::AuxiliaryRouteSet aux = carpool::build_auxiliary(net, k);
    std::optional<Rat> epsilon;
    if (epsilon_text) {
      auto parsed = carpool::parse_rational(*epsilon_text);
      if (!parsed) throw std::invalid_argument("bad --epsilon value");
      epsilon = *parsed;
    }
    carpool::AuctionResult auction =
        carpool::kelso_crawford(instance, aux, {}, epsilon);
    outcome.x = carpool::chi(instance, aux, auction.holdings);
    carpool::DualSolution dual = carpool::solve_dual(instance);
    outcome.tolls = dual.tolls;
    outcome.payments =
        carpool::payments_from_utilities(instance, outcome.x, dual.utilities);
    diag["welfare"] = carpool::rat_to_json(outcome.x.welfare(instance), as_float);
    diag["auction_iterations"] = auction.iterations;
    diag["auction_iteration_bound"] = auction.iteration_bound;
    diag["epsilon"] = carpool::rat_to_json(auction.epsilon, as_float);
  }

  Json doc = carpool::outcome_to_json(instance, outcome, as_float);
  doc["equilibrium_exists"] = true;
  doc["report"] =
      carpool::report_to_json(carpool::verify_equilibrium(instance, outcome));
  doc["diagnostics"] = diag;
  emit(doc, out_path);
  return kExitOk;
}

int cmd_verify(const std::string& instance_path, const std::string& outcome_path,
               std::optional<long long> max_routes, bool as_float,
               const std::string& out_path) {
  carpool::MarketInstance instance =
      carpool::load_instance(instance_path, route_cap(max_routes));
  std::ifstream in(outcome_path);
  if (!in) throw carpool::ValidationError(outcome_path + ": cannot open file");
  carpool::Outcome outcome =
      carpool::outcome_from_json(instance, Json::parse(in));
  carpool::EquilibriumReport report =
      carpool::verify_equilibrium(instance, outcome);
  emit(carpool::report_to_json(report), out_path);
  return report.all_ok() ? kExitOk : kExitNegative;
}

int cmd_inspect(const std::string& path, bool routes, bool sp, bool greedy,
                bool gs_check, std::optional<long long> max_routes,
                bool as_float, const std::string& out_path) {
  carpool::MarketInstance instance =
      carpool::load_instance(path, route_cap(max_routes));
  const carpool::Network& net = instance.network();
  bool all = !(routes || sp || greedy || gs_check);
  Json doc;

  if (all || routes) {
    Json table = Json::array();
    for (int r = 0; r < static_cast<int>(net.routes().size()); ++r)
      table.push_back(
          {{"route", net.route_label(r)},
           {"travel_time",
            carpool::rat_to_json(net.routes()[r].travel_time, as_float)}});
    doc["routes"] = table;
  }
  if (all || sp) {
    carpool::SPDecomposition d = carpool::decompose_series_parallel(net);
    doc["series_parallel"] = d.is_series_parallel();
    if (!d.is_series_parallel()) {
      Json witness = Json::array();
      for (int e : d.witness_edges) witness.push_back(net.edges()[e].id);
      doc["sp_witness_edges"] = witness;
    }
  }
  if (all || greedy) {
    carpool::RouteCapacityVector k = carpool::greedy_route_capacities(net);
    Json kjson = Json::object();
    for (int r : k.support()) kjson[net.route_label(r)] = k.k[r];
    doc["k_star"] = kjson;
    doc["k_star_total"] = k.total();
    doc["network_capacity"] = carpool::network_capacity(net);
  }
  if (all || gs_check) {
    Json verdicts = Json::array();
    for (int r = 0; r < static_cast<int>(net.routes().size()); ++r) {
      carpool::GrossSubstitutesReport gs =
          carpool::check_gross_substitutes(instance, r);
      Json v = {{"route", net.route_label(r)}, {"holds", gs.holds}};
      if (!gs.holds) {
        v["condition"] = gs.condition;
        Json base = Json::array();
        for (int m : gs.base) base.push_back(instance.riders()[m].id);
        v["base"] = base;
        v["i"] = instance.riders()[gs.i].id;
        if (gs.j >= 0) v["j"] = instance.riders()[gs.j].id;
        if (gs.k >= 0) v["k"] = instance.riders()[gs.k].id;
      }
      verdicts.push_back(v);
    }
    doc["gross_substitutes"] = verdicts;
  }
  emit(doc, out_path);
  return kExitOk;
}

int cmd_oracle(const std::string& path, std::optional<long long> max_routes,
               bool as_float, const std::string& out_path) {
  carpool::MarketInstance instance =
      carpool::load_instance(path, route_cap(max_routes));
  carpool::LpRelaxationResult lp = carpool::solve_lp_relaxation(instance);
  carpool::IpResult ip = carpool::brute_force_ip(instance);

  Json doc;
  doc["lp_value"] = carpool::rat_to_json(lp.welfare, as_float);
  doc["ip_value"] = carpool::rat_to_json(ip.welfare, as_float);
  doc["equilibrium_exists"] = (lp.welfare == ip.welfare);
  Json frac = Json::array();
  for (const carpool::FractionalTrip& t : lp.x.trips) {
    Json riders = Json::array();
    for (int m : t.group) riders.push_back(instance.riders()[m].id);
    frac.push_back({{"riders", riders},
                    {"route", instance.network().route_label(t.route)},
                    {"weight", carpool::rat_to_json(t.weight, as_float)}});
  }
  doc["lp_vertex"] = frac;
  Json trips = Json::array();
  for (const carpool::Trip& t : ip.x.trips) {
    Json riders = Json::array();
    for (int m : t.group) riders.push_back(instance.riders()[m].id);
    trips.push_back({{"riders", riders},
                     {"route", instance.network().route_label(t.route)}});
  }
  doc["ip_trips"] = trips;
  emit(doc, out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"competitive equilibria for an autonomous carpooling market"};
  app.require_subcommand(1);

  std::string instance_path, outcome_path, out_path;
  std::optional<std::string> epsilon_text;
  std::optional<long long> seed, max_routes;
  bool vcg = false, as_float = false;
  bool routes = false, sp = false, greedy = false, gs_check = false;

  CLI::App* solve = app.add_subcommand("solve", "compute an equilibrium");
  solve->add_option("instance", instance_path)->required();
  solve->add_flag("--vcg", vcg, "strategyproof payments and tolls");
  solve->add_option("--epsilon", epsilon_text, "auction increment override");
  solve->add_option("--seed", seed, "recorded in diagnostics (no effect)");
  solve->add_option("--max-routes", max_routes, "route enumeration cap");
  solve->add_flag("--float", as_float, "decimal rendering");
  solve->add_option("-o,--output", out_path, "write JSON here instead of stdout");

  CLI::App* verify = app.add_subcommand("verify", "check an outcome document");
  verify->add_option("instance", instance_path)->required();
  verify->add_option("outcome", outcome_path)->required();
  verify->add_option("--max-routes", max_routes);
  verify->add_flag("--float", as_float);
  verify->add_option("-o,--output", out_path);

  CLI::App* inspect = app.add_subcommand("inspect", "structural diagnostics");
  inspect->add_option("instance", instance_path)->required();
  inspect->add_flag("--routes", routes);
  inspect->add_flag("--sp", sp);
  inspect->add_flag("--greedy", greedy);
  inspect->add_flag("--gs-check", gs_check);
  inspect->add_option("--max-routes", max_routes);
  inspect->add_flag("--float", as_float);
  inspect->add_option("-o,--output", out_path);

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force comparisons");
  oracle->add_option("instance", instance_path)->required();
  oracle->add_option("--max-routes", max_routes);
  oracle->add_flag("--float", as_float);
  oracle->add_option("-o,--output", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return cmd_solve(instance_path, vcg, epsilon_text, seed, max_routes,
                       as_float, out_path);
    if (verify->parsed())
      return cmd_verify(instance_path, outcome_path, max_routes, as_float,
                        out_path);
    if (inspect->parsed())
      return cmd_inspect(instance_path, routes, sp, greedy, gs_check,
                         max_routes, as_float, out_path);
    if (oracle->parsed())
      return cmd_oracle(instance_path, max_routes, as_float, out_path);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
