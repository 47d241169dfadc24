#pragma once

#include "carpool/rational.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace carpool {

struct Edge {
  std::string id;
  std::string from;
  std::string to;
  long long capacity = 1;   // q_e, vehicles
  Rat travel_time;          // t_e >= 0
};

// An origin->destination simple path, stored as edge indices.
struct Route {
  std::vector<int> edges;
  Rat travel_time;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two-terminal directed network with its enumerated route set.
// Immutable after construction.
class Network {
 public:
  static Network build(std::vector<std::string> nodes, std::string origin,
                       std::string destination, std::vector<Edge> edges,
                       std::size_t max_routes = kDefaultMaxRoutes);

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::string& origin() const { return origin_; }
  const std::string& destination() const { return destination_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Route>& routes() const { return routes_; }

  int node_index(const std::string& name) const;
  int edge_index(const std::string& id) const;

  // Edge-id sequence of a route, e.g. "e1-e5-e4".
  std::string route_label(int route) const;
  std::string route_label_of(const Route& route) const;

  static constexpr std::size_t kDefaultMaxRoutes = 10000;

 private:
  Network() = default;

  std::vector<std::string> nodes_;
  std::string origin_;
  std::string destination_;
  std::vector<Edge> edges_;
  std::vector<Route> routes_;
};

// All simple origin->destination paths in lexicographic edge-id-sequence
// order. Throws ValidationError past max_routes.
std::vector<Route> enumerate_routes(const std::vector<std::string>& nodes,
                                    const std::string& origin,
                                    const std::string& destination,
                                    const std::vector<Edge>& edges,
                                    std::size_t max_routes);

struct SPNode {
  enum class Kind { Leaf, Series, Parallel };
  Kind kind = Kind::Leaf;
  int edge = -1;  // valid for leaves
  std::vector<SPNode> children;

  void collect_edges(std::vector<int>& out) const;
};

struct SPDecomposition {
  std::optional<SPNode> tree;
  std::vector<int> witness_edges;  // irreducible remainder when not SP

  bool is_series_parallel() const { return tree.has_value(); }
};

// Recognizes two-terminal series-parallel structure by exhaustive
// series/parallel reductions; on failure the witness holds the edges of the
// irreducible subgraph.
SPDecomposition decompose_series_parallel(const Network& network);

struct RouteCapacityVector {
  std::vector<long long> k;  // indexed by route

  long long total() const;
  std::vector<int> support() const;  // routes with k > 0 (R*)
};

// Greedy shortest-route capacity allocation. Ties between equal-time routes
// break lexicographically by edge-id sequence (i.e. route index order).
RouteCapacityVector greedy_route_capacities(const Network& network);

// Max origin->destination flow value under edge capacities (augmenting paths).
long long network_capacity(const Network& network);

}  // namespace carpool
