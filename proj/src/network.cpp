#include "carpool/network.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace carpool {

namespace {

// Outgoing edge indices per node, sorted by edge id so DFS emits routes in
// lexicographic edge-id-sequence order.
std::vector<std::vector<int>> adjacency(const std::vector<std::string>& nodes,
                                        const std::vector<Edge>& edges) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> out(nodes.size());
  for (std::size_t e = 0; e < edges.size(); ++e)
    out[index.at(edges[e].from)].push_back(static_cast<int>(e));
  for (auto& list : out)
    std::sort(list.begin(), list.end(),
              [&](int a, int b) { return edges[a].id < edges[b].id; });
  return out;
}

}  // namespace

std::vector<Route> enumerate_routes(const std::vector<std::string>& nodes,
                                    const std::string& origin,
                                    const std::string& destination,
                                    const std::vector<Edge>& edges,
                                    std::size_t max_routes) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<int>(i);
  auto adj = adjacency(nodes, edges);
  int dest = index.at(destination);

  std::vector<Route> routes;
  std::vector<int> path;
  std::vector<bool> visited(nodes.size(), false);

  auto dfs = [&](auto&& self, int node) -> void {
    if (node == dest) {
      Route r;
      r.edges = path;
      for (int e : path) r.travel_time += edges[e].travel_time;
      routes.push_back(std::move(r));
      if (routes.size() > max_routes)
        throw ValidationError("route enumeration exceeds cap of " +
                              std::to_string(max_routes));
      return;
    }
    visited[node] = true;
    for (int e : adj[node]) {
      int next = index.at(edges[e].to);
      if (visited[next]) continue;
      path.push_back(e);
      self(self, next);
      path.pop_back();
    }
    visited[node] = false;
  };
  dfs(dfs, index.at(origin));
  return routes;
}

Network Network::build(std::vector<std::string> nodes, std::string origin,
                       std::string destination, std::vector<Edge> edges,
                       std::size_t max_routes) {
  std::set<std::string> node_set(nodes.begin(), nodes.end());
  if (node_set.size() != nodes.size())
    throw ValidationError("duplicate node names");
  if (!node_set.count(origin) || !node_set.count(destination))
    throw ValidationError("origin/destination not in node set");
  if (origin == destination)
    throw ValidationError("origin equals destination");

  std::set<std::string> edge_ids;
  for (const Edge& e : edges) {
    if (!edge_ids.insert(e.id).second)
      throw ValidationError("duplicate edge id: " + e.id);
    if (!node_set.count(e.from) || !node_set.count(e.to))
      throw ValidationError("edge " + e.id + " references unknown node");
    if (e.capacity < 1)
      throw ValidationError("edge " + e.id + " must have capacity >= 1");
    if (e.travel_time < 0)
      throw ValidationError("edge " + e.id + " has negative travel time");
  }

  Network n;
  n.nodes_ = std::move(nodes);
  n.origin_ = std::move(origin);
  n.destination_ = std::move(destination);
  n.edges_ = std::move(edges);
  n.routes_ = enumerate_routes(n.nodes_, n.origin_, n.destination_, n.edges_,
                               max_routes);

  std::vector<bool> used(n.edges_.size(), false);
  for (const Route& r : n.routes_) {
    if (r.travel_time <= 0)
      throw ValidationError("route " + n.route_label_of(r) +
                            " has zero total travel time");
    for (int e : r.edges) used[e] = true;
  }
  for (std::size_t e = 0; e < n.edges_.size(); ++e)
    if (!used[e])
      throw ValidationError("edge " + n.edges_[e].id +
                            " lies on no origin-destination route");
  return n;
}

int Network::node_index(const std::string& name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i] == name) return static_cast<int>(i);
  return -1;
}

int Network::edge_index(const std::string& id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].id == id) return static_cast<int>(i);
  return -1;
}

std::string Network::route_label(int route) const {
  return route_label_of(routes_.at(route));
}

std::string Network::route_label_of(const Route& r) const {
  std::string label;
  for (int e : r.edges) {
    if (!label.empty()) label += '-';
    label += edges_[e].id;
  }
  return label;
}

void SPNode::collect_edges(std::vector<int>& out) const {
  if (kind == Kind::Leaf) {
    out.push_back(edge);
    return;
  }
  for (const SPNode& c : children) c.collect_edges(out);
}

namespace {

struct SuperEdge {
  std::string from;
  std::string to;
  SPNode tree;
};

SPNode make_composite(SPNode::Kind kind, SPNode a, SPNode b) {
  SPNode n;
  n.kind = kind;
  auto absorb = [&](SPNode&& child) {
    if (child.kind == kind)
      for (SPNode& g : child.children) n.children.push_back(std::move(g));
    else
      n.children.push_back(std::move(child));
  };
  absorb(std::move(a));
  absorb(std::move(b));
  return n;
}

}  // namespace

SPDecomposition decompose_series_parallel(const Network& network) {
  std::vector<SuperEdge> work;
  for (std::size_t e = 0; e < network.edges().size(); ++e) {
    SPNode leaf;
    leaf.edge = static_cast<int>(e);
    work.push_back({network.edges()[e].from, network.edges()[e].to,
                    std::move(leaf)});
  }

  bool changed = true;
  while (changed && work.size() > 1) {
    changed = false;

    // Parallel: two super-edges with identical endpoints.
    for (std::size_t i = 0; i < work.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < work.size(); ++j) {
        if (work[i].from == work[j].from && work[i].to == work[j].to) {
          work[i].tree = make_composite(SPNode::Kind::Parallel,
                                        std::move(work[i].tree),
                                        std::move(work[j].tree));
          work.erase(work.begin() + static_cast<long>(j));
          changed = true;
          break;
        }
      }
    }
    if (changed) continue;

    // Series: internal node with exactly one incoming and one outgoing edge.
    for (const std::string& node : network.nodes()) {
      if (node == network.origin() || node == network.destination()) continue;
      int in = -1, out = -1, in_count = 0, out_count = 0;
      for (std::size_t i = 0; i < work.size(); ++i) {
        if (work[i].to == node) {
          in = static_cast<int>(i);
          ++in_count;
        }
        if (work[i].from == node) {
          out = static_cast<int>(i);
          ++out_count;
        }
      }
      if (in_count == 1 && out_count == 1 && in != out) {
        work[in].tree = make_composite(SPNode::Kind::Series,
                                       std::move(work[in].tree),
                                       std::move(work[out].tree));
        work[in].to = work[out].to;
        work.erase(work.begin() + out);
        changed = true;
        break;
      }
    }
  }

  SPDecomposition result;
  if (work.size() == 1 && work[0].from == network.origin() &&
      work[0].to == network.destination()) {
    result.tree = std::move(work[0].tree);
  } else {
    for (const SuperEdge& se : work) se.tree.collect_edges(result.witness_edges);
    std::sort(result.witness_edges.begin(), result.witness_edges.end());
  }
  return result;
}

long long RouteCapacityVector::total() const {
  long long sum = 0;
  for (long long v : k) sum += v;
  return sum;
}

std::vector<int> RouteCapacityVector::support() const {
  std::vector<int> s;
  for (std::size_t r = 0; r < k.size(); ++r)
    if (k[r] > 0) s.push_back(static_cast<int>(r));
  return s;
}

RouteCapacityVector greedy_route_capacities(const Network& network) {
  const auto& routes = network.routes();
  std::vector<long long> residual;
  for (const Edge& e : network.edges()) residual.push_back(e.capacity);

  RouteCapacityVector result;
  result.k.assign(routes.size(), 0);

  while (true) {
    // Shortest route whose edges all have positive residual capacity; ties
    // resolve to the earliest route in enumeration (lex by edge-id sequence).
    int best = -1;
    for (std::size_t r = 0; r < routes.size(); ++r) {
      bool open = true;
      for (int e : routes[r].edges)
        if (residual[e] <= 0) {
          open = false;
          break;
        }
      if (!open) continue;
      if (best < 0 || routes[r].travel_time < routes[best].travel_time)
        best = static_cast<int>(r);
    }
    if (best < 0) break;

    long long alloc = std::numeric_limits<long long>::max();
    for (int e : routes[best].edges) alloc = std::min(alloc, residual[e]);
    result.k[best] += alloc;
    for (int e : routes[best].edges) residual[e] -= alloc;
  }
  return result;
}

long long network_capacity(const Network& network) {
  int n = static_cast<int>(network.nodes().size());
  int s = network.node_index(network.origin());
  int t = network.node_index(network.destination());

  // Residual capacities, forward and reverse arcs per edge.
  std::vector<std::vector<long long>> cap(n, std::vector<long long>(n, 0));
  for (const Edge& e : network.edges())
    cap[network.node_index(e.from)][network.node_index(e.to)] += e.capacity;

  long long flow = 0;
  while (true) {
    std::vector<int> parent(n, -1);
    parent[s] = s;
    std::queue<int> queue;
    queue.push(s);
    while (!queue.empty() && parent[t] < 0) {
      int u = queue.front();
      queue.pop();
      for (int v = 0; v < n; ++v)
        if (parent[v] < 0 && cap[u][v] > 0) {
          parent[v] = u;
          queue.push(v);
        }
    }
    if (parent[t] < 0) break;
    long long aug = std::numeric_limits<long long>::max();
    for (int v = t; v != s; v = parent[v]) aug = std::min(aug, cap[parent[v]][v]);
    for (int v = t; v != s; v = parent[v]) {
      cap[parent[v]][v] -= aug;
      cap[v][parent[v]] += aug;
    }
    flow += aug;
  }
  return flow;
}

}  // namespace carpool
