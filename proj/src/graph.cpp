#include "fractalnet/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "fractalnet/errors.hpp"

namespace fractalnet {

void Graph::check_node(NodeId v) const {
  if (v >= adjacency_.size()) {
    throw InvalidParameter("node id " + std::to_string(v) +
                           " out of range for graph with " +
                           std::to_string(adjacency_.size()) + " nodes");
  }
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& nbrs : adjacency_) best = std::max(best, nbrs.size());
  return best;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= adjacency_.size() || v >= adjacency_.size()) return false;
  const auto& a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u]
                                                                : adjacency_[v];
  const NodeId other = &a == &adjacency_[u] ? v : u;
  return std::binary_search(a.begin(), a.end(), other);
}

NodeId Graph::add_nodes(std::size_t count) {
  const auto first = static_cast<NodeId>(adjacency_.size());
  adjacency_.resize(adjacency_.size() + count);
  return first;
}

bool Graph::add_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  if (u == v) throw InvalidParameter("self-loop on node " + std::to_string(u));
  auto& au = adjacency_[u];
  auto pos = std::lower_bound(au.begin(), au.end(), v);
  if (pos != au.end() && *pos == v) return false;
  au.insert(pos, v);
  auto& av = adjacency_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edge_count_;
  return true;
}

bool Graph::remove_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  auto& au = adjacency_[u];
  auto pos = std::lower_bound(au.begin(), au.end(), v);
  if (pos == au.end() || *pos != v) return false;
  au.erase(pos);
  auto& av = adjacency_[v];
  av.erase(std::lower_bound(av.begin(), av.end(), u));
  --edge_count_;
  return true;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(adjacency_.size());
  for (std::size_t v = 0; v < adjacency_.size(); ++v) {
    out[v] = adjacency_[v].size();
  }
  return out;
}

Graph grid_graph(std::span<const int> dims) {
  if (dims.empty()) throw InvalidParameter("grid needs at least one dimension");
  std::size_t n = 1;
  for (int d : dims) {
    if (d <= 0) {
      throw InvalidParameter("grid side lengths must be positive, got " +
                             std::to_string(d));
    }
    n *= static_cast<std::size_t>(d);
  }
  // Row-major: the last axis varies fastest.
  std::vector<std::size_t> stride(dims.size());
  std::size_t s = 1;
  for (std::size_t k = dims.size(); k-- > 0;) {
    stride[k] = s;
    s *= static_cast<std::size_t>(dims[k]);
  }
  Graph g(n);
  for (std::size_t id = 0; id < n; ++id) {
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const std::size_t coord = (id / stride[k]) % static_cast<std::size_t>(dims[k]);
      if (coord + 1 < static_cast<std::size_t>(dims[k])) {
        g.add_edge(static_cast<NodeId>(id), static_cast<NodeId>(id + stride[k]));
      }
    }
  }
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 1; i < n; ++i) {
    g.add_edge(static_cast<NodeId>(i - 1), static_cast<NodeId>(i));
  }
  return g;
}

Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  if (n >= 3) g.add_edge(0, static_cast<NodeId>(n - 1));
  return g;
}

Graph star_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 1; i < n; ++i) g.add_edge(0, static_cast<NodeId>(i));
  return g;
}

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  }
  return g;
}

std::size_t bfs_into(const Graph& g, NodeId source,
                     std::vector<std::uint32_t>& dist,
                     std::vector<NodeId>& order) {
  const std::size_t n = g.node_count();
  dist.assign(n, DistanceMap::kUnreachable);
  order.resize(n);
  std::size_t head = 0;
  std::size_t tail = 0;
  dist[source] = 0;
  order[tail++] = source;
  while (head < tail) {
    const NodeId u = order[head++];
    const std::uint32_t next = dist[u] + 1;
    for (NodeId w : g.neighbors(u)) {
      if (dist[w] == DistanceMap::kUnreachable) {
        dist[w] = next;
        order[tail++] = w;
      }
    }
  }
  return tail;
}

DistanceMap bfs_distances(const Graph& g, NodeId source) {
  if (source >= g.node_count()) {
    throw InvalidParameter("BFS source " + std::to_string(source) +
                           " out of range");
  }
  DistanceMap out;
  out.source = source;
  std::vector<NodeId> order;
  bfs_into(g, source, out.dist, order);
  return out;
}

bool is_connected(const Graph& g) {
  if (g.node_count() <= 1) return true;
  std::vector<std::uint32_t> dist;
  std::vector<NodeId> order;
  return bfs_into(g, 0, dist, order) == g.node_count();
}

PathStatistics path_statistics(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw InvalidParameter("path statistics of an empty graph");
  std::vector<std::uint32_t> dist;
  std::vector<NodeId> order;
  PathStatistics stats;
  long double total = 0.0L;
  for (NodeId s = 0; s < n; ++s) {
    if (bfs_into(g, s, dist, order) != n) {
      throw DisconnectedGraph("graph is disconnected");
    }
    for (std::uint32_t d : dist) {
      total += d;
      stats.diameter = std::max(stats.diameter, d);
    }
  }
  if (n >= 2) {
    const long double pairs = static_cast<long double>(n) * (n - 1);
    stats.average_path_length = static_cast<double>(total / pairs);
  }
  return stats;
}

std::uint32_t diameter(const Graph& g) { return path_statistics(g).diameter; }

double average_path_length(const Graph& g) {
  if (g.node_count() < 2) {
    throw UndefinedMetric("average path length needs at least two nodes");
  }
  return path_statistics(g).average_path_length;
}

DistanceMatrix::DistanceMatrix(const Graph& g) : n_(g.node_count()) {
  data_.resize(n_ * n_);
  std::vector<std::uint32_t> dist;
  std::vector<NodeId> order;
  for (NodeId s = 0; s < n_; ++s) {
    if (bfs_into(g, s, dist, order) != n_) {
      throw DisconnectedGraph("graph is disconnected");
    }
    std::uint16_t* out = data_.data() + static_cast<std::size_t>(s) * n_;
    for (std::size_t v = 0; v < n_; ++v) {
      if (dist[v] >= std::numeric_limits<std::uint16_t>::max()) {
        throw SizeLimitExceeded("hop distance exceeds 16-bit storage");
      }
      out[v] = static_cast<std::uint16_t>(dist[v]);
      diameter_ = std::max(diameter_, dist[v]);
    }
  }
}

void write_edge_list(std::ostream& out, const Graph& g,
                     std::span<const std::string> header) {
  out << "# nodes " << g.node_count() << '\n';
  out << "# edges " << g.edge_count() << '\n';
  for (const auto& line : header) out << "# " << line << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

EdgeListFile read_edge_list(std::istream& in) {
  EdgeListFile file;
  std::vector<Edge> edges;
  long long declared_nodes = -1;
  NodeId max_id = 0;
  bool any_edge = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.erase(0, 1);
      std::istringstream fields(body);
      std::string key;
      fields >> key;
      if (key == "nodes") {
        fields >> declared_nodes;
        if (!fields || declared_nodes < 0) {
          throw IoError("line " + std::to_string(line_no) +
                        ": malformed node count header");
        }
      } else if (key != "edges") {
        file.header.push_back(body);
      }
      continue;
    }
    std::istringstream fields(line);
    long long u = -1;
    long long v = -1;
    std::string rest;
    if (!(fields >> u >> v) || (fields >> rest) || u < 0 || v < 0 ||
        u > std::numeric_limits<NodeId>::max() ||
        v > std::numeric_limits<NodeId>::max()) {
      throw IoError("line " + std::to_string(line_no) + ": expected \"u v\"");
    }
    if (u == v) {
      throw IoError("line " + std::to_string(line_no) + ": self-loop");
    }
    if (u > v) std::swap(u, v);
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    max_id = std::max(max_id, static_cast<NodeId>(v));
    any_edge = true;
  }
  std::size_t n = declared_nodes >= 0 ? static_cast<std::size_t>(declared_nodes)
                                      : (any_edge ? max_id + std::size_t{1} : 0);
  if (any_edge && max_id >= n) {
    throw IoError("edge endpoint " + std::to_string(max_id) +
                  " exceeds declared node count " + std::to_string(n));
  }
  file.graph = Graph(n);
  for (const Edge& e : edges) {
    if (!file.graph.add_edge(e.u, e.v)) {
      throw IoError("duplicate edge " + std::to_string(e.u) + " " +
                    std::to_string(e.v));
    }
  }
  return file;
}

}  // namespace fractalnet
