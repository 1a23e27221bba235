#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fractalnet {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on dense node ids 0..node_count-1.
///
/// Neighbor lists are kept sorted, so has_edge is a binary search and
/// edges() comes out in lexicographic (u < v) order. Mutators reject
/// self-loops and report whether the edge set changed.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count) : adjacency_(node_count) {}

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v]; }
  std::size_t degree(NodeId v) const { return adjacency_[v].size(); }
  std::size_t max_degree() const;

  bool has_edge(NodeId u, NodeId v) const;

  /// Appends `count` isolated nodes and returns the id of the first one.
  NodeId add_nodes(std::size_t count);

  bool add_edge(NodeId u, NodeId v);
  bool remove_edge(NodeId u, NodeId v);

  std::vector<Edge> edges() const;
  std::vector<std::size_t> degrees() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_node(NodeId v) const;

  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Hop distances from one source; unreachable nodes hold kUnreachable.
struct DistanceMap {
  static constexpr std::uint32_t kUnreachable =
      std::numeric_limits<std::uint32_t>::max();

  NodeId source = 0;
  std::vector<std::uint32_t> dist;

  bool reachable(NodeId v) const { return dist[v] != kUnreachable; }
};

Graph grid_graph(std::span<const int> dims);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t n);
Graph complete_graph(std::size_t n);

DistanceMap bfs_distances(const Graph& g, NodeId source);

/// BFS from `source` that fills `dist` and writes the visit order (non-
/// decreasing distance) into `order`. Buffers are resized as needed; returns
/// the number of reached nodes.
std::size_t bfs_into(const Graph& g, NodeId source,
                     std::vector<std::uint32_t>& dist,
                     std::vector<NodeId>& order);

bool is_connected(const Graph& g);

/// Diameter and mean pairwise distance from one all-sources BFS sweep.
struct PathStatistics {
  std::uint32_t diameter = 0;
  double average_path_length = 0.0;
};

PathStatistics path_statistics(const Graph& g);
std::uint32_t diameter(const Graph& g);
double average_path_length(const Graph& g);

/// Dense all-pairs hop distances, 16 bits per entry. Requires a connected
/// graph whose diameter fits in 16 bits.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const Graph& g);

  std::size_t size() const { return n_; }
  std::span<const std::uint16_t> row(NodeId v) const {
    return {data_.data() + static_cast<std::size_t>(v) * n_, n_};
  }
  std::uint16_t operator()(NodeId u, NodeId v) const {
    return data_[static_cast<std::size_t>(u) * n_ + v];
  }
  std::uint32_t diameter() const { return diameter_; }

 private:
  std::size_t n_ = 0;
  std::uint32_t diameter_ = 0;
  std::vector<std::uint16_t> data_;
};

struct EdgeListFile {
  Graph graph;
  std::vector<std::string> header;  // '#' lines, prefix stripped
};

/// Writes "# nodes N", "# edges E", the caller's header lines (each prefixed
/// with "# "), then one "u v" line per edge with u < v.
void write_edge_list(std::ostream& out, const Graph& g,
                     std::span<const std::string> header = {});
EdgeListFile read_edge_list(std::istream& in);

}  // namespace fractalnet
