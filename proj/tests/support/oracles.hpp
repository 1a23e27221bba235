#pragma once

// Reference implementations used only by the tests. They favour the most
// direct formulation over speed and share no code with the library.

#include <cstdint>
#include <vector>

#include "fractalnet/graph.hpp"

namespace oracle {

/// Every connected simple graph on n nodes up to isomorphism, n <= 8.
std::vector<fractalnet::Graph> connected_graphs(int n);

/// Small named families: paths, cycles and stars with 2..max_n nodes.
std::vector<fractalnet::Graph> path_cycle_star_family(int max_n);

inline constexpr int kInf = 1 << 28;

/// Floyd-Warshall distances; kInf between components.
std::vector<std::vector<int>> floyd_warshall(const fractalnet::Graph& g);

double mean_distance(const std::vector<std::vector<int>>& d);
int max_distance(const std::vector<std::vector<int>>& d);

/// Pearson correlation over the (deg u, deg v) list of both edge
/// orientations. Returns false when a variance is zero.
bool assortativity(const fractalnet::Graph& g, double& r);

/// Mean over nodes of closed triples / possible pairs, by enumerating every
/// node triple.
double avg_clustering(const fractalnet::Graph& g);

/// Largest entry of the unit Perron vector from a dense symmetric
/// eigensolver.
double max_eigenvector_entry(const fractalnet::Graph& g);

/// m3 / m2^1.5 of the degree sequence. Returns false for zero variance.
bool degree_skewness(const fractalnet::Graph& g, double& g1);

/// Smallest number of boxes, by backtracking colouring of the graph joining
/// nodes at distance >= box_size.
int min_boxes_backtracking(const fractalnet::Graph& g, int box_size);

/// True when `boxes` partitions the nodes and every box has pairwise
/// distances below box_size.
bool valid_box_cover(const fractalnet::Graph& g,
                     const std::vector<std::vector<fractalnet::NodeId>>& boxes,
                     int box_size);

}  // namespace oracle
