#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "fractalnet/graph.hpp"

namespace fractalnet {

/// The seven structural metrics of one realization, plus the raw sizes and
/// the un-normalized distances they derive from. Size normalizations divide
/// by ln(n). Undefined values (zero degree variance) are empty.
struct MetricRecord {
  std::size_t n = 0;
  std::size_t edges = 0;
  std::uint32_t diameter = 0;
  double avg_path_length = 0.0;
  double norm_avg_path_length = 0.0;
  double norm_diameter = 0.0;
  double norm_max_degree = 0.0;
  double avg_clustering = 0.0;
  std::optional<double> assortativity;
  double max_eigenvector_centrality = 0.0;
  std::optional<double> degree_skewness;
};

/// Degree assortativity: Pearson correlation of endpoint degrees over both
/// orientations of every edge. Empty when all edge endpoints share one degree.
std::optional<double> assortativity(const Graph& g);

double local_clustering(const Graph& g, NodeId v);
double avg_clustering(const Graph& g);

inline constexpr double kEigenvectorTolerance = 1e-10;
inline constexpr long kEigenvectorMaxIterations = 100000;

/// Perron eigenvector of the adjacency matrix, unit L2 norm, non-negative.
/// Power iteration runs on A + I, which has the same eigenvectors but a
/// strictly dominant Perron value on bipartite graphs too.
Eigen::VectorXd eigenvector_centrality(const Graph& g,
                                       double tolerance = kEigenvectorTolerance,
                                       long max_iterations = kEigenvectorMaxIterations);
/// Graphs up to this size fall back to a dense symmetric eigensolver when
/// power iteration stalls on a near-degenerate top of the spectrum.
inline constexpr std::size_t kDenseEigenFallbackLimit = 2048;

/// Largest entry of eigenvector_centrality(g), with the dense fallback above.
double max_eigenvector_centrality(const Graph& g);

/// Population (Fisher-Pearson) skewness of the degree sequence.
std::optional<double> degree_skewness(const Graph& g);

MetricRecord metric_suite(const Graph& g);

/// Column order of the metric CSV row.
inline constexpr std::array<std::string_view, 10> kMetricColumns = {
    "n",
    "m_edges",
    "avg_path_length",
    "norm_avg_path_length",
    "norm_diameter",
    "norm_max_degree",
    "avg_clustering",
    "assortativity",
    "max_eigenvector_centrality",
    "degree_skewness",
};

/// Values in kMetricColumns order.
std::array<std::optional<double>, kMetricColumns.size()> metric_values(
    const MetricRecord& record);

void write_metric_csv(std::ostream& out, const MetricRecord& record);

}  // namespace fractalnet
