#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fractalnet/graph.hpp"

namespace fractalnet {

enum class ModelKind { shm, rbfm, lswtm };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

inline constexpr double kDefaultLogisticSteepness = 10.0;

/// Generator configuration. Fields that do not apply to `kind` are ignored:
/// SHM reads m, p, t; RBFM reads m, y, t; LSwTM reads dims, p, a.
struct ModelSpec {
  ModelKind kind = ModelKind::rbfm;
  int m = 1;
  double p = 0.0;
  double y = 0.0;
  int t = 0;
  std::vector<int> dims;
  double a = kDefaultLogisticSteepness;
  std::uint64_t seed = 0;
};

void validate(const ModelSpec& spec);

/// "model=rbfm m=2 Y=1 t=3 seed=7"-style provenance line; only the fields the
/// model reads are listed.
std::string describe(const ModelSpec& spec);

Graph generate(const ModelSpec& spec);

Graph shm_generate(int m, double p, int t, std::uint64_t seed);
Graph rbfm_generate(int m, double y, int t, std::uint64_t seed);
Graph lswtm_generate(std::span<const int> dims, double p, double a,
                     std::uint64_t seed);

/// Rewiring probability of an edge whose endpoint degrees average near
/// y * deg_max: 1 - |y - (deg_u + deg_v) / (2 deg_max)|.
double rbfm_rewire_prob(std::size_t deg_u, std::size_t deg_v,
                        std::size_t deg_max, double y);

/// Logistic preference 1 / (1 + exp(-a (deg/deg_max - 1/2))).
double lswtm_attach_weight(std::size_t deg, std::size_t deg_max, double a);

struct CountPrediction {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  double avg_degree = 0.0;
};

CountPrediction expected_counts_rbfm(int m, int t, std::uint64_t n0 = 2,
                                     std::uint64_t e0 = 1);
CountPrediction expected_counts_grid(std::span<const int> dims);

/// Parses "32x32" / "4x4x4" into side lengths.
std::vector<int> parse_dims(std::string_view text);
std::string format_dims(std::span<const int> dims);

}  // namespace fractalnet
