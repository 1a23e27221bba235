#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fractalnet/boxcover.hpp"
#include "fractalnet/metrics.hpp"
#include "fractalnet/models.hpp"

namespace fractalnet {

/// Population statistics of one metric over the replications where it was
/// defined. cv = sd / |mean| (NaN for a zero mean).
struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double max = 0.0;
  double cv = 0.0;
};

Summary summarize(std::span<const double> values);

struct FractalitySummary {
  double dimension_mean = 0.0;
  double dimension_sd = 0.0;
  double r2_power_mean = 0.0;
  double r2_exp_mean = 0.0;
  std::size_t fractal = 0;
  std::size_t mixed = 0;
  std::size_t non_fractal = 0;
  FractalityLabel label = FractalityLabel::mixed;  // most frequent; ties -> mixed
};

struct StatsRow {
  ModelSpec cell;  // seed holds the first replication seed
  std::size_t n_reps = 0;
  std::array<Summary, kMetricColumns.size()> metrics;
  std::optional<FractalitySummary> fractality;

  const Summary& metric(std::string_view name) const;
};

struct StatsTable {
  std::vector<std::string> axes;
  std::vector<StatsRow> rows;
};

struct ReplicationOptions {
  bool fractality = false;
  int n_orderings = kDefaultOrderings;
  double r2_cutoff = kDefaultR2Cutoff;
  FitWindow window = FitWindow::scaling;
  unsigned jobs = 1;
};

/// Replication r uses seed master_seed + r.
StatsRow run_replications(const ModelSpec& spec, std::size_t n_reps,
                          std::uint64_t master_seed,
                          const ReplicationOptions& options = {});

struct Axis {
  std::string name;  // one of m, Y, p, t, a
  std::vector<double> values;
};

struct SweepSpec {
  ModelSpec model;
  std::vector<Axis> axes;  // one or two
  std::size_t n_reps = 30;
  std::uint64_t master_seed = 0;
};

/// Seed stride between consecutive cells of a sweep.
std::uint64_t cell_seed_stride(std::size_t n_reps);

/// Cartesian product of the axis values, first axis outermost. Cell c starts
/// at master_seed + c * cell_seed_stride(n_reps).
StatsTable sweep_grid(const SweepSpec& sweep,
                      const ReplicationOptions& options = {});

/// LSwTM cells over (dims, p) with box-count fitting switched on.
StatsTable transition_study(std::span<const std::vector<int>> dims_list,
                            std::span<const double> p_values, double a,
                            std::size_t n_reps, std::uint64_t master_seed,
                            ReplicationOptions options = {});

/// Parameter value of a cell as text: m, Y, p, t, a, dims.
std::string parameter_text(const ModelSpec& spec, std::string_view name);
void set_parameter(ModelSpec& spec, std::string_view name, double value);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

/// Header row plus one row per cell. `comments` become leading '#' lines.
void emit_csv(const StatsTable& table, std::ostream& out,
              std::span<const std::string> comments = {});
void emit_csv(const StatsTable& table, const std::filesystem::path& destination,
              std::span<const std::string> comments = {});

struct LabeledCurve {
  std::string label;
  NbCurve curve;
};

void emit_svg_loglog(std::span<const LabeledCurve> curves, std::ostream& out);
void emit_svg_loglog(std::span<const LabeledCurve> curves,
                     const std::filesystem::path& destination);

/// Heatmap of one metric's mean over a two-axis table.
void emit_svg_contour(const StatsTable& table, std::string_view metric,
                      std::ostream& out);
void emit_svg_contour(const StatsTable& table, std::string_view metric,
                      const std::filesystem::path& destination);

}  // namespace fractalnet
