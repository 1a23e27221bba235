#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "fractalnet/boxcover.hpp"
#include "fractalnet/errors.hpp"
#include "fractalnet/experiments.hpp"
#include "fractalnet/format.hpp"
#include "fractalnet/metrics.hpp"
#include "fractalnet/models.hpp"

namespace fractalnet::cli {
namespace {

// Raised for problems that are the caller's fault but only visible after
// CLI11 has accepted the arguments (e.g. a parameter the model needs).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelFlags {
  std::string model;
  int m = 2;
  double p = 0.0;
  double y = 0.5;
  int t = 3;
  std::string dims = "32x32";
  double a = kDefaultLogisticSteepness;
  std::uint64_t seed = 0;
};

const CLI::Validator kDimsValidator(
    [](std::string& text) -> std::string {
      try {
        parse_dims(text);
      } catch (const InvalidParameter& e) {
        return e.what();
      }
      return {};
    },
    "DIMS", "dims");

const CLI::Validator kModelValidator(
    [](std::string& text) -> std::string {
      try {
        parse_model_kind(text);
      } catch (const InvalidParameter& e) {
        return e.what();
      }
      return {};
    },
    "shm|rbfm|lswtm", "model");

void add_model_flags(CLI::App* sub, ModelFlags& flags, bool with_seed) {
  sub->add_option("--model", flags.model, "Model: shm, rbfm or lswtm")
      ->required()
      ->check(kModelValidator);
  sub->add_option("-m", flags.m, "Offspring factor (shm, rbfm)")->check(CLI::PositiveNumber);
  sub->add_option("-p", flags.p, "Rewiring probability (shm, lswtm)")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("-Y", flags.y, "Repulsion target (rbfm)")->check(CLI::Range(0.0, 1.0));
  sub->add_option("-t", flags.t, "Iterations (shm, rbfm)")->check(CLI::NonNegativeNumber);
  sub->add_option("--dims", flags.dims, "Grid sides, e.g. 32x32 (lswtm)")->check(kDimsValidator);
  sub->add_option("-a", flags.a, "Logistic steepness (lswtm)")->check(CLI::PositiveNumber);
  if (with_seed) sub->add_option("--seed", flags.seed, "Random seed");
}

ModelSpec to_spec(const ModelFlags& flags) {
  ModelSpec spec;
  spec.kind = parse_model_kind(flags.model);
  spec.m = flags.m;
  spec.p = flags.p;
  spec.y = flags.y;
  spec.t = flags.t;
  spec.dims = parse_dims(flags.dims);
  spec.a = flags.a;
  spec.seed = flags.seed;
  return spec;
}

// The explicit parameters each model needs on the command line or in the
// config file.
void require_model_params(CLI::App* sub, const ModelSpec& spec, bool skip_axes,
                          const std::vector<std::string>& axes) {
  std::vector<std::string> needed;
  switch (spec.kind) {
    case ModelKind::shm:
      needed = {"-m", "-p", "-t"};
      break;
    case ModelKind::rbfm:
      needed = {"-m", "-Y", "-t"};
      break;
    case ModelKind::lswtm:
      needed = {"--dims", "-p"};
      break;
  }
  for (const auto& name : needed) {
    const std::string bare = name.substr(name.find_first_not_of('-'));
    if (skip_axes && std::find(axes.begin(), axes.end(), bare) != axes.end()) continue;
    if (sub->get_option(name)->count() == 0) {
      throw UsageError("model " + std::string(to_string(spec.kind)) + " requires " + name);
    }
  }
}

// key=value lines for every option of `sub`, with defaults filled in.
std::vector<std::string> resolved_config(const CLI::App* sub) {
  std::vector<std::string> lines;
  lines.push_back("command=" + sub->get_name());
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty() && opt->get_snames().empty()) continue;
    const std::string name =
        !opt->get_lnames().empty() ? opt->get_lnames().front() : opt->get_snames().front();
    if (name == "help" || name == "config") continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& results = opt->results();
      for (std::size_t i = 0; i < results.size(); ++i) {
        if (i) value += ';';
        value += results[i];
      }
    } else if (opt->get_expected_max() == 0) {
      value = "false";
    } else {
      value = opt->get_default_str();
    }
    lines.push_back(name + "=" + value);
  }
  return lines;
}

std::ofstream open_file(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void close_file(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

EdgeListFile load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return read_edge_list(in);
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_comments(std::ostream& out, const std::vector<std::string>& lines) {
  for (const auto& line : lines) out << "# " << line << '\n';
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw UsageError("invalid number '" + token + "' in " + what);
    }
  }
  if (values.empty()) throw UsageError(what + " needs at least one value");
  return values;
}

Axis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw UsageError("axis '" + text + "' must look like name=v1,v2,...");
  }
  return {text.substr(0, eq), parse_number_list(text.substr(eq + 1), "axis " + text.substr(0, eq))};
}

// Splices the key=value pairs of a --config file in front of the remaining
// arguments, so anything given on the command line wins (options keep the
// last value). Keys are flag names without dashes.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 == args.size()) throw UsageError("--config needs a file path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return args;
  if (rest.size() < 2) throw UsageError("--config must follow a subcommand");

  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_config(in);
  } catch (const CLI::ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }

  std::vector<std::string> expanded(rest.begin(), rest.begin() + 2);
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty()) {
      throw UsageError(path + ": sections are not supported (key " + item.fullname() + ")");
    }
    const std::string flag = (item.name.size() == 1 ? "-" : "--") + item.name;
    for (const auto& value : item.inputs) {
      if (item.name.size() == 1) {
        expanded.push_back(flag);
        expanded.push_back(value);
      } else {
        expanded.push_back(flag + "=" + value);
      }
    }
  }
  expanded.insert(expanded.end(), rest.begin() + 2, rest.end());
  return expanded;
}

constexpr const char* kUsage =
    "usage: fractalnet {generate|metrics|boxdim|sweep|transition} [options]\n"
    "Run with --help (or <subcommand> --help) for the full option list.\n";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractal network models: generation, box covering and metrics",
               "fractalnet"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // generate
  ModelFlags gen;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Generate a model graph as an edge list");
  add_model_flags(generate, gen, true);
  generate->add_option("-o,--output", gen_out, "Edge-list output path")->required();

  // metrics
  std::string metrics_in;
  std::string metrics_out;
  auto* metrics = app.add_subcommand("metrics", "Structural metrics of an edge-list graph");
  metrics->add_option("-i,--input", metrics_in, "Edge-list input")->required();
  metrics->add_option("-o,--output", metrics_out, "Metric CSV output")->required();

  // boxdim
  std::string box_in;
  std::string box_out;
  std::string box_report;
  std::string box_svg;
  std::uint64_t box_seed = 0;
  int box_orderings = kDefaultOrderings;
  double box_cutoff = kDefaultR2Cutoff;
  std::string box_window = "scaling";
  auto* boxdim = app.add_subcommand("boxdim", "Box-count curve and fractality report");
  boxdim->add_option("-i,--input", box_in, "Edge-list input")->required();
  boxdim->add_option("-o,--output", box_out, "N_B curve CSV output")->required();
  boxdim->add_option("--report", box_report, "Fractality report CSV output");
  boxdim->add_option("--svg", box_svg, "Log-log plot output");
  boxdim->add_option("--seed", box_seed, "Seed of the first node ordering");
  boxdim->add_option("--orderings", box_orderings, "Greedy orderings per box size")
      ->check(CLI::PositiveNumber);
  boxdim->add_option("--r2-cutoff", box_cutoff, "Fit quality threshold")
      ->check(CLI::Range(0.0, 1.0));
  boxdim->add_option("--fit-window", box_window, "Fitted box sizes: scaling or full")
      ->check(CLI::IsMember({"scaling", "full"}));

  // sweep
  ModelFlags sw;
  std::vector<std::string> sw_axes;
  std::size_t sw_reps = 30;
  std::uint64_t sw_master = 0;
  std::string sw_out;
  std::string sw_svg;
  std::string sw_metric = "assortativity";
  unsigned sw_jobs = 1;
  bool sw_fractality = false;
  int sw_orderings = kDefaultOrderings;
  double sw_cutoff = kDefaultR2Cutoff;
  std::string sw_window = "scaling";
  auto* sweep = app.add_subcommand("sweep", "Replicated metrics over a parameter grid");
  add_model_flags(sweep, sw, false);
  sweep->add_option("--axis", sw_axes, "Axis name=v1,v2,... (one or two)")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  sweep->add_option("--reps", sw_reps, "Replications per cell")->check(CLI::PositiveNumber);
  sweep->add_option("--master-seed", sw_master, "Seed of the first replication");
  sweep->add_option("-o,--output", sw_out, "Stats CSV output")->required();
  sweep->add_option("--svg", sw_svg, "Heatmap output (two-axis sweeps)");
  sweep->add_option("--metric", sw_metric, "Metric shown in the heatmap");
  sweep->add_option("--jobs", sw_jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_flag("--fractality", sw_fractality, "Also fit box-count curves");
  sweep->add_option("--orderings", sw_orderings, "Greedy orderings per box size")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--r2-cutoff", sw_cutoff, "Fit quality threshold")
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--fit-window", sw_window, "Fitted box sizes: scaling or full")
      ->check(CLI::IsMember({"scaling", "full"}));

  // transition
  std::string tr_dims = "16x16,32x32";
  std::string tr_p = "0,0.01,0.05,0.1,0.3,1";
  double tr_a = kDefaultLogisticSteepness;
  std::size_t tr_reps = 10;
  std::uint64_t tr_master = 0;
  std::string tr_out;
  std::string tr_svg;
  unsigned tr_jobs = 1;
  int tr_orderings = kDefaultOrderings;
  double tr_cutoff = kDefaultR2Cutoff;
  std::string tr_window = "scaling";
  auto* transition =
      app.add_subcommand("transition", "LSwTM fractal to small-world transition study");
  transition->add_option("--dims-list", tr_dims, "Comma-separated grids, e.g. 16x16,32x32");
  transition->add_option("--p-values", tr_p, "Comma-separated rewiring probabilities");
  transition->add_option("-a", tr_a, "Logistic steepness")->check(CLI::PositiveNumber);
  transition->add_option("--reps", tr_reps, "Replications per cell")->check(CLI::PositiveNumber);
  transition->add_option("--master-seed", tr_master, "Seed of the first replication");
  transition->add_option("-o,--output", tr_out, "Stats CSV output")->required();
  transition->add_option("--svg", tr_svg, "Log-log plot of one curve per p (largest grid)");
  transition->add_option("--jobs", tr_jobs, "Worker threads")->check(CLI::PositiveNumber);
  transition->add_option("--orderings", tr_orderings, "Greedy orderings per box size")
      ->check(CLI::PositiveNumber);
  transition->add_option("--r2-cutoff", tr_cutoff, "Fit quality threshold")
      ->check(CLI::Range(0.0, 1.0));
  transition->add_option("--fit-window", tr_window, "Fitted box sizes: scaling or full")
      ->check(CLI::IsMember({"scaling", "full"}));

  // Listed for --help only; expand_config consumes it before parsing.
  std::string config_path;
  for (CLI::App* sub : {generate, metrics, boxdim, sweep, transition}) {
    sub->add_option("--config", config_path,
                    "Flat key=value file; keys mirror flag names, flags override it");
  }

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << kUsage;
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  std::vector<std::string> reversed(expanded.size() > 1 ? expanded.begin() + 1 : expanded.end(),
                                    expanded.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << kUsage;
    return 1;
  }

  try {
    if (generate->parsed()) {
      const ModelSpec spec = to_spec(gen);
      require_model_params(generate, spec, false, {});
      validate(spec);
      const Graph g = fractalnet::generate(spec);
      std::vector<std::string> header = {"generator " + describe(spec)};
      for (const auto& line : resolved_config(generate)) header.push_back("config " + line);
      auto file = open_file(gen_out);
      write_edge_list(file, g, header);
      close_file(file, gen_out);
      out << "wrote " << gen_out << ": " << g.node_count() << " nodes, " << g.edge_count()
          << " edges\n";
    } else if (metrics->parsed()) {
      const auto input = load_graph(metrics_in);
      const MetricRecord record = metric_suite(input.graph);
      auto file = open_file(metrics_out);
      write_comments(file, resolved_config(metrics));
      write_comments(file, input.header);
      write_metric_csv(file, record);
      close_file(file, metrics_out);
    } else if (boxdim->parsed()) {
      const auto input = load_graph(box_in);
      const NbCurve curve = nb_curve(input.graph, box_seed, box_orderings);
      std::vector<std::string> comments = resolved_config(boxdim);
      comments.insert(comments.end(), input.header.begin(), input.header.end());
      auto file = open_file(box_out);
      write_comments(file, comments);
      write_curve_csv(file, curve);
      close_file(file, box_out);
      if (!box_report.empty()) {
        const auto report = classify_fractality(curve, box_cutoff, parse_fit_window(box_window));
        auto rep = open_file(box_report);
        write_comments(rep, comments);
        write_report_csv(rep, report);
        close_file(rep, box_report);
        out << "d_B=" << format_double(report.dimension) << " r2_power="
            << format_double(report.r2_power) << " r2_exp=" << format_double(report.r2_exp)
            << " label=" << to_string(report.label) << '\n';
      }
      if (!box_svg.empty()) {
        const std::vector<LabeledCurve> curves = {{box_in, curve}};
        emit_svg_loglog(curves, std::filesystem::path(box_svg));
      }
    } else if (sweep->parsed()) {
      SweepSpec spec;
      spec.model = to_spec(sw);
      std::vector<std::string> axis_names;
      for (const auto& text : sw_axes) {
        spec.axes.push_back(parse_axis(text));
        axis_names.push_back(spec.axes.back().name);
      }
      if (spec.axes.size() > 2) throw UsageError("at most two --axis options");
      require_model_params(sweep, spec.model, true, axis_names);
      spec.n_reps = sw_reps;
      spec.master_seed = sw_master;
      ReplicationOptions options;
      options.fractality = sw_fractality;
      options.n_orderings = sw_orderings;
      options.r2_cutoff = sw_cutoff;
      options.window = parse_fit_window(sw_window);
      options.jobs = sw_jobs;
      const StatsTable table = sweep_grid(spec, options);
      emit_csv(table, std::filesystem::path(sw_out), resolved_config(sweep));
      if (!sw_svg.empty()) emit_svg_contour(table, sw_metric, std::filesystem::path(sw_svg));
    } else if (transition->parsed()) {
      std::vector<std::vector<int>> dims_list;
      std::stringstream ss(tr_dims);
      std::string token;
      while (std::getline(ss, token, ',')) {
        try {
          dims_list.push_back(parse_dims(token));
        } catch (const InvalidParameter& e) {
          throw UsageError(e.what());
        }
      }
      if (dims_list.empty()) throw UsageError("--dims-list needs at least one grid");
      const auto p_values = parse_number_list(tr_p, "--p-values");
      for (double p : p_values) {
        if (p < 0.0 || p > 1.0) throw UsageError("p values must lie in [0, 1]");
      }
      ReplicationOptions options;
      options.n_orderings = tr_orderings;
      options.r2_cutoff = tr_cutoff;
      options.window = parse_fit_window(tr_window);
      options.jobs = tr_jobs;
      const StatsTable table =
          transition_study(dims_list, p_values, tr_a, tr_reps, tr_master, options);
      const std::vector<std::string> comments = resolved_config(transition);
      emit_csv(table, std::filesystem::path(tr_out), comments);
      if (!tr_svg.empty()) {
        // First replication of every p on the last grid in the list.
        std::vector<LabeledCurve> curves;
        const std::uint64_t stride = cell_seed_stride(tr_reps);
        const std::size_t offset = (dims_list.size() - 1) * p_values.size();
        for (std::size_t k = 0; k < p_values.size(); ++k) {
          const std::uint64_t seed = tr_master + (offset + k) * stride;
          const Graph g = lswtm_generate(dims_list.back(), p_values[k], tr_a, seed);
          curves.push_back({"p=" + format_double(p_values[k]),
                            nb_curve(g, seed, tr_orderings)});
        }
        emit_svg_loglog(curves, std::filesystem::path(tr_svg));
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << kUsage;
    return 1;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n' << kUsage;
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace fractalnet::cli
