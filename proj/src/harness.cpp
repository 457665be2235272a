#include "trilat/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "trilat/svg_plot.hpp"

namespace trilat {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

double parse_double_value(std::string_view key, std::string_view value) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw std::invalid_argument("value for '" + std::string(key) +
                                "' must be a number, got '" + std::string(value) +
                                "'");
  }
  return v;
}

std::uint64_t parse_count_value(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw std::invalid_argument("value for '" + std::string(key) +
                                "' must be a non-negative integer, got '" +
                                std::string(value) + "'");
  }
  return v;
}

constexpr std::array<const char*, 6> kMetricNames = {
    "steps",           "node_steps",   "power_mw",
    "localized_blind", "participants", "messages"};

double metric_value(const SolutionRow& row, std::size_t metric) {
  switch (metric) {
    case 0:
      return static_cast<double>(row.steps);
    case 1:
      return static_cast<double>(row.node_steps);
    case 2:
      return row.power_mw;
    case 3:
      return static_cast<double>(row.localized_blind);
    case 4:
      return static_cast<double>(row.participants);
    default:
      return static_cast<double>(row.messages);
  }
}

std::array<Aggregate, 6> aggregate_metrics(
    const std::vector<TrialOutcome>& outcomes) {
  std::array<Aggregate, 6> out;
  std::vector<double> values;
  for (std::size_t metric = 0; metric < 6; ++metric) {
    values.clear();
    for (const TrialOutcome& outcome : outcomes) {
      for (const SolutionRow& row : outcome.rows) {
        values.push_back(metric_value(row, metric));
      }
    }
    out[metric] = values.empty() ? Aggregate{} : aggregate(values);
  }
  return out;
}

std::string solution_row_line(const SolutionRow& row) {
  std::string s;
  s += std::to_string(row.trial);
  s += ',';
  s += std::to_string(row.solution_index);
  s += ',';
  s += std::to_string(row.steps);
  s += ',';
  s += std::to_string(row.node_steps);
  s += ',';
  s += csv::format_double(row.power_mw);
  s += ',';
  s += std::to_string(row.localized_blind);
  s += ',';
  s += std::to_string(row.participants);
  s += ',';
  s += std::to_string(row.messages);
  s += '\n';
  return s;
}

constexpr const char* kResultsHeader =
    "# trilat-results v1\n"
    "trial,solution_index,steps,node_steps,power_mw,localized_blind,"
    "participants,messages\n";

}  // namespace

TunableConfig default_config(Command command) {
  TunableConfig c;
  PsoConfig& pso = c.mopso.pso;
  switch (command) {
    case Command::Sopso:
      pso.n_particles = 100;
      pso.n_iterations = 200;
      pso.inertia_kind = InertiaKind::Random;
      break;
    case Command::MopsoBinary:
      pso.n_particles = 100;
      pso.n_iterations = 200;
      pso.inertia_kind = InertiaKind::Fixed;
      pso.inertia_omega = 0.1;
      c.mopso.mutation_fraction = 0.15;
      break;
    case Command::MopsoContinuous:
    case Command::Sweep:
      pso.n_particles = 50;
      pso.n_iterations = 50;
      pso.inertia_kind = InertiaKind::Fixed;
      pso.inertia_omega = 0.1;
      c.mopso.mutation_fraction = 0.20;
      break;
    case Command::Baseline:
    case Command::GenTopology:
      break;
  }
  return c;
}

void apply_override(TunableConfig& config, std::string_view key,
                    std::string_view value) {
  PsoConfig& pso = config.mopso.pso;
  if (key == "particles") {
    pso.n_particles = parse_count_value(key, value);
  } else if (key == "iterations") {
    pso.n_iterations = parse_count_value(key, value);
  } else if (key == "c1") {
    pso.c1 = parse_double_value(key, value);
  } else if (key == "c2") {
    pso.c2 = parse_double_value(key, value);
  } else if (key == "inertia") {
    if (value == "random") {
      pso.inertia_kind = InertiaKind::Random;
    } else {
      pso.inertia_kind = InertiaKind::Fixed;
      pso.inertia_omega = parse_double_value(key, value);
    }
  } else if (key == "min_range") {
    pso.min_range = parse_double_value(key, value);
  } else if (key == "max_range") {
    pso.max_range = parse_double_value(key, value);
  } else if (key == "threads") {
    pso.threads = std::max<std::uint64_t>(1, parse_count_value(key, value));
  } else if (key == "required_references") {
    pso.sim.required_references = parse_count_value(key, value);
  } else if (key == "fade_margin_db") {
    pso.radio.fade_margin_db = parse_double_value(key, value);
  } else if (key == "receiver_sensitivity_dbm") {
    pso.radio.receiver_sensitivity_dbm = parse_double_value(key, value);
  } else if (key == "frequency_mhz") {
    pso.radio.frequency_mhz = parse_double_value(key, value);
  } else if (key == "path_loss_exponent") {
    pso.radio.path_loss_exponent = parse_double_value(key, value);
  } else if (key == "archive_capacity") {
    config.mopso.archive_capacity = parse_count_value(key, value);
  } else if (key == "mutation_fraction") {
    config.mopso.mutation_fraction = parse_double_value(key, value);
  } else if (key == "mutation_value") {
    if (value == "min") {
      config.mopso.mutation_value = MutationValue::MinBound;
    } else if (value == "max") {
      config.mopso.mutation_value = MutationValue::MaxBound;
    } else {
      throw std::invalid_argument("mutation_value must be 'min' or 'max'");
    }
  } else if (key == "epsilon_equal") {
    config.mopso.dominance.epsilon_equal = parse_double_value(key, value);
  } else if (key == "objectives") {
    const std::uint64_t n = parse_count_value(key, value);
    if (n == 3) {
      config.mopso.dominance.include_messages = false;
    } else if (n == 4) {
      config.mopso.dominance.include_messages = true;
    } else {
      throw std::invalid_argument("objectives must be 3 or 4");
    }
  } else if (key == "crowding") {
    if (value == "per_particle") {
      config.mopso.crowding_schedule = CrowdingSchedule::PerParticle;
    } else if (value == "per_iteration") {
      config.mopso.crowding_schedule = CrowdingSchedule::PerIteration;
    } else {
      throw std::invalid_argument("crowding must be per_particle or per_iteration");
    }
  } else if (key == "audit_archive") {
    config.mopso.audit_archive = parse_count_value(key, value) != 0;
  } else if (key == "objective") {
    if (value == "localized") {
      config.objective = ScalarObjective::LocalizedBlind;
    } else if (value == "time") {
      config.objective = ScalarObjective::TimeSteps;
    } else if (value == "power") {
      config.objective = ScalarObjective::PowerMw;
    } else if (value == "messages") {
      config.objective = ScalarObjective::Messages;
    } else {
      throw std::invalid_argument(
          "objective must be localized, time, power, or messages");
    }
  } else if (key == "mode") {
    if (value == "standard") {
      pso.position_mode = PositionUpdateMode::Standard;
    } else if (value == "paper-literal") {
      pso.position_mode = PositionUpdateMode::PaperLiteral;
    } else {
      throw std::invalid_argument("mode must be standard or paper-literal");
    }
  } else {
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  }
}

std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    const std::size_t eq = line.find('=', start);
    if (eq == std::string::npos) {
      throw std::invalid_argument("config file line " + std::to_string(lineno) +
                                  ": expected key=value");
    }
    out.emplace_back(line.substr(start, eq - start), line.substr(eq + 1));
  }
  return out;
}

SolutionRow row_from_objectives(const ObjectiveVector& o, std::size_t n_nodes,
                                std::size_t trial, std::size_t solution_index) {
  SolutionRow row;
  row.trial = trial;
  row.solution_index = solution_index;
  row.steps = o.time_steps;
  row.node_steps = o.time_steps * n_nodes;
  row.power_mw = o.power_mw;
  row.localized_blind = o.localized_blind;
  row.participants = o.messages;
  row.messages = o.messages;
  return row;
}

TrialOutcome run_single_trial(Command command, const SimIndex& index,
                              const TunableConfig& config,
                              std::uint64_t trial_index,
                              std::uint64_t master_seed, std::size_t threads) {
  TunableConfig local = config;
  local.mopso.pso.seed =
      derive_seed(master_seed, StreamPurpose::Trial, {trial_index});
  local.mopso.pso.threads = threads;

  const auto started = std::chrono::steady_clock::now();
  TrialOutcome out;
  if (command == Command::Sopso) {
    const SopsoResult r = sopso_run(index, local.mopso.pso, local.objective,
                                    SwarmMode::Binary);
    out.rows.push_back(
        row_from_objectives(r.best_objectives, index.size(), trial_index, 0));
    out.assignments.push_back(
        decode(r.best_position, SwarmMode::Binary, local.mopso.pso.radio).range_m);
  } else if (command == Command::MopsoBinary ||
             command == Command::MopsoContinuous) {
    const SwarmMode mode = command == Command::MopsoBinary
                               ? SwarmMode::Binary
                               : SwarmMode::Continuous;
    MopsoResult r = mopso_run(index, local.mopso, mode);
    struct Item {
      SolutionRow row;
      std::vector<double> ranges;
    };
    std::vector<Item> items;
    items.reserve(r.archive.size());
    for (const ArchiveEntry& entry : r.archive) {
      items.push_back(
          {row_from_objectives(entry.objectives, index.size(), trial_index, 0),
           decode(entry.position, mode, local.mopso.pso.radio).range_m});
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      if (a.row.steps != b.row.steps) return a.row.steps < b.row.steps;
      if (a.row.power_mw != b.row.power_mw) return a.row.power_mw < b.row.power_mw;
      if (a.row.localized_blind != b.row.localized_blind) {
        return a.row.localized_blind > b.row.localized_blind;
      }
      return a.row.messages < b.row.messages;
    });
    for (std::size_t i = 0; i < items.size(); ++i) {
      items[i].row.solution_index = i;
      out.rows.push_back(items[i].row);
      out.assignments.push_back(std::move(items[i].ranges));
    }
  } else {
    throw std::logic_error("run_single_trial needs an optimizer command");
  }
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return out;
}

std::vector<TrialOutcome> run_trials(Command command, const SimIndex& index,
                                     const TunableConfig& config,
                                     std::size_t trials,
                                     std::uint64_t master_seed,
                                     std::size_t threads) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<TrialOutcome> out(trials);
  if (trials >= 2 && threads > 1) {
    parallel_for(trials, threads, [&](std::size_t t) {
      out[t] = run_single_trial(command, index, config, t, master_seed, 1);
    });
  } else {
    for (std::size_t t = 0; t < trials; ++t) {
      out[t] = run_single_trial(command, index, config, t, master_seed, threads);
    }
  }
  return out;
}

std::string render_results_csv(const std::vector<TrialOutcome>& outcomes) {
  std::string s = kResultsHeader;
  for (const TrialOutcome& outcome : outcomes) {
    for (const SolutionRow& row : outcome.rows) {
      s += solution_row_line(row);
    }
  }
  return s;
}

std::string render_aggregate_csv(const std::vector<TrialOutcome>& outcomes) {
  std::string s = "# trilat-aggregate v1\nmetric,mean,stdev\n";
  std::size_t rows = 0;
  for (const TrialOutcome& outcome : outcomes) rows += outcome.rows.size();
  if (rows == 0) return s;
  const auto metrics = aggregate_metrics(outcomes);
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    s += kMetricNames[m];
    s += ',';
    s += csv::format_double(metrics[m].mean);
    s += ',';
    s += csv::format_double(metrics[m].stdev);
    s += '\n';
  }
  return s;
}

std::string render_assignments_csv(const std::vector<TrialOutcome>& outcomes) {
  std::string s = "# trilat-assignments v1\n";
  std::size_t n_nodes = 0;
  for (const TrialOutcome& outcome : outcomes) {
    if (!outcome.assignments.empty()) {
      n_nodes = outcome.assignments.front().size();
      break;
    }
  }
  s += "trial,solution_index,steps,power_mw,localized_blind,messages";
  for (std::size_t i = 0; i < n_nodes; ++i) {
    s += ",range_";
    s += std::to_string(i);
  }
  s += '\n';
  for (const TrialOutcome& outcome : outcomes) {
    for (std::size_t i = 0; i < outcome.rows.size(); ++i) {
      const SolutionRow& row = outcome.rows[i];
      s += std::to_string(row.trial);
      s += ',';
      s += std::to_string(row.solution_index);
      s += ',';
      s += std::to_string(row.steps);
      s += ',';
      s += csv::format_double(row.power_mw);
      s += ',';
      s += std::to_string(row.localized_blind);
      s += ',';
      s += std::to_string(row.messages);
      for (double r : outcome.assignments[i]) {
        s += ',';
        s += csv::format_double(r);
      }
      s += '\n';
    }
  }
  return s;
}

BaselineOutcome run_baseline(const SimIndex& index, const RadioParams& radio,
                             const SimParams& sim) {
  BaselineOutcome outcome;
  for (std::size_t level = 0; level < kPowerLevelCount; ++level) {
    const RangeAssignment assignment = RangeAssignment::from_levels(
        std::vector<PowerLevel>(index.size(), static_cast<PowerLevel>(level)),
        radio);
    outcome.results[level] = simulate(index, assignment, sim);
  }
  return outcome;
}

std::string render_baseline_table(const BaselineOutcome& outcome,
                                  const RadioParams& radio) {
  static constexpr std::array<const char*, 3> kNames = {"min", "mid", "max"};
  char buf[256];
  std::string s =
      "level  dbm   range_m    mw/msg   steps  messages  localized_blind  "
      "participants  total_mw\n";
  for (std::size_t level = 0; level < kPowerLevelCount; ++level) {
    const SimResult& r = outcome.results[level];
    const PowerLevel pl = static_cast<PowerLevel>(level);
    std::snprintf(buf, sizeof(buf),
                  "%-5s  %4.1f  %8.3f  %8.4f  %5zu  %8zu  %15zu  %12zu  %8.4f\n",
                  kNames[level], level_dbm(pl), level_range_m(pl, radio),
                  level_mw(pl), r.time_steps, r.messages, r.localized_blind,
                  r.participants, r.power_mw);
    s += buf;
  }
  return s;
}

std::string render_baseline_csv(const BaselineOutcome& outcome,
                                std::size_t n_nodes) {
  std::string s = kResultsHeader;
  for (std::size_t level = 0; level < kPowerLevelCount; ++level) {
    const SimResult& r = outcome.results[level];
    SolutionRow row;
    row.trial = 0;
    row.solution_index = level;
    row.steps = r.time_steps;
    row.node_steps = r.node_steps;
    row.power_mw = r.power_mw;
    row.localized_blind = r.localized_blind;
    row.participants = r.participants;
    row.messages = r.messages;
    s += solution_row_line(row);
    (void)n_nodes;
  }
  return s;
}

std::vector<SweepSetting> sweep_settings(std::string_view param,
                                         const TunableConfig& base) {
  std::vector<SweepSetting> out;
  auto add = [&](std::string label, double x) -> TunableConfig& {
    out.push_back({std::move(label), x, base});
    return out.back().config;
  };
  if (param == "particles_iterations") {
    for (std::size_t n : {5, 10, 20, 50, 100, 150, 200}) {
      TunableConfig& cfg = add(std::to_string(n) + "x" + std::to_string(n),
                               static_cast<double>(n));
      cfg.mopso.pso.n_particles = n;
      cfg.mopso.pso.n_iterations = n;
    }
  } else if (param == "max_range") {
    for (double r : {64.0, 78.0, 91.0, 105.0, 119.0, 125.0, 132.0}) {
      add(csv::format_double(r), r).mopso.pso.max_range = r;
    }
  } else if (param == "mutation_fraction") {
    for (double f : {0.0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30}) {
      add(csv::format_double(f), f).mopso.mutation_fraction = f;
    }
  } else if (param == "mutation_value") {
    add("min", 0.0).mopso.mutation_value = MutationValue::MinBound;
    add("max", 1.0).mopso.mutation_value = MutationValue::MaxBound;
  } else if (param == "inertia") {
    for (double w : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
      TunableConfig& cfg = add(csv::format_double(w), w);
      cfg.mopso.pso.inertia_kind = InertiaKind::Fixed;
      cfg.mopso.pso.inertia_omega = w;
    }
  } else {
    throw std::invalid_argument(
        "unknown sweep parameter '" + std::string(param) +
        "' (expected particles_iterations, max_range, mutation_fraction, "
        "mutation_value, or inertia)");
  }
  return out;
}

SweepRow sweep_row_from(const SweepSetting& setting,
                        const std::vector<TrialOutcome>& outcomes) {
  SweepRow row;
  row.label = setting.label;
  row.x = setting.x;
  for (const TrialOutcome& outcome : outcomes) {
    row.solution_rows += outcome.rows.size();
  }
  row.metrics = aggregate_metrics(outcomes);
  return row;
}

std::string render_sweep_csv(std::string_view param,
                             const std::vector<SweepRow>& rows) {
  std::string s = "# trilat-sweep v1\nparam,setting,x,solution_rows";
  for (const char* name : kMetricNames) {
    s += ',';
    s += name;
    s += "_mean,";
    s += name;
    s += "_stdev";
  }
  s += '\n';
  for (const SweepRow& row : rows) {
    s += param;
    s += ',';
    s += row.label;
    s += ',';
    s += csv::format_double(row.x);
    s += ',';
    s += std::to_string(row.solution_rows);
    for (const Aggregate& a : row.metrics) {
      s += ',';
      s += csv::format_double(a.mean);
      s += ',';
      s += csv::format_double(a.stdev);
    }
    s += '\n';
  }
  return s;
}

std::vector<std::string> emit_scatter_plots(const csv::Table& results,
                                            const std::string& out_dir) {
  if (results.rows.empty()) {
    std::cerr << "warning: no solution rows, skipping plots\n";
    return {};
  }
  const std::size_t c_steps = results.column("steps");
  const std::size_t c_power = results.column("power_mw");
  const std::size_t c_localized = results.column("localized_blind");

  struct PlotDef {
    const char* file;
    const char* title;
    std::size_t x, y, color;
    const char* x_label;
    const char* y_label;
    const char* color_label;
  };
  const std::array<PlotDef, 3> defs = {{
      {"scatter_power_vs_steps.svg", "Total power vs localization time", c_steps,
       c_power, c_localized, "time steps", "total power (mW)", "localized"},
      {"scatter_localized_vs_steps.svg", "Localized nodes vs localization time",
       c_steps, c_localized, c_power, "time steps", "localized blind nodes",
       "power (mW)"},
      {"scatter_localized_vs_power.svg", "Localized nodes vs total power",
       c_power, c_localized, c_steps, "total power (mW)",
       "localized blind nodes", "steps"},
  }};

  std::vector<std::string> written;
  for (const PlotDef& def : defs) {
    ScatterSpec spec;
    spec.title = def.title;
    spec.x_label = def.x_label;
    spec.y_label = def.y_label;
    spec.color_label = def.color_label;
    spec.points.reserve(results.rows.size());
    for (std::size_t r = 0; r < results.rows.size(); ++r) {
      spec.points.push_back({results.number(r, def.x), results.number(r, def.y),
                             results.number(r, def.color)});
    }
    const std::string path = out_dir + "/" + def.file;
    write_file(path, render_scatter_svg(spec));
    written.push_back(def.file);
  }
  return written;
}

namespace {

Topology resolve_topology(const ExperimentSpec& spec) {
  if (spec.use_gen && !spec.topology_path.empty()) {
    throw std::invalid_argument("--topology and --gen are mutually exclusive");
  }
  if (spec.use_gen) {
    return Topology::generate_random(spec.gen_total, spec.gen_anchors,
                                     spec.gen_side, spec.seed);
  }
  if (!spec.topology_path.empty()) {
    return Topology::load(spec.topology_path);
  }
  throw std::invalid_argument(
      "a topology source is required (--topology PATH or --gen N,ANCHORS,SIDE)");
}

void run_optimizer_command(const ExperimentSpec& spec, const SimIndex& index,
                           const TunableConfig& config) {
  const auto outcomes = run_trials(spec.command, index, config, spec.trials,
                                   spec.seed, config.mopso.pso.threads);
  const std::string results_path = spec.out_dir + "/results.csv";
  write_file(results_path, render_results_csv(outcomes));
  write_file(spec.out_dir + "/aggregate.csv", render_aggregate_csv(outcomes));
  write_file(spec.out_dir + "/assignments.csv",
             render_assignments_csv(outcomes));
  emit_scatter_plots(csv::read_file(results_path), spec.out_dir);

  double wall = 0.0;
  std::size_t rows = 0;
  for (const TrialOutcome& outcome : outcomes) {
    wall += outcome.wall_seconds;
    rows += outcome.rows.size();
  }
  std::cout << render_aggregate_csv(outcomes);
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "%zu trials, %zu solution rows, %.2fs optimizer time\n",
                outcomes.size(), rows, wall);
  std::cout << buf << "outputs in " << spec.out_dir << "\n";
}

void run_sweep_command(const ExperimentSpec& spec, const SimIndex& index,
                       const TunableConfig& config) {
  if (spec.sweep_param.empty()) {
    throw std::invalid_argument("sweep requires --param NAME");
  }
  const auto settings = sweep_settings(spec.sweep_param, config);
  std::vector<SweepRow> rows;
  rows.reserve(settings.size());
  for (const SweepSetting& setting : settings) {
    const auto outcomes =
        run_trials(Command::MopsoContinuous, index, setting.config, spec.trials,
                   spec.seed, setting.config.mopso.pso.threads);
    rows.push_back(sweep_row_from(setting, outcomes));
    std::cout << "setting " << setting.label << ": " << rows.back().solution_rows
              << " solution rows\n";
  }
  const std::string csv_path =
      spec.out_dir + "/sweep_" + spec.sweep_param + ".csv";
  write_file(csv_path, render_sweep_csv(spec.sweep_param, rows));

  // One line chart per headline metric, x = the numeric setting.
  const std::array<std::pair<std::size_t, const char*>, 3> chart_metrics = {{
      {3, "localized_blind"},
      {2, "power_mw"},
      {0, "steps"},
  }};
  for (const auto& [metric, name] : chart_metrics) {
    LineSpec line;
    line.title = std::string("Mean ") + name + " by " + spec.sweep_param;
    line.x_label = spec.sweep_param;
    line.y_label = std::string("mean ") + name;
    for (const SweepRow& row : rows) {
      line.xs.push_back(row.x);
      line.ys.push_back(row.metrics[metric].mean);
    }
    write_file(spec.out_dir + "/sweep_" + spec.sweep_param + "_" + name + ".svg",
               render_line_svg(line));
  }
  std::cout << "outputs in " << spec.out_dir << "\n";
}

}  // namespace

void run_experiment(const ExperimentSpec& spec) {
  std::filesystem::create_directories(spec.out_dir);

  if (spec.command == Command::GenTopology) {
    if (!spec.use_gen) {
      throw std::invalid_argument("gen-topology requires --gen N,ANCHORS,SIDE");
    }
    const Topology topo = Topology::generate_random(
        spec.gen_total, spec.gen_anchors, spec.gen_side, spec.seed);
    const std::string path = spec.out_dir + "/topology.txt";
    topo.save(path);
    std::cout << "wrote " << path << " (" << topo.size() << " nodes, "
              << topo.anchor_count() << " anchors, side "
              << csv::format_double(topo.field_side) << ")\n";
    return;
  }

  const Topology topo = resolve_topology(spec);
  TunableConfig config = default_config(spec.command);
  config.mopso.pso.position_mode = spec.position_mode;
  for (const auto& [key, value] : spec.overrides) {
    apply_override(config, key, value);
  }
  config.mopso.validate();
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");

  const SimIndex index(topo);
  topo.save(spec.out_dir + "/topology_used.txt");

  switch (spec.command) {
    case Command::Baseline: {
      const BaselineOutcome outcome =
          run_baseline(index, config.mopso.pso.radio, config.mopso.pso.sim);
      const std::string results_path = spec.out_dir + "/results.csv";
      write_file(results_path, render_baseline_csv(outcome, index.size()));
      std::cout << render_baseline_table(outcome, config.mopso.pso.radio);
      emit_scatter_plots(csv::read_file(results_path), spec.out_dir);
      std::cout << "outputs in " << spec.out_dir << "\n";
      break;
    }
    case Command::Sopso:
    case Command::MopsoBinary:
    case Command::MopsoContinuous:
      run_optimizer_command(spec, index, config);
      break;
    case Command::Sweep:
      run_sweep_command(spec, index, config);
      break;
    case Command::GenTopology:
      break;  // handled above
  }
}

}  // namespace trilat
