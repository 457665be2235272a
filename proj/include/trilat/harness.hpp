#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trilat/csv.hpp"
#include "trilat/mopso.hpp"
#include "trilat/stats.hpp"
#include "trilat/swarm.hpp"
#include "trilat/tbl_sim.hpp"
#include "trilat/topology.hpp"

namespace trilat {

enum class Command {
  Baseline,
  Sopso,
  MopsoBinary,
  MopsoContinuous,
  Sweep,
  GenTopology,
};

/// One fully parsed invocation. `overrides` holds config-file entries first,
/// then command-line ones, applied in order so the command line wins.
struct ExperimentSpec {
  Command command = Command::Baseline;
  std::string topology_path;
  bool use_gen = false;
  std::size_t gen_total = 240;
  std::size_t gen_anchors = 40;
  double gen_side = 1000.0;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  std::vector<std::pair<std::string, std::string>> overrides;
  std::string sweep_param;
  PositionUpdateMode position_mode = PositionUpdateMode::Standard;
};

/// Every tunable any command consumes; optimizer commands pick the parts
/// they need. Defaults depend on the command.
struct TunableConfig {
  MopsoConfig mopso;
  ScalarObjective objective = ScalarObjective::LocalizedBlind;
};

TunableConfig default_config(Command command);

/// Applies one key=value override. Unknown keys or malformed values throw
/// std::invalid_argument (a usage error).
void apply_override(TunableConfig& config, std::string_view key,
                    std::string_view value);

/// key=value lines; '#' comments and blank lines ignored.
std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path);

/// One emitted CSV data row.
struct SolutionRow {
  std::size_t trial = 0;
  std::size_t solution_index = 0;
  std::size_t steps = 0;
  std::size_t node_steps = 0;
  double power_mw = 0.0;
  std::size_t localized_blind = 0;
  std::size_t participants = 0;
  std::size_t messages = 0;
};

SolutionRow row_from_objectives(const ObjectiveVector& o, std::size_t n_nodes,
                                std::size_t trial, std::size_t solution_index);

/// Solutions from one optimizer trial: SOPSO yields one row (its best),
/// MOPSO one row per archive entry. Rows are sorted by (steps, power,
/// -localized, messages) and assignments[i] holds row i's per-node ranges.
struct TrialOutcome {
  std::vector<SolutionRow> rows;
  std::vector<std::vector<double>> assignments;
  double wall_seconds = 0.0;
};

TrialOutcome run_single_trial(Command command, const SimIndex& index,
                              const TunableConfig& config,
                              std::uint64_t trial_index,
                              std::uint64_t master_seed, std::size_t threads);

/// Runs `trials` independent trials; seeds derive from (master_seed, trial)
/// so outcomes are identical whether trials run sequentially or in parallel.
std::vector<TrialOutcome> run_trials(Command command, const SimIndex& index,
                                     const TunableConfig& config,
                                     std::size_t trials,
                                     std::uint64_t master_seed,
                                     std::size_t threads);

std::string render_results_csv(const std::vector<TrialOutcome>& outcomes);
std::string render_aggregate_csv(const std::vector<TrialOutcome>& outcomes);
std::string render_assignments_csv(const std::vector<TrialOutcome>& outcomes);

/// The three uniform-level reference runs, in level order Min, Mid, Max.
struct BaselineOutcome {
  std::array<SimResult, kPowerLevelCount> results;
};

BaselineOutcome run_baseline(const SimIndex& index, const RadioParams& radio,
                             const SimParams& sim);
std::string render_baseline_table(const BaselineOutcome& outcome,
                                  const RadioParams& radio);
std::string render_baseline_csv(const BaselineOutcome& outcome,
                                std::size_t n_nodes);

/// One sweep point: display label, numeric x for plots, adjusted config.
struct SweepSetting {
  std::string label;
  double x = 0.0;
  TunableConfig config;
};

/// The predefined grids; unknown parameter names throw std::invalid_argument.
/// Valid names: particles_iterations, max_range, mutation_fraction,
/// mutation_value, inertia.
std::vector<SweepSetting> sweep_settings(std::string_view param,
                                         const TunableConfig& base);

struct SweepRow {
  std::string label;
  double x = 0.0;
  std::size_t solution_rows = 0;
  std::array<Aggregate, 6> metrics;  // steps, node_steps, power, localized,
                                     // participants, messages
};

SweepRow sweep_row_from(const SweepSetting& setting,
                        const std::vector<TrialOutcome>& outcomes);
std::string render_sweep_csv(std::string_view param,
                             const std::vector<SweepRow>& rows);

/// Scatter plots regenerated from the already-written results CSV, so the
/// plotted values are exactly the published ones. Returns the file names
/// written; empty input produces none and a warning on stderr.
std::vector<std::string> emit_scatter_plots(const csv::Table& results,
                                            const std::string& out_dir);

/// Full orchestration with file output; throws on failure (TopologyError and
/// std::runtime_error are I/O-class, std::invalid_argument usage-class).
void run_experiment(const ExperimentSpec& spec);

}  // namespace trilat
