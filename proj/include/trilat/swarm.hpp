#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "trilat/radio_model.hpp"
#include "trilat/rng.hpp"
#include "trilat/tbl_sim.hpp"

namespace trilat {

/// Particle representation. Binary particles hold an N x 3 0/1 matrix
/// (flattened row-major, one column per power level, rows one-hot);
/// continuous particles hold N transmit ranges in meters.
enum class SwarmMode { Binary, Continuous };

/// Continuous position/velocity semantics. Standard is conventional PSO:
/// velocity clamped to [-delta, +delta], position += velocity. Literal
/// follows the alternative published rule verbatim: velocities below delta
/// snap to the lower range bound and others to delta, and each position is
/// rebuilt as a fresh uniform draw plus the velocity. Standard is the
/// default; Literal is kept for fidelity experiments.
enum class PositionUpdateMode { Standard, PaperLiteral };

enum class InertiaKind { Fixed, Random };

struct PsoConfig {
  std::size_t n_particles = 100;
  std::size_t n_iterations = 200;
  double c1 = 1.49445;
  double c2 = 1.49445;
  InertiaKind inertia_kind = InertiaKind::Fixed;
  double inertia_omega = 0.1;
  double min_range = 64.0;
  double max_range = 132.0;
  std::uint64_t seed = 0;
  PositionUpdateMode position_mode = PositionUpdateMode::Standard;
  std::size_t threads = 1;
  RadioParams radio;
  SimParams sim;

  /// Half-width of the range interval; the continuous velocity magnitude cap.
  double delta() const { return (max_range - min_range) / 2.0; }

  /// Throws std::invalid_argument on violated invariants.
  void validate() const;
};

/// Simulation metrics packed for optimization. localized_blind is a
/// maximization objective; dominance and scalar fitness negate it
/// internally so everything minimizes.
struct ObjectiveVector {
  std::size_t time_steps = 0;
  double power_mw = 0.0;
  std::size_t localized_blind = 0;
  std::size_t messages = 0;
};

ObjectiveVector objectives_from(const SimResult& r);

/// Single objectives selectable for the scalar optimizer.
enum class ScalarObjective { LocalizedBlind, TimeSteps, PowerMw, Messages };

/// Scalar fitness, always minimized.
double scalar_fitness(const ObjectiveVector& o, ScalarObjective objective);

struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> best_position;
  ObjectiveVector objectives;
  ObjectiveVector best_objectives;
};

struct Swarm {
  SwarmMode mode = SwarmMode::Binary;
  std::size_t n_nodes = 0;
  std::vector<Particle> particles;
};

inline constexpr std::uint64_t kBinaryColumns = 3;

/// Velocity rule shared by every mode, applied elementwise with fresh
/// r1, r2 ~ U(0,1) per element (r1 drawn before r2):
///   v <- omega*v + c1*r1*(pbest - p) + c2*r2*(gbest - p)
/// Clamping to the mode's admissible interval is the caller's job.
template <class Rng>
void velocity_step(std::span<double> v, std::span<const double> p,
                   std::span<const double> pbest, std::span<const double> gbest,
                   double omega, double c1, double c2, Rng& rng) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r1 = rng.uniform();
    const double r2 = rng.uniform();
    v[i] = omega * v[i] + c1 * r1 * (pbest[i] - p[i]) + c2 * r2 * (gbest[i] - p[i]);
  }
}

void clamp_velocity(std::span<double> v, SwarmMode mode, const PsoConfig& config);

/// Rebuilds one binary row as one-hot. Of the set cells (or all cells when
/// none are set) the one with the highest velocity survives; velocity ties
/// resolve to the lowest column, i.e. the cheapest level.
void repair_one_hot(std::span<double> row, std::span<const double> velocity_row);

/// Binary position rule: each cell becomes 1 with probability equal to its
/// clamped velocity, then rows are repaired to one-hot.
template <class Rng>
void position_step_binary(std::span<double> p, std::span<const double> v,
                          Rng& rng) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = rng.uniform() < v[i] ? 1.0 : 0.0;
  }
  for (std::size_t row = 0; row + kBinaryColumns <= p.size();
       row += kBinaryColumns) {
    repair_one_hot(p.subspan(row, kBinaryColumns), v.subspan(row, kBinaryColumns));
  }
}

/// Continuous position rule under either semantics, followed by the bound
/// clamp into [min_range, max_range].
template <class Rng>
void position_step_continuous(std::span<double> p, std::span<const double> v,
                              const PsoConfig& config, Rng& rng) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    double next;
    if (config.position_mode == PositionUpdateMode::PaperLiteral) {
      next = rng.uniform(0.0, config.max_range) + v[i];
    } else {
      next = p[i] + v[i];
    }
    if (next < config.min_range) next = config.min_range;
    if (next > config.max_range) next = config.max_range;
    p[i] = next;
  }
}

/// Maps a position to per-node transmit ranges. Binary rows must be one-hot;
/// a malformed row throws std::logic_error since updates are required to
/// preserve the invariant.
RangeAssignment decode(const std::vector<double>& position, SwarmMode mode,
                       const RadioParams& radio = {});

ObjectiveVector evaluate(const std::vector<double>& position, SwarmMode mode,
                         const SimIndex& index, const PsoConfig& config);

/// Random swarm: one-hot rows uniform over the three levels (binary) or
/// ranges uniform in [min_range, max_range] (continuous); velocities uniform
/// in [0,1) for binary, in the mode's admissible interval for continuous.
/// Particles are evaluated and personal bests set to the initial state.
/// Deterministic per (config.seed, index).
Swarm init_swarm(const SimIndex& index, const PsoConfig& config, SwarmMode mode);

/// Inertia weight for one iteration: the configured constant, or a fresh
/// draw from 0.5 + U(0,1)/2 when randomized inertia is selected.
double inertia_for_iteration(const PsoConfig& config, std::uint64_t iteration);

struct SopsoResult {
  std::vector<double> best_position;
  ObjectiveVector best_objectives;
  double best_fitness = 0.0;
  /// Global-best fitness after initialization and after each iteration;
  /// length n_iterations + 1, monotone non-increasing.
  std::vector<double> fitness_trace;
};

/// Classic synchronous global-best PSO over the scalar objective. Starts
/// from `swarm` (already evaluated, personal bests set); the plain overload
/// initializes the swarm itself.
SopsoResult sopso_run_swarm(const SimIndex& index, const PsoConfig& config,
                            ScalarObjective objective, Swarm& swarm);
SopsoResult sopso_run(const SimIndex& index, const PsoConfig& config,
                      ScalarObjective objective,
                      SwarmMode mode = SwarmMode::Binary);

/// Runs fn(i) for i in [0, n) across `threads` std::threads. fn must be
/// safe to call concurrently for distinct i; iteration order is unspecified
/// but every result must be independent of it.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace trilat
