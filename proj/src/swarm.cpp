#include "trilat/swarm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace trilat {

void PsoConfig::validate() const {
  if (n_particles < 1) throw std::invalid_argument("n_particles must be >= 1");
  if (!(min_range > 0.0)) throw std::invalid_argument("min_range must be positive");
  // Equal bounds are admitted: the upper-bound sweep runs all the way down
  // to the lower bound, degenerating every range to that single value.
  if (!(min_range <= max_range)) {
    throw std::invalid_argument("min_range must not exceed max_range");
  }
  if (c1 < 0.0 || c2 < 0.0) {
    throw std::invalid_argument("acceleration coefficients must be non-negative");
  }
  if (inertia_kind == InertiaKind::Fixed &&
      !(inertia_omega >= 0.0 && std::isfinite(inertia_omega))) {
    throw std::invalid_argument("inertia weight must be non-negative and finite");
  }
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

ObjectiveVector objectives_from(const SimResult& r) {
  return {r.time_steps, r.power_mw, r.localized_blind, r.messages};
}

double scalar_fitness(const ObjectiveVector& o, ScalarObjective objective) {
  switch (objective) {
    case ScalarObjective::LocalizedBlind:
      return -static_cast<double>(o.localized_blind);
    case ScalarObjective::TimeSteps:
      return static_cast<double>(o.time_steps);
    case ScalarObjective::PowerMw:
      return o.power_mw;
    case ScalarObjective::Messages:
      return static_cast<double>(o.messages);
  }
  throw std::logic_error("unknown scalar objective");
}

void clamp_velocity(std::span<double> v, SwarmMode mode, const PsoConfig& config) {
  double lo;
  double hi;
  if (mode == SwarmMode::Binary) {
    lo = 0.0;
    hi = 1.0;
  } else if (config.position_mode == PositionUpdateMode::PaperLiteral) {
    // Published rule verbatim: below delta snaps to the lower range bound,
    // otherwise to delta itself.
    const double d = config.delta();
    for (double& x : v) x = (x < d) ? config.min_range : d;
    return;
  } else {
    hi = config.delta();
    lo = -hi;
  }
  for (double& x : v) {
    if (x < lo) x = lo;
    if (x > hi) x = hi;
  }
}

void repair_one_hot(std::span<double> row, std::span<const double> velocity_row) {
  std::size_t set_count = 0;
  std::size_t keep = 0;
  bool have_keep = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] != 0.0) {
      ++set_count;
      if (!have_keep || velocity_row[i] > velocity_row[keep]) {
        keep = i;
        have_keep = true;
      }
    }
  }
  if (set_count == 1) return;
  if (set_count == 0) {
    keep = 0;
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (velocity_row[i] > velocity_row[keep]) keep = i;
    }
  }
  for (double& x : row) x = 0.0;
  row[keep] = 1.0;
}

RangeAssignment decode(const std::vector<double>& position, SwarmMode mode,
                       const RadioParams& radio) {
  if (mode == SwarmMode::Continuous) {
    return RangeAssignment::from_ranges(position, radio);
  }
  if (position.size() % kBinaryColumns != 0) {
    throw std::logic_error("binary position size is not a multiple of 3");
  }
  const std::size_t n = position.size() / kBinaryColumns;
  std::vector<PowerLevel> levels;
  levels.reserve(n);
  for (std::size_t row = 0; row < n; ++row) {
    std::size_t set = kBinaryColumns;
    for (std::size_t j = 0; j < kBinaryColumns; ++j) {
      const double cell = position[row * kBinaryColumns + j];
      if (cell == 1.0) {
        if (set != kBinaryColumns) throw std::logic_error("row is not one-hot");
        set = j;
      } else if (cell != 0.0) {
        throw std::logic_error("binary cell is neither 0 nor 1");
      }
    }
    if (set == kBinaryColumns) throw std::logic_error("row is not one-hot");
    levels.push_back(static_cast<PowerLevel>(set));
  }
  return RangeAssignment::from_levels(levels, radio);
}

ObjectiveVector evaluate(const std::vector<double>& position, SwarmMode mode,
                         const SimIndex& index, const PsoConfig& config) {
  const RangeAssignment assignment = decode(position, mode, config.radio);
  return objectives_from(simulate(index, assignment, config.sim));
}

namespace {

std::size_t position_size(SwarmMode mode, std::size_t n_nodes) {
  return mode == SwarmMode::Binary ? n_nodes * kBinaryColumns : n_nodes;
}

void init_particle(Particle& particle, SwarmMode mode, const PsoConfig& config,
                   std::size_t n_nodes, RngStream& rng) {
  const std::size_t dim = position_size(mode, n_nodes);
  particle.position.assign(dim, 0.0);
  particle.velocity.assign(dim, 0.0);
  if (mode == SwarmMode::Binary) {
    for (std::size_t row = 0; row < n_nodes; ++row) {
      particle.position[row * kBinaryColumns + rng.uniform_index(kBinaryColumns)] =
          1.0;
    }
    for (double& v : particle.velocity) v = rng.uniform();
  } else {
    for (double& p : particle.position) {
      p = rng.uniform(config.min_range, config.max_range);
    }
    const double d = config.delta();
    double lo;
    double hi;
    if (config.position_mode == PositionUpdateMode::PaperLiteral) {
      lo = std::min(config.min_range, d);
      hi = std::max(config.min_range, d);
    } else {
      lo = -d;
      hi = d;
    }
    for (double& v : particle.velocity) v = rng.uniform(lo, hi);
  }
}

}  // namespace

void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  const std::size_t chunk = (n + threads - 1) / threads;
  auto work = [&](std::size_t t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    for (std::size_t i = lo; i < hi; ++i) fn(i);
  };
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
}

Swarm init_swarm(const SimIndex& index, const PsoConfig& config, SwarmMode mode) {
  config.validate();
  Swarm swarm;
  swarm.mode = mode;
  swarm.n_nodes = index.size();
  swarm.particles.resize(config.n_particles);
  parallel_for(config.n_particles, config.threads, [&](std::size_t p) {
    RngStream rng(derive_seed(config.seed, StreamPurpose::SwarmInit, {p}));
    Particle& particle = swarm.particles[p];
    init_particle(particle, mode, config, swarm.n_nodes, rng);
    particle.objectives = evaluate(particle.position, mode, index, config);
    particle.best_position = particle.position;
    particle.best_objectives = particle.objectives;
  });
  return swarm;
}

double inertia_for_iteration(const PsoConfig& config, std::uint64_t iteration) {
  if (config.inertia_kind == InertiaKind::Fixed) return config.inertia_omega;
  RngStream rng(derive_seed(config.seed, StreamPurpose::InertiaDraw, {iteration}));
  return 0.5 + rng.uniform() / 2.0;
}

SopsoResult sopso_run_swarm(const SimIndex& index, const PsoConfig& config,
                            ScalarObjective objective, Swarm& swarm) {
  config.validate();
  if (swarm.particles.empty()) throw std::invalid_argument("swarm is empty");
  const SwarmMode mode = swarm.mode;
  auto best_particle = [&]() {
    std::size_t best = 0;
    double best_fit = scalar_fitness(swarm.particles[0].best_objectives, objective);
    for (std::size_t p = 1; p < swarm.particles.size(); ++p) {
      const double fit = scalar_fitness(swarm.particles[p].best_objectives, objective);
      if (fit < best_fit) {
        best = p;
        best_fit = fit;
      }
    }
    return best;
  };

  std::size_t g = best_particle();
  std::vector<double> gbest_position = swarm.particles[g].best_position;
  ObjectiveVector gbest_objectives = swarm.particles[g].best_objectives;
  double gbest_fitness = scalar_fitness(gbest_objectives, objective);

  SopsoResult result;
  result.fitness_trace.reserve(config.n_iterations + 1);
  result.fitness_trace.push_back(gbest_fitness);

  for (std::uint64_t iter = 1; iter <= config.n_iterations; ++iter) {
    const double omega = inertia_for_iteration(config, iter);
    parallel_for(swarm.particles.size(), config.threads, [&](std::size_t p) {
      RngStream rng(
          derive_seed(config.seed, StreamPurpose::IterationParticle, {iter, p}));
      Particle& particle = swarm.particles[p];
      velocity_step(std::span<double>(particle.velocity),
                    std::span<const double>(particle.position),
                    std::span<const double>(particle.best_position),
                    std::span<const double>(gbest_position), omega, config.c1,
                    config.c2, rng);
      clamp_velocity(std::span<double>(particle.velocity), mode, config);
      if (mode == SwarmMode::Binary) {
        position_step_binary(std::span<double>(particle.position),
                             std::span<const double>(particle.velocity), rng);
      } else {
        position_step_continuous(std::span<double>(particle.position),
                                 std::span<const double>(particle.velocity),
                                 config, rng);
      }
      particle.objectives = evaluate(particle.position, mode, index, config);
    });
    for (Particle& particle : swarm.particles) {
      if (scalar_fitness(particle.objectives, objective) <
          scalar_fitness(particle.best_objectives, objective)) {
        particle.best_objectives = particle.objectives;
        particle.best_position = particle.position;
      }
    }
    g = best_particle();
    const double fit = scalar_fitness(swarm.particles[g].best_objectives, objective);
    if (fit < gbest_fitness) {
      gbest_fitness = fit;
      gbest_position = swarm.particles[g].best_position;
      gbest_objectives = swarm.particles[g].best_objectives;
    }
    result.fitness_trace.push_back(gbest_fitness);
  }

  result.best_position = std::move(gbest_position);
  result.best_objectives = gbest_objectives;
  result.best_fitness = gbest_fitness;
  return result;
}

SopsoResult sopso_run(const SimIndex& index, const PsoConfig& config,
                      ScalarObjective objective, SwarmMode mode) {
  Swarm swarm = init_swarm(index, config, mode);
  return sopso_run_swarm(index, config, objective, swarm);
}

}  // namespace trilat
