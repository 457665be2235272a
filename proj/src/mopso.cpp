#include "trilat/mopso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace trilat {

namespace {

// -1, 0, +1 ordering of one minimized component.
int cmp_exact(std::size_t a, std::size_t b) {
  if (a < b) return -1;
  if (a > b) return 1;
  return 0;
}

int cmp_real(double a, double b, double eps) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (std::abs(a - b) <= eps * scale) return 0;
  return a < b ? -1 : 1;
}

}  // namespace

Dominance dominance(const ObjectiveVector& a, const ObjectiveVector& b,
                    const DominanceConfig& config) {
  bool a_better = false;
  bool b_better = false;
  auto feed = [&](int c) {
    if (c < 0) a_better = true;
    if (c > 0) b_better = true;
  };
  feed(cmp_exact(a.time_steps, b.time_steps));
  feed(cmp_real(a.power_mw, b.power_mw, config.epsilon_equal));
  // localized_blind is maximized, so the comparison flips.
  feed(cmp_exact(b.localized_blind, a.localized_blind));
  if (config.include_messages) feed(cmp_exact(a.messages, b.messages));
  if (a_better && !b_better) return Dominance::ADominates;
  if (b_better && !a_better) return Dominance::BDominates;
  if (!a_better && !b_better) return Dominance::Equal;
  return Dominance::NonDominated;
}

namespace {

double objective_component(const ObjectiveVector& o, std::size_t axis) {
  switch (axis) {
    case 0:
      return static_cast<double>(o.time_steps);
    case 1:
      return o.power_mw;
    case 2:
      return -static_cast<double>(o.localized_blind);
    default:
      return static_cast<double>(o.messages);
  }
}

}  // namespace

void compute_crowding(std::span<ArchiveEntry> entries,
                      const DominanceConfig& config) {
  const std::size_t k = entries.size();
  if (k == 0) return;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (k <= 2) {
    for (auto& e : entries) e.crowding = kInf;
    return;
  }
  for (auto& e : entries) e.crowding = 0.0;
  const std::size_t n_axes = config.include_messages ? 4 : 3;
  std::vector<std::size_t> idx(k);
  for (std::size_t axis = 0; axis < n_axes; ++axis) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
      const double vi = objective_component(entries[i].objectives, axis);
      const double vj = objective_component(entries[j].objectives, axis);
      if (vi != vj) return vi < vj;
      return i < j;
    });
    const double lo = objective_component(entries[idx.front()].objectives, axis);
    const double hi = objective_component(entries[idx.back()].objectives, axis);
    if (!(hi > lo)) continue;  // no spread, axis carries no information
    entries[idx.front()].crowding = kInf;
    entries[idx.back()].crowding = kInf;
    for (std::size_t m = 1; m + 1 < k; ++m) {
      const double below = objective_component(entries[idx[m - 1]].objectives, axis);
      const double above = objective_component(entries[idx[m + 1]].objectives, axis);
      entries[idx[m]].crowding += (above - below) / (hi - lo);
    }
  }
}

bool archive_insert(std::vector<ArchiveEntry>& archive, ArchiveEntry candidate,
                    std::size_t capacity, const DominanceConfig& config) {
  for (const ArchiveEntry& entry : archive) {
    const Dominance d = dominance(candidate.objectives, entry.objectives, config);
    if (d == Dominance::BDominates || d == Dominance::Equal) return false;
  }
  std::erase_if(archive, [&](const ArchiveEntry& entry) {
    return dominance(candidate.objectives, entry.objectives, config) ==
           Dominance::ADominates;
  });
  archive.push_back(std::move(candidate));
  if (archive.size() > capacity) {
    compute_crowding(std::span<ArchiveEntry>(archive), config);
    std::size_t victim = 0;
    for (std::size_t i = 1; i < archive.size(); ++i) {
      if (archive[i].crowding < archive[victim].crowding) victim = i;
    }
    archive.erase(archive.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  return true;
}

void MopsoConfig::validate() const {
  pso.validate();
  if (!(mutation_fraction >= 0.0 && mutation_fraction <= 1.0)) {
    throw std::invalid_argument("mutation_fraction must lie in [0, 1]");
  }
  if (archive_capacity < 2) {
    throw std::invalid_argument("archive_capacity must be >= 2");
  }
  if (!(dominance.epsilon_equal >= 0.0)) {
    throw std::invalid_argument("epsilon_equal must be non-negative");
  }
}

std::size_t mutation_count(double fraction, std::size_t n_particles) {
  // The 1e-9 slack keeps representable products like 0.15*100 from rounding
  // up to 16 when the double sits a hair above the integer.
  const double raw = std::ceil(fraction * static_cast<double>(n_particles) - 1e-9);
  if (raw <= 0.0) return 0;
  return std::min(n_particles, static_cast<std::size_t>(raw));
}

namespace {

void audit_archive_state(const std::vector<ArchiveEntry>& archive,
                         std::size_t capacity, const DominanceConfig& config) {
  if (archive.size() > capacity) {
    throw std::logic_error("archive exceeds capacity");
  }
  for (std::size_t i = 0; i < archive.size(); ++i) {
    for (std::size_t j = i + 1; j < archive.size(); ++j) {
      if (dominance(archive[i].objectives, archive[j].objectives, config) !=
          Dominance::NonDominated) {
        throw std::logic_error("archive entries are not pairwise non-dominated");
      }
    }
  }
}

}  // namespace

MopsoResult mopso_run(const SimIndex& index, const MopsoConfig& config,
                      SwarmMode mode) {
  config.validate();
  Swarm swarm = init_swarm(index, config.pso, mode);

  MopsoResult result;
  for (const Particle& particle : swarm.particles) {
    archive_insert(result.archive, {particle.position, particle.objectives, 0.0},
                   config.archive_capacity, config.dominance);
  }
  compute_crowding(std::span<ArchiveEntry>(result.archive), config.dominance);
  if (config.audit_archive) {
    audit_archive_state(result.archive, config.archive_capacity, config.dominance);
  }
  result.archive_size_trace.reserve(config.pso.n_iterations + 1);
  result.archive_size_trace.push_back(result.archive.size());

  const std::size_t n = swarm.particles.size();
  std::vector<RngStream> streams;
  streams.reserve(n);
  for (std::uint64_t iter = 1; iter <= config.pso.n_iterations; ++iter) {
    const double omega = inertia_for_iteration(config.pso, iter);
    streams.clear();
    for (std::uint64_t p = 0; p < n; ++p) {
      streams.emplace_back(
          derive_seed(config.pso.seed, StreamPurpose::IterationParticle, {iter, p}));
    }
    // Movement phase: leader draws see the iteration-start archive.
    parallel_for(n, config.pso.threads, [&](std::size_t p) {
      RngStream& rng = streams[p];
      Particle& particle = swarm.particles[p];
      const std::size_t leader = select_leader(result.archive, rng);
      velocity_step(std::span<double>(particle.velocity),
                    std::span<const double>(particle.position),
                    std::span<const double>(particle.best_position),
                    std::span<const double>(result.archive[leader].position),
                    omega, config.pso.c1, config.pso.c2, rng);
      clamp_velocity(std::span<double>(particle.velocity), mode, config.pso);
      if (mode == SwarmMode::Binary) {
        position_step_binary(std::span<double>(particle.position),
                             std::span<const double>(particle.velocity), rng);
      } else {
        position_step_continuous(std::span<double>(particle.position),
                                 std::span<const double>(particle.velocity),
                                 config.pso, rng);
      }
    });
    {
      RngStream mutation_rng(
          derive_seed(config.pso.seed, StreamPurpose::Mutation, {iter}));
      boundary_mutation(swarm, config, mutation_rng);
    }
    parallel_for(n, config.pso.threads, [&](std::size_t p) {
      Particle& particle = swarm.particles[p];
      particle.objectives = evaluate(particle.position, mode, index, config.pso);
    });
    // Absorption phase: ascending particle order keeps the archive identical
    // across thread counts.
    bool archive_dirty = false;
    for (std::size_t p = 0; p < n; ++p) {
      Particle& particle = swarm.particles[p];
      const Dominance d = dominance(particle.objectives, particle.best_objectives,
                                    config.dominance);
      if (d == Dominance::ADominates ||
          (d == Dominance::NonDominated && streams[p].uniform() < 0.5)) {
        particle.best_objectives = particle.objectives;
        particle.best_position = particle.position;
      }
      const bool inserted =
          archive_insert(result.archive,
                         {particle.position, particle.objectives, 0.0},
                         config.archive_capacity, config.dominance);
      archive_dirty = archive_dirty || inserted;
      if (inserted && config.crowding_schedule == CrowdingSchedule::PerParticle) {
        compute_crowding(std::span<ArchiveEntry>(result.archive), config.dominance);
        archive_dirty = false;
      }
      if (config.audit_archive) {
        audit_archive_state(result.archive, config.archive_capacity,
                            config.dominance);
      }
    }
    if (archive_dirty) {
      compute_crowding(std::span<ArchiveEntry>(result.archive), config.dominance);
    }
    result.archive_size_trace.push_back(result.archive.size());
  }
  return result;
}

}  // namespace trilat
