#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "trilat/rng.hpp"
#include "trilat/swarm.hpp"
#include "trilat/tbl_sim.hpp"

namespace trilat {

enum class Dominance { ADominates, BDominates, NonDominated, Equal };

struct DominanceConfig {
  /// messages = n_anchors + localized_blind makes it affinely redundant
  /// with localizability, so it stays out of dominance unless asked for.
  bool include_messages = false;
  /// Relative tolerance for equality of the real-valued component; integer
  /// components always compare exactly.
  double epsilon_equal = 1e-9;
};

/// Pareto dominance over the minimized view (time_steps, power_mw,
/// -localized_blind[, messages]).
Dominance dominance(const ObjectiveVector& a, const ObjectiveVector& b,
                    const DominanceConfig& config = {});

struct ArchiveEntry {
  std::vector<double> position;
  ObjectiveVector objectives;
  double crowding = 0.0;
};

/// NSGA-II crowding distances over the same minimized view dominance uses.
/// Per objective, entries are sorted, the two extremes get +infinity, and
/// interior entries accumulate normalized neighbor gaps; objectives with no
/// spread are skipped. With one or two entries everything is +infinity.
void compute_crowding(std::span<ArchiveEntry> entries,
                      const DominanceConfig& config = {});

/// Leaders-archive insertion: candidates dominated by or equal to a resident
/// are rejected; otherwise residents the candidate dominates are evicted and
/// the candidate joins. Overflowing `capacity` evicts the lowest-crowding
/// entry after a recompute. Returns whether the candidate was inserted.
bool archive_insert(std::vector<ArchiveEntry>& archive, ArchiveEntry candidate,
                    std::size_t capacity, const DominanceConfig& config = {});

/// Draws two entries uniformly with replacement and returns the index of the
/// higher-crowding one; crowding ties (including infinity vs infinity) are
/// settled by a coin flip.
template <class Rng>
std::size_t select_leader(const std::vector<ArchiveEntry>& archive, Rng& rng) {
  if (archive.empty()) throw std::logic_error("leader selection on empty archive");
  const std::size_t i = static_cast<std::size_t>(rng.uniform_index(archive.size()));
  const std::size_t j = static_cast<std::size_t>(rng.uniform_index(archive.size()));
  if (archive[i].crowding > archive[j].crowding) return i;
  if (archive[j].crowding > archive[i].crowding) return j;
  return rng.uniform() < 0.5 ? i : j;
}

enum class MutationValue { MinBound, MaxBound };

/// When stored crowding values are refreshed during archive maintenance:
/// after every insertion (as the update loop literally reads) or once per
/// iteration. Outputs are identical; PerIteration just skips redundant work.
enum class CrowdingSchedule { PerParticle, PerIteration };

struct MopsoConfig {
  PsoConfig pso;
  std::size_t archive_capacity = 100;
  double mutation_fraction = 0.15;
  MutationValue mutation_value = MutationValue::MinBound;
  DominanceConfig dominance;
  CrowdingSchedule crowding_schedule = CrowdingSchedule::PerParticle;
  /// O(k^2) pairwise non-dominance audit after every archive change; test use.
  bool audit_archive = false;

  void validate() const;
};

/// Number of particles mutated each iteration. Exact at representable
/// fraction*count products: 15% of 100 is 15, 20% of 50 is 10.
std::size_t mutation_count(double fraction, std::size_t n_particles);

/// Boundary mutation: that many distinct particles, chosen uniformly, each
/// get one uniformly chosen node-row forced to the mutation bound
/// (continuous: the range bound itself; binary: the matching one-hot row).
template <class Rng>
void boundary_mutation(Swarm& swarm, const MopsoConfig& config, Rng& rng) {
  const std::size_t n = swarm.particles.size();
  const std::size_t m = mutation_count(config.mutation_fraction, n);
  if (m == 0) return;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t t = 0; t < m; ++t) {
    const std::size_t pick =
        t + static_cast<std::size_t>(rng.uniform_index(n - t));
    std::swap(order[t], order[pick]);
    Particle& particle = swarm.particles[order[t]];
    const std::size_t row =
        static_cast<std::size_t>(rng.uniform_index(swarm.n_nodes));
    if (swarm.mode == SwarmMode::Binary) {
      const std::size_t col =
          config.mutation_value == MutationValue::MinBound ? 0 : kBinaryColumns - 1;
      for (std::size_t j = 0; j < kBinaryColumns; ++j) {
        particle.position[row * kBinaryColumns + j] = (j == col) ? 1.0 : 0.0;
      }
    } else {
      particle.position[row] = config.mutation_value == MutationValue::MinBound
                                   ? config.pso.min_range
                                   : config.pso.max_range;
    }
  }
}

struct MopsoResult {
  std::vector<ArchiveEntry> archive;
  /// Archive size after initialization and after each iteration.
  std::vector<std::size_t> archive_size_trace;
};

/// Multi-objective PSO with a bounded leaders archive. Each iteration every
/// particle draws a leader from the archive, applies the velocity and
/// position rules, a swarm fraction is boundary-mutated, everything is
/// re-evaluated, and personal bests plus the archive absorb the results.
/// Leader draws see the archive as of the iteration start, and archive
/// updates run in ascending particle order, so results do not depend on
/// thread count.
///
/// Personal best replacement: new position dominates -> replace; dominated
/// or equal -> keep; mutually non-dominated -> replace with probability 0.5.
MopsoResult mopso_run(const SimIndex& index, const MopsoConfig& config,
                      SwarmMode mode);

}  // namespace trilat
