#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trilat/radio_model.hpp"
#include "trilat/topology.hpp"

namespace trilat {

/// Per-node transmit configuration: reach in meters plus the cost in
/// milliwatts of one transmission at that reach. Entries are ordered like
/// Topology::nodes. Discrete assignments carry the level's exact power;
/// continuous assignments derive power from the range via the link budget.
struct RangeAssignment {
  std::vector<double> range_m;
  std::vector<double> power_mw;

  static RangeAssignment from_levels(const std::vector<PowerLevel>& levels,
                                     const RadioParams& params = {});
  static RangeAssignment from_ranges(std::vector<double> ranges,
                                     const RadioParams& params = {});
  static RangeAssignment uniform(std::size_t n, double range_m,
                                 const RadioParams& params = {});
};

/// Precomputed geometry for one topology: per-node neighbor ids sorted by
/// distance ascending, so the set reachable at any range is a prefix.
class SimIndex {
 public:
  explicit SimIndex(const Topology& topo);

  std::size_t size() const { return node_count_; }
  std::size_t anchor_count() const { return anchor_count_; }

  /// How many nodes lie within `range` meters of `node` (dense index).
  std::size_t reachable_count(std::size_t node, double range) const;

  /// Neighbors of `node` sorted by distance ascending; the first
  /// reachable_count(node, r) of them are exactly those within r.
  const std::uint32_t* neighbors(std::size_t node) const {
    return neighbor_ids_.data() + node * (node_count_ - 1);
  }

  bool is_anchor(std::size_t node) const { return is_anchor_[node] != 0; }

 private:
  std::size_t node_count_ = 0;
  std::size_t anchor_count_ = 0;
  std::vector<std::uint8_t> is_anchor_;
  // Flattened (node_count x node_count-1) arrays.
  std::vector<std::uint32_t> neighbor_ids_;
  std::vector<double> neighbor_dist_;
};

struct SimParams {
  /// A blind node localizes once it has heard this many distinct localized
  /// transmitters.
  std::size_t required_references = 3;
};

struct SimResult {
  /// Rounds in which at least one node transmitted.
  std::size_t time_steps = 0;
  /// time_steps scaled by network size, a reporting aid.
  std::size_t node_steps = 0;
  /// Total transmissions over the whole run; equals participants because
  /// every localized node transmits exactly once.
  std::size_t messages = 0;
  /// Nodes that transmitted: anchors plus localized blind nodes.
  std::size_t participants = 0;
  /// Blind nodes that ended the run localized.
  std::size_t localized_blind = 0;
  /// Sum over transmissions of the transmitter's power in milliwatts.
  double power_mw = 0.0;
  /// Dense indices of every localized node (anchors included), ascending.
  std::vector<std::uint32_t> localized_ids;
};

struct StepTrace {
  std::size_t step = 0;
  std::vector<std::uint32_t> broadcasters;       // dense indices
  std::vector<std::uint32_t> newly_localized;    // dense indices
};

/// Runs the flooding localization protocol. Anchors begin localized and
/// broadcast in the first round; a blind node that has accumulated enough
/// distinct localized transmitters becomes localized at the end of a round
/// and broadcasts exactly once, in the following round. The run ends when a
/// round has no broadcasters.
///
/// Nodes already localized at round start ignore receptions; only nodes
/// still blind at round start accumulate them. Broadcast order within a
/// round is ascending node index so the power sum is reproducible bit for
/// bit.
SimResult simulate(const SimIndex& index, const RangeAssignment& assignment,
                   const SimParams& params = {},
                   std::vector<StepTrace>* trace = nullptr);

}  // namespace trilat
