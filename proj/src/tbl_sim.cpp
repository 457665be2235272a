#include "trilat/tbl_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace trilat {

RangeAssignment RangeAssignment::from_levels(const std::vector<PowerLevel>& levels,
                                             const RadioParams& params) {
  RangeAssignment a;
  a.range_m.reserve(levels.size());
  a.power_mw.reserve(levels.size());
  for (PowerLevel level : levels) {
    a.range_m.push_back(level_range_m(level, params));
    a.power_mw.push_back(level_mw(level));
  }
  return a;
}

RangeAssignment RangeAssignment::from_ranges(std::vector<double> ranges,
                                             const RadioParams& params) {
  RangeAssignment a;
  a.power_mw.reserve(ranges.size());
  for (double r : ranges) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("transmit range must be positive and finite");
    }
    a.power_mw.push_back(mw_from_range(r, params));
  }
  a.range_m = std::move(ranges);
  return a;
}

RangeAssignment RangeAssignment::uniform(std::size_t n, double range_m,
                                         const RadioParams& params) {
  return from_ranges(std::vector<double>(n, range_m), params);
}

SimIndex::SimIndex(const Topology& topo) {
  node_count_ = topo.size();
  is_anchor_.resize(node_count_, 0);
  for (std::size_t i = 0; i < node_count_; ++i) {
    if (topo.nodes[i].kind == NodeKind::Anchor) {
      is_anchor_[i] = 1;
      ++anchor_count_;
    }
  }
  if (node_count_ < 2) return;
  const std::size_t row = node_count_ - 1;
  neighbor_ids_.resize(node_count_ * row);
  neighbor_dist_.resize(node_count_ * row);
  std::vector<std::pair<double, std::uint32_t>> scratch(row);
  for (std::size_t i = 0; i < node_count_; ++i) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < node_count_; ++j) {
      if (j == i) continue;
      scratch[k++] = {node_distance(topo.nodes[i], topo.nodes[j]),
                      static_cast<std::uint32_t>(j)};
    }
    std::sort(scratch.begin(), scratch.end());
    for (std::size_t m = 0; m < row; ++m) {
      neighbor_dist_[i * row + m] = scratch[m].first;
      neighbor_ids_[i * row + m] = scratch[m].second;
    }
  }
}

std::size_t SimIndex::reachable_count(std::size_t node, double range) const {
  if (node_count_ < 2) return 0;
  const std::size_t row = node_count_ - 1;
  const double* first = neighbor_dist_.data() + node * row;
  return static_cast<std::size_t>(std::upper_bound(first, first + row, range) -
                                  first);
}

SimResult simulate(const SimIndex& index, const RangeAssignment& assignment,
                   const SimParams& params, std::vector<StepTrace>* trace) {
  const std::size_t n = index.size();
  if (assignment.range_m.size() != n || assignment.power_mw.size() != n) {
    throw std::invalid_argument("assignment size does not match topology");
  }

  std::vector<std::uint8_t> localized(n, 0);
  std::vector<std::uint32_t> heard(n, 0);
  std::vector<std::uint32_t> pending;
  pending.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (index.is_anchor(i)) {
      localized[i] = 1;
      pending.push_back(static_cast<std::uint32_t>(i));
    }
  }

  SimResult result;
  std::vector<std::uint32_t> newly;
  newly.reserve(n);
  while (!pending.empty()) {
    ++result.time_steps;
    // localized[] is only written after the broadcast loop, so reads during
    // it reflect round-start status.
    for (std::uint32_t b : pending) {
      ++result.messages;
      result.power_mw += assignment.power_mw[b];
      const std::size_t cnt = index.reachable_count(b, assignment.range_m[b]);
      const std::uint32_t* nb = index.neighbors(b);
      for (std::size_t k = 0; k < cnt; ++k) {
        const std::uint32_t j = nb[k];
        if (!localized[j]) ++heard[j];
      }
    }
    newly.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (!localized[j] && heard[j] >= params.required_references) {
        newly.push_back(static_cast<std::uint32_t>(j));
      }
    }
    if (trace) {
      trace->push_back({result.time_steps, pending, newly});
    }
    for (std::uint32_t j : newly) localized[j] = 1;
    result.localized_blind += newly.size();
    pending.swap(newly);
  }

  result.node_steps = result.time_steps * n;
  result.participants = result.messages;
  result.localized_ids.reserve(index.anchor_count() + result.localized_blind);
  for (std::size_t i = 0; i < n; ++i) {
    if (localized[i]) result.localized_ids.push_back(static_cast<std::uint32_t>(i));
  }
  return result;
}

}  // namespace trilat
