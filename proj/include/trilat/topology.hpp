#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trilat {

enum class NodeKind : std::uint8_t { Anchor, Blind };

struct Node {
  std::uint32_t id = 0;
  NodeKind kind = NodeKind::Blind;
  double x = 0.0;
  double y = 0.0;
};

/// Thrown on malformed topology files; carries a 1-based line number when
/// the failure is tied to a specific line (0 otherwise).
class TopologyError : public std::runtime_error {
 public:
  TopologyError(std::string msg, std::size_t line = 0)
      : std::runtime_error(std::move(msg)), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A deployment: nodes on a square field of side `field_side` meters.
/// Node ids are unique but need not be dense or ordered in the file;
/// internally nodes are kept sorted by id.
struct Topology {
  double field_side = 0.0;
  std::vector<Node> nodes;

  std::size_t size() const { return nodes.size(); }
  std::size_t anchor_count() const;
  std::size_t blind_count() const { return size() - anchor_count(); }

  /// Validates invariants: positive field side, unique ids, coordinates
  /// within [0, field_side]. Throws TopologyError on violation.
  void validate() const;

  /// Serializes to the on-disk text format. Exact round-trip: coordinates
  /// are written with shortest round-trip precision.
  std::string to_text() const;
  void save(const std::string& path) const;

  static Topology from_text(const std::string& text);
  static Topology load(const std::string& path);

  /// Uniform random deployment: `anchors` anchor nodes then blind nodes up
  /// to `total`, ids 0..total-1, coordinates uniform over the field.
  static Topology generate_random(std::size_t total, std::size_t anchors,
                                  double field_side, std::uint64_t seed);
};

double node_distance(const Node& a, const Node& b);

}  // namespace trilat
