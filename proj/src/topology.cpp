#include "trilat/topology.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unordered_set>

#include "trilat/rng.hpp"

namespace trilat {

namespace {

constexpr const char* kHeaderTag = "trilat-topology";
constexpr const char* kVersion = "v1";

// Shortest round-trip formatting; avoids locale and precision surprises.
std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw TopologyError("number formatting failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view sv, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
  if (ec != std::errc() || ptr != sv.data() + sv.size()) {
    throw TopologyError("bad number '" + std::string(sv) + "'", line);
  }
  return v;
}

std::uint32_t parse_id(std::string_view sv, std::size_t line) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
  if (ec != std::errc() || ptr != sv.data() + sv.size()) {
    throw TopologyError("bad node id '" + std::string(sv) + "'", line);
  }
  return v;
}

std::string_view trim(std::string_view sv) {
  while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t' || sv.front() == '\r')) {
    sv.remove_prefix(1);
  }
  while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t' || sv.back() == '\r')) {
    sv.remove_suffix(1);
  }
  return sv;
}

std::vector<std::string_view> split(std::string_view sv, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= sv.size(); ++i) {
    if (i == sv.size() || sv[i] == sep) {
      out.push_back(sv.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

std::size_t Topology::anchor_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes) {
    if (node.kind == NodeKind::Anchor) ++n;
  }
  return n;
}

void Topology::validate() const {
  if (!(field_side > 0.0) || !std::isfinite(field_side)) {
    throw TopologyError("field side must be positive and finite");
  }
  std::unordered_set<std::uint32_t> seen;
  seen.reserve(nodes.size());
  for (const auto& node : nodes) {
    if (!seen.insert(node.id).second) {
      throw TopologyError("duplicate node id " + std::to_string(node.id));
    }
    if (!std::isfinite(node.x) || !std::isfinite(node.y) || node.x < 0.0 ||
        node.y < 0.0 || node.x > field_side || node.y > field_side) {
      throw TopologyError("node " + std::to_string(node.id) +
                          " lies outside the field");
    }
  }
}

std::string Topology::to_text() const {
  std::string out;
  out += kHeaderTag;
  out += ' ';
  out += kVersion;
  out += ' ';
  out += format_double(field_side);
  out += '\n';
  for (const auto& node : nodes) {
    out += std::to_string(node.id);
    out += ',';
    out += (node.kind == NodeKind::Anchor) ? 'A' : 'B';
    out += ',';
    out += format_double(node.x);
    out += ',';
    out += format_double(node.y);
    out += '\n';
  }
  return out;
}

void Topology::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw TopologyError("cannot open '" + path + "' for writing");
  f << to_text();
  if (!f) throw TopologyError("write to '" + path + "' failed");
}

Topology Topology::from_text(const std::string& text) {
  Topology topo;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    if (!header_seen) {
      auto parts = split(sv, ' ');
      // Collapse runs of spaces in the header.
      std::erase_if(parts, [](std::string_view p) { return p.empty(); });
      if (parts.size() != 3 || parts[0] != kHeaderTag) {
        throw TopologyError("expected header '" + std::string(kHeaderTag) +
                                " " + kVersion + " <field_side>'",
                            lineno);
      }
      if (parts[1] != kVersion) {
        throw TopologyError("unsupported version '" + std::string(parts[1]) + "'",
                            lineno);
      }
      topo.field_side = parse_double(parts[2], lineno);
      header_seen = true;
      continue;
    }
    auto parts = split(sv, ',');
    if (parts.size() != 4) {
      throw TopologyError("expected 'id,kind,x,y'", lineno);
    }
    Node node;
    node.id = parse_id(trim(parts[0]), lineno);
    std::string_view kind = trim(parts[1]);
    if (kind == "A") {
      node.kind = NodeKind::Anchor;
    } else if (kind == "B") {
      node.kind = NodeKind::Blind;
    } else {
      throw TopologyError("node kind must be 'A' or 'B', got '" +
                              std::string(kind) + "'",
                          lineno);
    }
    node.x = parse_double(trim(parts[2]), lineno);
    node.y = parse_double(trim(parts[3]), lineno);
    topo.nodes.push_back(node);
  }
  if (!header_seen) throw TopologyError("missing header line");
  std::sort(topo.nodes.begin(), topo.nodes.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });
  topo.validate();
  return topo;
}

Topology Topology::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw TopologyError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return from_text(ss.str());
}

Topology Topology::generate_random(std::size_t total, std::size_t anchors,
                                   double field_side, std::uint64_t seed) {
  if (anchors > total) {
    throw TopologyError("anchor count exceeds total node count");
  }
  if (!(field_side > 0.0)) {
    throw TopologyError("field side must be positive");
  }
  RngStream rng(derive_seed(seed, StreamPurpose::TopologyGen));
  Topology topo;
  topo.field_side = field_side;
  topo.nodes.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    Node node;
    node.id = static_cast<std::uint32_t>(i);
    node.kind = (i < anchors) ? NodeKind::Anchor : NodeKind::Blind;
    node.x = rng.uniform(0.0, field_side);
    node.y = rng.uniform(0.0, field_side);
    topo.nodes.push_back(node);
  }
  return topo;
}

double node_distance(const Node& a, const Node& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace trilat
