#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freight/types.hpp"

namespace freight {

struct Node {
  NodeId id = 0;
  NodeKind kind = NodeKind::RoadIntersection;
  std::string state;
  Region region = Region::Unassigned;
  std::optional<std::pair<double, double>> lon_lat;

  bool operator==(const Node&) const = default;
};

struct Link {
  LinkId id = 0;
  NodeId tail = 0;
  NodeId head = 0;
  LinkKind kind = LinkKind::Road;
  AccessMask mode_access = 0;  // Connector links only
  double length_miles = 0.0;
  double free_flow_time_hr = 0.0;
  double cap_lo = 0.0;  // vehicles/day
  double cap_hi = 0.0;
  std::optional<LinkId> reverse_link;  // mandatory for Rail and Terminal
  RiskMask risk_tags = 0;
  std::string state;

  bool operator==(const Link&) const = default;
};

struct NetworkCounts {
  std::array<std::size_t, 3> nodes_by_kind{};  // indexed by NodeKind
  std::array<std::size_t, 4> links_by_kind{};  // indexed by LinkKind
  std::size_t nodes = 0;
  std::size_t links = 0;
  std::size_t terminal_links = 0;
};

/// Validated intermodal graph. Immutable once built, so one instance can be
/// shared by concurrent solves.
///
/// Construction checks:
///  - node and link ids are unique and dense from 0;
///  - link endpoints exist, cap_lo <= cap_hi, both positive, fftime > 0;
///  - Rail links carry a mutual reverse Rail link with swapped endpoints;
///  - Terminal links join a road-side node (centroid or road intersection)
///    to a rail junction. A terminal without reverse_id gets a reverse twin
///    appended after the last input link, so terminals are bidirectional;
///  - Connector links touch exactly one centroid and declare mode_access
///    consistent with the other endpoint (truck -> road side, rail -> rail).
class Network {
 public:
  Network() = default;

  /// Validates and indexes the parts. Input order does not matter; the
  /// stored vectors are sorted by id.
  static Network build(std::vector<Node> nodes, std::vector<Link> links);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }
  const Node& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
  const Link& link(LinkId id) const { return links_[static_cast<std::size_t>(id)]; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t link_count() const { return links_.size(); }

  std::span<const LinkId> out_links(NodeId id) const;
  std::span<const LinkId> in_links(NodeId id) const;
  const std::vector<LinkId>& terminals() const { return terminals_; }

  /// Reverse twin of a Rail or Terminal link.
  LinkId reverse(LinkId id) const;

  /// Region used for link-level aggregation: that of the tail node.
  Region link_region(LinkId id) const { return node(link(id).tail).region; }

  NetworkCounts counts() const;

  bool operator==(const Network& other) const { return nodes_ == other.nodes_ && links_ == other.links_; }

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<std::size_t> out_offsets_;
  std::vector<LinkId> out_index_;
  std::vector<std::size_t> in_offsets_;
  std::vector<LinkId> in_index_;
  std::vector<LinkId> terminals_;
};

/// Reads the node and link CSV files (see README for the columns).
Network load_network(const std::filesystem::path& node_file, const std::filesystem::path& link_file);

/// Writes both CSV files such that load_network reproduces the network.
void write_network(const Network& net, const std::filesystem::path& node_file,
                   const std::filesystem::path& link_file);

/// True for road-side nodes (centroids and road intersections).
constexpr bool is_road_side(NodeKind kind) { return kind != NodeKind::RailJunction; }

/// Link admissibility per shipment class:
///   Truck      -> Road links and truck-access connectors
///   Rail       -> Rail links and rail-access connectors
///   Intermodal -> every link (ordering is enforced by the path search)
bool admits(Mode mode, const Link& link);

/// Per-link admissibility mask of a mode's subnetwork.
std::vector<bool> mode_subnetwork(const Network& net, Mode mode);

}  // namespace freight
