#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace freight {

// Dense, zero-based identifiers. A NodeId/LinkId is also the index of the
// element in Network::nodes()/links() and of any per-link vector.
using NodeId = std::int32_t;
using LinkId = std::int32_t;

enum class NodeKind : std::uint8_t { Centroid, RoadIntersection, RailJunction };

enum class Region : std::uint8_t { Midwest, Northeast, South, West, Unassigned };
inline constexpr int kRegionCount = 5;

enum class LinkKind : std::uint8_t { Road, Rail, Terminal, Connector };

/// Shipment class. Also the index into per-mode arrays.
enum class Mode : std::uint8_t { Truck = 0, Rail = 1, Intermodal = 2 };
inline constexpr int kModeCount = 3;

/// Connector access bits.
using AccessMask = std::uint8_t;
inline constexpr AccessMask kTruckAccess = 1U << 0;
inline constexpr AccessMask kRailAccess = 1U << 1;

enum class RiskTag : std::uint8_t {
  EarthquakeHigh = 0,
  EarthquakeModerate = 1,
  Hurricane = 2,
  Tornado = 3,
  Flood = 4,
};
inline constexpr int kRiskTagCount = 5;

using RiskMask = std::uint8_t;
constexpr RiskMask risk_bit(RiskTag tag) { return static_cast<RiskMask>(1U << static_cast<unsigned>(tag)); }

// Canonical text tokens used by the CSV and config formats. Parsing is
// case-insensitive and throws Error(Parse) on unknown tokens.
std::string_view to_string(NodeKind kind);
std::string_view to_string(Region region);
std::string_view to_string(LinkKind kind);
std::string_view to_string(Mode mode);
std::string_view to_string(RiskTag tag);

NodeKind parse_node_kind(std::string_view text);
Region parse_region(std::string_view text);
LinkKind parse_link_kind(std::string_view text);
Mode parse_mode(std::string_view text);
RiskTag parse_risk_tag(std::string_view text);

/// "truck|rail" style lists; empty text yields an empty mask.
AccessMask parse_access(std::string_view text);
std::string format_access(AccessMask mask);
RiskMask parse_risk_tags(std::string_view text);
std::string format_risk_tags(RiskMask mask);

constexpr int index_of(Mode mode) { return static_cast<int>(mode); }
constexpr int index_of(Region region) { return static_cast<int>(region); }

}  // namespace freight
