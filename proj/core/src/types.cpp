#include "freight/types.hpp"

#include <array>
#include <utility>

#include "csv.hpp"
#include "freight/error.hpp"

namespace freight {
namespace {

template <typename Enum, std::size_t N>
Enum lookup(const std::array<std::pair<std::string_view, Enum>, N>& table, std::string_view text,
            std::string_view what) {
  const auto key = detail::to_lower(detail::trim(text));
  for (const auto& [name, value] : table) {
    if (key == name) return value;
  }
  throw Error(ErrorCode::Parse, "unknown " + std::string(what) + " '" + std::string(text) + "'");
}

constexpr std::array<std::pair<std::string_view, NodeKind>, 6> kNodeKinds{{
    {"centroid", NodeKind::Centroid},
    {"road", NodeKind::RoadIntersection},
    {"rail", NodeKind::RailJunction},
    {"road_intersection", NodeKind::RoadIntersection},
    {"rail_junction", NodeKind::RailJunction},
    {"intersection", NodeKind::RoadIntersection},
}};

constexpr std::array<std::pair<std::string_view, Region>, 6> kRegions{{
    {"midwest", Region::Midwest},
    {"northeast", Region::Northeast},
    {"south", Region::South},
    {"west", Region::West},
    {"unassigned", Region::Unassigned},
    {"", Region::Unassigned},
}};

constexpr std::array<std::pair<std::string_view, LinkKind>, 4> kLinkKinds{{
    {"road", LinkKind::Road},
    {"rail", LinkKind::Rail},
    {"terminal", LinkKind::Terminal},
    {"connector", LinkKind::Connector},
}};

constexpr std::array<std::pair<std::string_view, Mode>, 3> kModes{{
    {"truck", Mode::Truck},
    {"rail", Mode::Rail},
    {"intermodal", Mode::Intermodal},
}};

constexpr std::array<std::pair<std::string_view, RiskTag>, 5> kRiskTags{{
    {"earthquake_high", RiskTag::EarthquakeHigh},
    {"earthquake_moderate", RiskTag::EarthquakeModerate},
    {"hurricane", RiskTag::Hurricane},
    {"tornado", RiskTag::Tornado},
    {"flood", RiskTag::Flood},
}};

}  // namespace

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Centroid: return "centroid";
    case NodeKind::RoadIntersection: return "road";
    case NodeKind::RailJunction: return "rail";
  }
  return "?";
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::Midwest: return "midwest";
    case Region::Northeast: return "northeast";
    case Region::South: return "south";
    case Region::West: return "west";
    case Region::Unassigned: return "unassigned";
  }
  return "?";
}

std::string_view to_string(LinkKind kind) {
  switch (kind) {
    case LinkKind::Road: return "road";
    case LinkKind::Rail: return "rail";
    case LinkKind::Terminal: return "terminal";
    case LinkKind::Connector: return "connector";
  }
  return "?";
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Truck: return "truck";
    case Mode::Rail: return "rail";
    case Mode::Intermodal: return "intermodal";
  }
  return "?";
}

std::string_view to_string(RiskTag tag) {
  for (const auto& [name, value] : kRiskTags) {
    if (value == tag) return name;
  }
  return "?";
}

NodeKind parse_node_kind(std::string_view text) { return lookup(kNodeKinds, text, "node kind"); }
Region parse_region(std::string_view text) { return lookup(kRegions, text, "region"); }
LinkKind parse_link_kind(std::string_view text) { return lookup(kLinkKinds, text, "link kind"); }
Mode parse_mode(std::string_view text) { return lookup(kModes, text, "mode"); }
RiskTag parse_risk_tag(std::string_view text) { return lookup(kRiskTags, text, "risk tag"); }

AccessMask parse_access(std::string_view text) {
  AccessMask mask = 0;
  if (detail::trim(text).empty()) return mask;
  for (auto part : detail::split(text, '|')) {
    const auto mode = parse_mode(part);
    if (mode == Mode::Truck) {
      mask |= kTruckAccess;
    } else if (mode == Mode::Rail) {
      mask |= kRailAccess;
    } else {
      throw Error(ErrorCode::Parse, "mode_access accepts truck|rail, got '" + std::string(part) + "'");
    }
  }
  return mask;
}

std::string format_access(AccessMask mask) {
  std::string out;
  if (mask & kTruckAccess) out += "truck";
  if (mask & kRailAccess) out += out.empty() ? "rail" : "|rail";
  return out;
}

RiskMask parse_risk_tags(std::string_view text) {
  RiskMask mask = 0;
  if (detail::trim(text).empty()) return mask;
  for (auto part : detail::split(text, '|')) mask |= risk_bit(parse_risk_tag(part));
  return mask;
}

std::string format_risk_tags(RiskMask mask) {
  std::string out;
  for (const auto& [name, value] : kRiskTags) {
    if (mask & risk_bit(value)) {
      if (!out.empty()) out += '|';
      out += name;
    }
  }
  return out;
}

}  // namespace freight
