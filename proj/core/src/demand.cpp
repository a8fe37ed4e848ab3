#include "freight/demand.hpp"

#include <cmath>
#include <sstream>

#include "csv.hpp"
#include "freight/error.hpp"
#include "freight/shortest_path.hpp"

namespace freight {

void UnitFactors::validate() const {
  if (!(im_truck_equiv > 0.0) || !(im_rail_equiv > 0.0) || !std::isfinite(im_truck_equiv) ||
      !std::isfinite(im_rail_equiv)) {
    throw Error(ErrorCode::InvalidArgument, "intermodal unit factors must be positive");
  }
}

DemandTable DemandTable::build(const Network& net, const std::vector<std::pair<OdKey, double>>& rows) {
  DemandTable table;
  const auto is_centroid = [&](NodeId id) {
    return id >= 0 && static_cast<std::size_t>(id) < net.node_count() && net.node(id).kind == NodeKind::Centroid;
  };
  for (const auto& [key, units] : rows) {
    const std::string tag = "origin=" + std::to_string(key.origin) + " destination=" + std::to_string(key.destination) +
                            " mode=" + std::string(to_string(key.mode));
    if (!is_centroid(key.origin)) {
      throw Error(ErrorCode::UnknownCentroid, "node=" + std::to_string(key.origin) + " (" + tag + ")");
    }
    if (!is_centroid(key.destination)) {
      throw Error(ErrorCode::UnknownCentroid, "node=" + std::to_string(key.destination) + " (" + tag + ")");
    }
    if (key.origin == key.destination) throw Error(ErrorCode::SelfLoopDemand, tag);
    if (!(units >= 0.0) || !std::isfinite(units)) {
      throw Error(ErrorCode::NegativeDemand, tag + " units=" + detail::format_double(units));
    }
    if (units == 0.0) continue;
    if (!table.entries_.emplace(key, units).second) throw Error(ErrorCode::DuplicateId, "demand row " + tag);
  }
  for (const auto& [key, units] : table.entries_) table.totals_[static_cast<std::size_t>(index_of(key.mode))] += units;
  return table;
}

DemandTable load_demand(const std::filesystem::path& file, const Network& net) {
  const auto csv = detail::CsvTable::read(file, {"origin", "destination", "mode", "units_per_day"});
  std::vector<std::pair<OdKey, double>> rows;
  rows.reserve(csv.rows());
  for (std::size_t r = 0; r < csv.rows(); ++r) {
    const auto where = csv.where(r);
    OdKey key;
    key.origin = static_cast<NodeId>(detail::parse_int(csv.field(r, "origin"), where + " origin"));
    key.destination = static_cast<NodeId>(detail::parse_int(csv.field(r, "destination"), where + " destination"));
    key.mode = parse_mode(csv.field(r, "mode"));
    rows.emplace_back(key, detail::parse_double(csv.field(r, "units_per_day"), where + " units_per_day"));
  }
  return DemandTable::build(net, rows);
}

void write_demand(const DemandTable& demand, const std::filesystem::path& file) {
  std::ostringstream out;
  out << "origin,destination,mode,units_per_day\n";
  for (const auto& [key, units] : demand.entries()) {
    out << key.origin << ',' << key.destination << ',' << to_string(key.mode) << ',' << detail::format_double(units)
        << '\n';
  }
  detail::write_file(file, out.str());
}

Denominators Denominators::effective() const {
  return {road > 0.0 ? road : 1.0, rail > 0.0 ? rail : 1.0};
}

Denominators normalization_denominators(const DemandTable& demand, const UnitFactors& factors) {
  const double truck = demand.total(Mode::Truck);
  const double rail = demand.total(Mode::Rail);
  const double im = demand.total(Mode::Intermodal);
  return {truck + factors.im_truck_equiv * im, rail + factors.im_rail_equiv * im};
}

void check_connectivity(const Network& net, const DemandTable& demand) {
  const auto has_connector = [&](NodeId centroid, AccessMask access, bool outgoing) {
    const auto links = outgoing ? net.out_links(centroid) : net.in_links(centroid);
    for (const auto id : links) {
      const auto& l = net.link(id);
      if (l.kind == LinkKind::Connector && (l.mode_access & access)) return true;
      // A terminal or road link attached straight to the centroid also gives access.
      if (access == kTruckAccess && (l.kind == LinkKind::Road || l.kind == LinkKind::Terminal)) return true;
    }
    return false;
  };

  for (const auto& [key, units] : demand.entries()) {
    const AccessMask access = key.mode == Mode::Rail ? kRailAccess : kTruckAccess;
    const char* which = access == kRailAccess ? "rail" : "truck";
    if (!has_connector(key.origin, access, true)) {
      throw Error(ErrorCode::MissingConnector, "node=" + std::to_string(key.origin) + ": no outgoing " + which +
                                                   "-access connector for " + std::string(to_string(key.mode)) +
                                                   " demand");
    }
    if (!has_connector(key.destination, access, false)) {
      throw Error(ErrorCode::MissingConnector, "node=" + std::to_string(key.destination) + ": no incoming " + which +
                                                   "-access connector for " + std::string(to_string(key.mode)) +
                                                   " demand");
    }
  }

  // Unit link costs are enough to decide reachability.
  const std::vector<double> unit(net.link_count(), 1.0);
  std::array<PathFinder, kModeCount> finders{PathFinder(net), PathFinder(net), PathFinder(net)};
  std::array<NodeId, kModeCount> built{-1, -1, -1};
  for (const auto& [key, units] : demand.entries()) {
    (void)units;
    auto& finder = finders[static_cast<std::size_t>(index_of(key.mode))];
    auto& origin = built[static_cast<std::size_t>(index_of(key.mode))];
    if (origin != key.origin) {
      finder.build_tree(unit, key.mode, key.origin);
      origin = key.origin;
    }
    if (!finder.reachable(key.destination)) {
      throw Error(ErrorCode::Unreachable, "origin=" + std::to_string(key.origin) +
                                              " destination=" + std::to_string(key.destination) +
                                              " mode=" + std::string(to_string(key.mode)));
    }
  }
}

}  // namespace freight
