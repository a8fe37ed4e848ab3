#include "freight/network.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "csv.hpp"
#include "freight/error.hpp"

namespace freight {
namespace {

std::string link_tag(LinkId id) { return "link=" + std::to_string(id); }
std::string node_tag(NodeId id) { return "node=" + std::to_string(id); }

template <typename T>
void check_dense_ids(const std::vector<T>& items, const char* what) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto id = items[i].id;
    if (i > 0 && items[i - 1].id == id) {
      throw Error(ErrorCode::DuplicateId, std::string(what) + "=" + std::to_string(id));
    }
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].id != static_cast<decltype(items[i].id)>(i)) {
      throw Error(ErrorCode::NonDenseId, std::string(what) + " ids must be 0.." + std::to_string(items.size() - 1) +
                                             ", found " + std::to_string(items[i].id));
    }
  }
}

void check_link_attributes(const Link& l, std::size_t node_count) {
  const auto valid_node = [&](NodeId n) { return n >= 0 && static_cast<std::size_t>(n) < node_count; };
  if (!valid_node(l.tail) || !valid_node(l.head)) {
    throw Error(ErrorCode::DanglingEndpoint, link_tag(l.id) + " tail=" + std::to_string(l.tail) +
                                                 " head=" + std::to_string(l.head));
  }
  if (l.tail == l.head) throw Error(ErrorCode::InvalidEndpointKind, link_tag(l.id) + ": self loop");
  if (!(l.cap_lo > 0.0) || !(l.cap_hi > 0.0) || !std::isfinite(l.cap_lo) || !std::isfinite(l.cap_hi)) {
    throw Error(ErrorCode::NonPositiveCapacity, link_tag(l.id) + " cap_lo=" + detail::format_double(l.cap_lo) +
                                                    " cap_hi=" + detail::format_double(l.cap_hi));
  }
  if (l.cap_lo > l.cap_hi) {
    throw Error(ErrorCode::InvalidAttribute, link_tag(l.id) + ": cap_lo > cap_hi");
  }
  if (!(l.free_flow_time_hr > 0.0) || !std::isfinite(l.free_flow_time_hr)) {
    throw Error(ErrorCode::InvalidAttribute, link_tag(l.id) + ": free-flow time must be positive");
  }
  if (!(l.length_miles >= 0.0) || !std::isfinite(l.length_miles)) {
    throw Error(ErrorCode::InvalidAttribute, link_tag(l.id) + ": length must be non-negative");
  }
  if (l.kind != LinkKind::Connector && l.mode_access != 0) {
    throw Error(ErrorCode::InvalidAttribute, link_tag(l.id) + ": mode_access is only valid on connectors");
  }
}

void check_endpoint_kinds(const Link& l, const std::vector<Node>& nodes) {
  const auto tail = nodes[static_cast<std::size_t>(l.tail)].kind;
  const auto head = nodes[static_cast<std::size_t>(l.head)].kind;
  switch (l.kind) {
    case LinkKind::Road:
      if (!is_road_side(tail) || !is_road_side(head)) {
        throw Error(ErrorCode::InvalidEndpointKind, link_tag(l.id) + ": road link touches a rail junction");
      }
      break;
    case LinkKind::Rail:
      if (tail != NodeKind::RailJunction || head != NodeKind::RailJunction) {
        throw Error(ErrorCode::InvalidEndpointKind, link_tag(l.id) + ": rail link must join rail junctions");
      }
      break;
    case LinkKind::Terminal:
      if (is_road_side(tail) == is_road_side(head)) {
        throw Error(ErrorCode::TerminalEndpointsSameSide,
                    link_tag(l.id) + ": terminal must join a road-side node and a rail junction");
      }
      break;
    case LinkKind::Connector: {
      const bool tail_centroid = tail == NodeKind::Centroid;
      const bool head_centroid = head == NodeKind::Centroid;
      if (tail_centroid == head_centroid) {
        throw Error(ErrorCode::InvalidEndpointKind, link_tag(l.id) + ": connector must touch exactly one centroid");
      }
      if (l.mode_access == 0) {
        throw Error(ErrorCode::InvalidAttribute, link_tag(l.id) + ": connector needs mode_access");
      }
      const auto other = tail_centroid ? head : tail;
      if ((l.mode_access & kTruckAccess) && other == NodeKind::RailJunction) {
        throw Error(ErrorCode::InvalidEndpointKind, link_tag(l.id) + ": truck connector attached to a rail junction");
      }
      if ((l.mode_access & kRailAccess) && other != NodeKind::RailJunction) {
        throw Error(ErrorCode::InvalidEndpointKind, link_tag(l.id) + ": rail connector must attach to a rail junction");
      }
      break;
    }
  }
}

void check_reverse(const Link& l, const std::vector<Link>& links) {
  const auto n = links.size();
  const auto resolve = [&](LinkId id) -> const Link* {
    return (id >= 0 && static_cast<std::size_t>(id) < n) ? &links[static_cast<std::size_t>(id)] : nullptr;
  };
  const auto is_twin = [&](const Link& r) {
    return r.kind == l.kind && r.tail == l.head && r.head == l.tail && r.reverse_link == l.id;
  };

  switch (l.kind) {
    case LinkKind::Rail: {
      if (!l.reverse_link) throw Error(ErrorCode::MissingReverseRail, link_tag(l.id) + ": no reverse_id");
      const Link* r = resolve(*l.reverse_link);
      if (r == nullptr) {
        throw Error(ErrorCode::MissingReverseRail,
                    link_tag(l.id) + ": reverse_id " + std::to_string(*l.reverse_link) + " does not exist");
      }
      if (!is_twin(*r)) {
        throw Error(ErrorCode::MissingReverseRail, link_tag(l.id) + ": reverse_id " + std::to_string(r->id) +
                                                       " is not a mutual rail link with swapped endpoints");
      }
      break;
    }
    case LinkKind::Terminal:
      if (l.reverse_link) {
        const Link* r = resolve(*l.reverse_link);
        if (r == nullptr || !is_twin(*r)) {
          throw Error(ErrorCode::InvalidReverse,
                      link_tag(l.id) + ": reverse_id must name a mutual terminal link with swapped endpoints");
        }
      }
      break;
    default:
      if (l.reverse_link) {
        throw Error(ErrorCode::InvalidReverse, link_tag(l.id) + ": reverse_id is only valid on rail/terminal links");
      }
  }
}

void build_adjacency(const std::vector<Link>& links, std::size_t node_count, bool outgoing,
                     std::vector<std::size_t>& offsets, std::vector<LinkId>& index) {
  offsets.assign(node_count + 1, 0);
  for (const auto& l : links) ++offsets[static_cast<std::size_t>(outgoing ? l.tail : l.head) + 1];
  for (std::size_t i = 0; i < node_count; ++i) offsets[i + 1] += offsets[i];
  index.assign(links.size(), 0);
  auto cursor = offsets;
  for (const auto& l : links) index[cursor[static_cast<std::size_t>(outgoing ? l.tail : l.head)]++] = l.id;
}

}  // namespace

Network Network::build(std::vector<Node> nodes, std::vector<Link> links) {
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
  std::sort(links.begin(), links.end(), [](const Link& a, const Link& b) { return a.id < b.id; });
  check_dense_ids(nodes, "node");
  check_dense_ids(links, "link");

  for (const auto& l : links) check_link_attributes(l, nodes.size());
  for (const auto& l : links) check_endpoint_kinds(l, nodes);
  for (const auto& l : links) check_reverse(l, links);

  // Materialize reverse twins for one-way terminal entries.
  const std::size_t input_count = links.size();
  for (std::size_t i = 0; i < input_count; ++i) {
    if (links[i].kind != LinkKind::Terminal || links[i].reverse_link) continue;
    Link twin = links[i];
    twin.id = static_cast<LinkId>(links.size());
    std::swap(twin.tail, twin.head);
    twin.reverse_link = links[i].id;
    links[i].reverse_link = twin.id;
    links.push_back(std::move(twin));
  }

  Network net;
  net.nodes_ = std::move(nodes);
  net.links_ = std::move(links);
  build_adjacency(net.links_, net.nodes_.size(), true, net.out_offsets_, net.out_index_);
  build_adjacency(net.links_, net.nodes_.size(), false, net.in_offsets_, net.in_index_);
  for (const auto& l : net.links_) {
    if (l.kind == LinkKind::Terminal) net.terminals_.push_back(l.id);
  }
  return net;
}

std::span<const LinkId> Network::out_links(NodeId id) const {
  const auto i = static_cast<std::size_t>(id);
  return {out_index_.data() + out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]};
}

std::span<const LinkId> Network::in_links(NodeId id) const {
  const auto i = static_cast<std::size_t>(id);
  return {in_index_.data() + in_offsets_[i], in_offsets_[i + 1] - in_offsets_[i]};
}

LinkId Network::reverse(LinkId id) const {
  const auto& l = link(id);
  if (!l.reverse_link) throw Error(ErrorCode::InvalidArgument, link_tag(id) + " has no reverse twin");
  return *l.reverse_link;
}

NetworkCounts Network::counts() const {
  NetworkCounts c;
  c.nodes = nodes_.size();
  c.links = links_.size();
  for (const auto& n : nodes_) ++c.nodes_by_kind[static_cast<std::size_t>(n.kind)];
  for (const auto& l : links_) ++c.links_by_kind[static_cast<std::size_t>(l.kind)];
  c.terminal_links = terminals_.size();
  return c;
}

bool admits(Mode mode, const Link& link) {
  switch (mode) {
    case Mode::Truck:
      return link.kind == LinkKind::Road || (link.kind == LinkKind::Connector && (link.mode_access & kTruckAccess));
    case Mode::Rail:
      return link.kind == LinkKind::Rail || (link.kind == LinkKind::Connector && (link.mode_access & kRailAccess));
    case Mode::Intermodal:
      return true;
  }
  return false;
}

std::vector<bool> mode_subnetwork(const Network& net, Mode mode) {
  std::vector<bool> mask(net.link_count());
  for (const auto& l : net.links()) mask[static_cast<std::size_t>(l.id)] = admits(mode, l);
  return mask;
}

Network load_network(const std::filesystem::path& node_file, const std::filesystem::path& link_file) {
  const auto node_csv = detail::CsvTable::read(node_file, {"id", "kind", "state", "region", "lon", "lat"});
  std::vector<Node> nodes;
  nodes.reserve(node_csv.rows());
  for (std::size_t r = 0; r < node_csv.rows(); ++r) {
    const auto where = node_csv.where(r);
    Node n;
    const auto id = detail::parse_int(node_csv.field(r, "id"), where + " id");
    if (id < 0) throw Error(ErrorCode::NonDenseId, where + ": negative " + node_tag(static_cast<NodeId>(id)));
    n.id = static_cast<NodeId>(id);
    n.kind = parse_node_kind(node_csv.field(r, "kind"));
    n.state = std::string(node_csv.field(r, "state"));
    n.region = parse_region(node_csv.field(r, "region"));
    const auto lon = node_csv.field(r, "lon");
    const auto lat = node_csv.field(r, "lat");
    if (!lon.empty() || !lat.empty()) {
      n.lon_lat = std::pair{detail::parse_double(lon, where + " lon"), detail::parse_double(lat, where + " lat")};
    }
    nodes.push_back(std::move(n));
  }

  const auto link_csv = detail::CsvTable::read(
      link_file, {"id", "tail", "head", "kind", "mode_access", "length_miles", "fftime_hr", "cap_lo", "cap_hi",
                  "reverse_id", "risk_tags", "state"});
  std::vector<Link> links;
  links.reserve(link_csv.rows());
  for (std::size_t r = 0; r < link_csv.rows(); ++r) {
    const auto where = link_csv.where(r);
    Link l;
    const auto id = detail::parse_int(link_csv.field(r, "id"), where + " id");
    if (id < 0) throw Error(ErrorCode::NonDenseId, where + ": negative " + link_tag(static_cast<LinkId>(id)));
    l.id = static_cast<LinkId>(id);
    l.tail = static_cast<NodeId>(detail::parse_int(link_csv.field(r, "tail"), where + " tail"));
    l.head = static_cast<NodeId>(detail::parse_int(link_csv.field(r, "head"), where + " head"));
    l.kind = parse_link_kind(link_csv.field(r, "kind"));
    l.mode_access = parse_access(link_csv.field(r, "mode_access"));
    l.length_miles = detail::parse_double(link_csv.field(r, "length_miles"), where + " length_miles");
    l.free_flow_time_hr = detail::parse_double(link_csv.field(r, "fftime_hr"), where + " fftime_hr");
    l.cap_lo = detail::parse_double(link_csv.field(r, "cap_lo"), where + " cap_lo");
    l.cap_hi = detail::parse_double(link_csv.field(r, "cap_hi"), where + " cap_hi");
    if (const auto rev = link_csv.field(r, "reverse_id"); !rev.empty()) {
      l.reverse_link = static_cast<LinkId>(detail::parse_int(rev, where + " reverse_id"));
    }
    l.risk_tags = parse_risk_tags(link_csv.field(r, "risk_tags"));
    l.state = std::string(link_csv.field(r, "state"));
    links.push_back(std::move(l));
  }
  return Network::build(std::move(nodes), std::move(links));
}

void write_network(const Network& net, const std::filesystem::path& node_file,
                   const std::filesystem::path& link_file) {
  std::ostringstream nodes;
  nodes << "id,kind,state,region,lon,lat\n";
  for (const auto& n : net.nodes()) {
    nodes << n.id << ',' << to_string(n.kind) << ',' << n.state << ','
          << (n.region == Region::Unassigned ? std::string_view{} : to_string(n.region)) << ',';
    if (n.lon_lat) nodes << detail::format_double(n.lon_lat->first) << ',' << detail::format_double(n.lon_lat->second);
    else nodes << ',';
    nodes << '\n';
  }
  detail::write_file(node_file, nodes.str());

  std::ostringstream links;
  links << "id,tail,head,kind,mode_access,length_miles,fftime_hr,cap_lo,cap_hi,reverse_id,risk_tags,state\n";
  for (const auto& l : net.links()) {
    links << l.id << ',' << l.tail << ',' << l.head << ',' << to_string(l.kind) << ',' << format_access(l.mode_access)
          << ',' << detail::format_double(l.length_miles) << ',' << detail::format_double(l.free_flow_time_hr) << ','
          << detail::format_double(l.cap_lo) << ',' << detail::format_double(l.cap_hi) << ',';
    if (l.reverse_link) links << *l.reverse_link;
    links << ',' << format_risk_tags(l.risk_tags) << ',' << l.state << '\n';
  }
  detail::write_file(link_file, links.str());
}

}  // namespace freight
