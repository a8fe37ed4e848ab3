#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <queue>
#include <set>

#include "freight/error.hpp"
#include "freight/network.hpp"
#include "synthetic.hpp"

namespace freight {
namespace {

namespace fs = std::filesystem;

Node node(NodeId id, NodeKind kind, Region region = Region::Unassigned) {
  Node n;
  n.id = id;
  n.kind = kind;
  n.region = region;
  return n;
}

Link link(LinkId id, NodeId t, NodeId h, LinkKind kind, AccessMask access = 0, std::optional<LinkId> rev = {}) {
  Link l;
  l.id = id;
  l.tail = t;
  l.head = h;
  l.kind = kind;
  l.mode_access = access;
  l.length_miles = 10.0;
  l.free_flow_time_hr = 0.2;
  l.cap_lo = 50.0;
  l.cap_hi = 80.0;
  l.reverse_link = rev;
  return l;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

// Centroids 0, 1; road 2, 3; rail 4, 5.
std::pair<std::vector<Node>, std::vector<Link>> six_node_parts() {
  std::vector<Node> nodes{node(0, NodeKind::Centroid),         node(1, NodeKind::Centroid),
                          node(2, NodeKind::RoadIntersection), node(3, NodeKind::RoadIntersection),
                          node(4, NodeKind::RailJunction),     node(5, NodeKind::RailJunction)};
  std::vector<Link> links{link(0, 0, 2, LinkKind::Connector, kTruckAccess),
                          link(1, 2, 3, LinkKind::Road),
                          link(2, 3, 1, LinkKind::Connector, kTruckAccess),
                          link(3, 4, 5, LinkKind::Rail, 0, 4),
                          link(4, 5, 4, LinkKind::Rail, 0, 3),
                          link(5, 0, 4, LinkKind::Connector, kRailAccess),
                          link(6, 5, 1, LinkKind::Connector, kRailAccess),
                          link(7, 2, 4, LinkKind::Terminal),
                          link(8, 5, 3, LinkKind::Terminal)};
  return {nodes, links};
}

bool connected(const Network& net, const std::vector<bool>& admitted, NodeId from, NodeId to) {
  std::vector<bool> seen(net.node_count(), false);
  std::queue<NodeId> q;
  q.push(from);
  seen[static_cast<std::size_t>(from)] = true;
  while (!q.empty()) {
    const auto u = q.front();
    q.pop();
    if (u == to) return true;
    for (const auto id : net.out_links(u)) {
      if (!admitted[static_cast<std::size_t>(id)]) continue;
      const auto v = net.link(id).head;
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        q.push(v);
      }
    }
  }
  return false;
}

std::set<LinkId> admitted_set(const Network& net, Mode mode) {
  const auto sub = mode_subnetwork(net, mode);
  std::set<LinkId> out;
  for (std::size_t i = 0; i < sub.size(); ++i)
    if (sub[i]) out.insert(static_cast<LinkId>(i));
  return out;
}

TEST(Network, TwoNodesOneRoadLink) {
  const auto net = Network::build({node(0, NodeKind::Centroid), node(1, NodeKind::RoadIntersection)},
                                  {link(0, 0, 1, LinkKind::Road)});
  EXPECT_EQ(net.node_count(), 2U);
  EXPECT_EQ(net.link_count(), 1U);
  EXPECT_EQ(net.out_links(0).size(), 1U);
  EXPECT_EQ(net.in_links(1).size(), 1U);
}

TEST(Network, RailReversePointingAtRoadIsRejected) {
  std::vector<Node> nodes{node(0, NodeKind::RailJunction), node(1, NodeKind::RailJunction),
                          node(2, NodeKind::RoadIntersection), node(3, NodeKind::RoadIntersection)};
  std::vector<Link> links{link(0, 0, 1, LinkKind::Rail, 0, 1), link(1, 2, 3, LinkKind::Road)};
  EXPECT_EQ(code_of([&] { Network::build(nodes, links); }), ErrorCode::MissingReverseRail);
  links[0].reverse_link.reset();
  EXPECT_EQ(code_of([&] { Network::build(nodes, links); }), ErrorCode::MissingReverseRail);
}

TEST(Network, ErrorMessageNamesTheLink) {
  std::vector<Node> nodes{node(0, NodeKind::RailJunction), node(1, NodeKind::RailJunction)};
  std::vector<Link> links{link(0, 0, 1, LinkKind::Rail)};
  try {
    Network::build(nodes, links);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("MissingReverseRail link=0"), std::string::npos) << e.what();
  }
}

TEST(Network, StructuralErrors) {
  const auto two = std::vector<Node>{node(0, NodeKind::Centroid), node(1, NodeKind::RoadIntersection)};
  EXPECT_EQ(code_of([&] { Network::build({node(0, NodeKind::Centroid), node(0, NodeKind::Centroid)}, {}); }),
            ErrorCode::DuplicateId);
  EXPECT_EQ(code_of([&] { Network::build({node(0, NodeKind::Centroid), node(2, NodeKind::Centroid)}, {}); }),
            ErrorCode::NonDenseId);
  EXPECT_EQ(code_of([&] { Network::build(two, {link(0, 0, 7, LinkKind::Road)}); }), ErrorCode::DanglingEndpoint);
  auto bad_cap = link(0, 0, 1, LinkKind::Road);
  bad_cap.cap_lo = 0.0;
  EXPECT_EQ(code_of([&] { Network::build(two, {bad_cap}); }), ErrorCode::NonPositiveCapacity);
  auto inverted = link(0, 0, 1, LinkKind::Road);
  inverted.cap_lo = 90.0;
  EXPECT_EQ(code_of([&] { Network::build(two, {inverted}); }), ErrorCode::InvalidAttribute);
  auto slow = link(0, 0, 1, LinkKind::Road);
  slow.free_flow_time_hr = 0.0;
  EXPECT_EQ(code_of([&] { Network::build(two, {slow}); }), ErrorCode::InvalidAttribute);
  const auto road_rail = std::vector<Node>{node(0, NodeKind::RoadIntersection), node(1, NodeKind::RoadIntersection)};
  EXPECT_EQ(code_of([&] { Network::build(road_rail, {link(0, 0, 1, LinkKind::Terminal)}); }),
            ErrorCode::TerminalEndpointsSameSide);
}

TEST(Network, SixNodeToyConnectsCentroidsInEveryMode) {
  auto [nodes, links] = six_node_parts();
  const auto net = Network::build(nodes, links);
  // Two unpaired terminals gain reverse twins.
  EXPECT_EQ(net.link_count(), links.size() + 2);
  EXPECT_EQ(net.terminals().size(), 4U);
  for (const auto mode : {Mode::Truck, Mode::Rail, Mode::Intermodal}) {
    EXPECT_TRUE(connected(net, mode_subnetwork(net, mode), 0, 1)) << to_string(mode);
  }
}

TEST(Network, ModeSubnetworkPredicates) {
  auto [nodes, links] = six_node_parts();
  const auto net = Network::build(nodes, links);
  std::set<LinkId> road_and_truck, rail_and_rail_conn, all;
  for (const auto& l : net.links()) {
    all.insert(l.id);
    if (l.kind == LinkKind::Road || (l.kind == LinkKind::Connector && l.mode_access == kTruckAccess))
      road_and_truck.insert(l.id);
    if (l.kind == LinkKind::Rail || (l.kind == LinkKind::Connector && l.mode_access == kRailAccess))
      rail_and_rail_conn.insert(l.id);
  }
  EXPECT_EQ(admitted_set(net, Mode::Truck), road_and_truck);
  EXPECT_EQ(admitted_set(net, Mode::Intermodal), all);
  const auto rail = admitted_set(net, Mode::Rail);
  EXPECT_EQ(rail, rail_and_rail_conn);
  for (const auto t : net.terminals()) EXPECT_EQ(rail.count(t), 0U);
}

TEST(Network, ReverseIsAnInvolution) {
  testing::SyntheticSpec spec;
  spec.seed = 7;
  const auto net = testing::make_synthetic(spec).net;
  for (const auto& l : net.links()) {
    if (l.kind != LinkKind::Rail && l.kind != LinkKind::Terminal) continue;
    const auto r = net.reverse(l.id);
    EXPECT_NE(r, l.id);
    EXPECT_EQ(net.reverse(r), l.id);
    EXPECT_EQ(net.link(r).tail, l.head);
    EXPECT_EQ(net.link(r).head, l.tail);
  }
}

TEST(Network, RoundTripThroughCsv) {
  testing::SyntheticSpec spec;
  spec.seed = 3;
  const auto net = testing::make_synthetic(spec).net;
  const auto dir = fs::temp_directory_path() / "freight_network_roundtrip";
  fs::create_directories(dir);
  write_network(net, dir / "nodes.csv", dir / "links.csv");
  const auto back = load_network(dir / "nodes.csv", dir / "links.csv");
  ASSERT_EQ(back.node_count(), net.node_count());
  ASSERT_EQ(back.link_count(), net.link_count());
  for (std::size_t i = 0; i < net.node_count(); ++i) EXPECT_EQ(back.nodes()[i], net.nodes()[i]) << "node " << i;
  for (std::size_t i = 0; i < net.link_count(); ++i) EXPECT_EQ(back.links()[i], net.links()[i]) << "link " << i;
  EXPECT_TRUE(back == net);
  fs::remove_all(dir);
}

TEST(Network, CountsMatchIndependentTallyOfTheNodeFile) {
  testing::SyntheticSpec spec;
  spec.seed = 11;
  const auto net = testing::make_synthetic(spec).net;
  const auto dir = fs::temp_directory_path() / "freight_network_counts";
  fs::create_directories(dir);
  write_network(net, dir / "nodes.csv", dir / "links.csv");
  std::ifstream in(dir / "nodes.csv");
  std::string line;
  std::getline(in, line);
  std::map<std::string, std::size_t> tally;
  while (std::getline(in, line)) {
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    ++tally[line.substr(first + 1, second - first - 1)];
  }
  const auto c = load_network(dir / "nodes.csv", dir / "links.csv").counts();
  EXPECT_EQ(c.nodes_by_kind[static_cast<std::size_t>(NodeKind::Centroid)], tally[std::string(to_string(NodeKind::Centroid))]);
  EXPECT_EQ(c.nodes_by_kind[static_cast<std::size_t>(NodeKind::RoadIntersection)],
            tally[std::string(to_string(NodeKind::RoadIntersection))]);
  EXPECT_EQ(c.nodes_by_kind[static_cast<std::size_t>(NodeKind::RailJunction)],
            tally[std::string(to_string(NodeKind::RailJunction))]);
  EXPECT_EQ(c.nodes_by_kind[0] + c.nodes_by_kind[1] + c.nodes_by_kind[2], c.nodes);
  fs::remove_all(dir);
}

TEST(Network, NationalScaleCounts) {
  // 61 + 200 + 40 = 301 nodes; 400 + 80 + 2*384 + 2*20 + 4*61 = 1532 links.
  testing::SyntheticSpec spec;
  spec.centroids = 61;
  spec.road_nodes = 200;
  spec.rail_nodes = 40;
  spec.chords = 384;
  spec.terminals = 20;
  ASSERT_EQ(testing::synthetic_link_count(spec), 1532);
  const auto c = testing::make_synthetic(spec).net.counts();
  EXPECT_EQ(c.nodes, 301U);
  EXPECT_EQ(c.links, 1532U);
}

TEST(Network, LinkRegionIsTailRegion) {
  const auto net = Network::build({node(0, NodeKind::Centroid, Region::South), node(1, NodeKind::RoadIntersection, Region::West)},
                                  {link(0, 0, 1, LinkKind::Road), link(1, 1, 0, LinkKind::Road)});
  EXPECT_EQ(net.link_region(0), Region::South);
  EXPECT_EQ(net.link_region(1), Region::West);
}

TEST(Network, MalformedCsvIsAParseError) {
  const auto dir = fs::temp_directory_path() / "freight_network_bad";
  fs::create_directories(dir);
  std::ofstream(dir / "nodes.csv") << "id,kind,state,region,lon,lat\n0,Centroid,TX,South,,\n1,Spaceport,TX,South,,\n";
  std::ofstream(dir / "links.csv") << "id,tail,head,kind,mode_access,length_miles,fftime_hr,cap_lo,cap_hi,reverse_id,risk_tags,state\n";
  EXPECT_EQ(code_of([&] { load_network(dir / "nodes.csv", dir / "links.csv"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { load_network(dir / "missing.csv", dir / "links.csv"); }), ErrorCode::Io);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace freight
