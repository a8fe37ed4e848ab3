#pragma once

#include <cstdint>
#include <vector>

#include "freight/demand.hpp"
#include "freight/network.hpp"

namespace freight::testing {

struct Instance {
  Network net;
  DemandTable demand;
};

// Random road ring with chords, a rail ring, terminals joining them and
// centroids hanging off both. Every centroid has truck and rail access, so
// all three modes are routable between any centroid pair.
struct SyntheticSpec {
  int centroids = 3;
  int road_nodes = 8;
  int rail_nodes = 4;
  int chords = 2;     // extra two-way road links
  int terminals = 2;  // two-way terminal pairs, at distinct rail junctions
  double hurricane_share = 0.3;  // chance a road/rail link carries the hurricane tag
  double truck_demand = 40.0;    // per O-D, scaled by U[0.5, 1.5]
  double rail_demand = 4.0;
  double intermodal_demand = 6.0;
  std::uint64_t seed = 1;
};

Instance make_synthetic(const SyntheticSpec& spec);

// Number of links make_synthetic will produce.
int synthetic_link_count(const SyntheticSpec& spec);

// Two parallel road links 0->1 between two centroids.
Instance two_link_fixture(double t0_a, double t0_b, double cap_a, double cap_b, double demand);

// Centroids A=0, B=1 and road nodes n1=2, n2=3, n3=4 with links
// A-n1, n1-B, n1-n2, n2-B, A-n3, n3-B, giving paths
// {A-n1-B, A-n1-n2-B, A-n3-B}.
struct FiveNodeFixture {
  Instance inst;
  std::vector<double> t0;
  std::vector<double> cap;
  double demand = 0.0;
};
FiveNodeFixture five_node_fixture();

// Short three-link corridor O->D tagged hurricane next to an untagged
// detour, plus a light rail line so every link kind appears.
Instance risk_corridor_fixture();

}  // namespace freight::testing
