#pragma once

#include "freight/network.hpp"

namespace freight {

/// Flow state of one link under one scenario.
struct LinkState {
  double flow = 0.0;           // own-direction flow, vehicles/day
  double opposing_flow = 0.0;  // reverse-direction flow (rail only)
  double capacity = 1.0;       // scenario capacity, > 0
};

// Road: BPR, t0 * (1 + 0.15 (x/C)^4).
inline constexpr double kBprAlpha = 0.15;

double road_time(double fftime, const LinkState& s);

/// Shared-track rail delay, t0 * (1 + ((x + x')/C)^4).
double rail_time(double fftime, const LinkState& s);

/// Dispatch by link kind. Terminal and connector links cost their
/// free-flow time regardless of flow.
double link_time(const Link& link, const LinkState& s);

/// Partial derivative of link_time with respect to the link's own flow.
double link_time_derivative(const Link& link, const LinkState& s);

/// Closed-form integral of link_time from 0 to the link's flow (rail: from
/// 0 to flow + opposing_flow).
double beckmann_term(const Link& link, const LinkState& s);

}  // namespace freight
