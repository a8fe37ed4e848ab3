#include "freight/link_performance.hpp"

namespace freight {
namespace {

inline double pow4(double v) {
  const double sq = v * v;
  return sq * sq;
}

}  // namespace

double road_time(double fftime, const LinkState& s) {
  return fftime * (1.0 + kBprAlpha * pow4(s.flow / s.capacity));
}

double rail_time(double fftime, const LinkState& s) {
  return fftime * (1.0 + pow4((s.flow + s.opposing_flow) / s.capacity));
}

double link_time(const Link& link, const LinkState& s) {
  switch (link.kind) {
    case LinkKind::Road: return road_time(link.free_flow_time_hr, s);
    case LinkKind::Rail: return rail_time(link.free_flow_time_hr, s);
    case LinkKind::Terminal:
    case LinkKind::Connector: return link.free_flow_time_hr;
  }
  return link.free_flow_time_hr;
}

double link_time_derivative(const Link& link, const LinkState& s) {
  const double c4 = pow4(s.capacity);
  switch (link.kind) {
    case LinkKind::Road: {
      const double x = s.flow;
      return link.free_flow_time_hr * 4.0 * kBprAlpha * x * x * x / c4;
    }
    case LinkKind::Rail: {
      const double x = s.flow + s.opposing_flow;
      return link.free_flow_time_hr * 4.0 * x * x * x / c4;
    }
    case LinkKind::Terminal:
    case LinkKind::Connector: return 0.0;
  }
  return 0.0;
}

double beckmann_term(const Link& link, const LinkState& s) {
  const double c4 = pow4(s.capacity);
  switch (link.kind) {
    case LinkKind::Road: {
      const double x = s.flow;
      return link.free_flow_time_hr * (x + kBprAlpha / 5.0 * pow4(x) * x / c4);
    }
    case LinkKind::Rail: {
      const double x = s.flow + s.opposing_flow;
      return link.free_flow_time_hr * (x + pow4(x) * x / (5.0 * c4));
    }
    case LinkKind::Terminal:
    case LinkKind::Connector: return link.free_flow_time_hr * s.flow;
  }
  return 0.0;
}

}  // namespace freight
