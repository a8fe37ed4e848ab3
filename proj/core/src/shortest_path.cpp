#include "freight/shortest_path.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

#include "freight/error.hpp"

namespace freight {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool road_like(const Link& l) {
  return l.kind == LinkKind::Road || (l.kind == LinkKind::Connector && (l.mode_access & kTruckAccess));
}

/// Layer reached by traversing `l` from `layer` in the intermodal expansion,
/// or -1 when the move is not allowed.
int next_layer(const Network& net, const Link& l, int layer) {
  switch (layer) {
    case 0:
      if (road_like(l)) return 0;
      if (l.kind == LinkKind::Terminal && is_road_side(net.node(l.tail).kind)) return 1;
      return -1;
    case 1:
      return l.kind == LinkKind::Rail ? 2 : -1;
    case 2:
      if (l.kind == LinkKind::Rail) return 2;
      if (l.kind == LinkKind::Terminal && !is_road_side(net.node(l.tail).kind)) return 3;
      return -1;
    case 3:
      return road_like(l) ? 3 : -1;
    default:
      return -1;
  }
}

}  // namespace

double path_cost(const Path& path, std::span<const double> times) {
  double total = 0.0;
  for (const auto id : path.links) total += times[static_cast<std::size_t>(id)];
  return total;
}

std::size_t terminal_count(const Network& net, const Path& path) {
  return static_cast<std::size_t>(std::count_if(path.links.begin(), path.links.end(), [&](LinkId id) {
    return net.link(id).kind == LinkKind::Terminal;
  }));
}

bool is_well_formed(const Network& net, const Path& path, NodeId origin, NodeId destination) {
  if (path.links.empty()) return false;
  NodeId at = origin;
  int layer = 0;
  for (std::size_t i = 0; i < path.links.size(); ++i) {
    const auto id = path.links[i];
    if (id < 0 || static_cast<std::size_t>(id) >= net.link_count()) return false;
    const auto& l = net.link(id);
    if (l.tail != at) return false;
    if (i > 0 && net.node(at).kind == NodeKind::Centroid) return false;
    if (path.mode == Mode::Intermodal) {
      layer = next_layer(net, l, layer);
      if (layer < 0) return false;
    } else if (!admits(path.mode, l)) {
      return false;
    }
    at = l.head;
  }
  if (path.mode == Mode::Intermodal && layer != 3) return false;
  return at == destination;
}

PathFinder::PathFinder(const Network& net) : net_(&net) {}

std::size_t PathFinder::final_state(NodeId node) const {
  return static_cast<std::size_t>(node) * static_cast<std::size_t>(layers()) + static_cast<std::size_t>(layers() - 1);
}

void PathFinder::trace(std::size_t state, std::vector<LinkId>& out) const {
  out.clear();
  auto s = static_cast<std::int64_t>(state);
  while (pred_state_[static_cast<std::size_t>(s)] >= 0) {
    out.push_back(pred_link_[static_cast<std::size_t>(s)]);
    s = pred_state_[static_cast<std::size_t>(s)];
  }
  std::reverse(out.begin(), out.end());
}

bool PathFinder::lex_smaller(std::size_t from_state, LinkId via, std::size_t target) const {
  trace(from_state, scratch_a_);
  scratch_a_.push_back(via);
  trace(target, scratch_b_);
  return std::lexicographical_compare(scratch_a_.begin(), scratch_a_.end(), scratch_b_.begin(), scratch_b_.end());
}

void PathFinder::build_tree(std::span<const double> times, Mode mode, NodeId origin,
                            std::span<const LinkId> banned_entry_terminals) {
  const Network& net = *net_;
  if (times.size() != net.link_count()) {
    throw Error(ErrorCode::InvalidArgument, "link time vector has wrong length");
  }
  mode_ = mode;
  origin_ = origin;
  const auto L = static_cast<std::size_t>(layers());
  const std::size_t states = net.node_count() * L;
  dist_.assign(states, kInf);
  pred_link_.assign(states, -1);
  pred_state_.assign(states, -1);
  settled_.assign(states, 0);

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  const std::size_t source = static_cast<std::size_t>(origin) * L;
  dist_[source] = 0.0;
  heap.emplace(0.0, source);

  while (!heap.empty()) {
    const auto [d, s] = heap.top();
    heap.pop();
    if (settled_[s] || d > dist_[s]) continue;
    settled_[s] = 1;
    const auto node = static_cast<NodeId>(s / L);
    const int layer = static_cast<int>(s % L);
    if (net.node(node).kind == NodeKind::Centroid && s != source) continue;

    for (const auto id : net.out_links(node)) {
      const Link& l = net.link(id);
      int to_layer = 0;
      if (mode == Mode::Intermodal) {
        to_layer = next_layer(net, l, layer);
        if (to_layer < 0) continue;
        if (layer == 0 && to_layer == 1 &&
            std::find(banned_entry_terminals.begin(), banned_entry_terminals.end(), id) != banned_entry_terminals.end()) {
          continue;
        }
      } else if (!admits(mode, l)) {
        continue;
      }
      const std::size_t t = static_cast<std::size_t>(l.head) * L + static_cast<std::size_t>(to_layer);
      if (settled_[t]) continue;
      const double nd = d + times[static_cast<std::size_t>(id)];
      if (nd < dist_[t]) {
        dist_[t] = nd;
        pred_link_[t] = id;
        pred_state_[t] = static_cast<std::int64_t>(s);
        heap.emplace(nd, t);
      } else if (nd == dist_[t] && lex_smaller(s, id, t)) {
        pred_link_[t] = id;
        pred_state_[t] = static_cast<std::int64_t>(s);
      }
    }
  }
}

bool PathFinder::reachable(NodeId destination) const { return cost_to(destination) < kInf; }

double PathFinder::cost_to(NodeId destination) const {
  if (destination < 0 || static_cast<std::size_t>(destination) >= net_->node_count() || destination == origin_) {
    return kInf;
  }
  return dist_[final_state(destination)];
}

Path PathFinder::path_to(NodeId destination) const {
  if (!reachable(destination)) {
    throw Error(ErrorCode::Unreachable, "origin=" + std::to_string(origin_) + " destination=" +
                                            std::to_string(destination) + " mode=" + std::string(to_string(mode_)));
  }
  Path path;
  path.mode = mode_;
  trace(final_state(destination), path.links);
  return path;
}

Path shortest_path(const Network& net, std::span<const double> times, Mode mode, NodeId origin, NodeId destination) {
  PathFinder finder(net);
  finder.build_tree(times, mode, origin);
  return finder.path_to(destination);
}

}  // namespace freight
