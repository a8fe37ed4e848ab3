#pragma once

#include <span>
#include <vector>

#include "freight/network.hpp"
#include "freight/types.hpp"

namespace freight {

struct Path {
  std::vector<LinkId> links;
  Mode mode = Mode::Truck;

  bool operator==(const Path&) const = default;
};

/// Sum of per-link times along a path.
double path_cost(const Path& path, std::span<const double> times);

/// True when the path is a contiguous origin->destination walk whose links
/// are all admitted by its mode; intermodal paths must also follow
/// road-side* terminal rail+ terminal road-side*.
bool is_well_formed(const Network& net, const Path& path, NodeId origin, NodeId destination);

/// Number of Terminal links on a path.
std::size_t terminal_count(const Network& net, const Path& path);

/// One-to-all label-setting search over a mode's state graph.
///
/// Truck and Rail search the mode subnetwork directly. Intermodal searches a
/// four-layer expansion of the network:
///   0 road-side before rail  --terminal (road->rail)-->  1 at a rail junction
///   1/2 --rail link--> 2 on rail  --terminal (rail->road)-->  3 road-side after rail
/// Road layers use Road links and truck-access connectors. Every intermodal
/// path therefore carries exactly two terminal links around at least one rail
/// link. Centroids other than the origin are never passed through.
///
/// Among equal-cost paths the one with the lexicographically smallest
/// link-id sequence wins (exact when link times are positive).
class PathFinder {
 public:
  explicit PathFinder(const Network& net);

  /// `banned_entry_terminals` (intermodal only) removes those terminal links
  /// as road->rail transfers.
  void build_tree(std::span<const double> times, Mode mode, NodeId origin,
                  std::span<const LinkId> banned_entry_terminals = {});

  bool reachable(NodeId destination) const;
  /// +inf when unreachable.
  double cost_to(NodeId destination) const;
  /// Throws Error(Unreachable).
  Path path_to(NodeId destination) const;

  Mode mode() const { return mode_; }
  NodeId origin() const { return origin_; }

 private:
  int layers() const { return mode_ == Mode::Intermodal ? 4 : 1; }
  std::size_t final_state(NodeId node) const;
  void trace(std::size_t state, std::vector<LinkId>& out) const;
  bool lex_smaller(std::size_t from_state, LinkId via, std::size_t target) const;

  const Network* net_;
  Mode mode_ = Mode::Truck;
  NodeId origin_ = -1;
  std::vector<double> dist_;
  std::vector<LinkId> pred_link_;
  std::vector<std::int64_t> pred_state_;
  std::vector<char> settled_;
  mutable std::vector<LinkId> scratch_a_;
  mutable std::vector<LinkId> scratch_b_;
};

/// Convenience wrapper for a single origin-destination query.
Path shortest_path(const Network& net, std::span<const double> times, Mode mode, NodeId origin, NodeId destination);

}  // namespace freight
