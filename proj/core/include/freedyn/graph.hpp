#pragma once

// Finite graphs, edge paths and marked graphs.
//
// An oriented edge is encoded as 2*e (traversed tail -> head) or 2*e + 1
// (traversed head -> tail); oriented edges starting at a vertex are the
// directions at that vertex.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "freedyn/word.hpp"

namespace freedyn {

using OrientedEdge = int;
using EdgePath = std::vector<OrientedEdge>;

constexpr OrientedEdge forward(int e) noexcept { return 2 * e; }
constexpr OrientedEdge reversed(OrientedEdge oe) noexcept { return oe ^ 1; }
constexpr int edge_of(OrientedEdge oe) noexcept { return oe >> 1; }
constexpr bool is_reversed(OrientedEdge oe) noexcept { return (oe & 1) != 0; }

struct GraphEdge {
  int tail;
  int head;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, std::vector<GraphEdge> edges);

  int vertex_count() const noexcept { return vertex_count_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }

  int origin(OrientedEdge oe) const;
  int terminus(OrientedEdge oe) const;
  // Oriented edges with origin v, in increasing order.
  std::vector<OrientedEdge> directions_at(int v) const;
  int valence(int v) const;

  bool is_connected() const;
  // E - V + 1 for a connected graph.
  int rank() const noexcept { return edge_count() - vertex_count_ + 1; }

  // Consecutive edges match and the path starts at `start` (and ends at
  // `end` when given).
  bool is_path(std::span<const OrientedEdge> p, int start, int end = -1) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int vertex_count_ = 0;
  std::vector<GraphEdge> edges_;
};

EdgePath reverse_path(std::span<const OrientedEdge> p);
// Removes backtracking (e followed by its reverse).
void tighten(EdgePath& p);
bool is_tight(std::span<const OrientedEdge> p);
// Tightens and then removes cancelling pairs across the wrap-around.
void cyclically_tighten(EdgePath& p);
// Least rotation of a cyclically tight loop, for comparing free homotopy classes.
EdgePath canonical_loop(EdgePath loop);

std::string path_to_string(std::span<const OrientedEdge> p);

// A graph with a marking: for each generator x_i a tight loop at the base
// vertex, and for each edge a label word so that reading labels along a
// marking loop gives back x_i.  Labels realize a homotopy inverse of the
// marking (graph -> rose).
struct MarkedGraph {
  Graph graph;
  int base = 0;
  std::vector<EdgePath> marking;
  std::vector<Word> labels;

  int rank() const noexcept { return static_cast<int>(marking.size()); }

  // The tight loop at base representing w.
  EdgePath loop_of(std::span<const Letter> w) const;
  EdgePath loop_of(const Word& w) const { return loop_of(w.letters()); }
  // Reduced product of edge labels along p.
  Word read(std::span<const OrientedEdge> p) const;
  Word label(OrientedEdge oe) const;

  // Throws Errc::InvalidMarking / Errc::InvalidGraph on any violated invariant,
  // including pi_1-surjectivity of the marking.
  void validate() const;

  static MarkedGraph rose(int rank);
};

// Tree paths from the base vertex to every vertex (BFS spanning tree).
std::vector<EdgePath> spanning_tree_paths(const Graph& g, int root);

// The marking loops written in the free basis of pi_1(graph, base) given by
// the non-tree edges of a BFS spanning tree.
Endomorphism marking_in_tree_basis(const MarkedGraph& mg);

}  // namespace freedyn
