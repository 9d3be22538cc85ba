#include "freedyn/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "freedyn/error.hpp"
#include "freedyn/stallings.hpp"

namespace freedyn {

Graph::Graph(int vertex_count, std::vector<GraphEdge> edges) : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 1) throw Error(Errc::InvalidGraph, "graph needs at least one vertex");
  for (const auto& e : edges_) {
    if (e.tail < 0 || e.tail >= vertex_count_ || e.head < 0 || e.head >= vertex_count_) {
      throw Error(Errc::InvalidGraph, "edge endpoint out of range");
    }
  }
}

int Graph::origin(OrientedEdge oe) const {
  const auto& e = edges_.at(static_cast<std::size_t>(edge_of(oe)));
  return is_reversed(oe) ? e.head : e.tail;
}

int Graph::terminus(OrientedEdge oe) const {
  const auto& e = edges_.at(static_cast<std::size_t>(edge_of(oe)));
  return is_reversed(oe) ? e.tail : e.head;
}

std::vector<OrientedEdge> Graph::directions_at(int v) const {
  std::vector<OrientedEdge> out;
  for (int e = 0; e < edge_count(); ++e) {
    if (edges_[static_cast<std::size_t>(e)].tail == v) out.push_back(forward(e));
    if (edges_[static_cast<std::size_t>(e)].head == v) out.push_back(reversed(forward(e)));
  }
  return out;
}

int Graph::valence(int v) const { return static_cast<int>(directions_at(v).size()); }

bool Graph::is_connected() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertex_count_));
  for (const auto& e : edges_) {
    adj[static_cast<std::size_t>(e.tail)].push_back(e.head);
    adj[static_cast<std::size_t>(e.head)].push_back(e.tail);
  }
  std::vector<bool> seen(static_cast<std::size_t>(vertex_count_), false);
  std::deque<int> queue{0};
  seen[0] = true;
  int count = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        ++count;
        queue.push_back(w);
      }
    }
  }
  return count == vertex_count_;
}

bool Graph::is_path(std::span<const OrientedEdge> p, int start, int end) const {
  int v = start;
  for (OrientedEdge oe : p) {
    if (oe < 0 || edge_of(oe) >= edge_count() || origin(oe) != v) return false;
    v = terminus(oe);
  }
  return end < 0 || v == end;
}

EdgePath reverse_path(std::span<const OrientedEdge> p) {
  EdgePath out(p.rbegin(), p.rend());
  for (auto& oe : out) oe = reversed(oe);
  return out;
}

void tighten(EdgePath& p) {
  std::size_t top = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (top > 0 && p[top - 1] == reversed(p[i])) {
      --top;
    } else {
      p[top++] = p[i];
    }
  }
  p.resize(top);
}

bool is_tight(std::span<const OrientedEdge> p) {
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i] == reversed(p[i - 1])) return false;
  }
  return true;
}

void cyclically_tighten(EdgePath& p) {
  tighten(p);
  std::size_t lo = 0, hi = p.size();
  while (hi - lo >= 2 && p[lo] == reversed(p[hi - 1])) {
    ++lo;
    --hi;
  }
  if (lo > 0) {
    p.erase(p.begin() + static_cast<std::ptrdiff_t>(hi), p.end());
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(lo));
  }
}

EdgePath canonical_loop(EdgePath loop) {
  cyclically_tighten(loop);
  if (loop.size() < 2) return loop;
  EdgePath best = loop;
  for (std::size_t r = 1; r < loop.size(); ++r) {
    std::rotate(loop.begin(), loop.begin() + 1, loop.end());
    if (loop < best) best = loop;
  }
  return best;
}

std::string path_to_string(std::span<const OrientedEdge> p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ' ';
    if (is_reversed(p[i])) os << '-';
    os << 'e' << edge_of(p[i]) + 1;
  }
  return os.str();
}

EdgePath MarkedGraph::loop_of(std::span<const Letter> w) const {
  EdgePath out;
  for (Letter x : w) {
    const auto i = static_cast<std::size_t>(generator_index(x));
    if (i >= marking.size()) throw Error(Errc::BasisMismatch, "letter outside the marking basis");
    const auto& loop = marking[i];
    auto push = [&out](OrientedEdge oe) {
      if (!out.empty() && out.back() == reversed(oe)) {
        out.pop_back();
      } else {
        out.push_back(oe);
      }
    };
    if (x > 0) {
      for (OrientedEdge oe : loop) push(oe);
    } else {
      for (auto it = loop.rbegin(); it != loop.rend(); ++it) push(reversed(*it));
    }
  }
  return out;
}

Word MarkedGraph::label(OrientedEdge oe) const {
  const Word& w = labels.at(static_cast<std::size_t>(edge_of(oe)));
  return is_reversed(oe) ? w.inverse() : w;
}

Word MarkedGraph::read(std::span<const OrientedEdge> p) const {
  std::vector<Letter> raw;
  for (OrientedEdge oe : p) {
    const auto letters = labels.at(static_cast<std::size_t>(edge_of(oe))).letters();
    if (!is_reversed(oe)) {
      raw.insert(raw.end(), letters.begin(), letters.end());
    } else {
      for (auto it = letters.rbegin(); it != letters.rend(); ++it) raw.push_back(-*it);
    }
  }
  return Word::reduce(raw);
}

void MarkedGraph::validate() const {
  if (!graph.is_connected()) throw Error(Errc::InvalidGraph, "graph is not connected");
  if (base < 0 || base >= graph.vertex_count()) throw Error(Errc::InvalidGraph, "base vertex out of range");
  if (marking.empty()) throw Error(Errc::InvalidMarking, "marking is empty");
  if (graph.rank() != rank()) {
    throw Error(Errc::InvalidMarking, "graph rank " + std::to_string(graph.rank()) + " != marking rank " +
                                          std::to_string(rank()));
  }
  if (labels.size() != static_cast<std::size_t>(graph.edge_count())) {
    throw Error(Errc::InvalidMarking, "one label per edge required");
  }
  for (std::size_t i = 0; i < marking.size(); ++i) {
    const auto& loop = marking[i];
    if (loop.empty() || !graph.is_path(loop, base, base)) {
      throw Error(Errc::InvalidMarking, "marking loop " + std::to_string(i) + " is not a loop at the base");
    }
    if (!is_tight(loop)) throw Error(Errc::InvalidMarking, "marking loop " + std::to_string(i) + " backtracks");
    if (read(loop) != Word::generator(static_cast<int>(i))) {
      throw Error(Errc::InvalidMarking, "labels along marking loop " + std::to_string(i) + " read " +
                                            to_string(read(loop)));
    }
  }
  if (!is_surjective(marking_in_tree_basis(*this))) {
    throw Error(Errc::InvalidMarking, "marking is not pi_1-surjective");
  }
}

MarkedGraph MarkedGraph::rose(int rank) {
  MarkedGraph mg;
  std::vector<GraphEdge> edges(static_cast<std::size_t>(rank), GraphEdge{0, 0});
  mg.graph = Graph(1, std::move(edges));
  for (int i = 0; i < rank; ++i) {
    mg.marking.push_back({forward(i)});
    mg.labels.push_back(Word::generator(i));
  }
  return mg;
}

std::vector<EdgePath> spanning_tree_paths(const Graph& g, int root) {
  std::vector<EdgePath> paths(static_cast<std::size_t>(g.vertex_count()));
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
  std::deque<int> queue{root};
  seen[static_cast<std::size_t>(root)] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (OrientedEdge oe : g.directions_at(v)) {
      const int w = g.terminus(oe);
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      paths[static_cast<std::size_t>(w)] = paths[static_cast<std::size_t>(v)];
      paths[static_cast<std::size_t>(w)].push_back(oe);
      queue.push_back(w);
    }
  }
  return paths;
}

Endomorphism marking_in_tree_basis(const MarkedGraph& mg) {
  const auto paths = spanning_tree_paths(mg.graph, mg.base);
  std::vector<bool> in_tree(static_cast<std::size_t>(mg.graph.edge_count()), false);
  for (const auto& p : paths) {
    if (!p.empty()) in_tree[static_cast<std::size_t>(edge_of(p.back()))] = true;
  }
  std::vector<int> index(static_cast<std::size_t>(mg.graph.edge_count()), -1);
  int n = 0;
  for (int e = 0; e < mg.graph.edge_count(); ++e) {
    if (!in_tree[static_cast<std::size_t>(e)]) index[static_cast<std::size_t>(e)] = n++;
  }
  if (n != mg.rank()) throw Error(Errc::InvalidMarking, "graph rank does not match marking rank");
  std::vector<Word> images;
  for (const auto& loop : mg.marking) {
    std::vector<Letter> raw;
    for (OrientedEdge oe : loop) {
      const int i = index[static_cast<std::size_t>(edge_of(oe))];
      if (i < 0) continue;
      raw.push_back(is_reversed(oe) ? -generator_letter(i) : generator_letter(i));
    }
    images.push_back(Word::reduce(raw));
  }
  return Endomorphism(Basis(n), std::move(images));
}

}  // namespace freedyn
