#include "freedyn/stallings.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "freedyn/error.hpp"

namespace freedyn {

namespace {

// Relabels vertices by BFS from `start` over letters a, A, b, B, ...
std::vector<int> bfs_order(int rank, int vertex_count, const std::vector<FoldedGraph::Edge>& edges,
                           int start) {
  std::vector<std::vector<std::pair<Letter, int>>> adj(static_cast<std::size_t>(vertex_count));
  for (const auto& e : edges) {
    adj[static_cast<std::size_t>(e.from)].emplace_back(generator_letter(e.label), e.to);
    adj[static_cast<std::size_t>(e.to)].emplace_back(-generator_letter(e.label), e.from);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end(), [](const auto& x, const auto& y) {
      return letter_rank(x.first) < letter_rank(y.first);
    });
  }
  (void)rank;
  std::vector<int> order(static_cast<std::size_t>(vertex_count), -1);
  int next = 0;
  std::deque<int> queue{start};
  order[static_cast<std::size_t>(start)] = next++;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const auto& [x, w] : adj[static_cast<std::size_t>(v)]) {
      if (order[static_cast<std::size_t>(w)] < 0) {
        order[static_cast<std::size_t>(w)] = next++;
        queue.push_back(w);
      }
    }
  }
  if (next != vertex_count) throw Error(Errc::InvalidGraph, "folded graph is not connected");
  return order;
}

}  // namespace

FoldedGraph::FoldedGraph(int rank, int vertex_count, std::vector<Edge> edges, std::optional<int> basepoint)
    : rank_(rank), vertex_count_(vertex_count), basepoint_(basepoint) {
  if (vertex_count > 0) {
    const int start = basepoint.value_or(0);
    const auto order = bfs_order(rank, vertex_count, edges, start);
    for (auto& e : edges) {
      e.from = order[static_cast<std::size_t>(e.from)];
      e.to = order[static_cast<std::size_t>(e.to)];
    }
    if (basepoint) basepoint_ = 0;
  }
  std::sort(edges.begin(), edges.end());
  edges_ = std::move(edges);
  out_.assign(static_cast<std::size_t>(vertex_count_) * static_cast<std::size_t>(rank_), -1);
  in_.assign(out_.size(), -1);
  for (const auto& e : edges_) {
    auto& o = out_[static_cast<std::size_t>(e.from * rank_ + e.label)];
    auto& i = in_[static_cast<std::size_t>(e.to * rank_ + e.label)];
    if (o >= 0 || i >= 0) throw Error(Errc::InvalidGraph, "graph is not folded");
    o = e.to;
    i = e.from;
  }
}

int FoldedGraph::target(int v, Letter x) const {
  const auto idx = static_cast<std::size_t>(v * rank_ + generator_index(x));
  return x > 0 ? out_[idx] : in_[idx];
}

int FoldedGraph::degree(int v) const {
  int d = 0;
  for (int i = 0; i < rank_; ++i) {
    d += out_[static_cast<std::size_t>(v * rank_ + i)] >= 0;
    d += in_[static_cast<std::size_t>(v * rank_ + i)] >= 0;
  }
  return d;
}

long long FoldedGraph::cycle_rank() const {
  if (vertex_count_ == 0) return 0;
  return static_cast<long long>(edges_.size()) - vertex_count_ + 1;
}

bool FoldedGraph::is_rose() const {
  return vertex_count_ == 1 && edges_.size() == static_cast<std::size_t>(rank_);
}

FoldedGraph subgroup_graph(std::span<const Word> gens, int rank, FoldOrder order) {
  struct RawEdge {
    int from, label, to;
    bool alive = true;
  };
  std::vector<RawEdge> edges;
  int vertex_count = 1;
  for (const Word& w : gens) {
    int current = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (generator_index(w[i]) >= rank) throw Error(Errc::BasisMismatch, "generator outside the basis");
      const int next = (i + 1 == w.size()) ? 0 : vertex_count++;
      const int label = generator_index(w[i]);
      if (w[i] > 0) {
        edges.push_back({current, label, next});
      } else {
        edges.push_back({next, label, current});
      }
      current = next;
    }
  }

  std::vector<int> parent(static_cast<std::size_t>(vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(vertex_count));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    incident[static_cast<std::size_t>(edges[e].from)].push_back(static_cast<int>(e));
    if (edges[e].to != edges[e].from) incident[static_cast<std::size_t>(edges[e].to)].push_back(static_cast<int>(e));
  }

  std::vector<int> work(static_cast<std::size_t>(vertex_count));
  std::iota(work.begin(), work.end(), 0);
  std::mt19937_64 rng(order.shuffle_seed.value_or(0));
  if (order.shuffle_seed) {
    std::shuffle(work.begin(), work.end(), rng);
    for (auto& inc : incident) std::shuffle(inc.begin(), inc.end(), rng);
  }

  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    auto& la = incident[static_cast<std::size_t>(a)];
    auto& lb = incident[static_cast<std::size_t>(b)];
    if (la.size() < lb.size()) std::swap(a, b);
    auto& big = incident[static_cast<std::size_t>(a)];
    auto& small = incident[static_cast<std::size_t>(b)];
    big.insert(big.end(), small.begin(), small.end());
    small.clear();
    small.shrink_to_fit();
    parent[static_cast<std::size_t>(b)] = a;
    return a;
  };

  // Key: 2 * label + (1 if the edge enters v).
  while (!work.empty()) {
    const int v = find(work.back());
    work.pop_back();
    bool merged = false;
    std::map<int, int> seen;
    auto& inc = incident[static_cast<std::size_t>(v)];
    std::erase_if(inc, [&edges](int e) { return !edges[static_cast<std::size_t>(e)].alive; });
    for (int e : inc) {
      auto& edge = edges[static_cast<std::size_t>(e)];
      if (!edge.alive) continue;
      for (int side = 0; side < 2 && edge.alive; ++side) {
        const int here = side == 0 ? find(edge.from) : find(edge.to);
        if (here != v) continue;
        const int key = 2 * edge.label + side;
        auto [it, inserted] = seen.emplace(key, e);
        if (inserted || it->second == e) continue;
        const auto& keep = edges[static_cast<std::size_t>(it->second)];
        const int other_keep = side == 0 ? find(keep.to) : find(keep.from);
        const int other_drop = side == 0 ? find(edge.to) : find(edge.from);
        edge.alive = false;
        if (other_keep != other_drop) {
          const int rep = unite(other_keep, other_drop);
          work.push_back(rep);
        }
        merged = true;
      }
      if (merged) break;
    }
    if (merged) work.push_back(find(v));
  }

  std::vector<int> compact(static_cast<std::size_t>(vertex_count), -1);
  int nv = 0;
  for (int v = 0; v < vertex_count; ++v) {
    if (find(v) == v) compact[static_cast<std::size_t>(v)] = nv++;
  }
  std::vector<FoldedGraph::Edge> out;
  for (const auto& e : edges) {
    if (!e.alive) continue;
    out.push_back({compact[static_cast<std::size_t>(find(e.from))], e.label,
                   compact[static_cast<std::size_t>(find(e.to))]});
  }
  return FoldedGraph(rank, nv, std::move(out), compact[static_cast<std::size_t>(find(0))]);
}

FoldedGraph core(const FoldedGraph& g, bool keep_basepoint) {
  const int n = g.vertex_count();
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (const auto& e : g.edges()) {
    ++degree[static_cast<std::size_t>(e.from)];
    ++degree[static_cast<std::size_t>(e.to)];
  }
  std::vector<bool> removed(static_cast<std::size_t>(n), false);
  std::vector<bool> edge_removed(g.edges().size(), false);
  const int keep = (keep_basepoint && g.basepoint()) ? *g.basepoint() : -1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (removed[static_cast<std::size_t>(v)] || v == keep || degree[static_cast<std::size_t>(v)] > 1) continue;
      removed[static_cast<std::size_t>(v)] = true;
      changed = true;
      for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const auto& e = g.edges()[i];
        if (edge_removed[i] || (e.from != v && e.to != v)) continue;
        edge_removed[i] = true;
        --degree[static_cast<std::size_t>(e.from)];
        --degree[static_cast<std::size_t>(e.to)];
      }
    }
  }
  std::vector<int> compact(static_cast<std::size_t>(n), -1);
  int nv = 0;
  for (int v = 0; v < n; ++v) {
    if (!removed[static_cast<std::size_t>(v)]) compact[static_cast<std::size_t>(v)] = nv++;
  }
  std::vector<FoldedGraph::Edge> edges;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (edge_removed[i]) continue;
    const auto& e = g.edges()[i];
    edges.push_back({compact[static_cast<std::size_t>(e.from)], e.label, compact[static_cast<std::size_t>(e.to)]});
  }
  std::optional<int> base;
  if (keep >= 0) base = compact[static_cast<std::size_t>(keep)];
  return FoldedGraph(g.rank(), nv, std::move(edges), base);
}

bool contains(const FoldedGraph& g, const Word& w) {
  if (!g.basepoint()) throw Error(Errc::Precondition, "contains: graph has no basepoint");
  int v = *g.basepoint();
  for (Letter x : w.letters()) {
    if (generator_index(x) >= g.rank()) return false;
    v = g.target(v, x);
    if (v < 0) return false;
  }
  return v == *g.basepoint();
}

std::optional<std::size_t> index_of(const FoldedGraph& g) {
  if (!g.basepoint()) throw Error(Errc::Precondition, "index_of: graph has no basepoint");
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (v != *g.basepoint() && g.degree(v) <= 1) {
      throw Error(Errc::NotCore, "vertex " + std::to_string(v) + " is dangling");
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != 2 * g.rank()) return std::nullopt;
  }
  return static_cast<std::size_t>(g.vertex_count());
}

bool conjugate_into(const FoldedGraph& h, const FoldedGraph& v) {
  if (h.rank() != v.rank()) throw Error(Errc::BasisMismatch, "conjugate_into: ranks differ");
  const FoldedGraph ch = core(h, false);
  const FoldedGraph cv = core(v, false);
  if (ch.edges().empty()) return true;
  if (cv.edges().empty()) return false;

  // Target folded => a label-preserving morphism is fixed by the image of one vertex.
  std::vector<std::vector<std::pair<Letter, int>>> adj(static_cast<std::size_t>(ch.vertex_count()));
  for (const auto& e : ch.edges()) {
    adj[static_cast<std::size_t>(e.from)].emplace_back(generator_letter(e.label), e.to);
    adj[static_cast<std::size_t>(e.to)].emplace_back(-generator_letter(e.label), e.from);
  }
  for (int start = 0; start < cv.vertex_count(); ++start) {
    std::vector<int> image(static_cast<std::size_t>(ch.vertex_count()), -1);
    image[0] = start;
    std::deque<int> queue{0};
    bool ok = true;
    while (ok && !queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (const auto& [letter, y] : adj[static_cast<std::size_t>(x)]) {
        const int target = cv.target(image[static_cast<std::size_t>(x)], letter);
        if (target < 0) {
          ok = false;
          break;
        }
        auto& iy = image[static_cast<std::size_t>(y)];
        if (iy < 0) {
          iy = target;
          queue.push_back(y);
        } else if (iy != target) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return true;
  }
  return false;
}

std::size_t girth(const FoldedGraph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));  // (edge id, neighbour)
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    if (e.from == e.to) return 1;
    adj[static_cast<std::size_t>(e.from)].emplace_back(static_cast<int>(i), e.to);
    adj[static_cast<std::size_t>(e.to)].emplace_back(static_cast<int>(i), e.from);
  }
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::vector<int> via(static_cast<std::size_t>(n), -1);
    std::deque<int> queue{s};
    dist[static_cast<std::size_t>(s)] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const auto& [eid, w] : adj[static_cast<std::size_t>(u)]) {
        if (eid == via[static_cast<std::size_t>(u)]) continue;
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          via[static_cast<std::size_t>(w)] = eid;
          queue.push_back(w);
        } else {
          best = std::min(best, static_cast<std::size_t>(dist[static_cast<std::size_t>(u)] +
                                                         dist[static_cast<std::size_t>(w)] + 1));
        }
      }
    }
  }
  if (best == std::numeric_limits<std::size_t>::max()) throw Error(Errc::Forest, "graph has no cycle");
  return best;
}

FoldedGraph image_graph(const Endomorphism& phi) { return subgroup_graph(phi.images(), phi.rank()); }

bool is_surjective(const Endomorphism& phi) { return image_graph(phi).is_rose(); }

bool is_injective(const Endomorphism& phi) { return image_graph(phi).cycle_rank() == phi.rank(); }

std::string to_string(ExpansivenessVerdict v) {
  switch (v) {
    case ExpansivenessVerdict::Surjective: return "Surjective";
    case ExpansivenessVerdict::ExpansiveLikely: return "ExpansiveLikely";
    case ExpansivenessVerdict::NotExpansive: return "NotExpansive";
    case ExpansivenessVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

ExpansivenessReport expansiveness_probe(const Endomorphism& phi, int kmax) {
  if (kmax < 1) throw Error(Errc::Precondition, "expansiveness_probe: kmax must be >= 1");
  const int n = phi.rank();
  const FoldedGraph first = image_graph(phi);
  if (first.cycle_rank() < n) {
    throw Error(Errc::NotInjectiveWitness, "image subgroup has rank " + std::to_string(first.cycle_rank()) +
                                               " < " + std::to_string(n));
  }
  ExpansivenessReport report{ExpansivenessVerdict::Inconclusive, {}, kmax, std::nullopt};

  std::vector<Word> images = phi.images();
  std::vector<std::vector<std::size_t>> lengths(static_cast<std::size_t>(n));
  for (int k = 1; k <= kmax; ++k) {
    if (k > 1) {
      for (auto& w : images) w = apply(phi, w);
    }
    for (int i = 0; i < n; ++i) {
      lengths[static_cast<std::size_t>(i)].push_back(images[static_cast<std::size_t>(i)].size());
      if (!report.periodic_generator && images[static_cast<std::size_t>(i)] == Word::generator(i)) {
        report.periodic_generator = std::make_pair(i, k);
      }
    }
    const FoldedGraph s = subgroup_graph(images, n);
    report.girth_sequence.emplace_back(k, girth(core(s, false)));
  }

  const auto& gs = report.girth_sequence;
  auto girth_at = [&gs](std::size_t i) { return gs[i].second; };
  const std::size_t m = gs.size();

  if (first.is_rose()) {
    report.verdict = ExpansivenessVerdict::Surjective;
    return report;
  }
  if (report.periodic_generator) {
    report.verdict = ExpansivenessVerdict::NotExpansive;
    return report;
  }
  if (m >= 3 && girth_at(m - 1) == girth_at(m - 2) && girth_at(m - 2) == girth_at(m - 3)) {
    const bool bounded_orbit = std::any_of(lengths.begin(), lengths.end(), [m](const auto& l) {
      return l[m - 1] == l[m - 2] && l[m - 2] == l[m - 3];
    });
    if (bounded_orbit) {
      report.verdict = ExpansivenessVerdict::NotExpansive;
      return report;
    }
  }
  const std::size_t steps = static_cast<std::size_t>((kmax + 1) / 2);
  if (m >= 2 && steps <= m - 1) {
    bool increasing = true;
    for (std::size_t i = m - steps; i < m; ++i) increasing = increasing && girth_at(i) > girth_at(i - 1);
    if (increasing) report.verdict = ExpansivenessVerdict::ExpansiveLikely;
  }
  return report;
}

std::string dump(const FoldedGraph& g) {
  std::ostringstream os;
  os << "basepoint ";
  if (g.basepoint()) {
    os << *g.basepoint();
  } else {
    os << "none";
  }
  os << '\n';
  for (const auto& e : g.edges()) {
    os << e.from << ' ' << letter_symbol(generator_letter(e.label)) << ' ' << e.to << '\n';
  }
  return os.str();
}

}  // namespace freedyn
