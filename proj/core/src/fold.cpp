// Folding a graph map to an immersion.
//
// The working state is a marked graph whose edge labels read the generators
// along the marking loops, together with vertex and edge images.  Every move
// is a homotopy equivalence of the graph (subdivision, fold, collapse of a
// degenerate edge, pruning a hanging edge) or a homotopy of the map (pulling
// a vertex image along an edge), so the outer class never changes; labels are
// re-gauged before each move so that marking loops keep reading x_i.

#include <algorithm>
#include <map>

#include "freedyn/error.hpp"
#include "freedyn/graphmap.hpp"
#include "freedyn/stallings.hpp"

namespace freedyn {

namespace {

class Folder {
 public:
  explicit Folder(const GraphMap& f)
      : vertex_count_(f.vertex_count()),
        edges_(f.graph.graph.edges()),
        labels_(f.graph.labels),
        images_(f.edge_image),
        vertex_image_(f.vertex_image),
        marking_(f.graph.marking),
        base_(f.graph.base) {}

  // One move; false once the map is an immersion.
  bool step(int& moves, int budget) {
    tighten_all();
    if (collapse_degenerate() || prune_hanging()) return true;
    if (pull_vertex()) {
      charge(moves, budget);
      return true;
    }
    if (auto pair = fold_candidate()) {
      charge(moves, budget);
      fold(pair->first, pair->second);
      return true;
    }
    return false;
  }

  GraphMap result() const {
    GraphMap f;
    f.graph.graph = Graph(vertex_count_, edges_);
    f.graph.base = base_;
    f.graph.marking = marking_;
    f.graph.labels = labels_;
    f.vertex_image = vertex_image_;
    f.edge_image = images_;
    return f;
  }

 private:
  int origin(OrientedEdge oe) const {
    const auto& e = edges_[static_cast<std::size_t>(edge_of(oe))];
    return is_reversed(oe) ? e.head : e.tail;
  }
  int terminus(OrientedEdge oe) const { return origin(reversed(oe)); }

  EdgePath image(OrientedEdge oe) const {
    const EdgePath& p = images_[static_cast<std::size_t>(edge_of(oe))];
    return is_reversed(oe) ? reverse_path(p) : p;
  }

  Word label(OrientedEdge oe) const {
    const Word& w = labels_[static_cast<std::size_t>(edge_of(oe))];
    return is_reversed(oe) ? w.inverse() : w;
  }

  std::vector<OrientedEdge> directions_at(int v) const {
    std::vector<OrientedEdge> out;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (edges_[e].tail == v) out.push_back(forward(static_cast<int>(e)));
      if (edges_[e].head == v) out.push_back(reversed(forward(static_cast<int>(e))));
    }
    return out;
  }

  static void charge(int& moves, int budget) {
    if (++moves > budget) {
      throw Error(Errc::FoldBudgetExceeded, "no immersion after " + std::to_string(budget) + " folds");
    }
  }

  template <class Fn>
  void rewrite_paths(Fn&& fn) {
    auto apply = [&fn](EdgePath& p) {
      EdgePath out;
      out.reserve(p.size());
      for (OrientedEdge oe : p) fn(oe, out);
      p = std::move(out);
    };
    for (auto& p : images_) apply(p);
    for (auto& p : marking_) apply(p);
  }

  void tighten_all() {
    for (auto& p : images_) tighten(p);
    for (auto& p : marking_) tighten(p);
  }

  // Edges leaving v get h^-1 * label, edges entering v get label * h.  Reading
  // along loops at the base is unchanged when v is not the base.
  void gauge(int v, const Word& h) {
    const Word hi = h.inverse();
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (edges_[e].tail == v) labels_[e] = hi * labels_[e];
      if (edges_[e].head == v) labels_[e] = labels_[e] * h;
    }
  }

  // Gauges at the endpoint v of the non-loop edge e so that e reads nothing.
  void trivialize_label(int e, int v) {
    const Word& w = labels_[static_cast<std::size_t>(e)];
    gauge(v, edges_[static_cast<std::size_t>(e)].head == v ? w.inverse() : w);
  }

  void remove_edge(int e) {
    const int last = static_cast<int>(edges_.size()) - 1;
    if (e != last) {
      edges_[static_cast<std::size_t>(e)] = edges_.back();
      labels_[static_cast<std::size_t>(e)] = labels_.back();
      images_[static_cast<std::size_t>(e)] = std::move(images_.back());
      rewrite_paths([e, last](OrientedEdge oe, EdgePath& out) {
        out.push_back(edge_of(oe) == last ? (forward(e) | (oe & 1)) : oe);
      });
    }
    edges_.pop_back();
    labels_.pop_back();
    images_.pop_back();
  }

  // Identifies vertex a with b and renumbers the last vertex into a's slot.
  void merge_vertex(int a, int b) {
    auto redirect = [this](int from, int to) {
      for (auto& e : edges_) {
        if (e.tail == from) e.tail = to;
        if (e.head == from) e.head = to;
      }
      for (auto& v : vertex_image_) {
        if (v == from) v = to;
      }
      if (base_ == from) base_ = to;
    };
    redirect(a, b);
    const int last = vertex_count_ - 1;
    if (a != last) {
      redirect(last, a);
      vertex_image_[static_cast<std::size_t>(a)] = vertex_image_[static_cast<std::size_t>(last)];
    }
    vertex_image_.pop_back();
    --vertex_count_;
  }

  void drop_edge_from_paths(int e) {
    rewrite_paths([e](OrientedEdge oe, EdgePath& out) {
      if (edge_of(oe) != e) out.push_back(oe);
    });
  }

  bool collapse_degenerate() {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (!images_[i].empty()) continue;
      const int e = static_cast<int>(i);
      const auto [tail, head] = edges_[i];
      if (tail == head) throw Error(Errc::NotInjectiveWitness, "a loop maps to a point");
      const int gone = head != base_ ? head : tail;
      const int keep = gone == head ? tail : head;
      trivialize_label(e, gone);
      drop_edge_from_paths(e);
      remove_edge(e);
      merge_vertex(gone, keep);
      return true;
    }
    return false;
  }

  bool prune_hanging() {
    for (int v = 0; v < vertex_count_; ++v) {
      const auto ds = directions_at(v);
      if (ds.size() != 1) continue;
      const int e = edge_of(ds[0]);
      const int u = terminus(ds[0]);
      trivialize_label(e, v != base_ ? v : u);
      drop_edge_from_paths(e);
      remove_edge(e);
      merge_vertex(v, u);
      return true;
    }
    return false;
  }

  // Moves the image of a vertex one edge along a direction d when more than
  // half of the edge germs at the vertex map into d.
  bool pull_vertex() {
    int best_gain = 0, best_vertex = -1;
    OrientedEdge best_dir = -1;
    for (int v = 0; v < vertex_count_; ++v) {
      const auto ds = directions_at(v);
      std::map<OrientedEdge, int> count;
      for (OrientedEdge d : ds) ++count[image(d).front()];
      for (const auto& [d, c] : count) {
        const int gain = 2 * c - static_cast<int>(ds.size());
        if (gain > best_gain) {
          best_gain = gain;
          best_vertex = v;
          best_dir = d;
        }
      }
    }
    if (best_vertex < 0) return false;
    vertex_image_[static_cast<std::size_t>(best_vertex)] = terminus(best_dir);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      auto& p = images_[e];
      if (edges_[e].tail == best_vertex) p.insert(p.begin(), reversed(best_dir));
      if (edges_[e].head == best_vertex) p.push_back(best_dir);
    }
    return true;
  }

  std::optional<std::pair<OrientedEdge, OrientedEdge>> fold_candidate() const {
    for (int v = 0; v < vertex_count_; ++v) {
      const auto ds = directions_at(v);
      for (std::size_t i = 0; i < ds.size(); ++i) {
        for (std::size_t j = i + 1; j < ds.size(); ++j) {
          if (image(ds[i]).front() == image(ds[j]).front()) return std::make_pair(ds[i], ds[j]);
        }
      }
    }
    return std::nullopt;
  }

  // Splits the oriented edge oe after the first `cut` edges of its image.
  // Returns the two halves, oriented like oe.
  std::pair<OrientedEdge, OrientedEdge> subdivide(OrientedEdge oe, std::size_t cut) {
    const int e = edge_of(oe);
    const EdgePath q = images_[static_cast<std::size_t>(e)];
    const std::size_t at = is_reversed(oe) ? q.size() - cut : cut;
    const int w = vertex_count_++;
    vertex_image_.push_back(terminus(q[at - 1]));
    const int e2 = static_cast<int>(edges_.size());
    const int head = edges_[static_cast<std::size_t>(e)].head;
    edges_[static_cast<std::size_t>(e)].head = w;
    edges_.push_back({w, head});
    labels_.emplace_back();
    images_[static_cast<std::size_t>(e)] = EdgePath(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(at));
    images_.emplace_back(q.begin() + static_cast<std::ptrdiff_t>(at), q.end());
    rewrite_paths([e, e2](OrientedEdge x, EdgePath& out) {
      if (x == forward(e)) {
        out.push_back(forward(e));
        out.push_back(forward(e2));
      } else if (x == reversed(forward(e))) {
        out.push_back(reversed(forward(e2)));
        out.push_back(reversed(forward(e)));
      } else {
        out.push_back(x);
      }
    });
    if (!is_reversed(oe)) return {forward(e), forward(e2)};
    return {reversed(forward(e2)), reversed(forward(e))};
  }

  void fold(OrientedEdge d1, OrientedEdge d2) {
    const EdgePath p1 = image(d1), p2 = image(d2);
    const std::size_t common = common_prefix_length(p1, p2);
    if (common < p1.size()) {
      const bool same_edge = edge_of(d1) == edge_of(d2);
      const auto halves = subdivide(d1, common);
      d1 = halves.first;
      if (same_edge) d2 = reversed(halves.second);
    }
    // Subdividing d1 rewrote the shared prefix of d2's image the same way.
    const std::size_t cut = image(d1).size();
    if (cut < image(d2).size()) d2 = subdivide(d2, cut).first;

    const int t1 = terminus(d1), t2 = terminus(d2);
    if (t1 == t2 || edge_of(d1) == edge_of(d2)) {
      throw Error(Errc::NotInjectiveWitness, "folding closes a loop with trivial image");
    }
    int from = t2, to = t1;
    if (t2 != base_) {
      gauge(t2, label(d2).inverse() * label(d1));
    } else {
      from = t1;
      to = t2;
      gauge(t1, label(d1).inverse() * label(d2));
    }
    const int dead = edge_of(d2);
    rewrite_paths([d1, d2, dead](OrientedEdge x, EdgePath& out) {
      if (edge_of(x) != dead) {
        out.push_back(x);
      } else {
        out.push_back(x == d2 ? d1 : reversed(d1));
      }
    });
    merge_vertex(from, to);
    remove_edge(dead);
  }

  int vertex_count_;
  std::vector<GraphEdge> edges_;
  std::vector<Word> labels_;
  std::vector<EdgePath> images_;
  std::vector<int> vertex_image_;
  std::vector<EdgePath> marking_;
  int base_;
};

CyclicWord cyclic_class(const Endomorphism& phi, const Word& w) { return cyclic_reduce(apply(phi, w)); }

// Compares the folded map with the original endomorphism on every conjugacy
// class of length <= 4: both the induced endomorphism and the loop images.
void verify(const GraphMap& g, const Endomorphism& phi) {
  const Endomorphism psi = induced_endomorphism(g);
  const Basis basis = phi.basis();
  const auto alphabet = basis.alphabet();
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (Letter x : alphabet) {
        if (!w.empty() && w.back() == -x) continue;
        next.push_back(w * Word::reduce(std::vector<Letter>{x}));
      }
    }
    for (const Word& w : next) {
      if (cyclic_class(psi, w) != cyclic_class(phi, w)) {
        throw Error(Errc::Precondition, "fold changed the outer class at " + to_string(w));
      }
      EdgePath lhs = g.image_of_path(g.graph.loop_of(w));
      const EdgePath rhs = canonical_loop(g.graph.loop_of(apply(phi, w)));
      if (canonical_loop(std::move(lhs)) != rhs) {
        throw Error(Errc::Precondition, "folded map disagrees with the marking at " + to_string(w));
      }
    }
    frontier = std::move(next);
  }
}

}  // namespace

GraphMap fold_to_immersion(const GraphMap& f, std::optional<int> max_folds) {
  f.validate();
  if (is_immersion(f)) return f;
  const Endomorphism phi = induced_endomorphism(f);
  if (is_surjective(phi)) throw Error(Errc::SurjectiveInput, "automorphisms have no expanding immersion");
  if (!is_injective(phi)) throw Error(Errc::NotInjectiveWitness, "image subgroup has rank < n");
  const int budget = max_folds.value_or(default_fold_budget(f));
  if (budget < 1) throw Error(Errc::Precondition, "fold budget must be >= 1");

  Folder folder(f);
  int moves = 0;
  while (folder.step(moves, budget)) {
  }
  GraphMap g = folder.result();
  g.validate();
  g.graph.validate();
  if (!is_immersion(g)) throw Error(Errc::Precondition, "folding stopped short of an immersion");
  verify(g, phi);
  return g;
}

}  // namespace freedyn
