#include "freedyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "freedyn/error.hpp"
#include "freedyn/random.hpp"
#include "freedyn/stallings.hpp"

namespace freedyn {

namespace {

constexpr std::size_t kMaxLoopSize = std::size_t{1} << 26;

EdgePath action_loop(const TreePoint& t, std::span<const Letter> w) {
  EdgePath out;
  for (Letter x : w) {
    const auto& loop = t.loops.at(static_cast<std::size_t>(generator_index(x)));
    if (x > 0) {
      out.insert(out.end(), loop.begin(), loop.end());
    } else {
      for (auto it = loop.rbegin(); it != loop.rend(); ++it) out.push_back(reversed(*it));
    }
  }
  tighten(out);
  return out;
}

std::string words_to_string(const std::vector<Word>& ws) {
  std::string out = "<";
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) out += ", ";
    out += to_string(ws[i]);
  }
  return out + ">";
}

}  // namespace

TreePoint TreePoint::make(MarkedGraph graph, std::vector<double> lengths) {
  graph.validate();
  if (lengths.size() != static_cast<std::size_t>(graph.graph.edge_count())) {
    throw Error(Errc::InvalidTree, "one length per edge required");
  }
  for (double l : lengths) {
    if (!std::isfinite(l) || l < 0.0) throw Error(Errc::InvalidTree, "edge lengths must be finite and >= 0");
  }
  if (std::all_of(lengths.begin(), lengths.end(), [](double l) { return l == 0.0; })) {
    throw Error(Errc::InvalidTree, "all edge lengths are zero");
  }
  TreePoint t{std::move(graph), std::move(lengths), {}, {}};
  t.loops = t.graph.marking;
  const int n = t.rank();
  bool positive = false;
  for (int i = 0; i < n && !positive; ++i) {
    const Word xi = Word::generator(i);
    positive = tree_length(t, xi) > 0.0;
    for (int j = 0; j < n && !positive; ++j) {
      if (j == i) continue;
      const Word xj = Word::generator(j);
      positive = tree_length(t, xi * xj) > 0.0 || tree_length(t, xi * xj.inverse()) > 0.0;
    }
  }
  if (!positive) throw Error(Errc::InvalidTree, "length function vanishes on all words of length <= 2");
  return t;
}

bool TreePoint::is_interior() const {
  return std::all_of(lengths.begin(), lengths.end(), [](double l) { return l > 0.0; });
}

Endomorphism TreePoint::twist() const {
  Endomorphism out = Endomorphism::identity(Basis(rank()));
  for (const auto& phi : twists) out = compose(out, phi);
  return out;
}

TreePoint rose_tree(std::vector<double> lengths) {
  const int n = static_cast<int>(lengths.size());
  return TreePoint::make(MarkedGraph::rose(n), std::move(lengths));
}

TreePoint collapse_tree(int rank, std::span<const int> collapsed) {
  std::vector<double> lengths(static_cast<std::size_t>(rank), 1.0);
  for (int i : collapsed) {
    if (i < 0 || i >= rank) throw Error(Errc::UnknownLetter, "collapsed generator outside the basis");
    lengths[static_cast<std::size_t>(i)] = 0.0;
  }
  return rose_tree(std::move(lengths));
}

std::vector<CyclicWord> witness_classes(int rank, int max_len) {
  const Basis basis(rank);
  const auto alphabet = basis.alphabet();
  std::set<CyclicWord> seen;
  std::vector<Letter> stack;
  auto visit = [&](auto&& self) -> void {
    if (!stack.empty()) {
      const Word w = Word::reduce(stack);
      const CyclicWord c = cyclic_reduce(w);
      if (c.size() == stack.size()) seen.insert(std::min(c, c.inverse()));
    }
    if (static_cast<int>(stack.size()) == max_len) return;
    for (Letter x : alphabet) {
      if (!stack.empty() && stack.back() == -x) continue;
      stack.push_back(x);
      self(self);
      stack.pop_back();
    }
  };
  visit(visit);
  return {seen.begin(), seen.end()};
}

LengthSpectrum projectivize(LengthSpectrum s) {
  const double total = std::accumulate(s.values.begin(), s.values.end(), 0.0);
  if (!(total > 0.0)) throw Error(Errc::Precondition, "length spectrum vanishes on the witness set");
  for (double& v : s.values) v /= total;
  return s;
}

double distance(const LengthSpectrum& a, const LengthSpectrum& b) {
  if (a.classes != b.classes) throw Error(Errc::Precondition, "spectra use different witness sets");
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

double tree_length(const TreePoint& t, const Word& g) {
  for (Letter x : g.letters()) {
    if (generator_index(x) >= t.rank()) throw Error(Errc::BasisMismatch, "word outside the marking basis");
  }
  EdgePath loop = action_loop(t, g.letters());
  cyclically_tighten(loop);
  return path_length(loop, t.lengths);
}

LengthSpectrum spectrum(const TreePoint& t, const std::vector<CyclicWord>& classes) {
  LengthSpectrum s{classes, {}};
  s.values.reserve(classes.size());
  for (const auto& c : classes) s.values.push_back(tree_length(t, c.word()));
  return s;
}

TreePoint right_action(const TreePoint& t, const Endomorphism& phi) {
  if (phi.rank() != t.rank()) throw Error(Errc::BasisMismatch, "right_action: ranks differ");
  TreePoint out = t;
  std::size_t total = 0;
  for (int i = 0; i < t.rank(); ++i) {
    out.loops[static_cast<std::size_t>(i)] = action_loop(t, phi.image(i).letters());
    total += out.loops[static_cast<std::size_t>(i)].size();
  }
  if (total > kMaxLoopSize) throw Error(Errc::NoConvergence, "loops of the iterated action are too long");
  out.twists.push_back(phi);

  const auto classes = witness_classes(t.rank(), 3);
  const bool vanishes = std::all_of(classes.begin(), classes.end(),
                                    [&out](const CyclicWord& c) { return tree_length(out, c.word()) == 0.0; });
  if (vanishes) {
    const FoldedGraph image = image_graph(out.twist());
    const auto groups = vertex_groups(t);
    for (const auto& gens : groups) {
      if (conjugate_into(image, subgroup_graph(gens, t.rank()))) {
        throw Error(Errc::TrivialPullback, "phi(F_n) is conjugate into the vertex group " + words_to_string(gens));
      }
    }
  }
  return out;
}

StableTree stable_tree(const Endomorphism& phi, std::optional<int> max_folds) {
  GraphMap f = fold_to_immersion(rose_map(phi), max_folds);
  PFData pf = pf_data(transition_matrix(f));
  return StableTree{phi, std::move(f), std::move(pf)};
}

double stable_length(const StableTree& s, const Word& g, double tol, int kmax) {
  if (g.empty()) return 0.0;
  EdgePath loop = s.map.graph.loop_of(g);
  cyclically_tighten(loop);
  double previous = path_length(loop, s.pf.v);
  double scale = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    loop = s.map.image_of_path(loop);
    cyclically_tighten(loop);
    if (loop.size() > kMaxLoopSize) break;
    scale /= s.pf.lambda;
    const double estimate = scale * path_length(loop, s.pf.v);
    if (std::abs(estimate - previous) < tol) return estimate;
    previous = estimate;
  }
  throw Error(Errc::NoConvergence, "stable length of " + to_string(g) + " did not settle");
}

LengthSpectrum stable_spectrum(const StableTree& s, const std::vector<CyclicWord>& classes) {
  LengthSpectrum out{classes, {}};
  for (const auto& c : classes) out.values.push_back(stable_length(s, c.word()));
  return projectivize(std::move(out));
}

LengthSpectrum stable_spectrum(const StableTree& s, int max_len) {
  return stable_spectrum(s, witness_classes(s.phi.rank(), max_len));
}

HomothetyReport homothety_check(const StableTree& s, int max_len, double tol) {
  constexpr double kEps = 1e-12;
  HomothetyReport r;
  r.lambda = s.pf.lambda;
  const auto classes = witness_classes(s.phi.rank(), max_len);
  r.classes = classes.size();
  for (const auto& c : classes) {
    const double l = stable_length(s, c.word());
    const double lp = stable_length(s, apply(s.phi, c.word()));
    const double dev = std::abs(lp - r.lambda * l) / std::max(l, kEps);
    if (dev > r.max_deviation || r.worst.empty()) {
      r.max_deviation = std::max(dev, r.max_deviation);
      r.worst = c;
    }
  }
  r.pass = r.max_deviation < tol;
  return r;
}

OrbitReport orbit_converge(const TreePoint& t0, const StableTree& s, int max_len, double tol, int max_iter) {
  if (t0.rank() != s.phi.rank()) throw Error(Errc::BasisMismatch, "orbit_converge: ranks differ");
  OrbitReport r;
  const auto classes = witness_classes(t0.rank(), max_len);
  r.stable = stable_spectrum(s, classes);
  TreePoint t = t0;
  for (int k = 0;; ++k) {
    r.last = projectivize(spectrum(t, classes));
    r.distances.push_back(distance(r.last, r.stable));
    if (r.distances.back() < tol) {
      r.converged = true;
      r.iterations = k;
      break;
    }
    if (k == max_iter) {
      std::ostringstream os;
      os << "distance " << r.distances.back() << " after " << max_iter << " iterations";
      throw Error(Errc::NoConvergence, os.str());
    }
    t = right_action(t, s.phi);
  }
  const std::size_t half = r.distances.size() / 2;
  r.eventually_monotone = true;
  for (std::size_t i = half + 1; i < r.distances.size(); ++i) {
    r.eventually_monotone = r.eventually_monotone && r.distances[i] <= r.distances[i - 1];
  }
  return r;
}

std::vector<std::vector<Word>> vertex_groups(const TreePoint& t) {
  const Graph& g = t.graph.graph;
  const auto ne = static_cast<std::size_t>(g.edge_count());
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    return v;
  };
  // Spanning tree with zero-length edges first, so it restricts to a spanning
  // tree of every collapsed component.
  std::vector<bool> in_tree(ne, false);
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t e = 0; e < ne; ++e) {
      if ((t.lengths[e] == 0.0) != (pass == 0)) continue;
      const int a = find(g.edges()[e].tail), b = find(g.edges()[e].head);
      if (a == b) continue;
      parent[static_cast<std::size_t>(a)] = b;
      in_tree[e] = true;
    }
  }
  std::vector<EdgePath> paths(static_cast<std::size_t>(g.vertex_count()));
  std::vector<bool> seen(paths.size(), false);
  std::vector<int> queue{t.graph.base};
  seen[static_cast<std::size_t>(t.graph.base)] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int v = queue[qi];
    for (OrientedEdge oe : g.directions_at(v)) {
      if (!in_tree[static_cast<std::size_t>(edge_of(oe))]) continue;
      const int w = g.terminus(oe);
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      paths[static_cast<std::size_t>(w)] = paths[static_cast<std::size_t>(v)];
      paths[static_cast<std::size_t>(w)].push_back(oe);
      queue.push_back(w);
    }
  }
  // Components of the zero-length subgraph.
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t e = 0; e < ne; ++e) {
    if (t.lengths[e] == 0.0) parent[static_cast<std::size_t>(find(g.edges()[e].tail))] = find(g.edges()[e].head);
  }
  std::vector<int> component_roots;
  std::vector<std::vector<Word>> groups;
  for (std::size_t e = 0; e < ne; ++e) {
    if (t.lengths[e] != 0.0 || in_tree[e]) continue;
    const auto& edge = g.edges()[e];
    EdgePath p = paths[static_cast<std::size_t>(edge.tail)];
    p.push_back(forward(static_cast<int>(e)));
    const EdgePath back = reverse_path(paths[static_cast<std::size_t>(edge.head)]);
    p.insert(p.end(), back.begin(), back.end());
    const int root = find(edge.tail);
    auto it = std::find(component_roots.begin(), component_roots.end(), root);
    if (it == component_roots.end()) {
      component_roots.push_back(root);
      groups.emplace_back();
      it = component_roots.end() - 1;
    }
    groups[static_cast<std::size_t>(it - component_roots.begin())].push_back(t.graph.read(p));
  }
  return groups;
}

std::string to_string(Admissibility a) { return a == Admissibility::Trivial ? "Trivial" : "NonTrivial"; }

SplittingVerdict admissibility_check(const Endomorphism& phi, const TreePoint& splitting) {
  if (phi.rank() != splitting.rank()) throw Error(Errc::BasisMismatch, "admissibility_check: ranks differ");
  if (splitting.graph.labels.size() != splitting.lengths.size()) {
    throw Error(Errc::UnsupportedSplitting, "splitting has no edge labels");
  }
  if (std::all_of(splitting.lengths.begin(), splitting.lengths.end(), [](double l) { return l == 0.0; })) {
    throw Error(Errc::UnsupportedSplitting, "every edge is collapsed");
  }
  SplittingVerdict v;
  v.vertex_groups = vertex_groups(splitting);
  const FoldedGraph image = image_graph(compose(splitting.twist(), phi));
  for (std::size_t i = 0; i < v.vertex_groups.size(); ++i) {
    if (conjugate_into(image, subgroup_graph(v.vertex_groups[i], phi.rank()))) {
      v.verdict = Admissibility::Trivial;
      v.fixing_group = i;
      break;
    }
  }
  return v;
}

std::vector<SplittingVerdict> admissibility_check(const Endomorphism& phi, std::span<const TreePoint> splittings) {
  std::vector<SplittingVerdict> out;
  for (const auto& t : splittings) out.push_back(admissibility_check(phi, t));
  return out;
}

RigidityReport rigidity_probe(const Endomorphism& phi, int k, int samples, std::uint64_t seed) {
  if (k < 1) throw Error(Errc::Precondition, "rigidity_probe: k must be >= 1");
  if (samples < 1) throw Error(Errc::Precondition, "rigidity_probe: samples must be >= 1");
  const int n = phi.rank();
  const Endomorphism phik = power(phi, k);
  RigidityReport r{k, samples, seed, 1.0, std::numeric_limits<double>::infinity()};
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> word_len(1, 6);
  std::uniform_int_distribution<int> quarter(0, 3);
  for (int s = 0; s < samples; ++s) {
    const Word w1 = random_word(n, word_len(rng), rng);
    const Word w2 = random_word(n, word_len(rng), rng);
    const TreePoint t1 = random_tree_point(n, rng, quarter(rng) == 0);
    const TreePoint t2 = random_tree_point(n, rng, quarter(rng) == 0);
    const Word h1 = apply(phik, w1), h2 = apply(phik, w2);
    const double a = tree_length(t1, h1), b = tree_length(t1, h2);
    const double c = tree_length(t2, h1), d = tree_length(t2, h2);
    const double smallest = std::min({a, b, c, d});
    if (!(smallest > 0.0)) {
      throw Error(Errc::ZeroLength, "sample " + std::to_string(s) + ": l_T(h) = 0 for h = " +
                                        to_string(smallest == a || smallest == c ? h1 : h2));
    }
    r.min_length = std::min(r.min_length, smallest);
    const double ratio = (a / b) / (c / d);
    r.max_deviation = std::max({r.max_deviation, ratio, 1.0 / ratio});
  }
  return r;
}

}  // namespace freedyn
