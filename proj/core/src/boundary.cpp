#include "freedyn/boundary.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "freedyn/error.hpp"
#include "freedyn/random.hpp"
#include "freedyn/stallings.hpp"

namespace freedyn {

namespace {

constexpr std::size_t kMaxPath = std::size_t{1} << 24;

OrientedEdge direction_image(const GraphMap& f, OrientedEdge d) { return f.image(d).front(); }

EdgePath apply_power(const GraphMap& f, EdgePath p, int power) {
  for (int i = 0; i < power; ++i) p = f.image_of_path(p);
  return p;
}

// The first `limit` edges of f^power(p).  Edge images are nonempty, so each
// stage only needs the first `limit` edges of the previous one.
EdgePath apply_power_prefix(const GraphMap& f, EdgePath p, int power, std::size_t limit) {
  for (int i = 0; i < power; ++i) {
    EdgePath next;
    for (OrientedEdge oe : p) {
      if (next.size() >= limit) break;
      const EdgePath img = f.image(oe);
      next.insert(next.end(), img.begin(), img.end());
    }
    if (next.size() > limit) next.resize(limit);
    p = std::move(next);
  }
  return p;
}

// Edges whose iterated images grow: some edge reachable in the transition
// graph has an image of length >= 2.
std::vector<bool> growing_edges(const GraphMap& f) {
  const int ne = f.edge_count();
  std::vector<bool> grows(static_cast<std::size_t>(ne), false);
  for (int e = 0; e < ne; ++e) {
    std::vector<bool> seen(static_cast<std::size_t>(ne), false);
    std::vector<int> stack{e};
    seen[static_cast<std::size_t>(e)] = true;
    while (!stack.empty() && !grows[static_cast<std::size_t>(e)]) {
      const int x = stack.back();
      stack.pop_back();
      const auto& img = f.edge_image[static_cast<std::size_t>(x)];
      if (img.size() >= 2) grows[static_cast<std::size_t>(e)] = true;
      for (OrientedEdge oe : img) {
        if (!seen[static_cast<std::size_t>(edge_of(oe))]) {
          seen[static_cast<std::size_t>(edge_of(oe))] = true;
          stack.push_back(edge_of(oe));
        }
      }
    }
  }
  return grows;
}

int direction_period(const GraphMap& f, OrientedEdge d) {
  OrientedEdge x = d;
  const int bound = 2 * f.edge_count();
  for (int p = 1; p <= bound; ++p) {
    x = direction_image(f, x);
    if (x == d) return p;
  }
  return 0;
}

// Grows the ray path from d until it has at least `length` edges.
EdgePath ray_path(const GraphMap& f, OrientedEdge d, int period, std::size_t length) {
  EdgePath p{d};
  while (p.size() < length) {
    EdgePath next = apply_power_prefix(f, p, period, std::max(length, 2 * p.size()));
    if (next.size() <= p.size()) throw Error(Errc::Precondition, "ray direction does not grow");
    if (next.size() > kMaxPath) throw Error(Errc::Precondition, "ray path too long");
    p = std::move(next);
  }
  return p;
}

std::vector<Ray> periodic_rays(const Endomorphism& phi, std::optional<int> max_folds, int& period) {
  if (phi == Endomorphism::identity(phi.basis())) {
    throw Error(Errc::Precondition, "boundary rays need a non-surjective endomorphism, got the identity");
  }
  if (is_surjective(phi)) throw Error(Errc::SurjectiveInput, "phi is surjective");
  auto f = std::make_shared<const GraphMap>(fold_to_immersion(rose_map(phi), max_folds));
  std::vector<Ray> rays;
  period = 1;
  for (const auto& fd : fixed_directions(*f)) {
    if (!fd.growing) continue;
    period = std::lcm(period, fd.period);
    rays.emplace_back(f, fd.direction, fd.period);
  }
  return rays;
}

std::vector<Word> sample_words(int rank, int samples, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> len(4, 8);
  std::vector<Word> out;
  for (int s = 0; s < samples; ++s) out.push_back(random_word(rank, len(rng), rng));
  return out;
}

AttractionReport run_probe(const Endomorphism& phi, const std::vector<Word>& rays, const std::vector<Word>& words,
                           int depth, std::uint64_t seed) {
  AttractionReport r;
  r.samples = static_cast<int>(words.size());
  r.depth = depth;
  r.seed = seed;
  r.min_growth = phi.image(0).size();
  for (const auto& img : phi.images()) r.min_growth = std::min(r.min_growth, img.size());
  for (const auto& w : words) {
    std::vector<std::size_t> prefixes;
    Word wk = w;
    bool ok = true;
    for (int k = 1; k <= depth; ++k) {
      wk = apply(phi, wk);
      std::size_t best = 0;
      for (const auto& ray : rays) best = std::max(best, common_prefix_length(wk.letters(), ray.letters()));
      if (!prefixes.empty() && best < prefixes.back()) ok = false;
      prefixes.push_back(best);
    }
    const double threshold =
        static_cast<double>(w.size()) + depth * (static_cast<double>(r.min_growth) - 1.0) / 2.0;
    if (depth > 0 && !(static_cast<double>(prefixes.back()) > threshold)) ok = false;
    if (!ok) {
      if (r.failures == 0) {
        r.first_failure = w;
        r.first_failure_prefixes = prefixes;
      }
      ++r.failures;
    }
  }
  r.pass = r.failures == 0;
  return r;
}

Turn make_turn(OrientedEdge x, OrientedEdge y) { return x < y ? Turn{x, y} : Turn{y, x}; }

// Turns crossed by some iterate f^k(e).
std::set<Turn> taken_turns(const GraphMap& f) {
  std::set<Turn> taken;
  std::vector<Turn> stack;
  for (const auto& img : f.edge_image) {
    for (std::size_t i = 1; i < img.size(); ++i) {
      const Turn t = make_turn(reversed(img[i - 1]), img[i]);
      if (taken.insert(t).second) stack.push_back(t);
    }
  }
  while (!stack.empty()) {
    const Turn t = stack.back();
    stack.pop_back();
    const Turn u = make_turn(direction_image(f, t.first), direction_image(f, t.second));
    if (u.first != u.second && taken.insert(u).second) stack.push_back(u);
  }
  return taken;
}

}  // namespace

std::vector<FixedDirection> fixed_directions(const GraphMap& f) {
  const auto grows = growing_edges(f);
  std::vector<FixedDirection> out;
  const Graph& g = f.graph.graph;
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (OrientedEdge d : g.directions_at(v)) {
      const int p = direction_period(f, d);
      if (p > 0) out.push_back({v, d, p, static_cast<bool>(grows[static_cast<std::size_t>(edge_of(d))])});
    }
  }
  std::sort(out.begin(), out.end(), [](const FixedDirection& a, const FixedDirection& b) {
    return std::pair(a.period, a.direction) < std::pair(b.period, b.direction);
  });
  return out;
}

Ray::Ray(std::shared_ptr<const GraphMap> f, OrientedEdge direction, int period)
    : f_(std::move(f)), direction_(direction), period_(period) {
  if (period_ < 1) throw Error(Errc::Precondition, "ray period must be >= 1");
  if (apply_power_prefix(*f_, EdgePath{direction_}, period_, 1).front() != direction_) {
    throw Error(Errc::Precondition, "direction is not fixed by Df^p");
  }
  lead_ = spanning_tree_paths(f_->graph.graph, f_->graph.base)[static_cast<std::size_t>(vertex())];
  path_ = {direction_};
  EdgePath full = lead_;
  full.push_back(direction_);
  word_ = f_->graph.read(full);
}

int Ray::vertex() const { return f_->graph.graph.origin(direction_); }

void Ray::extend() {
  EdgePath next = apply_power_prefix(*f_, path_, period_, 2 * path_.size());
  if (next.size() <= path_.size()) throw Error(Errc::Precondition, "ray direction does not grow");
  if (next.size() > kMaxPath) throw Error(Errc::Precondition, "ray path too long");
  path_ = std::move(next);
  EdgePath full = lead_;
  full.insert(full.end(), path_.begin(), path_.end());
  Word w = f_->graph.read(full);
  stable_ = common_prefix_length(word_.letters(), w.letters());
  word_ = std::move(w);
}

Word Ray::prefix(std::size_t m) {
  // Labels of a non-rose graph may cancel, so a prefix is trusted once it
  // survives a further iteration.
  while (stable_ < m) extend();
  return word_.prefix(m);
}

Word eigenray(const GraphMap& f, OrientedEdge d, int p, std::size_t m) {
  Ray ray(std::make_shared<const GraphMap>(f), d, p);
  return ray.prefix(m);
}

BoundaryRays boundary_rays(const Endomorphism& phi, std::size_t m, std::optional<int> max_folds) {
  BoundaryRays out;
  out.rank = phi.rank();
  auto rays = periodic_rays(phi, max_folds, out.period);
  for (auto& ray : rays) {
    const Word w = ray.prefix(m);
    if (ray.period() == 1) {
      out.fixed.push_back(w);
      out.fixed_directions.push_back(ray.direction());
    }
    out.periodic.push_back(w);
    out.periodic_directions.push_back(ray.direction());
  }
  return out;
}

std::vector<Word> boundary_fixed_points(const Endomorphism& phi, std::size_t m) { return boundary_rays(phi, m).fixed; }

AttractionReport attraction_probe(const Endomorphism& phi, const std::vector<Word>& rays, int samples, int depth,
                                  std::uint64_t seed) {
  return run_probe(phi, rays, sample_words(phi.rank(), samples, seed), depth, seed);
}

AttractionReport attraction_probe(const Endomorphism& phi, int samples, int depth, std::uint64_t seed) {
  const auto words = sample_words(phi.rank(), samples, seed);
  const Endomorphism deep = power(phi, std::max(depth, 1));
  std::size_t needed = 1;
  for (const auto& w : words) needed = std::max(needed, apply(deep, w).size() + 1);
  int period = 1;
  auto rays = periodic_rays(phi, std::nullopt, period);
  std::vector<Word> prefixes;
  for (auto& ray : rays) prefixes.push_back(ray.prefix(needed));
  return run_probe(phi, prefixes, words, depth, seed);
}

std::size_t CylinderCover::min_length() const {
  std::size_t best = 0;
  for (const auto& p : prefixes) best = best == 0 ? p.size() : std::min(best, p.size());
  return best;
}

CylinderCover cylinder_cover(const Endomorphism& phi, int k) {
  if (k < 0) throw Error(Errc::Precondition, "cylinder_cover: k must be >= 0");
  const int n = phi.rank();
  const Endomorphism phik = k == 0 ? Endomorphism::identity(phi.basis()) : power(phi, k);
  const FoldedGraph s = core(subgroup_graph(phik.images(), n), true);
  const int base = *s.basepoint();
  const auto alphabet = phi.basis().alphabet();
  CylinderCover cover{k, {}};
  for (Letter x : alphabet) {
    int v = s.target(base, x);
    if (v < 0) continue;
    std::vector<Letter> letters{x};
    while (v != base && s.degree(v) == 2) {
      const Letter back = -letters.back();
      for (Letter y : alphabet) {
        if (y == back) continue;
        const int w = s.target(v, y);
        if (w < 0) continue;
        letters.push_back(y);
        v = w;
        break;
      }
      if (letters.size() > s.edges().size() + 1) break;
    }
    cover.prefixes.push_back(Word::reduce(letters));
  }
  std::sort(cover.prefixes.begin(), cover.prefixes.end());
  return cover;
}

LaminationLeaf lamination_leaf(const GraphMap& f, std::size_t m) {
  if (!is_primitive(transition_matrix(f))) throw Error(Errc::NotPrimitive, "transition matrix is not primitive");
  if (!is_immersion(f)) throw Error(Errc::Precondition, "lamination_leaf needs an immersion");
  if (m == 0) throw Error(Errc::Precondition, "lamination_leaf: m must be >= 1");
  const int ne = f.edge_count();
  const int kmax = 2 * ((ne - 1) * (ne - 1) + 1);

  LaminationLeaf leaf;
  EdgePath image;
  std::size_t j = 0;
  bool found = false;
  std::vector<EdgePath> iterates(static_cast<std::size_t>(ne));
  for (int e = 0; e < ne; ++e) iterates[static_cast<std::size_t>(e)] = {forward(e)};
  for (int k = 1; k <= kmax && !found; ++k) {
    for (int e = 0; e < ne && !found; ++e) {
      auto& it = iterates[static_cast<std::size_t>(e)];
      it = f.image_of_path(it);
      const auto pos = std::find(it.begin(), it.end(), forward(e));
      if (pos != it.end()) {
        found = true;
        leaf.power = k;
        leaf.edge = forward(e);
        image = it;
        j = static_cast<std::size_t>(pos - it.begin());
      }
    }
  }
  if (!found) throw Error(Errc::Precondition, "no edge recurs in its own image");
  if (image.size() < 2) throw Error(Errc::Precondition, "recurring edge does not grow");

  // Grows both halves until the central window of 2m letters is settled.
  std::function<void()> grow;
  const MarkedGraph& mg = f.graph;
  if (j > 0 && j + 1 < image.size()) {
    const EdgePath a(image.begin(), image.begin() + static_cast<std::ptrdiff_t>(j));
    const EdgePath b(image.begin() + static_cast<std::ptrdiff_t>(j) + 1, image.end());
    EdgePath rest = b;
    leaf.left = a;
    leaf.right = {leaf.edge};
    leaf.right.insert(leaf.right.end(), b.begin(), b.end());
    grow = [&, a, b, rest]() mutable {
      EdgePath next_left = apply_power(f, leaf.left, leaf.power);
      next_left.insert(next_left.end(), a.begin(), a.end());
      leaf.left = std::move(next_left);
      EdgePath next_rest = b;
      const EdgePath tail = apply_power(f, rest, leaf.power);
      next_rest.insert(next_rest.end(), tail.begin(), tail.end());
      rest = std::move(next_rest);
      leaf.right = {leaf.edge};
      leaf.right.insert(leaf.right.end(), rest.begin(), rest.end());
    };
  } else {
    const OrientedEdge centre = j == 0 ? leaf.edge : reversed(leaf.edge);
    const int v = mg.graph.origin(centre);
    const auto taken = taken_turns(f);
    const auto grows = growing_edges(f);
    std::optional<OrientedEdge> partner;
    for (OrientedEdge d : mg.graph.directions_at(v)) {
      if (d == centre || direction_period(f, d) == 0 || !grows[static_cast<std::size_t>(edge_of(d))]) continue;
      if (taken.count(make_turn(d, centre))) {
        partner = d;
        break;
      }
    }
    if (!partner) throw Error(Errc::Precondition, "no legal periodic turn at the fixed vertex");
    const int pd = direction_period(f, *partner), pc = direction_period(f, centre);
    leaf.power = std::lcm(pd, pc);
    leaf.edge = centre;
    const OrientedEdge d = *partner;
    leaf.left = reverse_path(EdgePath{d});
    leaf.right = {centre};
    grow = [&, d, centre]() {
      leaf.left = reverse_path(ray_path(f, d, leaf.power, 2 * leaf.left.size()));
      leaf.right = ray_path(f, centre, leaf.power, 2 * leaf.right.size());
    };
  }

  auto window = [&]() -> std::optional<Word> {
    const Word u = mg.read(leaf.left), w = mg.read(leaf.right);
    const std::size_t c = common_prefix_length(u.inverse().letters(), w.letters());
    if (u.size() < c + m || w.size() < c + m) return std::nullopt;
    const Word inner_left = u.prefix(u.size() - c);
    const Word inner_right = w.inverse().prefix(w.size() - c).inverse();
    return inner_left.inverse().prefix(m).inverse() * inner_right.prefix(m);
  };
  std::optional<Word> previous;
  for (int round = 0; round < 64; ++round) {
    const auto current = window();
    if (current && previous && *current == *previous) {
      leaf.word = *current;
      return leaf;
    }
    previous = current;
    if (leaf.left.size() + leaf.right.size() > kMaxPath) break;
    grow();
  }
  throw Error(Errc::Precondition, "leaf window did not settle");
}

}  // namespace freedyn
