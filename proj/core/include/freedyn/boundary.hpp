#pragma once

// Fixed points of the boundary map of an endomorphism, read off from an
// immersion representative: eigenrays, cylinder covers of the image, and
// segments of stable lamination leaves.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "freedyn/graphmap.hpp"
#include "freedyn/word.hpp"

namespace freedyn {

struct FixedDirection {
  int vertex;
  OrientedEdge direction;
  int period;    // least p with f^p fixing the vertex and Df^p fixing the direction
  bool growing;  // |f^k(edge)| is unbounded
};

// Every periodic direction of an immersion, ordered by (period, direction).
std::vector<FixedDirection> fixed_directions(const GraphMap& f);

// The infinite word lim f^{pk}(d), read from the base vertex.  Prefixes are
// materialized on demand and cached.
class Ray {
 public:
  Ray(std::shared_ptr<const GraphMap> f, OrientedEdge direction, int period);

  OrientedEdge direction() const noexcept { return direction_; }
  int period() const noexcept { return period_; }
  int vertex() const;
  // Throws Errc::Precondition when the direction does not grow.
  Word prefix(std::size_t m);

 private:
  void extend();

  std::shared_ptr<const GraphMap> f_;
  OrientedEdge direction_;
  int period_;
  EdgePath path_;
  Word word_;
  std::size_t stable_ = 0;
  EdgePath lead_;
};

// Length-m prefix of the ray from d; requires Df^p(d) = d.
Word eigenray(const GraphMap& f, OrientedEdge d, int p, std::size_t m);

struct BoundaryRays {
  int rank = 0;
  // Rays fixed by phi (growing directions of period 1).
  std::vector<Word> fixed;
  std::vector<OrientedEdge> fixed_directions;
  // Least p fixing every periodic growing direction, and the rays of phi^p.
  int period = 1;
  std::vector<Word> periodic;
  std::vector<OrientedEdge> periodic_directions;

  bool within_bound() const { return fixed.size() <= 2 * static_cast<std::size_t>(rank); }
  bool periodic_within_bound() const { return periodic.size() <= 2 * static_cast<std::size_t>(rank); }
};

// Throws Errc::Precondition for the identity and Errc::SurjectiveInput for
// automorphisms; folding errors propagate.
BoundaryRays boundary_rays(const Endomorphism& phi, std::size_t m, std::optional<int> max_folds = std::nullopt);
std::vector<Word> boundary_fixed_points(const Endomorphism& phi, std::size_t m);

struct AttractionReport {
  int samples = 0;
  int depth = 0;
  std::uint64_t seed = 0;
  std::size_t min_growth = 0;  // min |phi(x)|
  int failures = 0;
  // First failing sample, if any.
  Word first_failure;
  std::vector<std::size_t> first_failure_prefixes;
  bool pass = false;
};

// For random reduced w (4 <= |w| <= 8) the longest common prefix of phi^k(w)
// with the rays must be nondecreasing in k and exceed
// |w| + depth (min |phi(x)| - 1) / 2 at k = depth.  `rays` should be closed
// under phi, e.g. the periodic rays of boundary_rays.
AttractionReport attraction_probe(const Endomorphism& phi, const std::vector<Word>& rays, int samples, int depth,
                                  std::uint64_t seed);
// Uses the periodic rays of phi, materialized as deep as the samples need.
AttractionReport attraction_probe(const Endomorphism& phi, int samples, int depth, std::uint64_t seed);

struct CylinderCover {
  int k = 0;
  std::vector<Word> prefixes;  // shortlex order

  std::size_t min_length() const;
};

// Germs at the basepoint of Core(S(phi^k(F_n))), each followed through
// degree-two vertices until it returns to the basepoint or reaches a branch
// vertex.
CylinderCover cylinder_cover(const Endomorphism& phi, int k);

struct LaminationLeaf {
  // left is read towards the centre, right away from it.
  EdgePath left;
  EdgePath right;
  Word word;  // last m letters of left followed by first m letters of right
  int power = 0;
  OrientedEdge edge = 0;
};

// Leaf through the first edge e, ordered by (k, e), that recurs in its own
// image f^k(e).
// Throws Errc::NotPrimitive, or Errc::Precondition when f is no immersion.
LaminationLeaf lamination_leaf(const GraphMap& f, std::size_t m);

}  // namespace freedyn
