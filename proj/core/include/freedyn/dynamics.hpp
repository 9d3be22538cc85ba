#pragma once

// Points of (the closure of) Outer space given by metric marked graphs, their
// translation length functions, the right action of an endomorphism, and the
// stable tree of an endomorphism with its convergence probes.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freedyn/graph.hpp"
#include "freedyn/graphmap.hpp"
#include "freedyn/word.hpp"

namespace freedyn {

// A marked metric graph.  Zero-length edges encode the collapsed (simplicial,
// trivial edge stabilizer) boundary points.  `loops` is the current action:
// the tree T.phi_1...phi_k has generator x acting by loops[x], and `twists`
// records phi_1, ..., phi_k.
struct TreePoint {
  MarkedGraph graph;
  std::vector<double> lengths;
  std::vector<EdgePath> loops;
  std::vector<Endomorphism> twists;

  // Validates the marking and the lengths.  Throws Errc::InvalidTree when
  // lengths are negative, all zero, or vanish on every word of length <= 2.
  static TreePoint make(MarkedGraph graph, std::vector<double> lengths);

  int rank() const noexcept { return graph.rank(); }
  bool is_interior() const;
  // phi_1 o ... o phi_k (identity when no twist was applied).
  Endomorphism twist() const;
};

// Rose with the identity marking.
TreePoint rose_tree(std::vector<double> lengths);

// Rose with unit lengths except the named petals (generator indices), which
// are collapsed to length 0.
TreePoint collapse_tree(int rank, std::span<const int> collapsed);

// Cyclic words of length 1..max_len, one per {[g], [g^-1]} pair, sorted.
std::vector<CyclicWord> witness_classes(int rank, int max_len);

struct LengthSpectrum {
  std::vector<CyclicWord> classes;
  std::vector<double> values;
};

// Divides by the sum; throws Errc::Precondition when all values vanish.
LengthSpectrum projectivize(LengthSpectrum s);
// L-infinity distance; spectra must share their witness set.
double distance(const LengthSpectrum& a, const LengthSpectrum& b);

double tree_length(const TreePoint& t, const Word& g);
LengthSpectrum spectrum(const TreePoint& t, const std::vector<CyclicWord>& classes);

// T.phi, with length function g -> l_T(phi(g)).  Throws Errc::TrivialPullback
// when every witness class of length <= 3 has length zero and phi(F_n)
// (composed with earlier twists) is conjugate into a vertex group of T.
TreePoint right_action(const TreePoint& t, const Endomorphism& phi);

// Immersion representative with its Perron-Frobenius data.
struct StableTree {
  Endomorphism phi;
  GraphMap map;
  PFData pf;
};

// Folds rose_map(phi) to an immersion and computes PF data.
StableTree stable_tree(const Endomorphism& phi, std::optional<int> max_folds = std::nullopt);

// lambda^-k times the PF length of the cyclically tight loop f^k(alpha_g).
// Throws Errc::NoConvergence when kmax is reached.
double stable_length(const StableTree& s, const Word& g, double tol = 1e-10, int kmax = 60);

LengthSpectrum stable_spectrum(const StableTree& s, const std::vector<CyclicWord>& classes);
LengthSpectrum stable_spectrum(const StableTree& s, int max_len);

struct HomothetyReport {
  double lambda = 0.0;
  double max_deviation = 0.0;
  CyclicWord worst;
  std::size_t classes = 0;
  bool pass = false;
};

// max over witness classes of |l(phi(g)) - lambda l(g)| / max(l(g), eps).
HomothetyReport homothety_check(const StableTree& s, int max_len, double tol = 1e-8);

struct OrbitReport {
  bool converged = false;
  int iterations = 0;
  std::vector<double> distances;  // distances[k] for T0.phi^k
  bool eventually_monotone = false;
  LengthSpectrum stable;
  LengthSpectrum last;
};

// Iterates T_{k+1} = T_k.phi and tracks the projective distance to the stable
// spectrum.  Throws Errc::NoConvergence after max_iter steps.
OrbitReport orbit_converge(const TreePoint& t0, const StableTree& s, int max_len = 3, double tol = 1e-6,
                           int max_iter = 60);

// Generators of the vertex groups of the collapsed subgraph, one list per
// component with nontrivial fundamental group.
std::vector<std::vector<Word>> vertex_groups(const TreePoint& t);

enum class Admissibility { Trivial, NonTrivial };
std::string to_string(Admissibility a);

struct SplittingVerdict {
  Admissibility verdict = Admissibility::NonTrivial;
  std::vector<std::vector<Word>> vertex_groups;
  // Index of a vertex group containing a conjugate of phi(F_n), if any.
  std::optional<std::size_t> fixing_group;
};

// Throws Errc::UnsupportedSplitting for encodings that are not splittings.
SplittingVerdict admissibility_check(const Endomorphism& phi, const TreePoint& splitting);
std::vector<SplittingVerdict> admissibility_check(const Endomorphism& phi, std::span<const TreePoint> splittings);

struct RigidityReport {
  int k = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double max_deviation = 1.0;  // C_k
  double min_length = 0.0;     // smallest sampled l_T(h)
};

// Samples (w, w', T, T') from `seed` independently of k, so probes at
// different k share their samples.  Throws Errc::ZeroLength if l_T(h) = 0.
RigidityReport rigidity_probe(const Endomorphism& phi, int k, int samples, std::uint64_t seed);

}  // namespace freedyn
