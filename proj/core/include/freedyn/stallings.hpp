#pragma once

// Stallings subgroup graphs of finitely generated subgroups of F_n.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freedyn/word.hpp"

namespace freedyn {

// A folded labeled graph: at every vertex at most one outgoing and at most
// one incoming edge per generator label.  Vertices are numbered by a
// breadth-first search from the basepoint (or from the lowest surviving
// vertex when there is none) visiting letters in the order a, A, b, B, ...,
// so two based graphs are isomorphic exactly when they compare equal.
class FoldedGraph {
 public:
  struct Edge {
    int from;
    int label;  // generator index
    int to;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  FoldedGraph(int rank, int vertex_count, std::vector<Edge> edges, std::optional<int> basepoint);

  int rank() const noexcept { return rank_; }
  int vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::optional<int> basepoint() const noexcept { return basepoint_; }

  // Endpoint of the edge leaving v reading x (x may be an inverse letter),
  // or -1 when there is none.
  int target(int v, Letter x) const;
  int degree(int v) const;
  // E - V + 1; the rank of the subgroup when connected.
  long long cycle_rank() const;
  bool is_rose() const;

  friend bool operator==(const FoldedGraph&, const FoldedGraph&) = default;

 private:
  int rank_;
  int vertex_count_;
  std::vector<Edge> edges_;
  std::optional<int> basepoint_;
  std::vector<int> out_;  // vertex_count * rank
  std::vector<int> in_;
};

struct FoldOrder {
  // When set, label clashes are resolved in a shuffled order; the result is
  // the same graph whichever order is used.
  std::optional<std::uint64_t> shuffle_seed;
};

FoldedGraph subgroup_graph(std::span<const Word> gens, int rank, FoldOrder order = {});

// Removes vertices of degree <= 1 repeatedly.  With keep_basepoint the
// basepoint survives (based core); otherwise the result is unbased.
FoldedGraph core(const FoldedGraph& g, bool keep_basepoint);

bool contains(const FoldedGraph& g, const Word& w);

// Index of the subgroup; std::nullopt means infinite index.  Requires a based
// core (Errc::NotCore otherwise).
std::optional<std::size_t> index_of(const FoldedGraph& g);

// True iff a conjugate of the subgroup of `h` lies in the subgroup of `v`.
bool conjugate_into(const FoldedGraph& h, const FoldedGraph& v);

// Length of the shortest cycle; throws Errc::Forest for acyclic graphs.
std::size_t girth(const FoldedGraph& g);

FoldedGraph image_graph(const Endomorphism& phi);
bool is_surjective(const Endomorphism& phi);
bool is_injective(const Endomorphism& phi);

enum class ExpansivenessVerdict { Surjective, ExpansiveLikely, NotExpansive, Inconclusive };
std::string to_string(ExpansivenessVerdict v);

struct ExpansivenessReport {
  ExpansivenessVerdict verdict;
  std::vector<std::pair<int, std::size_t>> girth_sequence;  // (k, girth of Core(S_k))
  int kmax;
  // Generator x with phi^k(x) = x for some k <= kmax, if one was found.
  std::optional<std::pair<int, int>> periodic_generator;  // (generator, period)
};

// Semi-decision: ExpansiveLikely is evidence, not a proof.  Throws
// Errc::NotInjectiveWitness when the image has rank < n.
ExpansivenessReport expansiveness_probe(const Endomorphism& phi, int kmax);

// "basepoint <id>" header followed by one "u a v" line per edge.
std::string dump(const FoldedGraph& g);

}  // namespace freedyn
