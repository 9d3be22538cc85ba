#pragma once

// Self-maps of marked graphs: transition matrices, Perron-Frobenius data,
// turns, and folding to an immersion.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freedyn/graph.hpp"
#include "freedyn/word.hpp"

namespace freedyn {

struct GraphMap {
  MarkedGraph graph;
  std::vector<int> vertex_image;
  // Image of each edge traversed forward; reversed edges map to the reverse path.
  std::vector<EdgePath> edge_image;

  int edge_count() const noexcept { return graph.graph.edge_count(); }
  int vertex_count() const noexcept { return graph.graph.vertex_count(); }

  EdgePath image(OrientedEdge oe) const;
  // Concatenated images of the edges of p, not tightened.
  EdgePath image_of_path(std::span<const OrientedEdge> p) const;

  // Endpoints of edge images agree with vertex images.  Throws InvalidGraph.
  void validate() const;
};

// The rose R_n with the identity marking and edge images phi(x_i).
// Throws Errc::TrivialImage if some image is the identity.
GraphMap rose_map(const Endomorphism& phi);

// The endomorphism induced on pi_1 through the marking and edge labels,
// well defined up to conjugation (the outer class).
Endomorphism induced_endomorphism(const GraphMap& f);

// f^r as a composition of maps; images are not tightened, so
// transition_matrix(iterate(f, r)) == transition_matrix(f)^r.
GraphMap iterate(const GraphMap& f, int r);

// Replaces every edge image by its tightening.
GraphMap tightened(GraphMap f);

class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  explicit TransitionMatrix(int size) : size_(size), data_(static_cast<std::size_t>(size) * size, 0) {}
  TransitionMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static TransitionMatrix identity(int size);

  int size() const noexcept { return size_; }
  std::int64_t& at(int i, int j) { return data_[static_cast<std::size_t>(i * size_ + j)]; }
  std::int64_t at(int i, int j) const { return data_[static_cast<std::size_t>(i * size_ + j)]; }

  friend TransitionMatrix operator*(const TransitionMatrix& x, const TransitionMatrix& y);
  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

 private:
  int size_ = 0;
  std::vector<std::int64_t> data_;
};

TransitionMatrix matrix_power(const TransitionMatrix& m, int r);
std::string to_string(const TransitionMatrix& m);

// Entry (i, j) counts crossings of edge i, in either direction, by f(e_j).
TransitionMatrix transition_matrix(const GraphMap& f);

// Some power up to the Wielandt bound (k-1)^2 + 1 is positive.
bool is_primitive(const TransitionMatrix& m);

struct PFData {
  double lambda = 0.0;
  std::vector<double> v;  // sums to 1
  double residual = 0.0;  // max |Mv - lambda v|
  int iterations = 0;
};

// Power iteration; throws Errc::NotPrimitive.
PFData pf_data(const TransitionMatrix& m);

struct Turn {
  OrientedEdge first;  // first < second
  OrientedEdge second;
  friend bool operator==(const Turn&, const Turn&) = default;
  friend auto operator<=>(const Turn&, const Turn&) = default;
};

struct TurnTable {
  std::vector<Turn> turns;
  std::vector<OrientedEdge> direction_map;  // indexed by oriented edge
  std::vector<Turn> illegal;
};

// Throws Errc::DegenerateEdge when some edge maps to a vertex.
TurnTable turn_table(const GraphMap& f);

bool is_immersion(const GraphMap& f);

// Perron-Frobenius edge lengths; throws Errc::NotPrimitive.
std::vector<double> assign_pf_metric(const GraphMap& f);

// Sum of lengths over the edges of p.
double path_length(std::span<const OrientedEdge> p, std::span<const double> lengths);

// 10 * n * (total length of edge images).
int default_fold_budget(const GraphMap& f);

// Folds f to an immersion representing the same outer endomorphism.  Returns
// f itself when it already is one.  Throws Errc::SurjectiveInput,
// Errc::NotInjectiveWitness or Errc::FoldBudgetExceeded.
GraphMap fold_to_immersion(const GraphMap& f, std::optional<int> max_folds = std::nullopt);

// "e1: a -> e1 e2" lines followed by the transition matrix.
std::string dump(const GraphMap& f);

}  // namespace freedyn
