#pragma once

// Seeded generators for words, markings and tree points.  Every function takes
// the engine explicitly; there is no hidden global state.

#include <random>

#include "freedyn/dynamics.hpp"
#include "freedyn/word.hpp"

namespace freedyn {

using Rng = std::mt19937_64;

// Uniform reduced word of the given length.
Word random_word(int rank, std::size_t length, Rng& rng);

// A composition of elementary Nielsen automorphisms together with its inverse.
struct NielsenMarking {
  Endomorphism nu;
  Endomorphism inverse;
};

NielsenMarking random_nielsen_marking(int rank, Rng& rng, int min_moves = 1, int max_moves = 5);

// Rose whose marking sends x_i to the loop reading nu(x_i); edge j is
// labelled nu^-1(x_j).
TreePoint marked_rose(const NielsenMarking& marking, std::vector<double> lengths);

// Random Nielsen marking and lengths k/10 with k uniform in [1, 100]; with
// `collapse_one`, one random petal gets length 0.
TreePoint random_tree_point(int rank, Rng& rng, bool collapse_one = false);

// Endomorphism with nonempty images of length 1..max_len.
Endomorphism random_endomorphism(int rank, std::size_t max_len, Rng& rng);

}  // namespace freedyn
