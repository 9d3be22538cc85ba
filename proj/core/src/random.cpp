#include "freedyn/random.hpp"

#include "freedyn/error.hpp"

namespace freedyn {

namespace {

Letter random_letter(int rank, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 2 * rank - 1);
  const int r = pick(rng);
  return r % 2 == 0 ? generator_letter(r / 2) : -generator_letter(r / 2);
}

}  // namespace

Word random_word(int rank, std::size_t length, Rng& rng) {
  std::vector<Letter> letters;
  letters.reserve(length);
  while (letters.size() < length) {
    const Letter x = random_letter(rank, rng);
    if (!letters.empty() && letters.back() == -x) continue;
    letters.push_back(x);
  }
  return Word::reduce(letters);
}

NielsenMarking random_nielsen_marking(int rank, Rng& rng, int min_moves, int max_moves) {
  if (rank < 2) throw Error(Errc::Precondition, "Nielsen markings need rank >= 2");
  const Basis basis(rank);
  NielsenMarking m{Endomorphism::identity(basis), Endomorphism::identity(basis)};
  std::uniform_int_distribution<int> count(min_moves, max_moves);
  std::uniform_int_distribution<int> gen(0, rank - 1);
  std::uniform_int_distribution<int> kind(0, 3);
  const int moves = count(rng);
  for (int step = 0; step < moves; ++step) {
    const int i = gen(rng);
    int j = gen(rng);
    while (j == i) j = gen(rng);
    const Word xi = Word::generator(i), xj = Word::generator(j);
    std::vector<Word> fwd, bwd;
    for (int g = 0; g < rank; ++g) {
      fwd.push_back(Word::generator(g));
      bwd.push_back(Word::generator(g));
    }
    auto& f = fwd[static_cast<std::size_t>(i)];
    auto& b = bwd[static_cast<std::size_t>(i)];
    switch (kind(rng)) {
      case 0:
        f = xi * xj;
        b = xi * xj.inverse();
        break;
      case 1:
        f = xj * xi;
        b = xj.inverse() * xi;
        break;
      case 2:
        f = xi * xj.inverse();
        b = xi * xj;
        break;
      default:
        f = xi.inverse();
        b = xi.inverse();
        break;
    }
    const Endomorphism alpha(basis, std::move(fwd)), alpha_inv(basis, std::move(bwd));
    m.nu = compose(m.nu, alpha);
    m.inverse = compose(alpha_inv, m.inverse);
  }
  return m;
}

TreePoint marked_rose(const NielsenMarking& marking, std::vector<double> lengths) {
  const int n = marking.nu.rank();
  MarkedGraph mg = MarkedGraph::rose(n);
  for (int j = 0; j < n; ++j) mg.labels[static_cast<std::size_t>(j)] = marking.inverse.image(j);
  for (int i = 0; i < n; ++i) {
    EdgePath p;
    for (Letter x : marking.nu.image(i).letters()) {
      p.push_back(x > 0 ? forward(generator_index(x)) : reversed(forward(generator_index(x))));
    }
    mg.marking[static_cast<std::size_t>(i)] = std::move(p);
  }
  return TreePoint::make(std::move(mg), std::move(lengths));
}

TreePoint random_tree_point(int rank, Rng& rng, bool collapse_one) {
  const NielsenMarking marking = random_nielsen_marking(rank, rng);
  std::uniform_int_distribution<int> tenths(1, 100);
  std::vector<double> lengths;
  for (int j = 0; j < rank; ++j) lengths.push_back(tenths(rng) / 10.0);
  if (collapse_one) {
    std::uniform_int_distribution<int> petal(0, rank - 1);
    lengths[static_cast<std::size_t>(petal(rng))] = 0.0;
  }
  return marked_rose(marking, std::move(lengths));
}

Endomorphism random_endomorphism(int rank, std::size_t max_len, Rng& rng) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::vector<Word> images;
  for (int i = 0; i < rank; ++i) images.push_back(random_word(rank, len(rng), rng));
  return Endomorphism(Basis(rank), std::move(images));
}

}  // namespace freedyn
