#include <gtest/gtest.h>

#include <cmath>

#include "freedyn/dynamics.hpp"
#include "freedyn/error.hpp"
#include "freedyn/random.hpp"
#include "freedyn/stallings.hpp"
#include "oracles.hpp"

using namespace freedyn;

namespace {

const Basis kB2(2);

Endomorphism endo(int rank, std::vector<std::string_view> ws) {
  const Basis b(rank);
  std::vector<Word> out;
  for (auto s : ws) out.push_back(reduce(s, b));
  return Endomorphism(b, std::move(out));
}

Word w2(std::string_view s) { return reduce(s, kB2); }

std::string str(const Word& w) { return w.empty() ? "" : to_string(w); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::Precondition;
}

// PF length on a rose from letter counts of the cyclic reduction.
double rose_length(const std::string& cyclic, const std::vector<double>& v) {
  double total = 0.0;
  for (char c : cyclic) total += v[static_cast<std::size_t>(std::tolower(c) - 'a')];
  return total;
}

const Endomorphism& thue_morse() {
  static const Endomorphism phi = endo(2, {"ab", "ba"});
  return phi;
}

}  // namespace

TEST(TreePoint, Validation) {
  EXPECT_EQ(code_of([] { (void)rose_tree({0.0, 0.0}); }), Errc::InvalidTree);
  EXPECT_EQ(code_of([] { (void)rose_tree({-1.0, 1.0}); }), Errc::InvalidTree);
  EXPECT_NO_THROW((void)rose_tree({0.0, 1.0}));
  EXPECT_TRUE(rose_tree({1.0, 2.0}).is_interior());
  EXPECT_FALSE(rose_tree({0.0, 2.0}).is_interior());
}

TEST(TreePoint, TreeLength) {
  const auto t = rose_tree({1.0, 2.0});
  EXPECT_DOUBLE_EQ(tree_length(t, w2("ab")), 3.0);
  EXPECT_DOUBLE_EQ(tree_length(t, w2("abA")), 2.0);
  EXPECT_DOUBLE_EQ(tree_length(t, Word{}), 0.0);
  const auto collapsed = rose_tree({0.0, 1.0});
  EXPECT_DOUBLE_EQ(tree_length(collapsed, w2("aaa")), 0.0);
  EXPECT_DOUBLE_EQ(tree_length(collapsed, w2("ab")), 1.0);
}

TEST(Witness, Rank2Length3) {
  const auto classes = witness_classes(2, 3);
  EXPECT_EQ(classes.size(), 12u);
  EXPECT_EQ(to_string(classes[0]), "a");
  EXPECT_EQ(to_string(classes[1]), "b");
  const auto two = witness_classes(2, 2);
  std::vector<std::string> names;
  for (const auto& c : two) names.push_back(to_string(c));
  EXPECT_EQ(names, (std::vector<std::string>{"a", "b", "aa", "ab", "aB", "bb"}));
}

TEST(Spectrum, ProjectiveDistance) {
  const auto classes = witness_classes(2, 3);
  const auto s1 = projectivize(spectrum(rose_tree({1.0, 1.0}), classes));
  const auto s2 = projectivize(spectrum(rose_tree({2.0, 2.0}), classes));
  EXPECT_NEAR(distance(s1, s2), 0.0, 1e-15);
  double sum = 0.0;
  for (double v : s1.values) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(RightAction, LengthIsPrecomposition) {
  const auto t = rose_tree({1.0, 2.0});
  const auto t1 = right_action(t, thue_morse());
  EXPECT_DOUBLE_EQ(tree_length(t1, w2("a")), 3.0);
  EXPECT_DOUBLE_EQ(tree_length(t1, w2("aB")), 6.0);
  EXPECT_EQ(t1.twists.size(), 1u);
  EXPECT_EQ(t1.twist(), thue_morse());
}

TEST(StableTree, ThueMorse) {
  const auto s = stable_tree(thue_morse());
  EXPECT_NEAR(s.pf.lambda, 2.0, 1e-12);
  EXPECT_NEAR(stable_length(s, w2("a")), 0.5, 1e-10);
  EXPECT_NEAR(stable_length(s, w2("ab")), 1.0, 1e-10);
  EXPECT_NEAR(stable_length(s, w2("abA")), 0.5, 1e-10);
}

TEST(StableTree, LengthsMatchSubstitutionOracle) {
  const auto aab = endo(2, {"aab", "ba"});
  const auto s = stable_tree(aab);
  const std::map<char, std::string> images{{'a', "aab"}, {'b', "ba"}};
  for (const auto& c : witness_classes(2, 4)) {
    const std::string g = to_string(c);
    const int k = 12;
    const double oracle_len = rose_length(oracle::cyclic_reduce(oracle::iterate(images, g, k)), s.pf.v) /
                              std::pow(s.pf.lambda, k);
    EXPECT_NEAR(stable_length(s, c.word()), oracle_len, 1e-8) << g;
  }
}

TEST(StableTree, OuterClassInvariance) {
  // Postcomposing with conjugation by a does not change stable lengths.
  const auto conj = endo(2, {"aabA", "abaA"});
  const auto s = stable_tree(thue_morse()), t = stable_tree(conj);
  const auto a = stable_spectrum(s, 3), b = stable_spectrum(t, 3);
  EXPECT_LT(distance(a, b), 1e-12);
}

TEST(Homothety, ThueMorseAndAab) {
  const auto h1 = homothety_check(stable_tree(thue_morse()), 4);
  EXPECT_TRUE(h1.pass);
  EXPECT_NEAR(h1.lambda, 2.0, 1e-12);
  const auto h2 = homothety_check(stable_tree(endo(2, {"aab", "ba"})), 4);
  EXPECT_TRUE(h2.pass);
  EXPECT_LT(h2.max_deviation, 1e-8);
}

TEST(Orbit, Examples) {
  const auto s = stable_tree(thue_morse());
  const auto rep = orbit_converge(rose_tree({1.0, 2.0}), s);
  EXPECT_TRUE(rep.converged);
  EXPECT_LE(rep.iterations, 60);
  EXPECT_LT(rep.distances.back(), 1e-6);
  const auto collapsed = orbit_converge(rose_tree({0.0, 1.0}), s);
  EXPECT_TRUE(collapsed.converged);
  // The PF rose is the stable tree itself.
  const auto fixed = orbit_converge(rose_tree({1.0, 1.0}), s);
  EXPECT_EQ(fixed.iterations, 0);
}

TEST(Orbit, NoConvergenceReported) {
  const auto s = stable_tree(thue_morse());
  Rng rng(3);
  const auto t = random_tree_point(2, rng);
  EXPECT_EQ(code_of([&] { (void)orbit_converge(t, s, 3, 1e-300, 2); }), Errc::NoConvergence);
}

TEST(Admissibility, Examples) {
  const auto ex = endo(3, {"a", "baB", "bbaBB"});
  const std::vector<int> ab{0, 1};
  const auto split = collapse_tree(3, ab);
  const auto v = admissibility_check(ex, split);
  EXPECT_EQ(v.verdict, Admissibility::Trivial);
  ASSERT_EQ(v.vertex_groups.size(), 1u);
  EXPECT_EQ(v.fixing_group, std::optional<std::size_t>(0));
  EXPECT_EQ(code_of([&] { (void)right_action(split, ex); }), Errc::TrivialPullback);

  const std::vector<int> a{0};
  EXPECT_EQ(admissibility_check(thue_morse(), collapse_tree(2, a)).verdict, Admissibility::NonTrivial);
  const std::vector<int> b{1};
  EXPECT_EQ(admissibility_check(thue_morse(), collapse_tree(2, b)).verdict, Admissibility::NonTrivial);
  EXPECT_EQ(admissibility_check(ex, rose_tree({1.0, 1.0, 1.0})).verdict, Admissibility::NonTrivial);
  const std::vector<int> c{2};
  EXPECT_EQ(admissibility_check(ex, collapse_tree(3, c)).verdict, Admissibility::NonTrivial);
}

TEST(Admissibility, VertexGroupsOfNonRose) {
  // Two vertices joined by a positive edge, each carrying a collapsed loop.
  MarkedGraph mg;
  mg.graph = Graph(2, {{0, 0}, {0, 1}, {1, 1}});
  const Basis b(2);
  mg.labels = {reduce("a", b), Word{}, reduce("b", b)};
  mg.marking = {{0}, {2, 4, 3}};
  const auto t = TreePoint::make(mg, {0.0, 1.0, 0.0});
  const auto groups = vertex_groups(t);
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(str(groups[0][0]), "a");
  EXPECT_EQ(str(groups[1][0]), "b");
  EXPECT_EQ(admissibility_check(endo(2, {"a", "aaa"}), t).verdict, Admissibility::Trivial);
  EXPECT_EQ(admissibility_check(endo(2, {"bab", "b"}), t).verdict, Admissibility::NonTrivial);
}

TEST(Rigidity, DecreasesWithK) {
  const auto c2 = rigidity_probe(thue_morse(), 2, 100, 42);
  const auto c4 = rigidity_probe(thue_morse(), 4, 100, 42);
  const auto c6 = rigidity_probe(thue_morse(), 6, 100, 42);
  EXPECT_GT(c2.min_length, 0.0);
  EXPECT_GT(c2.max_deviation, c4.max_deviation);
  EXPECT_GT(c4.max_deviation, c6.max_deviation);
  EXPECT_GE(c6.max_deviation, 1.0);
  const auto again = rigidity_probe(thue_morse(), 4, 100, 42);
  EXPECT_EQ(again.max_deviation, c4.max_deviation);
}

TEST(DynamicsProperty, ConjugationInvariance) {
  Rng rng(20);
  std::uniform_int_distribution<std::size_t> len(0, 8);
  for (int s = 0; s < 1000; ++s) {
    const auto t = random_tree_point(2, rng, s % 5 == 0);
    const Word g = random_word(2, len(rng), rng), w = random_word(2, len(rng), rng);
    ASSERT_NEAR(tree_length(t, g * w * g.inverse()), tree_length(t, w), 1e-9);
  }
}

TEST(DynamicsProperty, RightActionFunctorial) {
  Rng rng(21);
  const auto classes = witness_classes(2, 3);
  for (int s = 0; s < 100; ++s) {
    const auto t = random_tree_point(2, rng);
    const auto phi = random_endomorphism(2, 3, rng), psi = random_endomorphism(2, 3, rng);
    if (!is_injective(phi) || !is_injective(psi)) continue;
    const auto lhs = spectrum(right_action(right_action(t, phi), psi), classes);
    const auto rhs = spectrum(right_action(t, compose(phi, psi)), classes);
    for (std::size_t i = 0; i < classes.size(); ++i) ASSERT_NEAR(lhs.values[i], rhs.values[i], 1e-9);
  }
}

TEST(DynamicsProperty, StableScaling) {
  for (const auto& phi : {thue_morse(), endo(2, {"aab", "ba"})}) {
    const auto s = stable_tree(phi);
    for (const auto& c : witness_classes(2, 3)) {
      ASSERT_NEAR(stable_length(s, apply(phi, c.word())), s.pf.lambda * stable_length(s, c.word()), 1e-8);
    }
  }
}

TEST(DynamicsProperty, FreeActionsHavePositiveLengths) {
  Rng rng(22);
  for (int s = 0; s < 500; ++s) {
    const auto t = random_tree_point(3, rng);
    const Word g = random_word(3, 1 + static_cast<std::size_t>(s % 9), rng);
    ASSERT_GT(tree_length(t, g), 0.0);
  }
}

TEST(DynamicsProperty, StableSpectrumIsTheOnlySampledFixedPoint) {
  const auto s = stable_tree(thue_morse());
  const auto classes = witness_classes(2, 3);
  const auto stable = stable_spectrum(s, classes);
  auto pushed = [&](const TreePoint& t) {
    return distance(projectivize(spectrum(t, classes)), projectivize(spectrum(right_action(t, thue_morse()), classes)));
  };
  LengthSpectrum image{classes, {}};
  for (const auto& c : classes) image.values.push_back(stable_length(s, apply(thue_morse(), c.word())));
  EXPECT_LT(distance(stable, projectivize(image)), 1e-9);
  Rng rng(23);
  int samples = 0;
  while (samples < 50) {
    const auto t = random_tree_point(2, rng);
    if (distance(projectivize(spectrum(t, classes)), stable) < 1e-9) continue;
    ASSERT_GE(pushed(t), 1e-9);
    ++samples;
  }
}
