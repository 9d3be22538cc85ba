// Acceptance checks.  Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "freedyn/freedyn.hpp"
#include "oracles.hpp"

using namespace freedyn;

namespace {

constexpr double kPfTol = 1e-9;
constexpr double kPfMaxSeconds = 1e-3;
constexpr double kHomothetyTol = 1e-8;
constexpr double kOrbitTol = 1e-6;
constexpr int kOrbitMaxIter = 60;
constexpr double kOrbitMaxSeconds = 10.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Endomorphism endo(int rank, std::vector<std::string_view> ws) {
  const Basis b(rank);
  std::vector<Word> out;
  for (auto s : ws) out.push_back(reduce(s, b));
  return Endomorphism(b, std::move(out));
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::string name(const Endomorphism& phi) {
  std::string out;
  for (int i = 0; i < phi.rank(); ++i) {
    out += (i ? ", " : "{") + std::string(1, static_cast<char>('a' + i)) + "->" + to_string(phi.image(i));
  }
  return out + "}";
}

int failures = 0;

void report(int n, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", n, detail.c_str());
  if (!pass) ++failures;
}

void guarded(int n, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(n, false, std::string("exception: ") + e.what());
  }
}

void criterion1() {
  struct Case {
    TransitionMatrix m;
    double expected;
  };
  const Case cases[] = {{{{0, 1}, {1, 1}}, oracle::root2(0, 1, 1, 1)}, {{{2, 1}, {1, 1}}, oracle::root2(2, 1, 1, 1)}};
  bool pass = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto t0 = Clock::now();
    const PFData pf = pf_data(c.m);
    const double dt = seconds_since(t0);
    const double err = std::abs(pf.lambda - c.expected);
    pass = pass && err <= kPfTol && dt < kPfMaxSeconds;
    detail += "lambda=" + fmt(pf.lambda) + " err=" + fmt(err) + " t=" + fmt(dt) + "s; ";
  }
  report(1, pass, detail);
}

void criterion2() {
  bool pass = true;
  std::string detail;
  for (const auto& phi : {endo(2, {"ab", "ba"}), endo(2, {"aab", "ba"})}) {
    const auto h = homothety_check(stable_tree(phi), 6, kHomothetyTol);
    pass = pass && h.pass && h.max_deviation <= kHomothetyTol;
    detail += name(phi) + ": classes=" + std::to_string(h.classes) + " dev=" + fmt(h.max_deviation) + "; ";
  }
  report(2, pass, detail);
}

void criterion3() {
  const auto s = stable_tree(endo(2, {"ab", "ba"}));
  Rng rng(7);
  const auto t0 = Clock::now();
  int worst_iter = 0, converged = 0;
  double worst_dist = 0.0;
  for (int i = 0; i < 25; ++i) {
    const TreePoint t = random_tree_point(2, rng, i >= 20);
    try {
      const auto r = orbit_converge(t, s, 3, kOrbitTol, kOrbitMaxIter);
      worst_iter = std::max(worst_iter, r.iterations);
      worst_dist = std::max(worst_dist, r.distances.back());
      if (r.converged && r.distances.back() < kOrbitTol) ++converged;
    } catch (const Error& e) {
      worst_iter = kOrbitMaxIter;
    }
  }
  const double dt = seconds_since(t0);
  report(3, converged == 25 && dt < kOrbitMaxSeconds,
         std::to_string(converged) + "/25 converged, max iterations=" + std::to_string(worst_iter) +
             " final distance<=" + fmt(worst_dist) + " t=" + fmt(dt) + "s");
}

std::vector<Endomorphism> foldable(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::uniform_int_distribution<int> rank(2, 3);
  std::vector<Endomorphism> out;
  while (static_cast<int>(out.size()) < count) {
    const auto phi = random_endomorphism(rank(rng), 3, rng);
    if (!is_injective(phi) || is_surjective(phi)) continue;
    try {
      (void)fold_to_immersion(rose_map(phi));
    } catch (const Error&) {
      continue;
    }
    out.push_back(phi);
  }
  return out;
}

void criterion4() {
  const auto tm = endo(2, {"ab", "ba"});
  const auto rays = boundary_fixed_points(tm, 8);
  std::vector<std::string> names;
  for (const auto& r : rays) names.push_back(to_string(r));
  const bool tm_ok = names == std::vector<std::string>{"abbabaab", "baababba"};

  int bounded = 0;
  for (const auto& phi : foldable(30, 20)) {
    if (boundary_rays(phi, 8).within_bound()) ++bounded;
  }
  const auto probe = attraction_probe(tm, 100, 6, 42);
  std::string detail = "rays:";
  for (const auto& n : names) detail += " " + n;
  detail += "; bound 2n held " + std::to_string(bounded) + "/20; attraction failures=" +
            std::to_string(probe.failures) + "/100 at depth 6";
  report(4, tm_ok && bounded == 20 && probe.pass, detail);
}

// Longest common prefix, per first letter, of phi^k applied to short products
// of generators.
std::vector<std::string> prefix_oracle(const std::map<char, std::string>& phi, int k) {
  const std::string letters = "aAbB";
  std::vector<std::string> elements;
  for (char x : letters) {
    elements.emplace_back(1, x);
    for (char y : letters) {
      elements.push_back(oracle::reduce(std::string{x, y}));
      for (char z : letters) elements.push_back(oracle::reduce(std::string{x, y, z}));
    }
  }
  std::map<char, std::string> lcp;
  std::set<char> seen;
  for (const auto& e : elements) {
    if (e.empty()) continue;
    const std::string h = oracle::iterate(phi, e, k);
    if (h.empty()) continue;
    const char first = h[0];
    if (seen.insert(first).second) {
      lcp[first] = h;
    } else {
      std::string& p = lcp[first];
      std::size_t n = 0;
      while (n < p.size() && n < h.size() && p[n] == h[n]) ++n;
      p.resize(n);
    }
  }
  std::vector<std::string> out;
  for (const auto& [c, p] : lcp) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

void criterion5() {
  const auto tm = endo(2, {"ab", "ba"});
  const std::map<char, std::string> images{{'a', "ab"}, {'b', "ba"}};
  bool pass = true;
  std::size_t previous = 0;
  std::string detail;
  for (int k = 1; k <= 4; ++k) {
    const auto c = cylinder_cover(tm, k);
    std::vector<std::string> got;
    for (const auto& p : c.prefixes) got.push_back(to_string(p));
    std::sort(got.begin(), got.end());
    const bool match = got == prefix_oracle(images, k);
    pass = pass && c.prefixes.size() == 4 && c.min_length() > previous && match;
    previous = c.min_length();
    detail += "k=" + std::to_string(k) + " count=" + std::to_string(c.prefixes.size()) +
              " min=" + std::to_string(c.min_length()) + (match ? "" : " (oracle mismatch)") + "; ";
  }
  report(5, pass, detail);
}

void criterion6() {
  const auto fib = expansiveness_probe(endo(2, {"b", "ba"}), 5);
  const auto tm = expansiveness_probe(endo(2, {"ab", "ba"}), 5);
  const auto ex = expansiveness_probe(endo(3, {"a", "baB", "bbaBB"}), 5);
  bool increasing = tm.girth_sequence.size() == 5;
  for (std::size_t i = 1; i < tm.girth_sequence.size(); ++i) {
    increasing = increasing && tm.girth_sequence[i].second > tm.girth_sequence[i - 1].second;
  }
  report(6,
         fib.verdict == ExpansivenessVerdict::Surjective && tm.verdict == ExpansivenessVerdict::ExpansiveLikely &&
             increasing && ex.verdict == ExpansivenessVerdict::NotExpansive,
         "FIB " + to_string(fib.verdict) + ", TM " + to_string(tm.verdict) + (increasing ? " (girth increasing)" : "") +
             ", EX " + to_string(ex.verdict));
}

void criterion7() {
  const auto ex = endo(3, {"a", "baB", "bbaBB"});
  const std::vector<int> collapsed{0, 1};
  const TreePoint split = collapse_tree(3, collapsed);
  const auto v = admissibility_check(ex, split);
  std::string raised = "none";
  try {
    (void)right_action(split, ex);
  } catch (const Error& e) {
    raised = std::string(to_string(e.code()));
  }
  report(7, v.verdict == Admissibility::Trivial && raised == "TrivialPullback",
         "verdict " + to_string(v.verdict) + ", right_action raised " + raised);
}

void criterion8() {
  const auto tm = endo(2, {"ab", "ba"});
  std::string detail;
  double min_length = INFINITY;
  std::vector<double> c;
  for (int k : {2, 4, 6}) {
    const auto r = rigidity_probe(tm, k, 100, 42);
    c.push_back(r.max_deviation);
    min_length = std::min(min_length, r.min_length);
    detail += "C" + std::to_string(k) + "=" + fmt(r.max_deviation) + " ";
  }
  detail += "min l_T(h)=" + fmt(min_length);
  report(8, min_length > 0 && c[0] > c[1] && c[1] > c[2], detail);
}

void criterion9() {
  Rng rng(12);
  std::uniform_int_distribution<int> rank(2, 3);
  int power_ok = 0;
  for (int s = 0; s < 200; ++s) {
    const auto f = rose_map(random_endomorphism(rank(rng), 3, rng));
    const auto m = transition_matrix(f);
    bool ok = true;
    for (int r = 1; r <= 5; ++r) ok = ok && transition_matrix(iterate(f, r)) == matrix_power(m, r);
    power_ok += ok;
  }

  Rng grng(5);
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_int_distribution<std::size_t> len(1, 7);
  int confluent = 0;
  for (int s = 0; s < 500; ++s) {
    const int n = rank(grng);
    std::vector<Word> gens;
    const int k = count(grng);
    for (int i = 0; i < k; ++i) gens.push_back(random_word(n, len(grng), grng));
    confluent += subgroup_graph(gens, n) == subgroup_graph(gens, n, FoldOrder{static_cast<std::uint64_t>(s) + 1});
  }

  int primitive_ok = 0, total = 0;
  for (int code = 0; code < 19683; ++code) {
    std::array<std::array<int, 3>, 3> a{};
    TransitionMatrix m(3);
    int c = code;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c % 3;
        m.at(i, j) = c % 3;
        c /= 3;
      }
    }
    ++total;
    primitive_ok += is_primitive(m) == oracle::positive_power<3>(a, 5);
  }
  report(9, power_ok == 200 && confluent == 500 && primitive_ok == total,
         "M(f^r)=M^r " + std::to_string(power_ok) + "/200, confluence " + std::to_string(confluent) +
             "/500, primitivity " + std::to_string(primitive_ok) + "/" + std::to_string(total));
}

}  // namespace

int main() {
  guarded(1, criterion1);
  guarded(2, criterion2);
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, criterion7);
  guarded(8, criterion8);
  guarded(9, criterion9);
  return failures == 0 ? 0 : 1;
}
