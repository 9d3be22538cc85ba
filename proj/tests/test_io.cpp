#include <gtest/gtest.h>

#include <string>

#include "freedyn/error.hpp"
#include "freedyn/io.hpp"

using namespace freedyn;

namespace {

std::string data(const std::string& name) { return read_text_file(std::string(FREEDYN_DATA_DIR) + "/" + name); }

std::string parse_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Parse);
    return e.what();
  }
  ADD_FAILURE() << "no error thrown";
  return {};
}

}  // namespace

TEST(Io, EndomorphismRoundTrip) {
  const auto tm = parse_endomorphism(data("tm.endo"));
  EXPECT_EQ(tm.rank(), 2);
  EXPECT_EQ(to_string(tm.image(0)), "ab");
  EXPECT_EQ(to_string(tm.image(1)), "ba");
  EXPECT_EQ(parse_endomorphism(format_endomorphism(tm)), tm);

  const auto fib = parse_endomorphism(data("fib.endo"));
  EXPECT_EQ(to_string(fib.image(0)), "b");
  const auto ex = parse_endomorphism(data("ex.endo"));
  EXPECT_EQ(to_string(ex.image(2)), "bbaBB");
  EXPECT_EQ(parse_endomorphism(format_endomorphism(ex)), ex);
}

TEST(Io, EndomorphismSpacingAndTrivialImage) {
  const auto phi = parse_endomorphism("rank 2\n  a ->  a b  # comment\nb -> 1\n");
  EXPECT_EQ(to_string(phi.image(0)), "ab");
  EXPECT_TRUE(phi.image(1).empty());
  EXPECT_EQ(parse_endomorphism(format_endomorphism(phi)), phi);
}

TEST(Io, EndomorphismErrors) {
  EXPECT_NE(parse_error([] { (void)parse_endomorphism(data("bad.endo")); }).find("line 3"), std::string::npos);
  EXPECT_NE(parse_error([] { (void)parse_endomorphism("rank 2\na -> ab\n"); }).find("b"), std::string::npos);
  EXPECT_NE(parse_error([] { (void)parse_endomorphism("a -> ab\n"); }).find("line 1"), std::string::npos);
  EXPECT_NE(parse_error([] { (void)parse_endomorphism("rank 2\na -> ac\nb -> b\n"); }).find("line 2"),
            std::string::npos);
  (void)parse_error([] { (void)parse_endomorphism("rank two\n"); });
  (void)parse_error([] { (void)parse_endomorphism(""); });
  (void)parse_error([] { (void)read_text_file("/nonexistent/file.endo"); });
}

TEST(Io, TreePointRoundTrip) {
  const auto t = parse_tree_point(data("rose12.tree"));
  EXPECT_EQ(t.rank(), 2);
  EXPECT_EQ(t.lengths, (std::vector<double>{1.0, 2.0}));
  const auto again = parse_tree_point(format_tree_point(t));
  EXPECT_EQ(again.lengths, t.lengths);
  EXPECT_EQ(again.graph.marking, t.graph.marking);
  EXPECT_EQ(again.graph.labels, t.graph.labels);
  EXPECT_EQ(again.graph.base, t.graph.base);

  const auto split = parse_tree_point(data("ex_split.tree"));
  EXPECT_EQ(split.lengths, (std::vector<double>{0.0, 0.0, 1.0}));
  EXPECT_EQ(parse_tree_point(format_tree_point(split)).lengths, split.lengths);
}

TEST(Io, TreePointBaseAndEmptyLabels) {
  const std::string text =
      "rank 2\n"
      "vertices 2\n"
      "base 0\n"
      "edge e1 0 0 a 0\n"
      "edge e2 0 1 - 1\n"
      "edge e3 1 1 b 0.5\n"
      "marking a -> e1\n"
      "marking b -> e2 e3 -e2\n";
  const auto t = parse_tree_point(text);
  EXPECT_EQ(t.graph.graph.vertex_count(), 2);
  EXPECT_TRUE(t.graph.labels[1].empty());
  EXPECT_EQ(t.lengths, (std::vector<double>{0.0, 1.0, 0.5}));
  const auto again = parse_tree_point(format_tree_point(t));
  EXPECT_EQ(again.graph.marking, t.graph.marking);
  EXPECT_EQ(again.graph.labels, t.graph.labels);
  EXPECT_EQ(again.lengths, t.lengths);
}

TEST(Io, TreePointErrors) {
  EXPECT_NE(parse_error([] { (void)parse_tree_point("rank 1\nvertices 1\nfoo 3\n"); }).find("line 3"),
            std::string::npos);
  (void)parse_error([] { (void)parse_tree_point("rank 1\nvertices 1\nedge e1 0 0 a 1\n"); });
  (void)parse_error([] { (void)parse_tree_point("rank 1\nvertices 1\nedge e1 0 0 a x\nmarking a -> e1\n"); });
  (void)parse_error([] { (void)parse_tree_point("rank 1\nvertices 1\nedge e1 0 0 a 1\nmarking a -> e9\n"); });
}
