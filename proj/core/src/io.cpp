#include "freedyn/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "freedyn/error.hpp"

namespace freedyn {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return out;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(Errc::Parse, "line " + std::to_string(line) + ": " + what);
}

int parse_int(const Line& line, const std::string& tok) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(line.number, "expected an integer, got '" + tok + "'");
  return value;
}

double parse_double(const Line& line, const std::string& tok) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(line.number, "expected a number, got '" + tok + "'");
  return value;
}

Word parse_word(const Line& line, const std::string& tok, const Basis& basis) {
  if (tok == "-") return {};
  try {
    return reduce(tok, basis);
  } catch (const Error& e) {
    fail(line.number, e.what());
  }
}

int parse_rank(const Line& line) {
  if (line.tokens.size() != 2 || line.tokens[0] != "rank") fail(line.number, "expected 'rank <n>'");
  const int n = parse_int(line, line.tokens[1]);
  if (n < 1 || n > Basis::kMaxRank) fail(line.number, "rank must be between 1 and 26");
  return n;
}

int parse_generator(const Line& line, const std::string& tok, const Basis& basis) {
  if (tok.size() != 1 || tok[0] < 'a' || tok[0] > 'z') fail(line.number, "expected a generator, got '" + tok + "'");
  const int i = tok[0] - 'a';
  if (i >= basis.rank()) fail(line.number, "generator '" + tok + "' outside the basis");
  return i;
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, ptr);
  if (s.find_first_of(".e") == std::string::npos && s.find("inf") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

Endomorphism parse_endomorphism(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw Error(Errc::Parse, "line 1: empty endomorphism file");
  const Basis basis(parse_rank(lines.front()));
  std::vector<std::optional<Word>> images(static_cast<std::size_t>(basis.rank()));
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.tokens.size() < 2 || line.tokens[1] != "->") fail(line.number, "expected '<generator> -> <word>'");
    const int i = parse_generator(line, line.tokens[0], basis);
    if (images[static_cast<std::size_t>(i)]) fail(line.number, "duplicate image for '" + line.tokens[0] + "'");
    std::string joined;
    for (std::size_t t = 2; t < line.tokens.size(); ++t) joined += line.tokens[t] == "1" ? "" : line.tokens[t];
    images[static_cast<std::size_t>(i)] = parse_word(line, joined, basis);
  }
  std::vector<Word> out;
  for (int i = 0; i < basis.rank(); ++i) {
    if (!images[static_cast<std::size_t>(i)]) {
      fail(lines.back().number, std::string("missing image for '") + static_cast<char>('a' + i) + "'");
    }
    out.push_back(*images[static_cast<std::size_t>(i)]);
  }
  return Endomorphism(basis, std::move(out));
}

std::string format_endomorphism(const Endomorphism& phi) {
  std::string out = "rank " + std::to_string(phi.rank()) + "\n";
  for (int i = 0; i < phi.rank(); ++i) {
    out += static_cast<char>('a' + i);
    out += " -> " + to_string(phi.image(i)) + "\n";
  }
  return out;
}

TreePoint parse_tree_point(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw Error(Errc::Parse, "line 1: empty tree file");
  const Basis basis(parse_rank(lines.front()));
  std::optional<int> vertices;
  int base = 0;
  std::vector<GraphEdge> edges;
  std::vector<Word> labels;
  std::vector<double> lengths;
  std::map<std::string, int> edge_ids;
  std::vector<std::optional<EdgePath>> marking(static_cast<std::size_t>(basis.rank()));
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    const std::string& head = line.tokens[0];
    if (head == "vertices") {
      if (line.tokens.size() != 2) fail(line.number, "expected 'vertices <count>'");
      vertices = parse_int(line, line.tokens[1]);
      if (*vertices < 1) fail(line.number, "need at least one vertex");
    } else if (head == "base") {
      if (line.tokens.size() != 2) fail(line.number, "expected 'base <vertex>'");
      base = parse_int(line, line.tokens[1]);
    } else if (head == "edge") {
      if (!vertices) fail(line.number, "'vertices' must precede edges");
      if (line.tokens.size() != 6) fail(line.number, "expected 'edge <id> <tail> <head> <label> <length>'");
      const std::string& id = line.tokens[1];
      if (id.empty() || id[0] == '-' || edge_ids.count(id)) fail(line.number, "bad or duplicate edge id '" + id + "'");
      const int tail = parse_int(line, line.tokens[2]), hd = parse_int(line, line.tokens[3]);
      if (tail < 0 || tail >= *vertices || hd < 0 || hd >= *vertices) fail(line.number, "endpoint out of range");
      edge_ids[id] = static_cast<int>(edges.size());
      edges.push_back({tail, hd});
      labels.push_back(parse_word(line, line.tokens[4], basis));
      lengths.push_back(parse_double(line, line.tokens[5]));
    } else if (head == "marking") {
      if (line.tokens.size() < 3 || line.tokens[2] != "->") fail(line.number, "expected 'marking <generator> -> <edges>'");
      const int i = parse_generator(line, line.tokens[1], basis);
      if (marking[static_cast<std::size_t>(i)]) fail(line.number, "duplicate marking for '" + line.tokens[1] + "'");
      EdgePath p;
      for (std::size_t t = 3; t < line.tokens.size(); ++t) {
        std::string tok = line.tokens[t];
        const bool inv = !tok.empty() && tok[0] == '-';
        if (inv) tok.erase(0, 1);
        const auto it = edge_ids.find(tok);
        if (it == edge_ids.end()) fail(line.number, "unknown edge '" + tok + "'");
        p.push_back(inv ? reversed(forward(it->second)) : forward(it->second));
      }
      marking[static_cast<std::size_t>(i)] = std::move(p);
    } else {
      fail(line.number, "unknown directive '" + head + "'");
    }
  }
  const int last = lines.back().number;
  if (!vertices) fail(last, "missing 'vertices'");
  if (base < 0 || base >= *vertices) fail(last, "base vertex out of range");
  MarkedGraph mg;
  try {
    mg.graph = Graph(*vertices, std::move(edges));
  } catch (const Error& e) {
    fail(last, e.what());
  }
  mg.base = base;
  mg.labels = std::move(labels);
  for (int i = 0; i < basis.rank(); ++i) {
    if (!marking[static_cast<std::size_t>(i)]) {
      fail(last, std::string("missing marking for '") + static_cast<char>('a' + i) + "'");
    }
    mg.marking.push_back(*marking[static_cast<std::size_t>(i)]);
  }
  return TreePoint::make(std::move(mg), std::move(lengths));
}

std::string format_tree_point(const TreePoint& t) {
  const MarkedGraph& mg = t.graph;
  std::ostringstream out;
  out << "rank " << t.rank() << "\n";
  out << "vertices " << mg.graph.vertex_count() << "\n";
  if (mg.base != 0) out << "base " << mg.base << "\n";
  for (int e = 0; e < mg.graph.edge_count(); ++e) {
    const auto& edge = mg.graph.edges()[static_cast<std::size_t>(e)];
    const Word& label = mg.labels[static_cast<std::size_t>(e)];
    out << "edge e" << e + 1 << ' ' << edge.tail << ' ' << edge.head << ' ' << (label.empty() ? "-" : to_string(label))
        << ' ' << format_double(t.lengths[static_cast<std::size_t>(e)]) << "\n";
  }
  for (int i = 0; i < t.rank(); ++i) {
    out << "marking " << static_cast<char>('a' + i) << " ->";
    for (OrientedEdge oe : mg.marking[static_cast<std::size_t>(i)]) {
      out << ' ' << (is_reversed(oe) ? "-" : "") << 'e' << edge_of(oe) + 1;
    }
    out << "\n";
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Parse, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace freedyn
