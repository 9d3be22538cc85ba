#include "freedyn/graphmap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "freedyn/error.hpp"

namespace freedyn {

EdgePath GraphMap::image(OrientedEdge oe) const {
  const EdgePath& p = edge_image.at(static_cast<std::size_t>(edge_of(oe)));
  return is_reversed(oe) ? reverse_path(p) : p;
}

EdgePath GraphMap::image_of_path(std::span<const OrientedEdge> p) const {
  EdgePath out;
  for (OrientedEdge oe : p) {
    const EdgePath& img = edge_image.at(static_cast<std::size_t>(edge_of(oe)));
    if (!is_reversed(oe)) {
      out.insert(out.end(), img.begin(), img.end());
    } else {
      for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(reversed(*it));
    }
  }
  return out;
}

void GraphMap::validate() const {
  const Graph& g = graph.graph;
  if (vertex_image.size() != static_cast<std::size_t>(g.vertex_count()) ||
      edge_image.size() != static_cast<std::size_t>(g.edge_count())) {
    throw Error(Errc::InvalidGraph, "graph map size does not match its graph");
  }
  for (int v : vertex_image) {
    if (v < 0 || v >= g.vertex_count()) throw Error(Errc::InvalidGraph, "vertex image out of range");
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges()[static_cast<std::size_t>(e)];
    const int from = vertex_image[static_cast<std::size_t>(edge.tail)];
    const int to = vertex_image[static_cast<std::size_t>(edge.head)];
    if (!g.is_path(edge_image[static_cast<std::size_t>(e)], from, to)) {
      throw Error(Errc::InvalidGraph, "image of e" + std::to_string(e + 1) + " is not a path between vertex images");
    }
  }
}

GraphMap rose_map(const Endomorphism& phi) {
  if (phi.has_trivial_image()) throw Error(Errc::TrivialImage, "some generator maps to the identity");
  GraphMap f{MarkedGraph::rose(phi.rank()), {0}, {}};
  for (const Word& w : phi.images()) {
    EdgePath p;
    for (Letter x : w.letters()) {
      const OrientedEdge oe = forward(generator_index(x));
      p.push_back(x > 0 ? oe : reversed(oe));
    }
    f.edge_image.push_back(std::move(p));
  }
  return f;
}

Endomorphism induced_endomorphism(const GraphMap& f) {
  const MarkedGraph& mg = f.graph;
  const auto tree = spanning_tree_paths(mg.graph, mg.base);
  const EdgePath& to_image = tree[static_cast<std::size_t>(f.vertex_image[static_cast<std::size_t>(mg.base)])];
  const EdgePath back = reverse_path(to_image);
  std::vector<Word> images;
  for (const auto& loop : mg.marking) {
    EdgePath p = to_image;
    const EdgePath img = f.image_of_path(loop);
    p.insert(p.end(), img.begin(), img.end());
    p.insert(p.end(), back.begin(), back.end());
    images.push_back(mg.read(p));
  }
  return Endomorphism(Basis(mg.rank()), std::move(images));
}

GraphMap iterate(const GraphMap& f, int r) {
  if (r < 0) throw Error(Errc::Precondition, "iterate: exponent must be nonnegative");
  GraphMap out = f;
  if (r == 0) {
    std::iota(out.vertex_image.begin(), out.vertex_image.end(), 0);
    for (int e = 0; e < f.edge_count(); ++e) out.edge_image[static_cast<std::size_t>(e)] = {forward(e)};
    return out;
  }
  for (int i = 1; i < r; ++i) {
    for (auto& p : out.edge_image) p = f.image_of_path(p);
    for (auto& v : out.vertex_image) v = f.vertex_image[static_cast<std::size_t>(v)];
  }
  return out;
}

GraphMap tightened(GraphMap f) {
  for (auto& p : f.edge_image) tighten(p);
  return f;
}

TransitionMatrix::TransitionMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : size_(static_cast<int>(rows.size())) {
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw Error(Errc::Precondition, "transition matrix must be square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

TransitionMatrix TransitionMatrix::identity(int size) {
  TransitionMatrix m(size);
  for (int i = 0; i < size; ++i) m.at(i, i) = 1;
  return m;
}

TransitionMatrix operator*(const TransitionMatrix& x, const TransitionMatrix& y) {
  if (x.size() != y.size()) throw Error(Errc::Precondition, "matrix sizes differ");
  const int n = x.size();
  TransitionMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const std::int64_t a = x.at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < n; ++j) out.at(i, j) += a * y.at(k, j);
    }
  }
  return out;
}

TransitionMatrix matrix_power(const TransitionMatrix& m, int r) {
  TransitionMatrix out = TransitionMatrix::identity(m.size());
  for (int i = 0; i < r; ++i) out = out * m;
  return out;
}

std::string to_string(const TransitionMatrix& m) {
  std::ostringstream os;
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) {
      if (j) os << ' ';
      os << m.at(i, j);
    }
    os << '\n';
  }
  return os.str();
}

TransitionMatrix transition_matrix(const GraphMap& f) {
  TransitionMatrix m(f.edge_count());
  for (int j = 0; j < f.edge_count(); ++j) {
    for (OrientedEdge oe : f.edge_image[static_cast<std::size_t>(j)]) ++m.at(edge_of(oe), j);
  }
  return m;
}

bool is_primitive(const TransitionMatrix& m) {
  const int n = m.size();
  if (n == 0) return false;
  std::vector<char> base(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) base[static_cast<std::size_t>(i * n + j)] = m.at(i, j) > 0;
  }
  std::vector<char> power = base;
  const int bound = (n - 1) * (n - 1) + 1;
  for (int r = 1;; ++r) {
    if (std::all_of(power.begin(), power.end(), [](char c) { return c != 0; })) return true;
    if (r == bound) return false;
    std::vector<char> next(power.size(), 0);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        if (!power[static_cast<std::size_t>(i * n + k)]) continue;
        for (int j = 0; j < n; ++j) next[static_cast<std::size_t>(i * n + j)] |= base[static_cast<std::size_t>(k * n + j)];
      }
    }
    power = std::move(next);
  }
}

PFData pf_data(const TransitionMatrix& m) {
  if (!is_primitive(m)) throw Error(Errc::NotPrimitive, "transition matrix is not primitive");
  const int n = m.size();
  const auto un = static_cast<std::size_t>(n);
  PFData pf;
  pf.v.assign(un, 1.0 / n);
  std::vector<double> w(un);
  double lambda = 0.0;
  constexpr int kMaxIterations = 100000;
  for (int it = 1; it <= kMaxIterations; ++it) {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += static_cast<double>(m.at(i, j)) * pf.v[static_cast<std::size_t>(j)];
      w[static_cast<std::size_t>(i)] = s;
    }
    const double next = std::accumulate(w.begin(), w.end(), 0.0);
    double dv = 0.0;
    for (std::size_t i = 0; i < un; ++i) {
      const double x = w[i] / next;
      dv = std::max(dv, std::abs(x - pf.v[i]));
      pf.v[i] = x;
    }
    const double dl = std::abs(next - lambda);
    lambda = next;
    pf.iterations = it;
    if (dl < 1e-12 && dv < 1e-14) break;
  }
  pf.lambda = lambda;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += static_cast<double>(m.at(i, j)) * pf.v[static_cast<std::size_t>(j)];
    pf.residual = std::max(pf.residual, std::abs(s - lambda * pf.v[static_cast<std::size_t>(i)]));
  }
  return pf;
}

TurnTable turn_table(const GraphMap& f) {
  const Graph& g = f.graph.graph;
  const int directions = 2 * g.edge_count();
  TurnTable table;
  table.direction_map.resize(static_cast<std::size_t>(directions));
  for (OrientedEdge d = 0; d < directions; ++d) {
    const EdgePath& img = f.edge_image[static_cast<std::size_t>(edge_of(d))];
    if (img.empty()) throw Error(Errc::DegenerateEdge, "e" + std::to_string(edge_of(d) + 1) + " maps to a vertex");
    table.direction_map[static_cast<std::size_t>(d)] = is_reversed(d) ? reversed(img.back()) : img.front();
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto ds = g.directions_at(v);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      for (std::size_t j = i + 1; j < ds.size(); ++j) table.turns.push_back({ds[i], ds[j]});
    }
  }
  // 0 unknown, 1 in progress, 2 legal, 3 illegal.  The image of a turn is a
  // turn at the image vertex or degenerate, so following the orbit decides it.
  std::vector<char> state(static_cast<std::size_t>(directions) * directions, 0);
  auto key = [directions](OrientedEdge a, OrientedEdge b) {
    return static_cast<std::size_t>(std::min(a, b) * directions + std::max(a, b));
  };
  for (const Turn& t : table.turns) {
    std::vector<std::size_t> chain;
    OrientedEdge a = t.first, b = t.second;
    char verdict = 2;
    while (true) {
      if (a == b) {
        verdict = 3;
        break;
      }
      const std::size_t k = key(a, b);
      if (state[k] == 2 || state[k] == 3) {
        verdict = state[k];
        break;
      }
      if (state[k] == 1) break;  // cycle of nondegenerate turns
      state[k] = 1;
      chain.push_back(k);
      a = table.direction_map[static_cast<std::size_t>(a)];
      b = table.direction_map[static_cast<std::size_t>(b)];
    }
    for (std::size_t k : chain) state[k] = verdict;
    if (verdict == 3) table.illegal.push_back(t);
  }
  return table;
}

bool is_immersion(const GraphMap& f) {
  const Graph& g = f.graph.graph;
  for (const auto& p : f.edge_image) {
    if (p.empty() || !is_tight(p)) return false;
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<OrientedEdge> firsts;
    for (OrientedEdge d : g.directions_at(v)) firsts.push_back(f.image(d).front());
    std::sort(firsts.begin(), firsts.end());
    if (std::adjacent_find(firsts.begin(), firsts.end()) != firsts.end()) return false;
  }
  return true;
}

std::vector<double> assign_pf_metric(const GraphMap& f) { return pf_data(transition_matrix(f)).v; }

double path_length(std::span<const OrientedEdge> p, std::span<const double> lengths) {
  double s = 0.0;
  for (OrientedEdge oe : p) s += lengths[static_cast<std::size_t>(edge_of(oe))];
  return s;
}

int default_fold_budget(const GraphMap& f) {
  std::size_t total = 0;
  for (const auto& p : f.edge_image) total += p.size();
  return static_cast<int>(10 * static_cast<std::size_t>(f.graph.rank()) * std::max<std::size_t>(total, 1));
}

std::string dump(const GraphMap& f) {
  std::ostringstream os;
  for (int e = 0; e < f.edge_count(); ++e) {
    os << 'e' << e + 1 << ": " << to_string(f.graph.labels[static_cast<std::size_t>(e)]) << " -> "
       << path_to_string(f.edge_image[static_cast<std::size_t>(e)]) << '\n';
  }
  os << "matrix\n" << to_string(transition_matrix(f));
  return os.str();
}

}  // namespace freedyn
