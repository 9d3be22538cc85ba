#include "commands.hpp"

#include <chrono>
#include <sstream>

#include "freedyn/freedyn.hpp"

namespace freedyn::cli {

namespace {

using Json = nlohmann::ordered_json;

Error with_path(const Error& e, const std::string& path) {
  std::string msg = e.what();
  const std::string code = std::string(to_string(e.code())) + ": ";
  if (msg.rfind(code, 0) == 0) msg.erase(0, code.size());
  return Error(e.code(), path + ": " + msg);
}

Endomorphism load_endo(const Options& o) {
  if (o.endo.empty()) throw Error(Errc::Parse, "an endomorphism file is required (-f)");
  try {
    return parse_endomorphism(read_text_file(o.endo));
  } catch (const Error& e) {
    throw with_path(e, o.endo);
  }
}

TreePoint load_tree(const std::string& path) {
  try {
    return parse_tree_point(read_text_file(path));
  } catch (const Error& e) {
    throw with_path(e, path);
  }
}

Json words_json(const std::vector<Word>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(to_string(w));
  return out;
}

Json endo_json(const Endomorphism& phi) {
  Json images = Json::array();
  for (const auto& w : phi.images()) images.push_back(to_string(w));
  return Json{{"rank", phi.rank()}, {"images", images}};
}

Json matrix_json(const TransitionMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.size(); ++j) row.push_back(m.at(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json spectrum_json(const LengthSpectrum& s) {
  Json out = Json::array();
  for (std::size_t i = 0; i < s.classes.size(); ++i) {
    out.push_back(Json{{"class", to_string(s.classes[i])}, {"value", s.values[i]}});
  }
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::string direction_name(const GraphMap& f, OrientedEdge d) {
  std::string s = (is_reversed(d) ? "-e" : "e") + std::to_string(edge_of(d) + 1);
  if (f.graph.graph.vertex_count() == 1) s = to_string(f.graph.read(EdgePath{d}));
  return s;
}

TreePoint splitting_tree(const Options& o, int rank) {
  if (!o.tree.empty()) return load_tree(o.tree);
  const std::string prefix = "collapse:";
  if (o.splitting.rfind(prefix, 0) != 0) {
    throw Error(Errc::Parse, "--splitting expects collapse:<generators>, got '" + o.splitting + "'");
  }
  const Basis basis(rank);
  std::vector<int> collapsed;
  std::stringstream list(o.splitting.substr(prefix.size()));
  for (std::string tok; std::getline(list, tok, ',');) {
    if (tok.size() != 1 || tok[0] < 'a' || tok[0] > 'z' || !basis.contains(basis.letter(tok[0]))) {
      throw Error(Errc::Parse, "--splitting: '" + tok + "' is not a generator");
    }
    collapsed.push_back(tok[0] - 'a');
  }
  if (collapsed.empty()) throw Error(Errc::Parse, "--splitting names no generator");
  return collapse_tree(rank, collapsed);
}

}  // namespace

Outcome run_analyze(const Options& o) {
  const Endomorphism phi = load_endo(o);
  Outcome out;
  Json r;
  std::ostringstream text;
  text << "endomorphism: " << to_string(phi) << "\n";

  const FoldedGraph image = core(image_graph(phi), true);
  const bool injective = is_injective(phi);
  const bool surjective = is_surjective(phi);
  r["injective"] = injective;
  r["image_rank"] = image.cycle_rank();
  r["surjective"] = surjective;
  text << "injective: " << (injective ? "true" : "false") << " (image rank " << image.cycle_rank() << ")\n";
  text << "surjective: " << (surjective ? "true" : "false") << "\n";

  if (injective) {
    const auto probe = expansiveness_probe(phi, o.kmax);
    Json girths = Json::array();
    for (const auto& [k, g] : probe.girth_sequence) girths.push_back(Json{{"k", k}, {"girth", g}});
    Json ex{{"verdict", to_string(probe.verdict)}, {"kmax", probe.kmax}, {"girths", girths}};
    if (probe.periodic_generator) {
      ex["periodic_generator"] = Json{{"generator", std::string(1, static_cast<char>('a' + probe.periodic_generator->first))},
                                      {"period", probe.periodic_generator->second}};
    }
    r["expansiveness"] = ex;
    text << "expansiveness: " << to_string(probe.verdict) << "\n";
  }

  const GraphMap rose = rose_map(phi);
  const bool immersion = is_immersion(rose);
  r["immersion"] = immersion;
  text << "immersion: " << (immersion ? "true" : "false") << "\n";
  const TurnTable turns = turn_table(rose);
  Json illegal = Json::array();
  for (const auto& t : turns.illegal) {
    illegal.push_back(Json::array({direction_name(rose, t.first), direction_name(rose, t.second)}));
  }
  r["illegal_turns"] = illegal;
  text << "illegal turns: " << turns.illegal.size() << "\n";

  if (injective && !surjective) {
    try {
      const GraphMap f = fold_to_immersion(rose);
      const TransitionMatrix m = transition_matrix(f);
      const bool primitive = is_primitive(m);
      Json rep{{"edges", f.edge_count()}, {"vertices", f.vertex_count()}, {"matrix", matrix_json(m)},
               {"primitive", primitive}};
      text << "representative: " << f.edge_count() << " edges, " << f.vertex_count() << " vertices\n";
      text << "transition matrix:\n" << to_string(m);
      text << "primitive: " << (primitive ? "true" : "false") << "\n";
      if (primitive) {
        const PFData pf = pf_data(m);
        rep["lambda"] = pf.lambda;
        rep["pf_vector"] = pf.v;
        rep["residual"] = pf.residual;
        text << "lambda: " << fmt(pf.lambda) << "\n";
      }
      if (o.dump_graph) rep["graph_map"] = dump(f);
      r["representative"] = rep;
      const bool expansive = r["expansiveness"]["verdict"] == "ExpansiveLikely";
      r["irreducibility_certificate"] = Json{{"primitive_immersion", primitive},
                                             {"expansive_evidence", expansive},
                                             {"holds", primitive && expansive},
                                             {"kind", "semi-decision"}};
      text << "irreducibility certificate (semi-decision): " << (primitive && expansive ? "yes" : "no") << "\n";
    } catch (const Error& e) {
      r["representative"] = Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
      text << "representative: " << e.what() << "\n";
    }
  }
  if (o.dump_graph) {
    r["stallings_graph"] = dump(image);
    text << "image graph:\n" << dump(image);
    if (r.contains("representative") && r["representative"].contains("graph_map")) {
      text << "graph map:\n" << r["representative"]["graph_map"].get<std::string>();
    }
  }
  out.report["inputs"] = Json{{"endo", o.endo}, {"endomorphism", endo_json(phi)}};
  out.report["parameters"] = Json{{"kmax", o.kmax}};
  out.report["results"] = r;
  out.text = text.str();
  return out;
}

Outcome run_orbit(const Options& o) {
  const Endomorphism phi = load_endo(o);
  if (o.tree.empty()) throw Error(Errc::Parse, "orbit needs --tree");
  const TreePoint t0 = load_tree(o.tree);
  // A trivial pullback is reported before the stable tree is needed.
  (void)right_action(t0, phi);
  const StableTree s = stable_tree(phi);
  const OrbitReport rep = orbit_converge(t0, s, o.classes_maxlen, o.tol, o.max_iter);
  Outcome out;
  out.report["inputs"] = Json{{"endo", o.endo}, {"tree", o.tree}, {"endomorphism", endo_json(phi)}};
  out.report["parameters"] = Json{{"classes_maxlen", o.classes_maxlen}, {"tol", o.tol}, {"max_iter", o.max_iter}};
  out.report["results"] = Json{{"lambda", s.pf.lambda},
                               {"converged", rep.converged},
                               {"iterations", rep.iterations},
                               {"eventually_monotone", rep.eventually_monotone},
                               {"distances", rep.distances},
                               {"stable_spectrum", spectrum_json(rep.stable)},
                               {"final_spectrum", spectrum_json(rep.last)}};
  std::ostringstream text;
  text << "lambda: " << fmt(s.pf.lambda) << "\n";
  text << "converged: true after " << rep.iterations << " iterations\n";
  text << "k,distance\n";
  for (std::size_t k = 0; k < rep.distances.size(); ++k) text << k << "," << fmt(rep.distances[k]) << "\n";
  out.text = text.str();
  return out;
}

Outcome run_rays(const Options& o) {
  const Endomorphism phi = load_endo(o);
  if (o.prefix < 1) throw Error(Errc::Parse, "-n must be >= 1");
  const BoundaryRays br = boundary_rays(phi, static_cast<std::size_t>(o.prefix));
  const std::size_t bound = 2 * static_cast<std::size_t>(phi.rank());
  Outcome out;
  std::ostringstream text;
  for (std::size_t i = 0; i < br.fixed.size(); ++i) text << "X" << i + 1 << ": " << to_string(br.fixed[i]) << "...\n";
  if (br.period > 1) {
    text << "# rays of phi^" << br.period << "\n";
    for (std::size_t i = 0; i < br.periodic.size(); ++i) {
      text << "Y" << i + 1 << " (p=" << br.period << "): " << to_string(br.periodic[i]) << "...\n";
    }
  }
  Json r{{"fixed", Json{{"power", 1}, {"prefixes", words_json(br.fixed)}, {"count", br.fixed.size()}}},
         {"periodic", Json{{"power", br.period}, {"prefixes", words_json(br.periodic)}, {"count", br.periodic.size()}}},
         {"bound", bound},
         {"within_bound", br.within_bound() && br.periodic_within_bound()}};
  bool pass = br.within_bound() && br.periodic_within_bound();
  if (o.samples > 0) {
    const AttractionReport ap = attraction_probe(phi, o.samples, o.depth, o.seed);
    Json a{{"samples", ap.samples}, {"depth", ap.depth}, {"seed", ap.seed}, {"failures", ap.failures}, {"pass", ap.pass}};
    if (!ap.pass) {
      a["first_failure"] = to_string(ap.first_failure);
      a["first_failure_prefixes"] = ap.first_failure_prefixes;
    }
    r["attraction"] = a;
    text << "# attraction: " << (ap.pass ? "pass" : "FAIL") << " (" << ap.samples << " samples, depth " << ap.depth
         << ")\n";
    pass = pass && ap.pass;
  }
  if (!(br.within_bound() && br.periodic_within_bound())) text << "# VIOLATION: more than " << bound << " rays\n";
  out.report["inputs"] = Json{{"endo", o.endo}, {"endomorphism", endo_json(phi)}};
  out.report["parameters"] = Json{{"prefix", o.prefix}, {"samples", o.samples}, {"depth", o.depth}, {"seed", o.seed}};
  out.report["results"] = r;
  out.text = text.str();
  out.exit_code = pass ? 0 : 2;
  return out;
}

Outcome run_admissible(const Options& o) {
  const Endomorphism phi = load_endo(o);
  if (o.tree.empty() && o.splitting.empty()) throw Error(Errc::Parse, "admissible needs --splitting or --tree");
  const TreePoint t = splitting_tree(o, phi.rank());
  const SplittingVerdict v = admissibility_check(phi, t);
  Json groups = Json::array();
  for (const auto& g : v.vertex_groups) groups.push_back(words_json(g));
  Json r{{"verdict", to_string(v.verdict)}, {"admissible_for_splitting", v.verdict == Admissibility::NonTrivial},
         {"vertex_groups", groups}};
  std::ostringstream text;
  if (v.fixing_group) {
    r["fixing_group"] = *v.fixing_group;
    text << "NOT ADMISSIBLE: phi(F_n) is conjugate into the vertex group <";
    const auto& g = v.vertex_groups[*v.fixing_group];
    for (std::size_t i = 0; i < g.size(); ++i) text << (i ? ", " : "") << to_string(g[i]);
    text << ">\n";
  } else {
    text << "NonTrivial: T.phi is nontrivial for this splitting\n";
  }
  Outcome out;
  out.report["inputs"] = Json{{"endo", o.endo}, {"endomorphism", endo_json(phi)},
                              {"splitting", o.tree.empty() ? o.splitting : o.tree}};
  out.report["parameters"] = Json::object();
  out.report["results"] = r;
  out.text = text.str();
  return out;
}

Outcome run_rigidity(const Options& o) {
  const Endomorphism phi = load_endo(o);
  if (o.k < 1) throw Error(Errc::Parse, "-k must be >= 1");
  const RigidityReport rk = rigidity_probe(phi, o.k, o.samples, o.seed);
  Json r{{"k", rk.k}, {"C_k", rk.max_deviation}, {"min_length", rk.min_length}};
  std::ostringstream text;
  text << "C" << rk.k << " = " << fmt(rk.max_deviation) << "\n";
  text << "min l_T(h) = " << fmt(rk.min_length) << "\n";
  bool pass = true;
  if (o.k >= 2) {
    const int half = o.k / 2;
    const RigidityReport rh = rigidity_probe(phi, half, o.samples, o.seed);
    const bool decreasing = rk.max_deviation < rh.max_deviation;
    r["compare"] = Json{{"k", half}, {"C_k", rh.max_deviation}, {"decreasing", decreasing}};
    text << "C" << half << " = " << fmt(rh.max_deviation) << "\n";
    text << "C" << rk.k << " < C" << half << ": " << (decreasing ? "true" : "false") << "\n";
    pass = decreasing;
  }
  Outcome out;
  out.report["inputs"] = Json{{"endo", o.endo}, {"endomorphism", endo_json(phi)}};
  out.report["parameters"] = Json{{"k", o.k}, {"samples", o.samples}, {"seed", o.seed}};
  out.report["results"] = r;
  out.text = text.str();
  out.exit_code = pass ? 0 : 2;
  return out;
}

Outcome run_fold(const Options& o) {
  const Endomorphism phi = load_endo(o);
  const GraphMap f = fold_to_immersion(rose_map(phi));
  Outcome out;
  out.report["inputs"] = Json{{"endo", o.endo}, {"endomorphism", endo_json(phi)}};
  out.report["parameters"] = Json::object();
  out.report["results"] = Json{{"edges", f.edge_count()},
                               {"vertices", f.vertex_count()},
                               {"induced", endo_json(induced_endomorphism(f))},
                               {"graph_map", dump(f)}};
  out.text = dump(f);
  return out;
}

Outcome run(const std::string& command, const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    if (command == "analyze") out = run_analyze(o);
    else if (command == "orbit") out = run_orbit(o);
    else if (command == "rays") out = run_rays(o);
    else if (command == "admissible") out = run_admissible(o);
    else if (command == "rigidity") out = run_rigidity(o);
    else if (command == "fold") out = run_fold(o);
    else throw Error(Errc::Parse, "unknown command '" + command + "'");
  } catch (const Error& e) {
    const bool violation = e.code() == Errc::NoConvergence || e.code() == Errc::ZeroLength;
    out = Outcome{};
    out.report["inputs"] = Json{{"endo", o.endo}, {"tree", o.tree}};
    out.report["error"] = Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    out.text = std::string("error: ") + e.what() + "\n";
    out.exit_code = violation ? 2 : 1;
  }
  Json report{{"schema_version", kSchemaVersion}, {"command", command}};
  for (auto& [key, value] : out.report.items()) report[key] = value;
  report["exit_code"] = out.exit_code;
  report["timing"] = Json{
      {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  out.report = std::move(report);
  return out;
}

}  // namespace freedyn::cli
