#pragma once

// Command-line front end.  `run` takes the argument list (without the
// program name) and writes reports to the given streams; it returns 0 on
// success, 1 on domain errors and 2 on usage errors.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cmpoly/errors.hpp"
#include "cmpoly/facet_family.hpp"
#include "cmpoly/graph.hpp"
#include "cmpoly/inequality.hpp"
#include "cmpoly/matchings.hpp"
#include "cmpoly/msi.hpp"
#include "cmpoly/polytope.hpp"
#include "cmpoly/solver.hpp"

namespace cmpoly::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

inline std::vector<Rat> parse_vector(const std::string& text, std::size_t m, const std::string& what) {
  std::istringstream in(text);
  std::vector<Rat> v;
  for (std::string tok; in >> tok;) v.push_back(parse_rational(tok));
  if (v.size() != m)
    throw PreconditionError(what + " has " + std::to_string(v.size()) + " entries, expected " + std::to_string(m));
  return v;
}

inline VertexSet parse_vertex_list(const std::string& text) {
  VertexSet s;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    try {
      s.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ParseError("not a vertex: '" + tok + "'");
    }
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline void guard_edges(const Graph& g, std::size_t max_edges) {
  if (g.num_edges() > max_edges)
    throw LimitExceeded("graph has " + std::to_string(g.num_edges()) + " edges; --max-edges is " +
                        std::to_string(max_edges));
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cmpoly: inspect connected matching polytopes and solve weighted connected matching"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  bool no_meta = false;
  bool tsv = false;
  std::size_t limit = kDefaultEnumerationLimit;
  std::size_t max_edges = 20;
  app.add_flag("--no-meta", no_meta, "omit timing lines so reports are byte-reproducible");
  app.add_flag("--tsv", tsv, "tab-separated machine-readable reports");
  app.add_option("--limit", limit, "maximum number of enumerated connected matchings");
  app.add_option("--max-edges", max_edges, "maximum edge count for enumerate/hrep/export/verify");

  std::string graph_path, out_path, ineq_path;
  auto add_graph = [&](CLI::App* sub) { sub->add_option("-g,--graph", graph_path, "graph file")->required(); };

  auto* gen = app.add_subcommand("gen", "write a generated graph");
  std::string gen_name;
  gen->add_option("--name", gen_name, "path:k | cycle:k | complete:k | cube:d | petersen | j26")->required();
  gen->add_option("-o,--output", out_path, "output file (stdout if omitted)");

  auto* enumerate = app.add_subcommand("enumerate", "list connected matchings (V-description)");
  add_graph(enumerate);
  enumerate->add_option("-o,--output", out_path, "output file");

  auto* hrep_cmd = app.add_subcommand("hrep", "minimal facet description with classification");
  add_graph(hrep_cmd);
  hrep_cmd->add_option("-o,--output", out_path, "write the bare H-description here");

  auto* family = app.add_subcommand("family", "pair-family inequalities and certificates");
  add_graph(family);
  bool certify = false;
  family->add_flag("--certify", certify, "also check facetness empirically on the V-description");

  auto* classify_cmd = app.add_subcommand("classify", "classify inequality rows");
  add_graph(classify_cmd);
  classify_cmd->add_option("--ineq", ineq_path, "inequality file")->required();

  auto* msi = app.add_subcommand("msi", "project a separator inequality or separate a point");
  add_graph(msi);
  int sep_a = 0, sep_b = 0;
  std::string sep_c, point_text;
  msi->add_option("--a", sep_a, "first vertex");
  msi->add_option("--b", sep_b, "second vertex");
  msi->add_option("--C", sep_c, "separator, comma separated");
  msi->add_option("--separate", point_text, "point x* (space separated rationals) to separate");

  auto* solve = app.add_subcommand("solve", "maximum-weight connected matching by branch-and-cut");
  add_graph(solve);
  std::string weights_text;
  bool no_family = false, no_msi = false, oracle_check = false, show_log = false;
  SolverConfig config;
  solve->add_option("--weights", weights_text, "edge weights overriding the file (space separated)");
  solve->add_flag("--no-family", no_family, "do not add pair-family rows a priori");
  solve->add_flag("--no-msi", no_msi, "no fractional separator separation");
  solve->add_option("--node-limit", config.node_limit, "node cap");
  solve->add_option("--cut-rounds", config.cut_round_limit, "separation rounds per node");
  solve->add_flag("--oracle-check", oracle_check, "compare against brute force, print MATCH or MISMATCH");
  solve->add_flag("--log", show_log, "per-node log lines");

  auto* verify = app.add_subcommand("verify", "check that every row is valid for the polytope");
  add_graph(verify);
  verify->add_option("--ineq", ineq_path, "inequality file")->required();

  auto* export_cmd = app.add_subcommand("export", "POINTS section for external polyhedral software");
  add_graph(export_cmd);
  export_cmd->add_option("-o,--output", out_path, "output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  auto meta = [&](std::ostream& os) {
    if (no_meta) return;
    os << "# seconds " << std::fixed << std::setprecision(3)
       << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << '\n';
    os.unsetf(std::ios::floatfield);
  };

  try {
    if (gen->parsed()) {
      detail::write_output(out_path, format_graph(generate(gen_name)), out);
      return 0;
    }

    const Graph g = parse_graph(detail::read_file(graph_path));
    const std::size_t m = g.num_edges();

    if (enumerate->parsed()) {
      detail::guard_edges(g, max_edges);
      detail::write_output(out_path, format_vdescription(m, enumerate_connected_matchings(g, limit)), out);
      return 0;
    }

    if (export_cmd->parsed()) {
      detail::guard_edges(g, max_edges);
      detail::write_output(out_path, export_vrep_interop(vrep(g, limit)), out);
      return 0;
    }

    if (hrep_cmd->parsed()) {
      detail::guard_edges(g, max_edges);
      const VRep v = vrep(g, limit);
      HRep h = hrep(v);
      std::vector<FacetClass> classes;
      std::map<std::size_t, std::size_t> blossom_sizes;
      for (auto& q : h.facets) {
        classes.push_back(classify(q, g));
        if (auto* b = std::get_if<Blossom>(&classes.back())) ++blossom_sizes[b->handle.size()];
      }
      if (!out_path.empty()) detail::write_output(out_path, format_hrep(h), out);
      if (tsv) {
        out << "index\tclass\tdetail\trow\n";
        for (std::size_t i = 0; i < h.facets.size(); ++i)
          out << i + 1 << '\t' << class_name(classes[i]) << '\t' << describe(classes[i]) << '\t'
              << format_inequality(h.facets[i]) << '\n';
      } else {
        out << "h " << h.dim << ' ' << h.facets.size() << '\n';
        for (std::size_t i = 0; i < h.facets.size(); ++i) {
          Inequality q = h.facets[i];
          q.tag = class_name(classes[i]);
          q.provenance = describe(classes[i]);
          out << format_inequality(q) << '\n';
        }
      }
      for (const auto& [name, count] : class_histogram(classes)) out << "# class " << name << ' ' << count << '\n';
      for (const auto& [size, count] : blossom_sizes) out << "# blossom |H|=" << size << ' ' << count << '\n';
      out << "# vertices " << v.points.size() << " facets " << h.facets.size() << '\n';
      meta(out);
      return 0;
    }

    if (family->parsed()) {
      const auto members = generate_family(g);
      std::optional<VRep> v;
      if (certify) {
        detail::guard_edges(g, max_edges);
        v = vrep(g, limit);
      }
      std::size_t certified = 0, empirical = 0;
      for (const auto& mem : members) {
        Inequality q = mem.inequality;
        q.provenance += ' ' + format_certificate(mem.certificate);
        if (v) {
          const bool facet = is_facet(mem.inequality, *v);
          q.provenance += " empirical_facet=" + std::to_string(facet);
          empirical += facet;
        }
        certified += mem.certificate.facet_certified;
        out << format_inequality(q) << '\n';
      }
      out << "# family " << members.size() << " facet_certified " << certified;
      if (v) out << " empirical_facets " << empirical;
      out << '\n';
      meta(out);
      return 0;
    }

    if (classify_cmd->parsed()) {
      const auto rows = parse_inequality_file(detail::read_file(ineq_path), m);
      std::vector<FacetClass> classes;
      for (const auto& q : rows) {
        const Inequality row = canonicalize(Inequality{q.coeffs, q.rhs, "", ""});
        classes.push_back(classify(row, g));
        const char sep = tsv ? '\t' : ' ';
        out << class_name(classes.back()) << sep << describe(classes.back()) << sep << format_inequality(row) << '\n';
      }
      for (const auto& [name, count] : class_histogram(classes)) out << "# class " << name << ' ' << count << '\n';
      return 0;
    }

    if (msi->parsed()) {
      if (!point_text.empty()) {
        const auto cuts = separate_fractional(g, detail::parse_vector(point_text, m, "--separate point"));
        for (const auto& q : cuts) out << format_inequality(q) << '\n';
        out << "# cuts " << cuts.size() << '\n';
        return 0;
      }
      if (sep_a == 0 || sep_b == 0) {
        err << "error: msi needs --a, --b and --C, or --separate\n";
        return 2;
      }
      const Separator s{sep_a, sep_b, detail::parse_vertex_list(sep_c)};
      const Inequality q = project_msi(g, s);
      out << format_inequality(q) << '\n';
      out << "# minimal " << is_minimal_separator(g, s) << '\n';
      out << "# pretty " << pretty_inequality(q) << '\n';
      for (const auto& mem : generate_family(g)) {
        if (auto rho = dominance_factor(mem.inequality, q))
          out << "# dominated_by " << pretty_inequality(mem.inequality) << " rho=" << to_string(*rho)
              << " facet_certified=" << mem.certificate.facet_certified << '\n';
      }
      return 0;
    }

    if (verify->parsed()) {
      detail::guard_edges(g, max_edges);
      const auto rows = parse_inequality_file(detail::read_file(ineq_path), m);
      const VRep v = vrep(g, limit);
      std::size_t bad_rows = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto bad = verify_valid(rows[i], v);
        if (bad.empty()) continue;
        ++bad_rows;
        out << "row " << i + 1 << " violated at " << bad.size() << " vertices, e.g. "
            << format_set(support(bad.front())) << '\n';
      }
      out << (bad_rows == 0 ? "VALID" : "INVALID") << ' ' << rows.size() - bad_rows << '/' << rows.size() << '\n';
      return bad_rows == 0 ? 0 : 1;
    }

    if (solve->parsed()) {
      const std::vector<Rat> w = weights_text.empty() ? g.weights() : detail::parse_vector(weights_text, m, "--weights");
      config.use_family_cuts = !no_family;
      config.use_msi_separation = !no_msi;
      std::ostringstream log;
      const SolveResult r = branch_and_cut(g, w, config, &log);
      if (show_log) {
        out << log.str();
      } else {
        const std::string text = log.str();
        const auto last = text.rfind('\n', text.size() - 2);
        out << (last == std::string::npos ? text : text.substr(last + 1));
      }
      out << "# nodes " << r.stats.nodes << " lp_solves " << r.stats.lp_solves << " pivots " << r.stats.lp_pivots;
      for (const auto& [cls, count] : r.stats.cuts_by_class) out << ' ' << cls << ' ' << count;
      out << '\n';
      meta(out);
      if (oracle_check) {
        const auto oracle = brute_force_max_weight_cm(g, w, limit);
        const bool match = r.status == SolveStatus::Optimal && oracle.value == r.value;
        out << (match ? "MATCH" : "MISMATCH") << " oracle " << to_string(oracle.value) << '\n';
        return match ? 0 : 1;
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace cmpoly::cli
