#pragma once

// Command-line front end.  Exit codes: 0 = not distinguished / singleton /
// success, 1 = distinguished / several classes / table mismatch, 2 = error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coxprof/classification.hpp"
#include "coxprof/enumeration.hpp"
#include "coxprof/gram.hpp"
#include "coxprof/invariants.hpp"
#include "coxprof/io.hpp"
#include "coxprof/rigidity.hpp"
#include "coxprof/serialize.hpp"
#include "coxprof/topology.hpp"
#include "coxprof/types.hpp"

namespace coxprof {

struct CliConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::string format = "text";
  std::optional<std::size_t> max_vertices;
  std::optional<std::size_t> min_vertices;
  std::optional<Label> max_label;
  std::size_t max_graphs = 200'000;
  bool connected_only = false;
  double gram_tolerance = kDefaultGramTolerance;
  std::optional<std::string> cache_dir;
  bool no_cache = false;
  unsigned jobs = 1;
  int verbosity = 0;
  std::string table;
};

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline CoxeterGraph load_checked(const std::string& path, const CliConfig& cfg) {
  auto g = read_graph_file(path);
  if (g.empty()) throw CliError(path + ": no vertices");
  require_scannable(g);
  cross_check(g, cfg.gram_tolerance);
  return g;
}

inline InvariantCache cache_for(const CliConfig& cfg) { return InvariantCache::resolve(cfg.cache_dir, cfg.no_cache); }

inline int cmd_invariants(const CliConfig& cfg, std::ostream& out) {
  const auto g = load_checked(cfg.inputs.at(0), cfg);
  const auto iv = invariant_vector(g);
  if (cfg.format == "json")
    out << invariants_json(g, iv).dump(2) << "\n";
  else if (cfg.format == "dot")
    out << render_dot(g);
  else
    out << invariants_text(g, iv);
  return 0;
}

inline int cmd_compare(const CliConfig& cfg, std::ostream& out) {
  const auto g1 = load_checked(cfg.inputs.at(0), cfg);
  const auto g2 = load_checked(cfg.inputs.at(1), cfg);
  const auto r = compare(g1, g2);
  if (cfg.format == "json")
    out << compare_json(r).dump(2) << "\n";
  else if (cfg.format == "dot")
    out << render_dot(g1) << render_dot(g2);
  else
    out << compare_text(r);
  return r.distinguished ? 1 : 0;
}

inline int cmd_classify(const CliConfig& cfg, std::ostream& out) {
  const auto g = load_checked(cfg.inputs.at(0), cfg);
  const auto d = decompose(g);
  const auto cf = cf_max(g);
  const auto v = family_membership(g);
  if (cfg.format == "json")
    out << classify_json(g, d, cf, v).dump(2) << "\n";
  else if (cfg.format == "dot")
    out << render_dot(g);
  else
    out << classify_text(g, d, cf, v);
  return 0;
}

inline int cmd_genus(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto g = load_checked(cfg.inputs.at(0), cfg);
  GenusOptions opt;
  opt.max_vertices = cfg.max_vertices.value_or(g.size());
  if (cfg.max_label) {
    opt.max_label = *cfg.max_label;
  } else {
    opt.max_label = heuristic_label_bound(g);
    err << "label bound " << opt.max_label
        << " = order of the largest finite special parabolic (heuristic default, not a derived bound)\n";
  }
  opt.jobs = cfg.jobs;
  opt.max_graphs = cfg.max_graphs;
  const auto r = genus_search(g, opt, cache_for(cfg));
  if (cfg.verbosity > 0) err << "examined " << r.examined << " graphs\n";
  if (cfg.format == "json") {
    out << genus_json(r).dump(2) << "\n";
  } else if (cfg.format == "dot") {
    for (const auto& c : r.candidates) out << render_dot(c.graph);
  } else {
    out << genus_text(r);
  }
  return r.verdict == GenusVerdict::SingletonClass ? 0 : 1;
}

inline std::string dynkin_edges(const DynkinDiagram& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j)
      if (d.adjacent(i, j)) {
        if (!out.empty()) out += " ";
        out += d.name(i) + "-" + d.name(j) + ":" + std::to_string(d.label(i, j));
      }
  return out;
}

inline int cmd_tables(const CliConfig& cfg, std::ostream& out) {
  bool all_ok = true;
  ordered_json j;
  j["table"] = cfg.table;
  j["rows"] = ordered_json::array();
  std::ostringstream text;

  if (cfg.table == "lanner4" || cfg.table == "lanner5") {
    const auto& rows = cfg.table == "lanner4" ? lanner_rank4() : lanner_rank5();
    for (const auto& row : rows) {
      const auto g = to_coxeter_graph(row.diagram);
      cross_check(g, cfg.gram_tolerance);
      const SphericalCensus census(g);
      const auto computed = cf_max_products(cf_max(census));
      const int dim = vcd(census);
      const bool ok = computed == row.expected;
      all_ok = all_ok && ok;
      j["rows"].push_back({{"label", row.label},
                           {"dynkin_edges", dynkin_edges(row.diagram)},
                           {"expected", row.expected},
                           {"computed", computed},
                           {"vcd", dim},
                           {"match", ok}});
      text << row.label << "  " << dynkin_edges(row.diagram) << "  expected: " << plain(ordered_json(row.expected))
           << "  computed: " << plain(ordered_json(computed)) << "  vcd " << dim << "  " << (ok ? "ok" : "MISMATCH")
           << "\n";
    }
  } else if (cfg.table == "finite") {
    for (const auto& t : finite_catalogue()) {
      const auto g = to_coxeter_graph(catalogue_diagram(t));
      const auto shape = classify_component(g, g.all());
      const auto gram = kind_from_signature(signature_class(gram_matrix(g, cfg.gram_tolerance)));
      const bool ok = shape == t && gram == Kind::Finite;
      all_ok = all_ok && ok;
      const auto order = order_of_finite(t);
      j["rows"].push_back({{"type", to_string(t)},
                           {"rank", t.rank()},
                           {"order", order.str()},
                           {"pseudorank", pseudo_rank_finite(t)},
                           {"solvable", is_solvable_finite(t)},
                           {"match", ok}});
      text << to_string(t) << "  rank " << t.rank() << "  order " << order.str() << "  pseudorank "
           << pseudo_rank_finite(t) << "  solvable " << (is_solvable_finite(t) ? "yes" : "no") << "  "
           << (ok ? "ok" : "MISMATCH") << "\n";
    }
  } else {
    throw CliError("unknown table '" + cfg.table + "' (expected lanner4, lanner5 or finite)");
  }
  j["all_match"] = all_ok;
  if (cfg.format == "json")
    out << j.dump(2) << "\n";
  else
    out << text.str() << (all_ok ? "all rows match\n" : "some rows do not match\n");
  return all_ok ? 0 : 1;
}

inline int cmd_enumerate(const CliConfig& cfg, std::ostream& out) {
  EnumerationConfig e;
  e.max_vertices = cfg.max_vertices.value_or(3);
  e.min_vertices = cfg.min_vertices.value_or(1);
  e.max_label = cfg.max_label.value_or(3);
  e.connected_only = cfg.connected_only;
  e.jobs = cfg.jobs;
  ordered_json graphs = ordered_json::array();
  std::size_t count = 0;
  enumerate_graphs(e, [&](const CoxeterGraph& g) {
    ++count;
    if (cfg.format == "json") {
      graphs.push_back(graph_to_json(g));
    } else if (cfg.format == "dot") {
      auto dot = render_dot(g);
      dot.replace(0, std::string("graph coxeter").size(), "graph g" + std::to_string(count));
      out << dot;
    } else {
      out << "# graph " << count << "\n" << render_text(g) << "\n";
    }
    return true;
  });
  if (cfg.format == "json")
    out << ordered_json{{"count", count}, {"graphs", graphs}}.dump(2) << "\n";
  else if (cfg.format == "text")
    out << "# count " << count << "\n";
  return 0;
}

}  // namespace detail

/// Parses arguments and runs one subcommand; returns the exit code.
/// OracleDisagreement is deliberately not caught.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Profinite invariants of Coxeter groups from their defining graphs", "coxprof"};
  app.require_subcommand(1);

  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--max-vertices", cfg.max_vertices, "Vertex bound for genus and enumerate");
  app.add_option("--min-vertices", cfg.min_vertices, "Smallest vertex count for enumerate (default 1)");
  app.add_option("--max-label", cfg.max_label, "Label bound d for genus and enumerate")
      ->check(CLI::Range(2u, static_cast<unsigned>(kMaxLabel)));
  app.add_option("--max-graphs", cfg.max_graphs, "Genus search gives up after this many graphs");
  app.add_option("--gram-tolerance", cfg.gram_tolerance, "Eigenvalue tolerance of the Gram oracle")
      ->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", cfg.cache_dir, "Invariant cache root (else $COXPROF_CACHE_DIR, else ~/.cache/coxprof)");
  app.add_flag("--no-cache", cfg.no_cache, "Bypass the invariant cache");
  app.add_option("--jobs", cfg.jobs, "Worker threads for enumeration")->check(CLI::Range(1u, 256u));
  app.add_flag("-v,--verbose", cfg.verbosity, "Progress on stderr");

  auto* inv = app.add_subcommand("invariants", "Invariant vector with profinite-status annotations");
  inv->add_option("graph", cfg.inputs, "Graph file")->required()->expected(1);
  auto* cmp = app.add_subcommand("compare", "Compare the invariant vectors of two graphs");
  cmp->add_option("graphs", cfg.inputs, "Two graph files")->required()->expected(2);
  auto* gen = app.add_subcommand("genus", "Bounded genus search");
  gen->add_option("graph", cfg.inputs, "Graph file")->required()->expected(1);
  auto* cls = app.add_subcommand("classify", "Product decomposition and rigidity families");
  cls->add_option("graph", cfg.inputs, "Graph file")->required()->expected(1);
  auto* tab = app.add_subcommand("tables", "Recompute the stored tables");
  tab->add_option("name", cfg.table, "lanner4, lanner5 or finite")
      ->required()
      ->check(CLI::IsMember({"lanner4", "lanner5", "finite"}));
  auto* en = app.add_subcommand("enumerate", "List graphs up to isomorphism");
  en->add_flag("--connected", cfg.connected_only, "Connected graphs only");
  for (auto* sub : {inv, cmp, gen, cls, tab, en}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (inv->parsed()) return detail::cmd_invariants(cfg, out);
    if (cmp->parsed()) return detail::cmd_compare(cfg, out);
    if (gen->parsed()) return detail::cmd_genus(cfg, out, err);
    if (cls->parsed()) return detail::cmd_classify(cfg, out);
    if (tab->parsed()) return detail::cmd_tables(cfg, out);
    if (en->parsed()) return detail::cmd_enumerate(cfg, out);
  } catch (const OracleDisagreement&) {
    throw;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace coxprof
