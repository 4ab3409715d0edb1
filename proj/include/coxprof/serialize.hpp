#pragma once

// Text and JSON renderings of reports.  JSON key order is fixed; text lines
// print the same values as their JSON counterparts.

#include <sstream>
#include <string>

#include <json.hpp>

#include "coxprof/canonical.hpp"
#include "coxprof/classification.hpp"
#include "coxprof/enumeration.hpp"
#include "coxprof/invariants.hpp"
#include "coxprof/io.hpp"
#include "coxprof/rigidity.hpp"
#include "coxprof/topology.hpp"

namespace coxprof {

/// JSON scalar/array printed for humans: strings without quotes, arrays
/// comma-separated.
inline std::string plain(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_array()) {
    if (v.empty()) return "[]";
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ", ";
      out += plain(v[i]);
    }
    return out;
  }
  return v.dump();
}

inline std::string vertex_names(const CoxeterGraph& g, VertexSet s) {
  std::string out;
  for (auto v : members(s)) {
    if (!out.empty()) out += " ";
    out += g.name(v);
  }
  return out.empty() ? "-" : out;
}

inline ordered_json vertex_list(const CoxeterGraph& g, VertexSet s) {
  auto j = ordered_json::array();
  for (auto v : members(s)) j.push_back(g.name(v));
  return j;
}

// ---------------------------------------------------------------------------
// invariants

inline ordered_json invariants_json(const CoxeterGraph& g, const InvariantVector& v) {
  ordered_json j;
  j["vertices"] = v.vertices;
  j["edges"] = v.edges;
  const auto fs = fields(v);
  for (const auto& f : fs) j[f.name] = f.value;
  j["schur"] = {{"a2", v.schur.a2},
                {"nu", v.schur.nu},
                {"mu", v.schur.mu},
                {"xi", v.schur.xi},
                {"multiplier_rank", v.schur.multiplier_rank}};
  j["cf_max_types"] = v.cf_max_types;
  j["pseudorank_bound"] = v.pseudorank_bound;
  j["generic_vertices"] = v.generic_vertices;
  j["canonical_form"] = to_hex(canonical_form(g));
  auto& status = j["profinite_status"];
  status = ordered_json::object();
  for (const auto& f : fs) status[f.name] = to_string(f.status);
  auto& cond = j["conditions"];
  cond = ordered_json::object();
  for (const auto& f : fs)
    if (f.status == Status::Conditional) cond[f.name] = f.condition;
  return j;
}

inline std::string invariants_text(const CoxeterGraph& g, const InvariantVector& v) {
  std::ostringstream out;
  out << "vertices: " << v.vertices << "\n";
  out << "edges: " << v.edges << "\n";
  for (const auto& f : fields(v)) out << f.name << ": " << plain(f.value) << "  [" << to_string(f.status) << "]\n";
  out << "schur: nu=" << v.schur.nu << " mu=" << v.schur.mu << " xi=" << v.schur.xi
      << " multiplier_rank=" << v.schur.multiplier_rank << "\n";
  out << "cf_max_types: " << plain(ordered_json(v.cf_max_types)) << "\n";
  out << "pseudorank_bound: " << v.pseudorank_bound << "\n";
  out << "canonical_form: " << to_hex(canonical_form(g)) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// classification

inline ordered_json split_json(const CoxeterGraph& g, const PartSplit& p) {
  ordered_json j;
  j["vertices"] = vertex_list(g, p.vertices);
  j["spherical"] = types_json(p.spherical);
  j["affine"] = types_json(p.affine);
  j["generic"] = vertex_list(g, p.generic);
  return j;
}

inline ordered_json cf_max_json(const CoxeterGraph& g, const CFMaxReport& r) {
  ordered_json j;
  auto& rows = j["maximal"];
  rows = ordered_json::array();
  for (const auto& e : r.entries)
    rows.push_back({{"vertices", vertex_list(g, e.vertices)},
                    {"types", to_string(e.types)},
                    {"order", e.order.str()},
                    {"pseudorank", e.pseudorank}});
  auto& m = j["intersections"];
  m = ordered_json::array();
  for (std::size_t a = 0; a < r.entries.size(); ++a) {
    auto row = ordered_json::array();
    for (std::size_t b = 0; b < r.entries.size(); ++b)
      row.push_back(r.meets[a][b] ? ordered_json(to_string(r.intersections[a][b])) : ordered_json(nullptr));
    m.push_back(row);
  }
  j["pseudorank_bound"] = r.pseudorank_bound;
  return j;
}

inline ordered_json verdict_json(const FamilyVerdict& v) {
  ordered_json j;
  auto& fam = j["families"];
  fam = ordered_json::object();
  for (const auto& f : v.families) fam[f.tag] = {{"name", f.name}, {"member", f.member}};
  j["verdict"] = to_string(v.verdict);
  j["citation"] = v.citation;
  j["notes"] = v.notes;
  return j;
}

inline ordered_json classify_json(const CoxeterGraph& g, const Decomposition& d, const CFMaxReport& cf,
                                  const FamilyVerdict& v) {
  ordered_json j;
  auto& blocks = j["blocks"];
  blocks = ordered_json::array();
  for (const auto& b : classify_blocks(g, g.all()))
    blocks.push_back({{"vertices", vertex_list(g, b.vertices)}, {"type", to_string(b.type)},
                      {"kind", to_string(b.type.kind())}});
  j["decomposition"] = split_json(g, d.whole);
  j["free_product"] = d.free_product;
  if (d.free_product) {
    auto& pc = j["per_component"];
    pc = ordered_json::array();
    for (const auto& p : d.per_component) pc.push_back(split_json(g, p));
  }
  j["cf_max"] = cf_max_json(g, cf);
  j["rigidity"] = verdict_json(v);
  return j;
}

inline std::string classify_text(const CoxeterGraph& g, const Decomposition& d, const CFMaxReport& cf,
                                 const FamilyVerdict& v) {
  std::ostringstream out;
  out << "blocks:\n";
  for (const auto& b : classify_blocks(g, g.all()))
    out << "  " << to_string(b.type) << " (" << to_string(b.type.kind()) << "): " << vertex_names(g, b.vertices)
        << "\n";
  auto split = [&](const PartSplit& p, const std::string& indent) {
    out << indent << "spherical part: " << to_string(p.spherical) << "\n";
    out << indent << "affine part: " << (p.affine.empty() ? "1" : to_string(p.affine)) << "\n";
    out << indent << "generic part: " << vertex_names(g, p.generic) << "\n";
  };
  split(d.whole, "");
  if (d.free_product) {
    out << "free product of " << d.per_component.size() << " components:\n";
    for (const auto& p : d.per_component) {
      out << "  component " << vertex_names(g, p.vertices) << "\n";
      split(p, "    ");
    }
  }
  out << "maximal spherical subsets:\n";
  for (const auto& e : cf.entries)
    out << "  " << to_string(e.types) << " order " << e.order.str() << " pseudorank " << e.pseudorank << ": "
        << vertex_names(g, e.vertices) << "\n";
  out << "pseudorank bound: " << cf.pseudorank_bound << "\n";
  out << "families:";
  bool any = false;
  for (const auto& f : v.families)
    if (f.member) {
      out << (any ? ", " : " ") << f.tag;
      any = true;
    }
  out << (any ? "" : " none") << "\n";
  for (const auto& n : v.notes) out << "note: " << n << "\n";
  out << "verdict: " << v.citation << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// comparison

inline ordered_json compare_json(const ComparisonReport& r) {
  ordered_json j;
  auto& rows = j["fields"];
  rows = ordered_json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"name", row.name},
                    {"first", row.first},
                    {"second", row.second},
                    {"status", to_string(row.status)},
                    {"differs", row.differs},
                    {"counts", row.counts}});
  j["distinguishing_field"] = r.distinguishing_field ? ordered_json(*r.distinguishing_field) : ordered_json(nullptr);
  j["overall"] = r.distinguished ? "distinguished" : "not_distinguished_by_implemented_invariants";
  j["isomorphic_graphs"] = r.isomorphic_graphs;
  j["same_known_isomorphism_class"] = r.same_known_class;
  return j;
}

inline std::string compare_text(const ComparisonReport& r) {
  std::ostringstream out;
  for (const auto& row : r.rows) {
    out << row.name << ": " << plain(row.first);
    if (row.differs) out << " | " << plain(row.second);
    out << "  [" << to_string(row.status) << (row.differs ? (row.counts ? ", differs" : ", differs, not used") : "")
        << "]\n";
  }
  if (r.distinguished)
    out << "distinguished by " << *r.distinguishing_field << "\n";
  else
    out << "not distinguished by implemented invariants\n";
  if (r.isomorphic_graphs) out << "note: isomorphic graphs\n";
  else if (r.same_known_class) out << "note: same known-isomorphism class\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// genus

inline ordered_json bounds_json(const GenusBounds& b) {
  ordered_json j;
  j["label_bound"] = b.label_bound;
  auto& vb = j["vertex_bounds"];
  vb = ordered_json::array();
  for (const auto& x : b.vertex_bounds) vb.push_back({{"bound", x.bound}, {"source", x.source}});
  j["effective_bound"] = b.effective_bound ? ordered_json(*b.effective_bound) : ordered_json(nullptr);
  j["edge_offset"] = b.edge_offset ? ordered_json(*b.edge_offset) : ordered_json(nullptr);
  return j;
}

inline std::string genus_verdict_string(const GenusReport& r) {
  if (r.verdict == GenusVerdict::FinitelyManyClasses)
    return std::string(to_string(r.verdict)) + "(" + std::to_string(r.classes.size()) + ")";
  return to_string(r.verdict);
}

inline ordered_json genus_json(const GenusReport& r) {
  ordered_json j;
  j["target"] = graph_to_json(r.target);
  j["search"] = {{"max_vertices", r.options.max_vertices},
                 {"max_label", r.options.max_label},
                 {"note", "verdict is relative to these bounds and the implemented invariants"}};
  j["bounds"] = bounds_json(r.bounds);
  j["search_covers_proven_bound"] = r.covers_proven_bound;
  j["examined"] = r.examined;
  auto& cands = j["candidates"];
  cands = ordered_json::array();
  for (const auto& c : r.candidates)
    cands.push_back({{"canonical_form", c.canonical_hex},
                     {"class", c.class_index},
                     {"is_target", c.is_target},
                     {"graph", graph_to_json(c.graph)}});
  auto& classes = j["classes"];
  classes = ordered_json::array();
  for (const auto& k : r.classes)
    classes.push_back({{"normal_form", k.normal_form_hex},
                       {"normal_graph", graph_to_json(k.normal_form)},
                       {"members", k.members},
                       {"contains_target", k.contains_target}});
  j["verdict"] = genus_verdict_string(r);
  j["class_count"] = r.classes.size();
  return j;
}

inline std::string edge_summary(const CoxeterGraph& g) {
  std::string out = std::to_string(g.size()) + " vertices;";
  const auto es = g.edges();
  if (es.empty()) return out + " no edges";
  for (const auto& e : es) out += " " + g.name(e.u) + "-" + g.name(e.v) + ":" + std::to_string(e.label);
  return out;
}

inline std::string genus_text(const GenusReport& r) {
  std::ostringstream out;
  out << "target: " << edge_summary(r.target) << "\n";
  out << "search: vertices <= " << r.options.max_vertices << ", labels <= " << r.options.max_label
      << " (verdict relative to these bounds)\n";
  for (const auto& b : r.bounds.vertex_bounds) out << "proven vertex bound: " << b.bound << " (" << b.source << ")\n";
  if (const auto k = r.bounds.edge_offset) {
    out << "edge identity: |E| = |V|";
    if (*k) out << (*k < 0 ? " - " : " + ") << (*k < 0 ? -*k : *k);
    out << "\n";
  }
  out << "search covers proven bound: " << (r.covers_proven_bound ? "yes" : "no") << "\n";
  out << "examined: " << r.examined << "\n";
  out << "candidates: " << r.candidates.size() << "\n";
  for (std::size_t k = 0; k < r.classes.size(); ++k) {
    out << "class " << k << (r.classes[k].contains_target ? " (target)" : "") << ":\n";
    for (auto i : r.classes[k].members) out << "  " << edge_summary(r.candidates[i].graph) << "\n";
  }
  out << "verdict: " << genus_verdict_string(r) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// cohomology

inline ordered_json cohomology_json(const CohomologyProfile& p) {
  ordered_json j = ordered_json::object();
  for (const auto& h : p.groups) {
    auto t = ordered_json::array();
    for (const auto& x : h.torsion) t.push_back(x.str());
    j[std::to_string(h.degree)] = {{"rank", h.rank}, {"torsion", t}};
  }
  return j;
}

}  // namespace coxprof
