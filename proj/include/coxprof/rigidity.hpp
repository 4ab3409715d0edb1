#pragma once

// Rigidity families, genus bounds, invariant comparison and the two known
// isomorphism moves between Coxeter graphs.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "coxprof/canonical.hpp"
#include "coxprof/classification.hpp"
#include "coxprof/graph.hpp"
#include "coxprof/invariants.hpp"

namespace coxprof {

// ---------------------------------------------------------------------------
// Lannér diagrams of rank 4 and 5

struct LannerRow {
  std::string label;
  DynkinDiagram diagram;
  std::vector<std::string> expected;  // maximal spherical types, sorted
};

namespace detail {

struct DynkinEdge {
  int a;
  int b;
  Label m;
};

inline DynkinDiagram dynkin(int k, std::initializer_list<DynkinEdge> edges) {
  std::vector<std::string> names;
  for (int i = 1; i <= k; ++i) names.push_back("s" + std::to_string(i));
  DynkinDiagram d(std::move(names));
  for (const auto& e : edges) d.set_edge(static_cast<std::size_t>(e.a - 1), static_cast<std::size_t>(e.b - 1), e.m);
  return d;
}

inline LannerRow row(std::string label, DynkinDiagram d, std::vector<std::string> expected) {
  std::sort(expected.begin(), expected.end());
  return {std::move(label), std::move(d), std::move(expected)};
}

}  // namespace detail

inline const std::vector<LannerRow>& lanner_rank4() {
  using detail::dynkin;
  using detail::row;
  static const std::vector<LannerRow> rows{
      row("L1", dynkin(4, {{1, 2, 3}, {2, 3, 5}, {3, 4, 3}}), {"A1xA2", "A1xA2", "H3", "H3"}),
      row("L2", dynkin(4, {{1, 2, 5}, {2, 3, 3}, {3, 4, 4}}), {"A1xB2", "A1xI2(5)", "B3", "H3"}),
      row("L3", dynkin(4, {{1, 2, 5}, {2, 3, 3}, {3, 4, 5}}), {"A1xI2(5)", "A1xI2(5)", "H3", "H3"}),
      row("L4", dynkin(4, {{1, 2, 5}, {2, 3, 3}, {2, 4, 3}}), {"A1xA1xA1", "A3", "H3", "H3"}),
      row("L5", dynkin(4, {{1, 2, 4}, {2, 3, 3}, {3, 4, 3}, {4, 1, 3}}), {"A3", "A3", "B3", "B3"}),
      row("L6", dynkin(4, {{1, 2, 4}, {2, 3, 3}, {3, 4, 4}, {4, 1, 3}}), {"B3", "B3", "B3", "B3"}),
      row("L7", dynkin(4, {{1, 2, 5}, {2, 3, 3}, {3, 4, 3}, {4, 1, 3}}), {"A3", "A3", "H3", "H3"}),
      row("L8", dynkin(4, {{1, 2, 5}, {2, 3, 3}, {3, 4, 4}, {4, 1, 3}}), {"B3", "B3", "H3", "H3"}),
      row("L9", dynkin(4, {{1, 2, 5}, {2, 3, 3}, {3, 4, 5}, {4, 1, 3}}), {"H3", "H3", "H3", "H3"}),
  };
  return rows;
}

inline const std::vector<LannerRow>& lanner_rank5() {
  using detail::dynkin;
  using detail::row;
  // The expected columns of L2 and L3 follow from their diagrams: the
  // path 5,3,3,4 has B4 among its maximal parabolics, the path 5,3,3,5
  // has two H4.
  static const std::vector<LannerRow> rows{
      row("L1", dynkin(5, {{1, 2, 5}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}}),
          {"A1xA3", "A1xH3", "A2xI2(5)", "H4", "A4"}),
      row("L2", dynkin(5, {{1, 2, 5}, {2, 3, 3}, {3, 4, 3}, {4, 5, 4}}),
          {"A1xB3", "A1xH3", "B2xI2(5)", "B4", "H4"}),
      row("L3", dynkin(5, {{1, 2, 5}, {2, 3, 3}, {3, 4, 3}, {4, 5, 5}}),
          {"A1xH3", "A1xH3", "I2(5)xI2(5)", "H4", "H4"}),
      row("L4", dynkin(5, {{1, 2, 3}, {2, 3, 3}, {3, 4, 5}, {2, 5, 3}}),
          {"A1xA3", "A1xA1xI2(5)", "D4", "H4", "H4"}),
      row("L5", dynkin(5, {{1, 2, 3}, {2, 3, 4}, {3, 4, 3}, {4, 5, 3}, {5, 1, 3}}),
          {"A4", "A4", "B4", "B4", "F4"}),
  };
  return rows;
}

/// Triangle Δ(p,q,r): complete graph on three vertices with those labels.
inline CoxeterGraph triangle(Label p, Label q, Label r) {
  CoxeterGraph g(std::vector<std::string>{"a", "b", "c"});
  g.set_edge(0, 1, p);
  g.set_edge(1, 2, q);
  g.set_edge(0, 2, r);
  return g;
}

/// Compact hyperbolic triangle: every label finite and 1/p + 1/q + 1/r < 1.
inline bool is_compact_hyperbolic_triangle(const CoxeterGraph& g) {
  if (g.size() != 3 || !is_complete(g)) return false;
  const Label p = g.label(0, 1), q = g.label(1, 2), r = g.label(0, 2);
  return static_cast<unsigned long long>(q) * r + static_cast<unsigned long long>(p) * r +
             static_cast<unsigned long long>(p) * q <
         static_cast<unsigned long long>(p) * q * r;
}

inline bool is_lanner(const CoxeterGraph& g) {
  if (g.size() == 3) return is_compact_hyperbolic_triangle(g);
  if (g.size() != 4 && g.size() != 5) return false;
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto* table : {&lanner_rank4(), &lanner_rank5()})
      for (const auto& r : *table) k.push_back(canonical_form(to_coxeter_graph(r.diagram)));
    return k;
  }();
  const auto key = canonical_form(g);
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

// ---------------------------------------------------------------------------
// families

struct FamilyHit {
  std::string tag;   // "1a" ... "2e"
  std::string name;
  bool member = false;
};

enum class Verdict { Rigid, AlmostRigid, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Rigid: return "rigid";
    case Verdict::AlmostRigid: return "almost_rigid";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

struct FamilyVerdict {
  std::vector<FamilyHit> families;
  Verdict verdict = Verdict::Unknown;
  std::string citation;           // e.g. "rigid (1a: reflection group of a regular hyperbolic polygon)"
  std::vector<std::string> notes;  // cases the rigidity results leave open
};

inline bool is_odd_forest(const CoxeterGraph& g) {
  if (cycle_rank(g) != 0) return false;
  for (const auto& e : g.edges())
    if (e.label % 2 == 0) return false;
  return true;
}

inline bool all_labels_equal(const CoxeterGraph& g, Label& common) {
  const auto es = g.edges();
  if (es.empty()) return false;
  common = es.front().label;
  for (const auto& e : es)
    if (e.label != common) return false;
  return true;
}

inline FamilyVerdict family_membership(const CoxeterGraph& g, const InvariantVector& iv) {
  FamilyVerdict v;
  Label common = 0;
  const bool equal = all_labels_equal(g, common);
  const bool polygon = g.size() >= 3 && induces_cycle(g, g.all());

  auto add = [&](std::string tag, std::string name, bool member) {
    v.families.push_back({std::move(tag), std::move(name), member});
  };
  add("1a", "reflection group of a regular hyperbolic polygon", polygon && equal && !iv.virtually_abelian);
  add("1b", "cocompact hyperbolic simplicial reflection group", is_lanner(g));
  add("1c", "virtually abelian", iv.virtually_abelian);
  add("1d", "odd forest", is_odd_forest(g));
  add("1e", "all labels divisible by 4", iv.labels_div_4);
  add("1f", "rank at most 3", g.size() <= 3);
  add("1g", "rank 4, all labels equal to n != 4k+2",
      g.size() == 4 && is_connected(g) && equal && !is_4k_plus_2(common));
  add("1h", "complete, all labels equal to n != 4k+2", g.size() >= 2 && is_complete(g) && equal && !is_4k_plus_2(common));
  add("2a", "hyperbolic of FC type", iv.hyperbolic && iv.fc);
  add("2b", "virtually free", iv.virtually_free);
  add("2c", "virtually surface", iv.virtually_surface);
  add("2d", "odd", iv.odd);
  add("2e", "extra large", iv.extra_large);

  if (g.size() == 4 && is_connected(g) && equal && is_4k_plus_2(common))
    v.notes.push_back("rank 4 with every label equal to " + std::to_string(common) + " (of the form 4k+2) is not covered");
  if (g.size() >= 4 && is_complete(g) && equal && is_4k_plus_2(common))
    v.notes.push_back("complete with every label equal to " + std::to_string(common) + " (of the form 4k+2) is not covered");

  for (const auto& f : v.families)
    if (f.member) {
      v.verdict = f.tag[0] == '1' ? Verdict::Rigid : Verdict::AlmostRigid;
      v.citation = std::string(to_string(v.verdict)) + " (" + f.tag + ": " + f.name + ")";
      break;
    }
  if (v.verdict == Verdict::Unknown) v.citation = "unknown";
  return v;
}

inline FamilyVerdict family_membership(const CoxeterGraph& g) { return family_membership(g, invariant_vector(g)); }

// ---------------------------------------------------------------------------
// genus bounds

struct VertexBound {
  long long bound = 0;
  std::string source;
};

struct GenusBounds {
  Label label_bound = 2;
  std::vector<VertexBound> vertex_bounds;
  std::optional<long long> effective_bound;
  /// |E(Ω)| = |V(Ω)| + edge_offset, for connected odd Γ.
  std::optional<long long> edge_offset;
};

class BoundError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline GenusBounds genus_bounds(const CoxeterGraph& g, const InvariantVector& iv, Label d) {
  if (d < 2) throw BoundError("label bound must be at least 2");
  if (g.max_label() > d)
    throw BoundError("label bound " + std::to_string(d) + " is below the largest label " +
                     std::to_string(g.max_label()));
  GenusBounds b;
  b.label_bound = d;
  const auto V = static_cast<long long>(g.size());
  const auto E = static_cast<long long>(g.edge_count());
  const bool connected = iv.components == 1;

  if (connected && iv.odd) {
    // |V(Ω)| <= |V| + (1 - 2/d)|E|, rounded down.
    const long long bound = V + (E * (static_cast<long long>(d) - 2)) / static_cast<long long>(d);
    b.vertex_bounds.push_back({bound, "odd: |V| + (1 - 2/d)|E|"});
    b.edge_offset = E - V;
  }
  if (iv.hyperbolic && iv.fc)
    b.vertex_bounds.push_back({iv.pseudorank_bound, "hyperbolic FC: sum of pseudo-ranks over maximal finite parabolics"});
  if (connected && iv.extra_large)
    b.vertex_bounds.push_back({3 * static_cast<long long>(iv.cf_max.size()), "extra large: 3 |CF_max|"});

  for (const auto& vb : b.vertex_bounds)
    if (!b.effective_bound || vb.bound < *b.effective_bound) b.effective_bound = vb.bound;
  return b;
}

inline GenusBounds genus_bounds(const CoxeterGraph& g, Label d) { return genus_bounds(g, invariant_vector(g), d); }

/// Order of the largest finite special parabolic: the default label bound
/// offered by the command line (a heuristic stand-in, not a derived d).
inline Label heuristic_label_bound(const CoxeterGraph& g) {
  const auto r = cf_max(g);
  BigInt best = 2;
  for (const auto& e : r.entries) best = std::max(best, e.order);
  best = std::max(best, BigInt(g.max_label()));
  return best > kMaxLabel ? kMaxLabel : static_cast<Label>(best);
}

// ---------------------------------------------------------------------------
// known isomorphism moves

namespace detail {

/// Returns true and rewrites g when some vertex v sees exactly a and b, both
/// by label-2 edges, a-b has odd label 2k+1, and one of a, b has no further
/// neighbours: then v is removed and a-b relabelled 4k+2.
inline bool dihedral_fold(CoxeterGraph& g) {
  for (std::size_t v = 0; v < g.size(); ++v) {
    const VertexSet nb = g.neighbours(v);
    if (set_size(nb) != 2) continue;
    const auto ab = members(nb);
    const std::size_t a = ab[0], b = ab[1];
    if (g.label(v, a) != 2 || g.label(v, b) != 2) continue;
    const Label m = g.label(a, b);
    if (m == kNoEdge || m % 2 == 0) continue;
    const VertexSet trio = singleton(a) | singleton(b) | singleton(v);
    const bool a_free = is_subset(g.neighbours(a), trio);
    const bool b_free = is_subset(g.neighbours(b), trio);
    if (!a_free && !b_free) continue;
    if (2 * m > kMaxLabel) continue;

    CoxeterGraph h = induced_subgraph(g, g.all() & ~singleton(v));
    const auto ia = *h.index_of(g.name(a));
    const auto ib = *h.index_of(g.name(b));
    h.set_edge(ia, ib, 2 * m);
    g = std::move(h);
    return true;
  }
  return false;
}

/// Each connected odd tree with at least one edge becomes the path whose
/// labels are its sorted label multiset (vertex names kept, in order).
inline CoxeterGraph straighten_odd_trees(const CoxeterGraph& g) {
  CoxeterGraph h(g.names());
  for (const auto& e : g.edges()) h.set_edge(e.u, e.v, e.label);
  for (auto comp : connected_components(g)) {
    const auto sub = induced_subgraph(g, comp);
    if (sub.size() < 2 || !is_odd_forest(sub)) continue;
    std::vector<Label> labels;
    for (const auto& e : sub.edges()) labels.push_back(e.label);
    std::sort(labels.begin(), labels.end());
    const auto vs = members(comp);
    for (auto u : vs)
      for (auto w : vs)
        if (u < w) h.remove_edge(u, w);
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) h.set_edge(vs[i], vs[i + 1], labels[i]);
  }
  return h;
}

}  // namespace detail

inline CoxeterGraph known_iso_normalize(const CoxeterGraph& g) {
  CoxeterGraph h = g;
  while (detail::dihedral_fold(h)) {
  }
  return detail::straighten_odd_trees(h);
}

/// Canonical key of the normal form: graphs sharing it present isomorphic
/// groups.
inline std::string known_iso_class(const CoxeterGraph& g) { return canonical_form(known_iso_normalize(g)); }

// ---------------------------------------------------------------------------
// comparison

struct ComparisonRow {
  std::string name;
  ordered_json first;
  ordered_json second;
  Status status = Status::General;
  bool differs = false;
  bool counts = false;  // may separate the groups
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  std::optional<std::string> distinguishing_field;
  bool distinguished = false;
  bool same_known_class = false;
  bool isomorphic_graphs = false;
};

inline ComparisonReport compare(const CoxeterGraph& g1, const InvariantVector& a, const CoxeterGraph& g2,
                                const InvariantVector& b) {
  ComparisonReport r;
  const auto fa = fields(a);
  const auto fb = fields(b);
  for (std::size_t i = 0; i < fa.size(); ++i) {
    ComparisonRow row{fa[i].name, fa[i].value, fb[i].value, fa[i].status, fa[i].key != fb[i].key,
                      counts(fa[i], a, b)};
    if (row.differs && row.counts && !r.distinguishing_field) r.distinguishing_field = row.name;
    r.rows.push_back(std::move(row));
  }
  r.distinguished = r.distinguishing_field.has_value();
  r.isomorphic_graphs = are_isomorphic(g1, g2).has_value();
  r.same_known_class = known_iso_class(g1) == known_iso_class(g2);
  return r;
}

inline ComparisonReport compare(const CoxeterGraph& g1, const CoxeterGraph& g2) {
  return compare(g1, invariant_vector(g1), g2, invariant_vector(g2));
}

}  // namespace coxprof
