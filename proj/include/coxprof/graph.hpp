#pragma once

// Coxeter graphs: labeled simple graphs where an edge {v,w} with label m
// imposes (vw)^m = 1 and a missing edge imposes no relation (m = infinity).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace coxprof {

using VertexSet = std::uint32_t;
using Label = std::uint32_t;

/// Stored label of a vertex pair that carries no relation.
inline constexpr Label kNoEdge = 0;
/// Coxeter-matrix / Dynkin encoding of m = infinity.
inline constexpr Label kInfinity = std::numeric_limits<Label>::max();
inline constexpr std::size_t kMaxVertices = 32;
inline constexpr Label kMaxLabel = 65535;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// vertex-set helpers

inline int set_size(VertexSet s) { return std::popcount(s); }
inline bool contains(VertexSet s, std::size_t v) { return (s >> v) & 1u; }
inline VertexSet singleton(std::size_t v) { return VertexSet{1} << v; }
inline VertexSet full_set(std::size_t n) {
  return n >= 32 ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
}
inline bool is_subset(VertexSet a, VertexSet b) { return (a & ~b) == 0; }
inline std::size_t lowest(VertexSet s) {
  return static_cast<std::size_t>(std::countr_zero(s));
}

inline std::vector<std::size_t> members(VertexSet s) {
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(set_size(s)));
  while (s) {
    out.push_back(lowest(s));
    s &= s - 1;
  }
  return out;
}

// ---------------------------------------------------------------------------

struct Edge {
  std::size_t u;
  std::size_t v;
  Label label;
  bool operator==(const Edge&) const = default;
};

class CoxeterGraph {
 public:
  CoxeterGraph() = default;

  explicit CoxeterGraph(std::vector<std::string> names) {
    for (auto& nm : names) add_vertex(std::move(nm));
  }

  /// Graph on n vertices named v1..vn with no edges.
  static CoxeterGraph anonymous(std::size_t n) {
    CoxeterGraph g;
    for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i + 1));
    return g;
  }

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  VertexSet all() const { return full_set(size()); }

  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> index_of(std::string_view nm) const {
    auto it = std::find(names_.begin(), names_.end(), nm);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::size_t add_vertex(std::string nm) {
    if (names_.size() >= kMaxVertices)
      throw GraphError("too many vertices (limit " + std::to_string(kMaxVertices) + ")");
    if (nm.empty()) throw GraphError("empty vertex name");
    if (index_of(nm)) throw GraphError("duplicate vertex '" + nm + "'");
    const std::size_t n = names_.size();
    std::vector<Label> grown((n + 1) * (n + 1), kNoEdge);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) grown[i * (n + 1) + j] = labels_[i * n + j];
    labels_ = std::move(grown);
    names_.push_back(std::move(nm));
    return n;
  }

  Label label(std::size_t i, std::size_t j) const { return labels_[i * size() + j]; }
  bool adjacent(std::size_t i, std::size_t j) const { return label(i, j) != kNoEdge; }

  void set_edge(std::size_t i, std::size_t j, Label m) {
    check_index(i);
    check_index(j);
    if (i == j) throw GraphError("self-loop at '" + names_[i] + "'");
    if (m < 2 || m == kInfinity) throw GraphError("edge label must be an integer >= 2");
    if (m > kMaxLabel) throw GraphError("edge label exceeds " + std::to_string(kMaxLabel));
    labels_[i * size() + j] = m;
    labels_[j * size() + i] = m;
  }

  void remove_edge(std::size_t i, std::size_t j) {
    check_index(i);
    check_index(j);
    labels_[i * size() + j] = kNoEdge;
    labels_[j * size() + i] = kNoEdge;
  }

  VertexSet neighbours(std::size_t v) const {
    VertexSet s = 0;
    for (std::size_t w = 0; w < size(); ++w)
      if (adjacent(v, w)) s |= singleton(w);
    return s;
  }

  std::size_t degree(std::size_t v) const {
    return static_cast<std::size_t>(set_size(neighbours(v)));
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        if (adjacent(i, j)) out.push_back({i, j, label(i, j)});
    return out;
  }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j) c += adjacent(i, j) ? 1 : 0;
    return c;
  }

  Label max_label() const {
    Label m = 0;
    for (Label l : labels_) m = std::max(m, l);
    return m;
  }

  bool operator==(const CoxeterGraph&) const = default;

 private:
  void check_index(std::size_t i) const {
    if (i >= size()) throw GraphError("vertex index out of range");
  }

  std::vector<std::string> names_;
  std::vector<Label> labels_;  // row-major size() x size(), kNoEdge off the edges
};

// ---------------------------------------------------------------------------
// matrix forms

/// Coxeter matrix: 1 on the diagonal, kInfinity exactly at non-edges.
struct CoxeterMatrix {
  std::size_t n = 0;
  std::vector<Label> entries;

  Label operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  bool operator==(const CoxeterMatrix&) const = default;
};

inline CoxeterMatrix to_coxeter_matrix(const CoxeterGraph& g) {
  CoxeterMatrix m{g.size(), std::vector<Label>(g.size() * g.size(), 1)};
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (i != j) m.entries[i * g.size() + j] = g.adjacent(i, j) ? g.label(i, j) : kInfinity;
  return m;
}

/// Coxeter--Dynkin convention: absent edge means commutation (m = 2), edge
/// labels are >= 3 or kInfinity.
class DynkinDiagram {
 public:
  DynkinDiagram() = default;
  explicit DynkinDiagram(std::vector<std::string> names)
      : names_(std::move(names)), labels_(names_.size() * names_.size(), kNoEdge) {}

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }

  Label label(std::size_t i, std::size_t j) const { return labels_[i * size() + j]; }
  bool adjacent(std::size_t i, std::size_t j) const { return label(i, j) != kNoEdge; }

  void set_edge(std::size_t i, std::size_t j, Label m) {
    if (i >= size() || j >= size() || i == j) throw GraphError("bad Dynkin edge");
    if (m < 3) throw GraphError("Dynkin edge labels must be >= 3 or infinity");
    labels_[i * size() + j] = m;
    labels_[j * size() + i] = m;
  }

  bool operator==(const DynkinDiagram&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<Label> labels_;
};

inline DynkinDiagram dynkin_convert(const CoxeterGraph& g) {
  DynkinDiagram d(g.names());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!g.adjacent(i, j))
        d.set_edge(i, j, kInfinity);
      else if (g.label(i, j) != 2)
        d.set_edge(i, j, g.label(i, j));
    }
  return d;
}

inline CoxeterGraph to_coxeter_graph(const DynkinDiagram& d) {
  CoxeterGraph g(d.names());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (!d.adjacent(i, j))
        g.set_edge(i, j, 2);
      else if (d.label(i, j) != kInfinity)
        g.set_edge(i, j, d.label(i, j));
    }
  return g;
}

inline CoxeterMatrix to_coxeter_matrix(const DynkinDiagram& d) {
  return to_coxeter_matrix(to_coxeter_graph(d));
}

// ---------------------------------------------------------------------------
// subgraphs and connectivity

inline CoxeterGraph induced_subgraph(const CoxeterGraph& g, VertexSet s) {
  if (!is_subset(s, g.all())) throw GraphError("subset mentions an unknown vertex");
  CoxeterGraph h;
  const auto idx = members(s);
  for (auto v : idx) h.add_vertex(g.name(v));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (g.adjacent(idx[a], idx[b])) h.set_edge(a, b, g.label(idx[a], idx[b]));
  return h;
}

inline VertexSet vertex_set(const CoxeterGraph& g, const std::vector<std::string>& names) {
  VertexSet s = 0;
  for (const auto& nm : names) {
    auto i = g.index_of(nm);
    if (!i) throw GraphError("unknown vertex '" + nm + "'");
    s |= singleton(*i);
  }
  return s;
}

/// (lk(v), st(v)) where lk(v) is the set of neighbours and st(v) = lk(v) + v.
inline std::pair<VertexSet, VertexSet> link_and_star(const CoxeterGraph& g, std::size_t v) {
  if (v >= g.size()) throw GraphError("unknown vertex");
  VertexSet lk = g.neighbours(v);
  return {lk, lk | singleton(v)};
}

inline std::pair<VertexSet, VertexSet> link_and_star(const CoxeterGraph& g, std::string_view v) {
  auto i = g.index_of(v);
  if (!i) throw GraphError("unknown vertex '" + std::string(v) + "'");
  return link_and_star(g, *i);
}

/// Components of `within` under an adjacency predicate, ordered by smallest
/// member.
template <class Adjacent>
std::vector<VertexSet> components_of(std::size_t n, VertexSet within, Adjacent&& adj) {
  std::vector<VertexSet> out;
  VertexSet left = within;
  while (left) {
    VertexSet comp = singleton(lowest(left));
    VertexSet frontier = comp;
    while (frontier) {
      const std::size_t v = lowest(frontier);
      frontier &= frontier - 1;
      for (std::size_t w = 0; w < n; ++w)
        if (contains(left, w) && !contains(comp, w) && adj(v, w)) {
          comp |= singleton(w);
          frontier |= singleton(w);
        }
    }
    out.push_back(comp);
    left &= ~comp;
  }
  return out;
}

inline std::vector<VertexSet> connected_components(const CoxeterGraph& g, VertexSet within) {
  return components_of(g.size(), within,
                       [&](std::size_t a, std::size_t b) { return g.adjacent(a, b); });
}

inline std::vector<VertexSet> connected_components(const CoxeterGraph& g) {
  return connected_components(g, g.all());
}

/// Components of the Dynkin diagram restricted to `within`: vertices are
/// joined unless their label is exactly 2.
inline std::vector<VertexSet> dynkin_components(const CoxeterGraph& g, VertexSet within) {
  return components_of(g.size(), within,
                       [&](std::size_t a, std::size_t b) { return g.label(a, b) != 2; });
}

inline bool is_connected(const CoxeterGraph& g) {
  return g.size() <= 1 || connected_components(g).size() == 1;
}

inline bool is_complete(const CoxeterGraph& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (!g.adjacent(i, j)) return false;
  return true;
}

/// Every cycle of length >= 4 has a chord (maximum cardinality search plus a
/// perfect-elimination check).
inline bool is_chordal(const CoxeterGraph& g) {
  const std::size_t n = g.size();
  std::vector<int> weight(n, 0);
  std::vector<bool> done(n, false);
  std::vector<std::size_t> order;  // reverse perfect elimination order
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && (best == n || weight[v] > weight[best])) best = v;
    done[best] = true;
    order.push_back(best);
    for (std::size_t w = 0; w < n; ++w)
      if (!done[w] && g.adjacent(best, w)) ++weight[w];
  }
  // Each vertex's earlier neighbours must form a clique.
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t v = order[i];
    std::vector<std::size_t> earlier;
    for (std::size_t w = 0; w < n; ++w)
      if (g.adjacent(v, w) && pos[w] < i) earlier.push_back(w);
    if (earlier.empty()) continue;
    std::size_t parent = earlier.front();
    for (auto w : earlier)
      if (pos[w] > pos[parent]) parent = w;
    for (auto w : earlier)
      if (w != parent && !g.adjacent(parent, w)) return false;
  }
  return true;
}

/// Number of independent cycles, |E| - |V| + #components.
inline std::size_t cycle_rank(const CoxeterGraph& g) {
  if (g.empty()) return 0;
  return g.edge_count() + connected_components(g).size() - g.size();
}

}  // namespace coxprof
