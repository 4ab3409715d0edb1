#pragma once

// Recognition of irreducible finite and affine types by diagram shape,
// spherical subsets, and maximal spherical subsets (CF_max).

#include <algorithm>
#include <array>
#include <unordered_map>
#include <vector>

#include "coxprof/graph.hpp"
#include "coxprof/types.hpp"

namespace coxprof {

/// Subset-scanning analyses walk all 2^n vertex subsets.
inline constexpr std::size_t kMaxScanVertices = 20;

inline void require_scannable(const CoxeterGraph& g) {
  if (g.size() > kMaxScanVertices)
    throw GraphError("graph has " + std::to_string(g.size()) + " vertices; subset analyses support at most " +
                     std::to_string(kMaxScanVertices));
}

/// Label in Dynkin convention: kNoEdge for commuting pairs, kInfinity for
/// non-edges of the Coxeter graph.
inline Label dynkin_label(const CoxeterGraph& g, std::size_t u, std::size_t v) {
  const Label m = g.label(u, v);
  if (m == 2) return kNoEdge;
  return m == kNoEdge ? kInfinity : m;
}

namespace detail {

/// Shape recogniser for one Dynkin-connected block.
class BlockShape {
 public:
  BlockShape(const CoxeterGraph& g, VertexSet block) : g_(g), verts_(members(block)), k_(verts_.size()) {
    deg_.assign(k_, 0);
    for (std::size_t a = 0; a < k_; ++a)
      for (std::size_t b = a + 1; b < k_; ++b)
        if (d(a, b) != kNoEdge) {
          ++deg_[a];
          ++deg_[b];
          ++edges_;
          if (d(a, b) == kInfinity) has_infinity_ = true;
        }
  }

  IrreducibleType classify() const {
    const int k = static_cast<int>(k_);
    if (k == 1) return type::A(1);
    if (k == 2) {
      const Label m = d(0, 1);
      return m == kInfinity ? type::affine_A(1) : type::I2(m);
    }
    if (has_infinity_) return type::generic(k);
    if (edges_ == k_) return cycle();
    if (edges_ + 1 != k_) return type::generic(k);

    const int maxdeg = *std::max_element(deg_.begin(), deg_.end());
    if (maxdeg <= 2) return path();
    if (maxdeg == 3) return branched();
    if (maxdeg == 4 && k == 5 && all_three()) return type::affine_D(4);
    return type::generic(k);
  }

 private:
  Label d(std::size_t a, std::size_t b) const { return a == b ? kNoEdge : dynkin_label(g_, verts_[a], verts_[b]); }

  bool all_three() const {
    for (std::size_t a = 0; a < k_; ++a)
      for (std::size_t b = a + 1; b < k_; ++b)
        if (d(a, b) != kNoEdge && d(a, b) != 3) return false;
    return true;
  }

  IrreducibleType cycle() const {
    for (auto x : deg_)
      if (x != 2) return type::generic(static_cast<int>(k_));
    if (!all_three()) return type::generic(static_cast<int>(k_));
    return type::affine_A(static_cast<int>(k_) - 1);
  }

  /// Walk from `start` away from `prev` until a leaf; returns visited
  /// positions (excluding start) and the labels along the way.
  void walk(std::size_t start, std::size_t prev, std::vector<std::size_t>& seen, std::vector<Label>& labels) const {
    std::size_t cur = start;
    for (;;) {
      std::size_t next = k_;
      for (std::size_t w = 0; w < k_; ++w)
        if (w != cur && w != prev && d(cur, w) != kNoEdge) next = w;
      if (next == k_ || (deg_[cur] != 2 && cur != start)) break;
      labels.push_back(d(cur, next));
      seen.push_back(next);
      prev = cur;
      cur = next;
      if (deg_[cur] != 2) break;
    }
  }

  IrreducibleType path() const {
    const int k = static_cast<int>(k_);
    std::size_t leaf = 0;
    while (deg_[leaf] != 1) ++leaf;
    std::vector<std::size_t> seen;
    std::vector<Label> seq;
    walk(leaf, k_, seen, seq);

    std::vector<std::size_t> odd;  // positions of labels other than 3
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (seq[i] != 3) odd.push_back(i);
    const std::size_t last = seq.size() - 1;

    if (odd.empty()) return type::A(k);
    if (odd.size() == 1) {
      const std::size_t i = odd[0];
      const Label m = seq[i];
      if (i == 0 || i == last) {
        if (m == 4) return type::B(k);
        if (m == 5 && (k == 3 || k == 4)) return type::H(k);
        if (m == 6 && k == 3) return type::affine_G2();
        return type::generic(k);
      }
      if (m == 4 && k == 4) return type::F4();
      if (m == 4 && k == 5) return type::affine_F4();  // 3,4,3,3 up to reversal
      return type::generic(k);
    }
    if (odd.size() == 2 && odd[0] == 0 && odd[1] == last && seq[0] == 4 && seq[last] == 4)
      return type::affine_C(k - 1);
    return type::generic(k);
  }

  IrreducibleType branched() const {
    const int k = static_cast<int>(k_);
    std::vector<std::size_t> branch;
    for (std::size_t a = 0; a < k_; ++a)
      if (deg_[a] == 3) branch.push_back(a);

    if (branch.size() == 2) {
      // ~D_n: both branch vertices carry two leaves, all labels 3.
      if (!all_three()) return type::generic(k);
      for (auto b : branch) {
        int leaves = 0;
        for (std::size_t w = 0; w < k_; ++w)
          if (d(b, w) != kNoEdge && deg_[w] == 1) ++leaves;
        if (leaves != 2) return type::generic(k);
      }
      return type::affine_D(k - 1);
    }
    if (branch.size() != 1) return type::generic(k);

    // Single branch vertex: measure its three arms.
    const std::size_t c = branch[0];
    struct Arm {
      std::size_t length;
      std::vector<Label> labels;
    };
    std::vector<Arm> arms;
    for (std::size_t w = 0; w < k_; ++w) {
      if (d(c, w) == kNoEdge) continue;
      std::vector<std::size_t> seen{w};
      std::vector<Label> labels{d(c, w)};
      walk(w, c, seen, labels);
      arms.push_back({seen.size(), labels});
    }
    std::sort(arms.begin(), arms.end(), [](const Arm& x, const Arm& y) { return x.length < y.length; });
    const std::array<std::size_t, 3> len{arms[0].length, arms[1].length, arms[2].length};

    if (all_three()) {
      if (len[0] == 1 && len[1] == 1) return type::D(k);
      if (len == std::array<std::size_t, 3>{1, 2, 2}) return type::E(6);
      if (len == std::array<std::size_t, 3>{1, 2, 3}) return type::E(7);
      if (len == std::array<std::size_t, 3>{1, 2, 4}) return type::E(8);
      if (len == std::array<std::size_t, 3>{2, 2, 2}) return type::affine_E(6);
      if (len == std::array<std::size_t, 3>{1, 3, 3}) return type::affine_E(7);
      if (len == std::array<std::size_t, 3>{1, 2, 5}) return type::affine_E(8);
      return type::generic(k);
    }
    // ~B_n: arms (1,1,x) with a single 4 on the terminal edge of the long arm.
    if (len[0] != 1 || len[1] != 1) return type::generic(k);
    int non_three = 0;
    for (const auto& arm : arms)
      for (auto l : arm.labels)
        if (l != 3) ++non_three;
    if (non_three != 1) return type::generic(k);
    for (const auto& arm : arms)
      if (arm.labels.back() == 4 && (arm.length == len[2])) return type::affine_B(k - 1);
    return type::generic(k);
  }

  const CoxeterGraph& g_;
  std::vector<std::size_t> verts_;
  std::size_t k_;
  std::vector<int> deg_;
  std::size_t edges_ = 0;
  bool has_infinity_ = false;
};

}  // namespace detail

/// Type of a Dynkin-connected vertex set `block` of g.
inline IrreducibleType classify_component(const CoxeterGraph& g, VertexSet block) {
  if (block == 0) throw GraphError("cannot classify an empty component");
  return detail::BlockShape(g, block).classify();
}

inline IrreducibleType classify_component(const DynkinDiagram& d) {
  const auto g = to_coxeter_graph(d);
  if (dynkin_components(g, g.all()).size() != 1) throw GraphError("Dynkin diagram is not connected");
  return classify_component(g, g.all());
}

struct Block {
  VertexSet vertices = 0;
  IrreducibleType type;
  bool operator==(const Block&) const = default;
};

/// Dynkin components of g restricted to s, each classified.
inline std::vector<Block> classify_blocks(const CoxeterGraph& g, VertexSet s) {
  std::vector<Block> out;
  for (auto c : dynkin_components(g, s)) out.push_back({c, classify_component(g, c)});
  return out;
}

inline TypeList types_of(const std::vector<Block>& blocks) {
  TypeList t;
  for (const auto& b : blocks) t.push_back(b.type);
  std::sort(t.begin(), t.end());
  return t;
}

inline TypeList types_of(const CoxeterGraph& g, VertexSet s) { return types_of(classify_blocks(g, s)); }

inline bool all_finite(const TypeList& t) {
  return std::all_of(t.begin(), t.end(), [](const auto& x) { return x.finite(); });
}

inline bool is_spherical(const CoxeterGraph& g, VertexSet s) { return all_finite(types_of(g, s)); }

// ---------------------------------------------------------------------------

/// Sphericity of every vertex subset of g, computed once.  Supersets of a
/// non-spherical set are non-spherical; the remaining masks are classified
/// block by block with memoisation.
class SphericalCensus {
 public:
  // Keeps a reference to g.
  explicit SphericalCensus(CoxeterGraph&&) = delete;
  explicit SphericalCensus(const CoxeterGraph& g) : g_(g) {
    require_scannable(g);
    const std::size_t n = g.size();
    const VertexSet limit = VertexSet{1} << n;
    spherical_.assign(limit, 0);
    spherical_[0] = 1;
    for (VertexSet s = 1; s < limit; ++s) {
      bool ok = true;
      for (VertexSet r = s; r && ok; r &= r - 1)
        if (!spherical_[s & ~(r & (~r + 1))]) ok = false;
      if (ok) {
        for (auto c : dynkin_components(g, s))
          if (!type_of(c).finite()) {
            ok = false;
            break;
          }
      }
      spherical_[s] = ok ? 1 : 0;
    }
  }

  const CoxeterGraph& graph() const { return g_; }
  bool spherical(VertexSet s) const { return spherical_[s] != 0; }

  /// Memoised classification of one Dynkin-connected block.
  const IrreducibleType& type_of(VertexSet block) const {
    auto it = memo_.find(block);
    if (it == memo_.end()) it = memo_.emplace(block, classify_component(g_, block)).first;
    return it->second;
  }

  TypeList types(VertexSet s) const {
    TypeList t;
    for (auto c : dynkin_components(g_, s)) t.push_back(type_of(c));
    std::sort(t.begin(), t.end());
    return t;
  }

  /// Spherical subsets ordered by size, then by mask.
  std::vector<VertexSet> spherical_masks() const {
    std::vector<VertexSet> out;
    for (VertexSet s = 0; s < spherical_.size(); ++s)
      if (spherical_[s]) out.push_back(s);
    std::stable_sort(out.begin(), out.end(), [](VertexSet a, VertexSet b) { return set_size(a) < set_size(b); });
    return out;
  }

  /// Inclusion-maximal spherical subsets ordered by mask.
  std::vector<VertexSet> maximal_masks() const {
    std::vector<VertexSet> out;
    const std::size_t n = g_.size();
    for (VertexSet s = 0; s < spherical_.size(); ++s) {
      if (!spherical_[s]) continue;
      bool maximal = true;
      for (std::size_t v = 0; v < n && maximal; ++v)
        if (!contains(s, v) && spherical_[s | singleton(v)]) maximal = false;
      if (maximal) out.push_back(s);
    }
    return out;
  }

 private:
  const CoxeterGraph& g_;
  std::vector<unsigned char> spherical_;
  mutable std::unordered_map<VertexSet, IrreducibleType> memo_;
};

struct SphericalSubset {
  VertexSet vertices = 0;
  TypeList types;
};

inline std::vector<SphericalSubset> spherical_subsets(const CoxeterGraph& g) {
  SphericalCensus census(g);
  std::vector<SphericalSubset> out;
  for (auto s : census.spherical_masks()) out.push_back({s, census.types(s)});
  return out;
}

struct CFMaxEntry {
  VertexSet vertices = 0;
  TypeList types;
  BigInt order;
  int pseudorank = 0;
};

struct CFMaxReport {
  std::vector<CFMaxEntry> entries;
  /// intersections[i][j]: types of the parabolic on entries i and j's common
  /// vertices (empty list = trivial group; meaningful only if they meet).
  std::vector<std::vector<TypeList>> intersections;
  std::vector<std::vector<bool>> meets;
  int pseudorank_bound = 0;
};

inline CFMaxReport cf_max(const SphericalCensus& census) {
  CFMaxReport r;
  const auto& g = census.graph();
  for (auto s : census.maximal_masks()) {
    CFMaxEntry e;
    e.vertices = s;
    e.types = census.types(s);
    e.order = order_of_finite(e.types);
    e.pseudorank = pseudo_rank_finite(e.types);
    r.pseudorank_bound += e.pseudorank;
    r.entries.push_back(std::move(e));
  }
  const std::size_t m = r.entries.size();
  r.intersections.assign(m, std::vector<TypeList>(m));
  r.meets.assign(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const VertexSet common = r.entries[i].vertices & r.entries[j].vertices;
      r.meets[i][j] = common != 0;
      r.intersections[i][j] = types_of(g, common);
    }
  return r;
}

inline CFMaxReport cf_max(const CoxeterGraph& g) { return cf_max(SphericalCensus(g)); }

/// Multiset of maximal finite parabolics, each rendered as a product
/// ("A1xA2"), sorted; the comparison form used across graphs.
inline std::vector<std::string> cf_max_products(const CFMaxReport& r) {
  std::vector<std::string> out;
  for (const auto& e : r.entries) out.push_back(to_string(e.types));
  std::sort(out.begin(), out.end());
  return out;
}

/// Same multiset after rewriting each product into abstract direct factors
/// (see group_factors), so that isomorphic finite groups compare equal.
inline std::vector<std::string> cf_max_groups(const CFMaxReport& r) {
  std::vector<std::string> out;
  for (const auto& e : r.entries) out.push_back(to_string(group_factors(e.types)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace coxprof
