#pragma once

// Canonical labelling of Coxeter graphs.
//
// The canonical form is the lexicographically least encoding
//   [n] ++ [label(p_i, p_j) for i = 1..n-1, j = 0..i-1]
// (row-major strict lower triangle, two bytes per label, 0 for a non-edge)
// over all vertex orders p that list colour classes of an iterated
// label-aware colour refinement in increasing colour order.  Colours are
// isomorphism invariant, so two graphs share a canonical form iff they are
// isomorphic.

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "coxprof/graph.hpp"

namespace coxprof {

struct CanonicalForm {
  std::string key;                  // canonical byte string
  std::vector<std::size_t> order;   // order[k] = original vertex placed at position k

  bool operator==(const CanonicalForm&) const = default;
};

namespace detail {

inline void append_label(std::string& s, Label l) {
  s.push_back(static_cast<char>((l >> 8) & 0xff));
  s.push_back(static_cast<char>(l & 0xff));
}

/// Stable colour refinement; returns colour per vertex, colours numbered by
/// the sorted order of their signatures.
inline std::vector<std::size_t> refine_colours(const CoxeterGraph& g) {
  const std::size_t n = g.size();
  using Sig = std::vector<std::uint64_t>;
  std::vector<std::size_t> colour(n, 0);
  std::size_t classes = n == 0 ? 0 : 1;
  for (;;) {
    std::vector<Sig> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      Sig nbr;
      nbr.reserve(n);
      for (std::size_t w = 0; w < n; ++w)
        if (w != v)
          nbr.push_back((static_cast<std::uint64_t>(g.label(v, w)) << 32) | colour[w]);
      std::sort(nbr.begin(), nbr.end());
      sig[v].push_back(colour[v]);
      sig[v].insert(sig[v].end(), nbr.begin(), nbr.end());
    }
    std::map<Sig, std::size_t> ids;
    for (const auto& s : sig) ids.emplace(s, 0);
    std::size_t next = 0;
    for (auto& [s, id] : ids) id = next++;
    std::vector<std::size_t> refined(n);
    for (std::size_t v = 0; v < n; ++v) refined[v] = ids[sig[v]];
    const bool stable = ids.size() == classes;
    colour = std::move(refined);
    classes = ids.size();
    if (stable) break;
  }
  return colour;
}

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const CoxeterGraph& g) : g_(g), n_(g.size()) {
    colour_ = refine_colours(g);
    // Position p must hold a vertex of colour slot_[p].
    std::vector<std::size_t> sorted(n_);
    std::iota(sorted.begin(), sorted.end(), 0);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](auto a, auto b) { return colour_[a] < colour_[b]; });
    for (auto v : sorted) slot_.push_back(colour_[v]);
    // Twins: swapping them is an automorphism, so only the first unused one
    // of each twin class needs to be tried.
    twin_of_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      twin_of_[v] = v;
      for (std::size_t u = 0; u < v; ++u)
        if (twin_of_[u] == u && colour_[u] == colour_[v] && are_twins(u, v)) {
          twin_of_[v] = u;
          break;
        }
    }
  }

  CanonicalForm run() {
    current_.assign(1, static_cast<char>(n_));
    best_.clear();
    used_.assign(n_, false);
    placed_.clear();
    recurse();
    if (n_ == 0) best_ = current_, best_order_.clear();
    return {best_, best_order_};
  }

 private:
  bool are_twins(std::size_t u, std::size_t v) const {
    for (std::size_t w = 0; w < n_; ++w)
      if (w != u && w != v && g_.label(u, w) != g_.label(v, w)) return false;
    return true;
  }

  void recurse() {
    const std::size_t p = placed_.size();
    if (p == n_) {
      if (best_.empty() || current_ < best_) {
        best_ = current_;
        best_order_ = placed_;
      }
      return;
    }
    std::vector<bool> tried_twin(n_, false);
    for (std::size_t v = 0; v < n_; ++v) {
      if (used_[v] || colour_[v] != slot_[p]) continue;
      if (tried_twin[twin_of_[v]]) continue;
      tried_twin[twin_of_[v]] = true;

      const std::size_t mark = current_.size();
      for (std::size_t j = 0; j < p; ++j) append_label(current_, g_.label(v, placed_[j]));
      // Prefix above the best complete encoding cannot win.
      if (best_.empty() || best_.compare(0, current_.size(), current_) >= 0) {
        used_[v] = true;
        placed_.push_back(v);
        recurse();
        placed_.pop_back();
        used_[v] = false;
      }
      current_.resize(mark);
    }
  }

  const CoxeterGraph& g_;
  std::size_t n_;
  std::vector<std::size_t> colour_;
  std::vector<std::size_t> slot_;
  std::vector<std::size_t> twin_of_;
  std::string current_;
  std::string best_;
  std::vector<std::size_t> best_order_;
  std::vector<bool> used_;
  std::vector<std::size_t> placed_;
};

}  // namespace detail

/// Encoding of g in its own vertex order (same layout as the canonical key).
inline std::string encode(const CoxeterGraph& g) {
  std::string s(1, static_cast<char>(g.size()));
  for (std::size_t i = 1; i < g.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) detail::append_label(s, g.label(i, j));
  return s;
}

inline CanonicalForm canonical_labelling(const CoxeterGraph& g) {
  return detail::CanonicalSearch(g).run();
}

inline std::string canonical_form(const CoxeterGraph& g) { return canonical_labelling(g).key; }

/// g relabelled into canonical vertex order (names carried along).
inline CoxeterGraph canonical_graph(const CoxeterGraph& g) {
  const auto cf = canonical_labelling(g);
  CoxeterGraph h;
  for (auto v : cf.order) h.add_vertex(g.name(v));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (g.adjacent(cf.order[i], cf.order[j])) h.set_edge(i, j, g.label(cf.order[i], cf.order[j]));
  return h;
}

/// Label-preserving bijection from g1 to g2 (result[v] is the image of v),
/// if one exists.
inline std::optional<std::vector<std::size_t>> are_isomorphic(const CoxeterGraph& g1,
                                                              const CoxeterGraph& g2) {
  if (g1.size() != g2.size() || g1.edge_count() != g2.edge_count()) return std::nullopt;
  const auto c1 = canonical_labelling(g1);
  const auto c2 = canonical_labelling(g2);
  if (c1.key != c2.key) return std::nullopt;
  std::vector<std::size_t> map(g1.size());
  for (std::size_t k = 0; k < g1.size(); ++k) map[c1.order[k]] = c2.order[k];
  return map;
}

inline std::string to_hex(std::string_view bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

}  // namespace coxprof
