#pragma once

// Test helpers: graph builders and brute-force oracles that share no code
// with the library's search routines.

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "coxprof/graph.hpp"

namespace testing_support {

using coxprof::CoxeterGraph;
using coxprof::Label;

struct E {
  std::size_t a;
  std::size_t b;
  Label m;
};

inline CoxeterGraph make(std::size_t n, std::initializer_list<E> edges) {
  auto g = CoxeterGraph::anonymous(n);
  for (const auto& e : edges) g.set_edge(e.a, e.b, e.m);
  return g;
}

inline CoxeterGraph path(const std::vector<Label>& labels) {
  auto g = CoxeterGraph::anonymous(labels.size() + 1);
  for (std::size_t i = 0; i < labels.size(); ++i) g.set_edge(i, i + 1, labels[i]);
  return g;
}

inline CoxeterGraph star(const std::vector<Label>& labels) {
  auto g = CoxeterGraph::anonymous(labels.size() + 1);
  for (std::size_t i = 0; i < labels.size(); ++i) g.set_edge(0, i + 1, labels[i]);
  return g;
}

inline CoxeterGraph cycle(const std::vector<Label>& labels) {
  const std::size_t n = labels.size();
  auto g = CoxeterGraph::anonymous(n);
  for (std::size_t i = 0; i < n; ++i) g.set_edge(i, (i + 1) % n, labels[i]);
  return g;
}

inline CoxeterGraph complete(std::size_t n, Label m) {
  auto g = CoxeterGraph::anonymous(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.set_edge(i, j, m);
  return g;
}

/// Calls f on every labelled graph with vertices v1..vn whose pair labels
/// range over {non-edge, 2, ..., d}.  Not reduced modulo isomorphism.
inline void for_each_labelling(std::size_t n, Label d, const std::function<void(const CoxeterGraph&)>& f) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<Label> digit(pairs.size(), 0);  // 0 = non-edge, else label
  for (;;) {
    auto g = CoxeterGraph::anonymous(n);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (digit[k]) g.set_edge(pairs[k].first, pairs[k].second, digit[k]);
    f(g);
    std::size_t k = 0;
    for (; k < digit.size(); ++k) {
      digit[k] = digit[k] == 0 ? 2 : digit[k] + 1;
      if (digit[k] <= d) break;
      digit[k] = 0;
    }
    if (k == digit.size()) break;
  }
}

/// Least label matrix over all n! vertex orders; equal iff isomorphic.
inline std::vector<Label> brute_canonical(const CoxeterGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Label> best;
  do {
    std::vector<Label> enc;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) enc.push_back(g.label(p[i], p[j]));
    if (best.empty() || enc < best) best = enc;
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

inline bool brute_isomorphic(const CoxeterGraph& a, const CoxeterGraph& b) {
  return a.size() == b.size() && brute_canonical(a) == brute_canonical(b);
}

inline bool connected_by_bfs(const CoxeterGraph& g) {
  if (g.size() <= 1) return true;
  std::vector<bool> seen(g.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < g.size(); ++w)
      if (g.adjacent(v, w) && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

/// Number of isomorphism classes, by brute force.
inline std::size_t brute_class_count(std::size_t n, Label d, bool connected_only) {
  std::set<std::vector<Label>> seen;
  for_each_labelling(n, d, [&](const CoxeterGraph& g) {
    if (connected_only && !connected_by_bfs(g)) return;
    seen.insert(brute_canonical(g));
  });
  return seen.size();
}

/// One representative per isomorphism class, by brute force.
inline std::vector<CoxeterGraph> brute_classes(std::size_t n, Label d, bool connected_only) {
  std::set<std::vector<Label>> seen;
  std::vector<CoxeterGraph> out;
  for_each_labelling(n, d, [&](const CoxeterGraph& g) {
    if (connected_only && !connected_by_bfs(g)) return;
    if (seen.insert(brute_canonical(g)).second) out.push_back(g);
  });
  return out;
}

}  // namespace testing_support
