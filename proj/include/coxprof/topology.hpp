#pragma once

// Nerve of a Coxeter system, integral reduced cohomology via Smith normal
// form, and the virtual cohomological dimension
//   vcd W = max over spherical T of  (1 + top degree n with H~^n(N(V - T)) != 0)
// where the nerve N has the nonempty spherical subsets as simplices and
// the empty complex has H~^{-1} = Z.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coxprof/classification.hpp"
#include "coxprof/graph.hpp"

namespace coxprof {

// ---------------------------------------------------------------------------
// Smith normal form

class IntegerOverflow : public std::overflow_error {
 public:
  IntegerOverflow() : std::overflow_error("integer overflow in Smith normal form") {}
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw IntegerOverflow();
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw IntegerOverflow();
  return r;
}
inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }

template <class T>
T abs_value(const T& x) {
  return x < 0 ? T(-x) : x;
}

template <class T>
T gcd_value(T a, T b) {
  a = abs_value(a);
  b = abs_value(b);
  while (b != 0) {
    T r = a % b;
    a = b;
    b = r;
  }
  return a;
}

/// Nonzero diagonal entries of the Smith normal form of a (rows x cols,
/// row-major), as a divisibility chain d1 | d2 | ...
template <class T>
std::vector<T> smith_diagonal(std::vector<T> a, std::size_t rows, std::size_t cols) {
  auto at = [&](std::size_t i, std::size_t j) -> T& { return a[i * cols + j]; };
  auto swap_rows = [&](std::size_t i, std::size_t k) {
    if (i != k)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(i, j), at(k, j));
  };
  auto swap_cols = [&](std::size_t j, std::size_t k) {
    if (j != k)
      for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, j), at(i, k));
  };

  std::vector<T> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (at(i, j) != 0 && (pi == rows || abs_value(at(i, j)) < abs_value(at(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (bool clean = false; !clean;) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (at(i, t) == 0) continue;
        const T q = at(i, t) / at(t, t);
        for (std::size_t j = t; j < cols; ++j) at(i, j) = checked_sub(at(i, j), checked_mul(q, at(t, j)));
        if (at(i, t) != 0) {
          swap_rows(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (at(t, j) == 0) continue;
        const T q = at(t, j) / at(t, t);
        for (std::size_t i = t; i < rows; ++i) at(i, j) = checked_sub(at(i, j), checked_mul(q, at(i, t)));
        if (at(t, j) != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
    }
    diag.push_back(abs_value(at(t, t)));
  }
  // Restore the divisibility chain: (a, b) -> (gcd, lcm).
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      const T g = gcd_value(diag[i], diag[j]);
      const T l = checked_mul(diag[i] / g, diag[j]);
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

}  // namespace detail

/// Smith diagonal of an integer matrix, in 64-bit arithmetic when it
/// suffices and arbitrary precision otherwise.
inline std::vector<BigInt> smith_diagonal(const std::vector<std::int64_t>& a, std::size_t rows, std::size_t cols) {
  try {
    auto d = detail::smith_diagonal<std::int64_t>(a, rows, cols);
    return {d.begin(), d.end()};
  } catch (const IntegerOverflow&) {
    std::vector<BigInt> big(a.begin(), a.end());
    return detail::smith_diagonal<BigInt>(std::move(big), rows, cols);
  }
}

// ---------------------------------------------------------------------------
// simplicial complexes

/// Abstract simplicial complex on vertices 0..n-1; `faces` lists the
/// nonempty faces and is closed under nonempty subsets.
struct SimplicialComplex {
  std::size_t vertex_count = 0;
  std::vector<VertexSet> faces;

  /// -1 for the empty complex.
  int dimension() const {
    int d = -1;
    for (auto f : faces) d = std::max(d, set_size(f) - 1);
    return d;
  }

  bool closed() const {
    std::vector<VertexSet> sorted(faces);
    std::sort(sorted.begin(), sorted.end());
    for (auto f : faces)
      for (VertexSet r = f; r; r &= r - 1) {
        const VertexSet sub = f & ~(r & (~r + 1));
        if (sub && !std::binary_search(sorted.begin(), sorted.end(), sub)) return false;
      }
    return true;
  }
};

struct CohomologyGroup {
  int degree = 0;
  std::size_t rank = 0;
  std::vector<BigInt> torsion;  // invariant factors >= 2

  bool nonzero() const { return rank > 0 || !torsion.empty(); }
};

/// Reduced integral cohomology in degrees -1..dim (degree -1 is nonzero
/// only for the empty complex).
struct CohomologyProfile {
  std::vector<CohomologyGroup> groups;
  bool empty_complex = false;

  /// Largest degree with a nonzero group; nullopt when all vanish.
  std::optional<int> top_degree() const {
    std::optional<int> top;
    for (const auto& g : groups)
      if (g.nonzero()) top = g.degree;
    return top;
  }
};

inline CohomologyProfile reduced_cohomology(const SimplicialComplex& k) {
  const int dim = k.dimension();
  // cells[d + 1] = faces of dimension d, with cells[0] = {empty face}.
  std::vector<std::vector<VertexSet>> cells(static_cast<std::size_t>(dim + 2));
  cells[0].push_back(0);
  for (auto f : k.faces) cells[static_cast<std::size_t>(set_size(f))].push_back(f);
  for (auto& c : cells) std::sort(c.begin(), c.end());

  // delta[i]: coboundary from cells[i] to cells[i+1]; record its rank and
  // nontrivial invariant factors.
  struct MapData {
    std::size_t rank = 0;
    std::vector<BigInt> factors;
  };
  std::vector<MapData> delta(cells.size());
  for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
    const auto& src = cells[i];
    const auto& dst = cells[i + 1];
    std::map<VertexSet, std::size_t> col;
    for (std::size_t c = 0; c < src.size(); ++c) col[src[c]] = c;
    std::vector<std::int64_t> m(dst.size() * src.size(), 0);
    for (std::size_t r = 0; r < dst.size(); ++r) {
      int pos = 0;
      for (auto v : members(dst[r])) {
        const VertexSet face = dst[r] & ~singleton(v);
        m[r * src.size() + col.at(face)] = (pos % 2 == 0) ? 1 : -1;
        ++pos;
      }
    }
    const auto d = smith_diagonal(m, dst.size(), src.size());
    delta[i].rank = d.size();
    for (const auto& x : d)
      if (x > 1) delta[i].factors.push_back(x);
  }

  CohomologyProfile p;
  p.empty_complex = k.faces.empty();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CohomologyGroup h;
    h.degree = static_cast<int>(i) - 1;
    const std::size_t out_rank = delta[i].rank;
    const std::size_t in_rank = i ? delta[i - 1].rank : 0;
    h.rank = cells[i].size() - out_rank - in_rank;
    if (i) h.torsion = delta[i - 1].factors;
    p.groups.push_back(std::move(h));
  }
  return p;
}

/// Nerve of the sub-Coxeter system on `within`: faces are its nonempty
/// spherical subsets.
inline SimplicialComplex nerve(const SphericalCensus& census, VertexSet within) {
  SimplicialComplex k;
  k.vertex_count = census.graph().size();
  for (VertexSet s = within; s; s = (s - 1) & within)
    if (census.spherical(s)) k.faces.push_back(s);
  std::sort(k.faces.begin(), k.faces.end());
  return k;
}

inline SimplicialComplex nerve(const CoxeterGraph& g) {
  SphericalCensus census(g);
  return nerve(census, g.all());
}

inline int vcd(const SphericalCensus& census) {
  const VertexSet all = census.graph().all();
  int best = 0;
  for (auto t : census.spherical_masks()) {
    const auto top = reduced_cohomology(nerve(census, all & ~t)).top_degree();
    if (top) best = std::max(best, *top + 1);
  }
  return best;
}

inline int vcd(const CoxeterGraph& g) { return vcd(SphericalCensus(g)); }

}  // namespace coxprof
