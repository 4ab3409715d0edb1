#pragma once

// Irreducible Coxeter types: the finite and affine catalogues plus a
// catch-all Generic tag, with orders, pseudo-ranks and solvability of the
// finite ones.

#include <algorithm>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coxprof/graph.hpp"

namespace coxprof {

using BigInt = boost::multiprecision::cpp_int;

enum class Family {
  A, B, D, E, F, G, H, I,  // finite
  AffineA, AffineB, AffineC, AffineD, AffineE, AffineF, AffineG,
  Generic,
};

enum class Kind { Finite, Affine, Generic };

/// Irreducible type X_n.  `n` is the subscript: the rank for finite types,
/// rank - 1 for affine types, the vertex count for Generic.  `m` is the
/// dihedral parameter of I2(m) and 0 otherwise.
struct IrreducibleType {
  Family family = Family::A;
  int n = 1;
  Label m = 0;

  auto operator<=>(const IrreducibleType&) const = default;
  bool operator==(const IrreducibleType&) const = default;

  Kind kind() const {
    if (family == Family::Generic) return Kind::Generic;
    return family >= Family::AffineA ? Kind::Affine : Kind::Finite;
  }
  bool finite() const { return kind() == Kind::Finite; }
  bool affine() const { return kind() == Kind::Affine; }

  /// Number of Coxeter generators.
  int rank() const { return affine() ? n + 1 : n; }
};

using TypeList = std::vector<IrreducibleType>;

class TypeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// construction with normalisation A2 = I2(3), B2 = I2(4), G2 = I2(6)

namespace type {

inline IrreducibleType A(int n) { return {Family::A, n, 0}; }
inline IrreducibleType B(int n) { return n == 1 ? A(1) : IrreducibleType{Family::B, n, 0}; }
inline IrreducibleType D(int n) { return n == 3 ? A(3) : IrreducibleType{Family::D, n, 0}; }
inline IrreducibleType E(int n) { return {Family::E, n, 0}; }
inline IrreducibleType F4() { return {Family::F, 4, 0}; }
inline IrreducibleType G2() { return {Family::G, 2, 0}; }
inline IrreducibleType H(int n) { return {Family::H, n, 0}; }
inline IrreducibleType I2(Label m) {
  if (m == 3) return A(2);
  if (m == 4) return B(2);
  if (m == 6) return G2();
  if (m < 3) throw TypeError("I2(m) needs m >= 3");
  return {Family::I, 2, m};
}
inline IrreducibleType affine_A(int n) { return {Family::AffineA, n, 0}; }
inline IrreducibleType affine_B(int n) { return {Family::AffineB, n, 0}; }
inline IrreducibleType affine_C(int n) { return {Family::AffineC, n, 0}; }
inline IrreducibleType affine_D(int n) { return {Family::AffineD, n, 0}; }
inline IrreducibleType affine_E(int n) { return {Family::AffineE, n, 0}; }
inline IrreducibleType affine_F4() { return {Family::AffineF, 4, 0}; }
inline IrreducibleType affine_G2() { return {Family::AffineG, 2, 0}; }
inline IrreducibleType generic(int vertices) { return {Family::Generic, vertices, 0}; }

}  // namespace type

inline std::string to_string(const IrreducibleType& t) {
  const std::string n = std::to_string(t.n);
  switch (t.family) {
    case Family::A: return "A" + n;
    case Family::B: return "B" + n;
    case Family::D: return "D" + n;
    case Family::E: return "E" + n;
    case Family::F: return "F" + n;
    case Family::G: return "G" + n;
    case Family::H: return "H" + n;
    case Family::I: return "I2(" + std::to_string(t.m) + ")";
    case Family::AffineA: return "~A" + n;
    case Family::AffineB: return "~B" + n;
    case Family::AffineC: return "~C" + n;
    case Family::AffineD: return "~D" + n;
    case Family::AffineE: return "~E" + n;
    case Family::AffineF: return "~F" + n;
    case Family::AffineG: return "~G" + n;
    case Family::Generic: return "Generic(" + n + ")";
  }
  return "?";
}

/// "A1xA2" for a product; "1" for the trivial group.
inline std::string to_string(TypeList types) {
  if (types.empty()) return "1";
  std::sort(types.begin(), types.end());
  std::string out;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (i) out += "x";
    out += to_string(types[i]);
  }
  return out;
}

/// Inverse of to_string for single types ("A3", "I2(5)", "~A2", ...).
inline IrreducibleType parse_type(const std::string& s) {
  auto bad = [&] { return TypeError("unrecognised type '" + s + "'"); };
  if (s.empty()) throw bad();
  if (s.rfind("I2(", 0) == 0 && s.back() == ')') return type::I2(std::stoul(s.substr(3, s.size() - 4)));
  const bool aff = s[0] == '~';
  const std::string body = aff ? s.substr(1) : s;
  if (body.size() < 2) throw bad();
  int n = 0;
  try {
    n = std::stoi(body.substr(1));
  } catch (const std::exception&) {
    throw bad();
  }
  const char f = body[0];
  if (!aff) {
    switch (f) {
      case 'A': return type::A(n);
      case 'B': return type::B(n);
      case 'D': return type::D(n);
      case 'E': return type::E(n);
      case 'F': if (n == 4) return type::F4(); break;
      case 'G': if (n == 2) return type::G2(); break;
      case 'H': return type::H(n);
      default: break;
    }
  } else {
    switch (f) {
      case 'A': return type::affine_A(n);
      case 'B': return type::affine_B(n);
      case 'C': return type::affine_C(n);
      case 'D': return type::affine_D(n);
      case 'E': return type::affine_E(n);
      case 'F': if (n == 4) return type::affine_F4(); break;
      case 'G': if (n == 2) return type::affine_G2(); break;
      default: break;
    }
  }
  throw bad();
}

// ---------------------------------------------------------------------------
// finite-type data

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt order_of_finite(const IrreducibleType& t) {
  if (!t.finite()) throw TypeError("order requested for infinite type " + to_string(t));
  const int n = t.n;
  switch (t.family) {
    case Family::A: return factorial(n + 1);
    case Family::B: return (BigInt{1} << n) * factorial(n);
    case Family::D: return (BigInt{1} << (n - 1)) * factorial(n);
    case Family::E:
      if (n == 6) return 51840;
      if (n == 7) return 2903040;
      return 696729600;
    case Family::F: return 1152;
    case Family::G: return 12;
    case Family::H: return n == 3 ? 120 : 14400;
    case Family::I: return BigInt{2} * t.m;
    default: break;
  }
  throw TypeError("unreachable");
}

inline BigInt order_of_finite(const TypeList& types) {
  BigInt r = 1;
  for (const auto& t : types) r *= order_of_finite(t);
  return r;
}

/// Pseudo-rank of a finite irreducible: B_{2k+1} counts 2k+2, I2(4k+2)
/// (k >= 1, including G2) counts 3, everything else its rank.
inline int pseudo_rank_finite(const IrreducibleType& t) {
  if (!t.finite()) throw TypeError("pseudo-rank requested for infinite type " + to_string(t));
  if (t.family == Family::B && t.n % 2 == 1) return t.n + 1;
  if (t.family == Family::G) return 3;
  if (t.family == Family::I && t.m % 4 == 2) return 3;
  return t.rank();
}

inline int pseudo_rank_finite(const TypeList& types) {
  int r = 0;
  for (const auto& t : types) r += pseudo_rank_finite(t);
  return r;
}

inline bool is_solvable_finite(const IrreducibleType& t) {
  if (!t.finite()) throw TypeError("solvability requested for infinite type " + to_string(t));
  switch (t.family) {
    case Family::A: return t.n <= 3;
    case Family::B: return t.n <= 4;
    case Family::D: return t.n == 4;
    case Family::F:
    case Family::G:
    case Family::I: return true;
    default: return false;
  }
}

/// Direct factors of W_t as an abstract group, written with Coxeter types:
/// B_{2k+1} = A1 x D_{2k+1} and I2(4k+2) = A1 x I2(2k+1); all other finite
/// irreducibles are returned unchanged.  Two finite Coxeter groups are
/// isomorphic iff their sorted factor lists agree.
inline TypeList group_factors(const IrreducibleType& t) {
  if (t.family == Family::B && t.n % 2 == 1 && t.n >= 3) return {type::A(1), type::D(t.n)};
  if (t.family == Family::G) return {type::A(1), type::A(2)};
  if (t.family == Family::I && t.m % 4 == 2) return {type::A(1), type::I2(t.m / 2)};
  return {t};
}

inline TypeList group_factors(const TypeList& types) {
  TypeList out;
  for (const auto& t : types) {
    if (!t.finite()) {
      out.push_back(t);
      continue;
    }
    auto f = group_factors(t);
    out.insert(out.end(), f.begin(), f.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// catalogue diagrams (Dynkin convention, vertices s1..sk)

namespace detail {

inline DynkinDiagram blank_diagram(int k) {
  std::vector<std::string> names;
  for (int i = 1; i <= k; ++i) names.push_back("s" + std::to_string(i));
  return DynkinDiagram(std::move(names));
}

inline void path(DynkinDiagram& d, int from, int to) {
  for (int i = from; i < to; ++i) d.set_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1), 3);
}

}  // namespace detail

/// Standard diagram of an irreducible finite or affine type.
inline DynkinDiagram catalogue_diagram(const IrreducibleType& t) {
  using detail::path;
  const int n = t.n;
  const int k = t.rank();
  auto d = detail::blank_diagram(k);
  auto e = [&](int a, int b, Label m) { d.set_edge(static_cast<std::size_t>(a), static_cast<std::size_t>(b), m); };
  switch (t.family) {
    case Family::A: path(d, 0, n - 1); break;
    case Family::B: path(d, 0, n - 1); e(n - 2, n - 1, 4); break;
    case Family::D: path(d, 0, n - 2); e(n - 3, n - 1, 3); break;
    case Family::E: path(d, 0, n - 2); e(2, n - 1, 3); break;  // branch at s3, short arm s_n
    case Family::F: path(d, 0, 3); e(1, 2, 4); break;
    case Family::G: e(0, 1, 6); break;
    case Family::H: path(d, 0, n - 1); e(0, 1, 5); break;
    case Family::I: e(0, 1, t.m); break;
    case Family::AffineA:
      if (n == 1) {
        e(0, 1, kInfinity);
      } else {
        path(d, 0, n);
        e(n, 0, 3);
      }
      break;
    case Family::AffineB:  // fork s1,s2 - s3 ... s_{n+1} with 4 at the far end
      e(0, 2, 3);
      e(1, 2, 3);
      path(d, 2, n);
      e(n - 1, n, 4);
      break;
    case Family::AffineC: path(d, 0, n); e(0, 1, 4); e(n - 1, n, 4); break;
    case Family::AffineD:  // forks at both ends
      if (n == 4) {
        for (int i = 1; i <= 4; ++i) e(0, i, 3);
      } else {
        e(0, 2, 3);
        e(1, 2, 3);
        path(d, 2, n - 2);
        e(n - 2, n - 1, 3);
        e(n - 2, n, 3);
      }
      break;
    case Family::AffineE: {
      // Arms (2,2,2), (1,3,3), (1,2,5) in edges from the branch vertex s1.
      std::vector<int> arms = n == 6 ? std::vector<int>{2, 2, 2}
                                     : (n == 7 ? std::vector<int>{1, 3, 3} : std::vector<int>{1, 2, 5});
      int next = 1;
      for (int len : arms) {
        int prev = 0;
        for (int i = 0; i < len; ++i) {
          e(prev, next, 3);
          prev = next++;
        }
      }
      break;
    }
    case Family::AffineF: path(d, 0, 4); e(2, 3, 4); break;
    case Family::AffineG: e(0, 1, 3); e(1, 2, 6); break;
    case Family::Generic: throw TypeError("no catalogue diagram for Generic");
  }
  return d;
}

/// Finite catalogue used by `tables finite`: every family up to rank
/// `max_rank`, plus I2(m) for 5 <= m <= max_dihedral.
inline TypeList finite_catalogue(int max_rank = 8, Label max_dihedral = 12) {
  TypeList out;
  for (int n = 1; n <= max_rank; ++n) out.push_back(type::A(n));
  for (int n = 2; n <= max_rank; ++n) out.push_back(type::B(n));
  for (int n = 4; n <= max_rank; ++n) out.push_back(type::D(n));
  for (int n = 6; n <= std::min(max_rank, 8); ++n) out.push_back(type::E(n));
  if (max_rank >= 4) out.push_back(type::F4());
  out.push_back(type::G2());
  if (max_rank >= 3) out.push_back(type::H(3));
  if (max_rank >= 4) out.push_back(type::H(4));
  for (Label m = 5; m <= max_dihedral; ++m)
    if (m != 6) out.push_back(type::I2(m));
  return out;
}

inline TypeList affine_catalogue(int max_rank = 8) {
  TypeList out;
  for (int n = 1; n + 1 <= max_rank; ++n) out.push_back(type::affine_A(n));
  for (int n = 3; n + 1 <= max_rank; ++n) out.push_back(type::affine_B(n));
  for (int n = 2; n + 1 <= max_rank; ++n) out.push_back(type::affine_C(n));
  for (int n = 4; n + 1 <= max_rank; ++n) out.push_back(type::affine_D(n));
  for (int n = 6; n <= 8 && n + 1 <= max_rank; ++n) out.push_back(type::affine_E(n));
  if (max_rank >= 5) out.push_back(type::affine_F4());
  if (max_rank >= 3) out.push_back(type::affine_G2());
  return out;
}

}  // namespace coxprof
