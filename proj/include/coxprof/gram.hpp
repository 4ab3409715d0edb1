#pragma once

// Cosine bilinear form of a Coxeter graph and a signature-based
// finite/affine/generic verdict, used as an independent check on the
// shape classifier.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coxprof/classification.hpp"
#include "coxprof/graph.hpp"

namespace coxprof {

inline constexpr double kDefaultGramTolerance = 1e-9;

struct GramMatrix {
  Eigen::MatrixXd entries;
  double tolerance = kDefaultGramTolerance;
};

inline GramMatrix gram_matrix(const CoxeterGraph& g, VertexSet s, double tolerance = kDefaultGramTolerance) {
  const auto idx = members(s);
  const auto k = static_cast<Eigen::Index>(idx.size());
  GramMatrix m{Eigen::MatrixXd::Identity(k, k), tolerance};
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b) {
      if (a == b) continue;
      const Label l = g.label(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
      m.entries(a, b) = l == kNoEdge ? -1.0 : -std::cos(std::numbers::pi / static_cast<double>(l));
    }
  return m;
}

inline GramMatrix gram_matrix(const CoxeterGraph& g, double tolerance = kDefaultGramTolerance) {
  return gram_matrix(g, g.all(), tolerance);
}

enum class Signature { PositiveDefinite, PositiveSemidefinite, Indefinite };

struct SignatureClass {
  Signature signature = Signature::PositiveDefinite;
  int corank = 0;  // zero eigenvalues when no eigenvalue is negative
};

inline SignatureClass signature_class(const GramMatrix& m) {
  if (m.entries.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.entries, Eigen::EigenvaluesOnly);
  int zero = 0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double e = solver.eigenvalues()(i);
    if (e < -m.tolerance) return {Signature::Indefinite, 0};
    if (e < m.tolerance) ++zero;
  }
  if (zero == 0) return {Signature::PositiveDefinite, 0};
  return {Signature::PositiveSemidefinite, zero};
}

inline Kind kind_from_signature(const SignatureClass& s) {
  if (s.signature == Signature::PositiveDefinite) return Kind::Finite;
  if (s.signature == Signature::PositiveSemidefinite && s.corank == 1) return Kind::Affine;
  return Kind::Generic;
}

struct GramVerdict {
  VertexSet block = 0;
  Kind kind = Kind::Finite;
};

/// Gram verdict for each Dynkin component of g.
inline std::vector<GramVerdict> classify_via_gram(const CoxeterGraph& g, double tolerance = kDefaultGramTolerance) {
  std::vector<GramVerdict> out;
  for (auto c : dynkin_components(g, g.all()))
    out.push_back({c, kind_from_signature(signature_class(gram_matrix(g, c, tolerance)))});
  return out;
}

inline const char* to_string(Kind k) {
  switch (k) {
    case Kind::Finite: return "finite";
    case Kind::Affine: return "affine";
    case Kind::Generic: return "generic";
  }
  return "?";
}

/// The shape classifier and the Gram form disagree on a block: a catalogue
/// transcription fault, never recoverable.
class OracleDisagreement : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Throws OracleDisagreement when any block's shape type and Gram verdict
/// differ in kind.
inline void cross_check(const CoxeterGraph& g, double tolerance = kDefaultGramTolerance) {
  for (const auto& v : classify_via_gram(g, tolerance)) {
    const auto t = classify_component(g, v.block);
    if (t.kind() != v.kind)
      throw OracleDisagreement("block " + std::to_string(v.block) + " classified " + to_string(t) +
                               " but Gram form says " + to_string(v.kind));
  }
}

}  // namespace coxprof
