#include <gtest/gtest.h>

#include "coxprof/classification.hpp"
#include "coxprof/gram.hpp"
#include "coxprof/rigidity.hpp"
#include "support.hpp"

using namespace coxprof;

TEST(Gram, Entries) {
  EXPECT_DOUBLE_EQ(gram_matrix(CoxeterGraph::anonymous(1)).entries(0, 0), 1.0);
  auto g = CoxeterGraph::anonymous(2);
  g.set_edge(0, 1, 2);
  EXPECT_NEAR(gram_matrix(g).entries(0, 1), 0.0, 1e-15);
  g.set_edge(0, 1, 3);
  EXPECT_NEAR(gram_matrix(g).entries(0, 1), -0.5, 1e-15);
}

TEST(Gram, Signatures) {
  EXPECT_EQ(signature_class(gram_matrix(triangle(2, 3, 5))).signature, Signature::PositiveDefinite);
  const auto affine = signature_class(gram_matrix(triangle(3, 3, 3)));
  EXPECT_EQ(affine.signature, Signature::PositiveSemidefinite);
  EXPECT_EQ(affine.corank, 1);
  EXPECT_EQ(signature_class(gram_matrix(triangle(2, 3, 7))).signature, Signature::Indefinite);
}

TEST(Gram, PerComponentVerdicts) {
  for (const auto& t : finite_catalogue()) {
    const auto g = to_coxeter_graph(catalogue_diagram(t));
    for (const auto& v : classify_via_gram(g)) EXPECT_EQ(v.kind, Kind::Finite) << to_string(t);
  }
  for (const auto& t : affine_catalogue()) {
    const auto g = to_coxeter_graph(catalogue_diagram(t));
    for (const auto& v : classify_via_gram(g)) EXPECT_EQ(v.kind, Kind::Affine) << to_string(t);
  }
  const auto pair = classify_via_gram(CoxeterGraph::anonymous(2));
  ASSERT_EQ(pair.size(), 1u);
  EXPECT_EQ(pair[0].kind, Kind::Affine);
  const auto square = classify_via_gram(testing_support::cycle({3, 3, 3, 3}));
  ASSERT_EQ(square.size(), 1u);
  EXPECT_EQ(square[0].kind, Kind::Generic);
}

// The dual check on every graph up to 3 vertices with labels up to 9, and the
// full connected 4-vertex range lives in the acceptance binary.
TEST(Gram, AgreesWithShapeClassifier) {
  for (std::size_t n = 1; n <= 3; ++n)
    testing_support::for_each_labelling(n, 9, [](const CoxeterGraph& g) { ASSERT_NO_THROW(cross_check(g)); });
}

TEST(Gram, DisagreementIsDetected) {
  // A tolerance so coarse that H3's smallest eigenvalue reads as zero.
  EXPECT_THROW(cross_check(triangle(2, 3, 5), 0.5), OracleDisagreement);
}
