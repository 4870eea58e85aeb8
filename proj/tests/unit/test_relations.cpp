#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace pvforge;
using namespace pvforge::test;

namespace {

bool is_diagonal(const Field& K, const Mat& B, const std::vector<Elem>& diag) {
  for (size_t i = 0; i < B.size(); ++i)
    for (size_t j = 0; j < B.size(); ++j)
      if (!K.eq(B[i][j], i == j ? diag[i] : K.zero())) return false;
  return true;
}

RelationResult relations(const System& S, int nu, long t0) {
  RelationConfig cfg;
  cfg.degree = nu;
  cfg.point = mpq_class(t0);
  return relation_space(S.K, S.A, cfg);
}

}  // namespace

TEST(Prolong, ScalarProductRule) {
  System S = system_of({{"5"}});
  DiffRing D = diff_ring(S.K, S.A, false);
  std::vector<Mono> monos;
  Mat B = prolong(D, 2, monos);
  ASSERT_EQ(monos.size(), 3u);
  EXPECT_TRUE(is_diagonal(S.K, B, {S.K.zero(), S.K.from_int(5), S.K.from_int(10)}));
}

TEST(Prolong, SquareRootSystem) {
  System S = system_of({{"1/(2*t)"}});
  DiffRing D = diff_ring(S.K, S.A, false);
  std::vector<Mono> monos;
  Mat B = prolong(D, 2, monos);
  EXPECT_TRUE(is_diagonal(S.K, B, {S.K.zero(), el(S.K, "1/(2*t)"), el(S.K, "1/t")}));
}

TEST(Prolong, DegreeOneBlockIsA) {
  System S = system_of({{"t", "1"}, {"2", "t^2+1"}});
  DiffRing D = diff_ring(S.K, S.A, false);
  std::vector<Mono> monos;
  Mat B = prolong(D, 1, monos);
  ASSERT_EQ(monos.size(), 5u);
  // δ(X_ij) = Σ_s A_is X_sj
  for (size_t r = 1; r < monos.size(); ++r) {
    MPoly v = mp_from_terms(D.R, {{monos[r], S.K.one()}});
    MPoly dv = delta(D, v);
    MPoly from_b;
    for (size_t c = 0; c < monos.size(); ++c)
      from_b = mp_add(D.R, from_b, mp_from_terms(D.R, {{monos[c], B[r][c]}}));
    EXPECT_TRUE(mp_eq(D.R, dv, from_b));
  }
  EXPECT_TRUE(S.K.is_zero(B[0][0]));
}

TEST(StabilityRefine, StableSpaceUnchanged) {
  System S = system_of({{"1/(2*t)"}});
  DiffRing D = diff_ring(S.K, S.A, false);
  std::vector<Mono> monos;
  Mat B = prolong(D, 2, monos);
  const Field& K = S.K;
  // x^2 - t, on the monomials (1, x, x^2)
  Mat rows = {{K.neg(K.t()), K.zero(), K.one()}};
  Mat out = stability_refine(K, rows, B);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(rank(K, {rows[0], out[0]}), 1);
}

TEST(StabilityRefine, FullSpaceWithZeroConnection) {
  const Field K = Field::Qt();
  Mat B = mat_zero(K, 3, 3);
  Mat out = stability_refine(K, mat_identity(K, 3), B);
  EXPECT_EQ(rank(K, out), 3);
}

TEST(StabilityRefine, SpuriousTruncatedVectorRemoved) {
  // c = (1, t - 1) kills 1 + (t - 1) e^t modulo t^2 but is not a relation.
  System S = system_of({{"1"}});
  DiffRing D = diff_ring(S.K, S.A, false);
  std::vector<Mono> monos;
  Mat B = prolong(D, 1, monos);
  const Field& K = S.K;
  Mat rows = {{K.one(), el(K, "t - 1")}};
  SeriesEmbedding E(K, Field::Q().zero(), 2);
  SeriesMatrix F = fundamental_series(E, S.A);
  Series v = E.ring().add(E(rows[0][0]), E.ring().mul(E(rows[0][1]), F.F[0][0]));
  EXPECT_TRUE(E.ring().is_zero(v));
  EXPECT_TRUE(stability_refine(K, rows, B).empty());
}

TEST(RelationSpace, ExponentialHasNone) {
  RelationResult r = relations(system_of({{"1"}}), 6, 0);
  EXPECT_TRUE(r.gb.empty());
  EXPECT_TRUE(r.certified);
}

TEST(RelationSpace, SquareRoot) {
  RelationResult r = relations(system_of({{"1/(2*t)"}}), 6, 1);
  EXPECT_TRUE(same_ideal(r.D.R, r.gb, {"x^2 - t"}));
  EXPECT_TRUE(r.certified);
}

TEST(RelationSpace, HyperbolicPairDegreeTwo) {
  RelationResult r = relations(system_of({{"0", "1"}, {"1", "0"}}), 2, 0);
  EXPECT_TRUE(contains(r.D.R, r.gb, polys(r.D.R, {"X21 - X12", "X11 - X22", "X11^2 - X12^2 - 1"})));
  EXPECT_TRUE(ideal_certificate(r.D, r.gb, r.t0));
}

TEST(RelationSpace, AiryOnlyWronskian) {
  RelationResult r = relations(system_of({{"0", "1"}, {"t", "0"}}), 4, 0);
  EXPECT_TRUE(same_ideal(r.D.R, r.gb, {"X11*X22 - X12*X21 - 1"}));
}

TEST(RelationSpace, SingularPointRejected) {
  System S = system_of({{"1/t"}});
  RelationConfig cfg;
  cfg.point = mpq_class(0);
  EXPECT_THROW(relation_space(S.K, S.A, cfg), Error);
  EXPECT_EQ(default_point(S.K, S.A), 1);
}

TEST(RelationSpace, LevelReports) {
  RelationResult r = relations(system_of({{"1/(2*t)"}}), 3, 1);
  ASSERT_FALSE(r.levels.empty());
  for (auto& l : r.levels) {
    EXPECT_GE(l.N, 2 * l.unknowns + 8);
    EXPECT_TRUE(l.certified);
  }
}
