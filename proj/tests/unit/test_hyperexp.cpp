#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace pvforge;
using namespace pvforge::test;

namespace {

ToricResult toric(const System& S, long t0) {
  PipelineConfig cfg;
  cfg.point = mpq_class(t0);
  return toric_ideal(S, cfg);
}

DiffIdeal sqrt_line(Field& K) {
  K = radical_field(2);
  System S = system_of({{"1/(2*t)"}});
  Mat A = {{K.embed_from(1, S.A[0][0])}};
  DiffRing D = diff_ring(K, A, true);
  return make_ideal(D, polys(D.R, {"x - z"}));
}

// NF(δ m_i) = Σ_j B_ij m_j for every standard monomial.
bool connection_consistent(const QuotientBasis& Q) {
  const PolyRing& R = Q.D.R;
  for (size_t i = 0; i < Q.monos.size(); ++i) {
    MPoly m = mp_from_terms(R, {{Q.monos[i], R.K.one()}});
    MPoly lhs = normal_form(R, delta(Q.D, m), Q.gb);
    MPoly rhs;
    for (size_t j = 0; j < Q.monos.size(); ++j)
      rhs = mp_add(R, rhs, mp_from_terms(R, {{Q.monos[j], Q.B[i][j]}}));
    if (!mp_eq(R, lhs, rhs)) return false;
  }
  return true;
}

}  // namespace

TEST(FindAlpha, AdjoinsSquareRoot) {
  System S = system_of({{"1/(2*t)"}});
  DiffIdeal I = ideal_of(S, {"x^2 - t"});
  AlphaPoint a = find_alpha(I);
  ASSERT_EQ(a.adjoined.size(), 1u);
  const Elem& x = a.alpha[0][0];
  EXPECT_TRUE(a.K.eq(a.K.mul(x, x), a.K.t()));
}

TEST(FindAlpha, FreeVariableTakesIdentity) {
  System S = system_of({{"1"}});
  DiffIdeal I = ideal_of(S, {});
  AlphaPoint a = find_alpha(I);
  EXPECT_TRUE(a.adjoined.empty());
  EXPECT_TRUE(a.K.is_one(a.alpha[0][0]));
}

TEST(FindAlpha, HyperbolaContainsIdentity) {
  System S = system_of({{"0", "1"}, {"1", "0"}});
  DiffIdeal I = ideal_of(S, {"X11 - X22", "X21 - X12", "X11^2 - X12^2 - 1"});
  AlphaPoint a = find_alpha(I);
  EXPECT_TRUE(mat_eq(a.K, a.alpha, mat_identity(a.K, 2)));
}

TEST(FindAlpha, BudgetExhausted) {
  System S = system_of({{"1/(2*t)"}});
  DiffIdeal I = ideal_of(S, {"x^2 - t"});
  EXPECT_THROW(find_alpha(I, 0), Error);
}

TEST(QuotientConnection, LineOverExtension) {
  Field K;
  DiffIdeal Q1 = sqrt_line(K);
  QuotientBasis Q = quotient_connection(Q1, 1);
  ASSERT_EQ(Q.monos.size(), 1u);
  EXPECT_TRUE(Q.D.R.K.is_zero(Q.B[0][0]));
  EXPECT_TRUE(mp_eq(Q.D.R, normal_form(Q.D.R, parse_mpoly(Q.D.R, "x"), Q.gb), parse_mpoly(Q.D.R, "z")));
}

TEST(QuotientConnection, FreeCaseIsProlongation) {
  System S = system_of({{"3"}});
  DiffIdeal Q1 = ideal_of(S, {});
  QuotientBasis Q = quotient_connection(Q1, 1);
  ASSERT_EQ(Q.monos.size(), 2u);
  EXPECT_TRUE(connection_consistent(Q));
  const Field& K = Q.D.R.K;
  Elem trace = K.add(Q.B[0][0], Q.B[1][1]);
  EXPECT_TRUE(K.eq(trace, K.from_int(3)));
}

TEST(QuotientConnection, Hyperbola) {
  System S = system_of({{"0", "1"}, {"1", "0"}});
  DiffIdeal Q1 = ideal_of(S, {"X11 - X22", "X21 - X12", "X11^2 - X12^2 - 1"});
  QuotientBasis Q = quotient_connection(Q1, 1);
  EXPECT_EQ(Q.monos.size(), 3u);
  EXPECT_TRUE(connection_consistent(Q));
}

TEST(Hyperexp, HyperbolaExponents) {
  System S = system_of({{"0", "1"}, {"1", "0"}});
  DiffIdeal Q1 = ideal_of(S, {"X11 - X22", "X21 - X12", "X11^2 - X12^2 - 1"});
  QuotientBasis Q = quotient_connection(Q1, 1);
  const Field& K = Q.D.R.K;
  Mat M = mat_transpose(Q.B);
  for (auto& row : M)
    for (auto& a : row) a = K.neg(a);
  auto sols = hyperexp_solutions(K, M);
  std::vector<mpq_class> rhos;
  for (auto& s : sols) {
    // δc + ρc = Mc
    Vec Mc = mat_vec(K, M, s.c);
    for (size_t i = 0; i < s.c.size(); ++i)
      EXPECT_TRUE(K.eq(K.add(K.derive(s.c[i]), K.mul(s.rho, s.c[i])), Mc[i]));
    mpq_class q;
    ASSERT_TRUE(K.T->is_rational(K.L, s.rho, &q));
    rhos.push_back(q);
  }
  std::sort(rhos.begin(), rhos.end());
  EXPECT_EQ(rhos, (std::vector<mpq_class>{-1, 0, 1}));
}

TEST(Hyperexp, FuchsianExponent) {
  Field K = Field::Qt();
  Mat M = {{el(K, "1/(3*t)")}};
  auto sols = hyperexp_solutions(K, M);
  ASSERT_EQ(sols.size(), 1u);
  Elem r = K.sub(el(K, "1/(3*t)"), sols[0].rho);
  // the exponential part differs from 1/(3t) by a rational log-derivative
  EXPECT_TRUE(K.is_zero(r) || is_log_derivative(K, r).has_value());
}

TEST(Characters, HyperbolaHasOneGenerator) {
  ToricResult T = toric(system_of({{"0", "1"}, {"1", "0"}}), 0);
  KbarResult k = kbar_ideal(T, {});
  EXPECT_FALSE(k.lie_shortcut);
  ASSERT_EQ(k.chars.size(), 1u);
  EXPECT_TRUE(character_certificate(k.Q, k.Q1, k.chars[0]));
  EXPECT_TRUE(k.Z.gens.empty());
  EXPECT_TRUE(ideal_equal(k.J, k.Q1));
}

TEST(Characters, ExponentialLatticeIsZero) {
  ToricResult T = toric(system_of({{"1"}}), 0);
  KbarResult k = kbar_ideal(T, {});
  ASSERT_EQ(k.chars.size(), 1u);
  EXPECT_TRUE(k.Z.gens.empty());
  EXPECT_TRUE(same_ideal(k.J.D.R, k.J.gb, {"x*d - 1"}));
}

TEST(Characters, PerfectLieAlgebraSkipsSearch) {
  ToricResult T = toric(system_of({{"1/(2*t)"}}), 1);
  KbarResult k = kbar_ideal(T, {});
  EXPECT_TRUE(k.lie_shortcut);
  EXPECT_TRUE(ideal_equal(k.J, k.Q1));
  const PolyRing& R = k.J.D.R;
  EXPECT_TRUE(contains(R, k.J.gb, {mp_sub(R, parse_mpoly(R, "x"), mp_const(R, k.alpha.alpha[0][0]))}));
  EXPECT_EQ(dimension(k.J), 0);
}

TEST(Lattice, SinglePolynomialCertificate) {
  Field K = Field::Qt();
  CharacterLattice Z = lattice_Z(K, {K.one()});
  EXPECT_TRUE(Z.gens.empty());
}

TEST(Lattice, RationalResidues) {
  Field K = Field::Qt();
  CharacterLattice Z = lattice_Z(K, {el(K, "1/t"), el(K, "1/(2*t)")});
  ASSERT_EQ(Z.gens.size(), 2u);
  EXPECT_EQ(Z.gens, (ZMat{{1, 0}, {0, 1}}));
  for (size_t i = 0; i < 2; ++i) {
    Elem sum = K.zero();
    for (size_t j = 0; j < 2; ++j)
      sum = K.add(sum, K.mul(K.from_rat(mpq_class(Z.gens[i][j])), j ? el(K, "1/(2*t)") : el(K, "1/t")));
    EXPECT_TRUE(K.eq(log_derivative(K, Z.witnesses[i]), sum));
  }
}

TEST(Lattice, OpposedExponentials) {
  Field K = Field::Qt();
  CharacterLattice Z = lattice_Z(K, {K.one(), K.from_int(-1)});
  ASSERT_EQ(Z.gens.size(), 1u);
  EXPECT_EQ(Z.gens[0], (std::vector<mpz_class>{1, 1}));
  EXPECT_EQ(witness_str(K, Z.witnesses[0]), "1");
}

TEST(Lattice, ConstantOfSquareRootCharacter) {
  Field K;
  DiffIdeal Q1 = sqrt_line(K);
  QuotientBasis Q = quotient_connection(Q1, 1);
  Character ch{parse_mpoly(Q.D.R, "x"), K.embed_from(1, el(Field::Qt(), "1/(2*t)")), 1};
  CharacterLattice Z = lattice_Z(K, {ch.r});
  ASSERT_EQ(Z.gens.size(), 1u);
  Materialized mat = materialize(K, Z.witnesses);
  Mat alpha = {{K.gen(K.L)}};
  std::vector<Elem> c = lattice_constants(Z, {ch}, Q.D, alpha, mat, 1);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_TRUE(mat.K.is_one(c[0]));
}

TEST(Lattice, TrivialLatticeHasNoConstants) {
  Field K;
  DiffIdeal Q1 = sqrt_line(K);
  QuotientBasis Q = quotient_connection(Q1, 1);
  CharacterLattice Z;
  Materialized mat = materialize(K, {});
  EXPECT_TRUE(lattice_constants(Z, {}, Q.D, {{K.gen(K.L)}}, mat, 1).empty());
  DiffIdeal J = assemble_J(Q1, {}, Z, mat, {}, Q.D);
  EXPECT_TRUE(ideal_equal(J, Q1));
}
