#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace pvforge;
using namespace pvforge::test;

TEST(PartialFractions, TextbookSplit) {
  Field K = Field::Qt();
  Elem r = el(K, "1/(t^2-t)");
  PartialFractions pf = partial_fractions(K, r);
  EXPECT_TRUE(pf.poly.empty());
  ASSERT_EQ(pf.poles.size(), 2u);
  Elem sum = K.zero();
  for (auto& p : pf.poles) {
    ASSERT_EQ(p.order(), 1);
    Elem term = K.T->frac(K.L, p.ladder[0], p.q);
    sum = K.add(sum, term);
  }
  EXPECT_TRUE(K.eq(sum, r));
  EXPECT_TRUE(K.eq(recombine(K, pf), r));
}

TEST(PartialFractions, PolynomialOnly) {
  Field K = Field::Qt();
  PartialFractions pf = partial_fractions(K, K.t());
  EXPECT_TRUE(pf.poles.empty());
  EXPECT_TRUE(K.T->peq(0, pf.poly, upoly(Field::Q(), {"0", "1"})));
}

TEST(PartialFractions, OverGaussianRationals) {
  Field Qi = adjoin_root(Field::Q(), "i", upoly(Field::Q(), {"1", "0", "1"}));
  Field K(Qi.T->adjoin_transcendental(Qi.L, "t"), Qi.L + 1);
  Elem r = el(K, "2*t/(t^2+1)");
  PartialFractions pf = partial_fractions(K, r);
  ASSERT_EQ(pf.poles.size(), 2u);
  for (auto& p : pf.poles) {
    EXPECT_EQ(p.q.size(), 2u);
    EXPECT_EQ(p.order(), 1);
    EXPECT_TRUE(Qi.is_one(p.ladder[0][0]));
  }
  EXPECT_TRUE(K.eq(recombine(K, pf), r));
}

TEST(LogDerivative, SimplePole) {
  Field K = Field::Qt();
  auto w = is_log_derivative(K, K.inv(K.t()));
  ASSERT_TRUE(w.has_value());
  ASSERT_EQ(w->q.size(), 1u);
  EXPECT_EQ(w->e[0], 1);
  EXPECT_EQ(witness_str(K, *w), "(t)");
  EXPECT_TRUE(K.eq(log_derivative(K, *w), K.inv(K.t())));
}

TEST(LogDerivative, ExponentialIsNot) {
  Field K = Field::Qt();
  EXPECT_FALSE(is_log_derivative(K, K.one()).has_value());
  EXPECT_FALSE(is_log_derivative(K, el(K, "1/t^2")).has_value());
}

TEST(LogDerivative, FractionalWitness) {
  Field K = Field::Qt();
  auto w = is_log_derivative(K, el(K, "1/(2*t)"));
  ASSERT_TRUE(w.has_value());
  ASSERT_EQ(w->e.size(), 1u);
  EXPECT_EQ(w->e[0], mpq_class(1, 2));
  // δ(z)/z = 1/(2t) on z^2 = t
  Field Z = radical_field(2);
  Elem z = Z.gen(Z.L);
  EXPECT_TRUE(Z.eq(Z.div(Z.derive(z), z), Z.embed_from(1, el(K, "1/(2*t)"))));
}

TEST(LogDerivative, Products) {
  Field K = Field::Qt();
  Elem f = el(K, "(t-1)^2*(t+3)/t^3");
  Elem r = K.div(K.derive(f), f);
  auto w = is_log_derivative(K, r);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(K.eq(log_derivative(K, *w), r));
}
