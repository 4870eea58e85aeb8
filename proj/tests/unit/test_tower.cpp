#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace pvforge;
using namespace pvforge::test;

TEST(Tower, PowerRule) {
  Field K = Field::Qt();
  EXPECT_TRUE(K.eq(K.derive(el(K, "t^2")), el(K, "2*t")));
}

TEST(Tower, QuotientRule) {
  Field K = Field::Qt();
  Elem inv_t = K.inv(K.t());
  EXPECT_TRUE(K.eq(K.derive(inv_t), K.neg(K.inv(el(K, "t^2")))));
}

TEST(Tower, ImplicitDerivativeOfSquareRoot) {
  Field K = radical_field(2);
  Elem z = K.gen(K.L);
  Elem dz = K.derive(z);
  EXPECT_TRUE(K.eq(dz, K.inv(K.mul(K.from_int(2), z))));
  // δ(z^2) = 2 z δz = 1 = δt
  EXPECT_TRUE(K.is_one(K.mul(K.mul(K.from_int(2), z), dz)));
}

TEST(Tower, ArithmeticInRadicalLevel) {
  Field K = radical_field(3);
  Elem z = K.gen(K.L);
  EXPECT_TRUE(K.eq(K.pow(z, 3), K.t()));
  EXPECT_TRUE(K.is_one(K.mul(z, K.inv(z))));
  EXPECT_TRUE(K.eq(K.inv(z), K.div(K.mul(z, z), K.t())));
}

TEST(Tower, EmbedAndLower) {
  Field K = radical_field(2);
  Elem a = el(Field::Qt(), "(t+1)/(t-2)");
  Elem up = K.embed_from(1, a);
  Elem back;
  ASSERT_TRUE(K.T->lower(K.L, 1, up, back));
  EXPECT_TRUE(Field::Qt().eq(back, a));
  EXPECT_FALSE(K.T->lower(K.L, 1, K.gen(K.L), back));
}

TEST(Tower, ConstantFieldBelowT) {
  Field Qi = adjoin_root(Field::Q(), "i", upoly(Field::Q(), {"1", "0", "1"}));
  Field K(Qi.T->adjoin_transcendental(Qi.L, "t"), Qi.L + 1);
  Field C = constant_field(K);
  EXPECT_EQ(C.L, Qi.L);
  Elem i = K.gen(1);
  EXPECT_TRUE(K.is_zero(K.derive(i)));
  EXPECT_TRUE(K.eq(K.mul(i, i), K.from_int(-1)));
}

TEST(Tower, RationalFunctionsAreReduced) {
  Field K = Field::Qt();
  Elem a = el(K, "(t^2-1)/(t-1)");
  EXPECT_TRUE(K.eq(a, el(K, "t+1")));
  mpq_class v;
  ASSERT_TRUE(value_at(a, 3, v));
  EXPECT_EQ(v, 4);
  EXPECT_FALSE(value_at(K.inv(K.t()), 0, v));
}

TEST(Tower, MapsBetweenTowers) {
  Field K = radical_field(2);
  // z -> -z is an automorphism of Q(t)(z)
  TowerMap f(K, K, {K.zero(), K.t(), K.neg(K.gen(K.L))});
  Elem z = K.gen(K.L);
  EXPECT_TRUE(K.eq(f(z), K.neg(z)));
  EXPECT_TRUE(K.eq(f(K.mul(z, z)), K.t()));
}
