#include "helpers.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace pvforge;
using namespace pvforge::test;

namespace {

oracle::Fixture fixture(const std::string& name) { return oracle::load_fixture(PVFORGE_FIXTURE_DIR, name); }

PVResult run(const oracle::Fixture& f) { return pv_ring(*f.file.system, oracle::fixture_config(f)); }

}  // namespace

TEST(Bounds, DegreeTable) {
  EXPECT_EQ(dn_bound(1), 2);
  EXPECT_EQ(dn_bound(2), 6);
  EXPECT_EQ(dn_bound(3), 360);
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 16, 48);
  EXPECT_EQ(dn_bound(4), big);
}

TEST(Bounds, CharacterDegree) {
  KappaBound k1 = kappa_bound(1);
  EXPECT_EQ(k1.base, 2);
  EXPECT_EQ(k1.exponent, 24);
  ASSERT_TRUE(k1.leading.has_value());
  EXPECT_EQ(*k1.leading, 16777216);
  EXPECT_NE(k1.symbolic.find("2^24"), std::string::npos);
  KappaBound k2 = kappa_bound(2);
  EXPECT_EQ(k2.base, 4);
  EXPECT_EQ(k2.exponent, 12288);
  ASSERT_TRUE(k2.leading.has_value());
  EXPECT_EQ(mpz_sizeinbase(k2.leading->get_mpz_t(), 2), 24577u);
}

TEST(Toric, Exponential) {
  ToricResult T = toric_ideal(system_of({{"1"}}), {});
  EXPECT_TRUE(same_ideal(T.I.D.R, T.I.gb, {"x*d - 1"}));
  EXPECT_EQ(group_dimension(T.H), 1);
}

TEST(Toric, SquareRoot) {
  PipelineConfig cfg;
  cfg.point = mpq_class(1);
  ToricResult T = toric_ideal(system_of({{"1/(2*t)"}}), cfg);
  EXPECT_TRUE(same_ideal(T.I.D.R, T.I.gb, {"x^2 - t", "x*d - 1"}));
  EXPECT_TRUE(group_equal(T.H, parse_group(Field::Q(), 1, {"g^2 - 1"})));
}

TEST(Toric, Airy) {
  PipelineConfig cfg;
  cfg.point = mpq_class(0);
  ToricResult T = toric_ideal(system_of({{"0", "1"}, {"t", "0"}}), cfg);
  EXPECT_TRUE(same_ideal(T.I.D.R, T.I.gb, {"X11*X22 - X12*X21 - 1", "d - 1"}));
  EXPECT_TRUE(group_equal(T.H, parse_group(Field::Q(), 2, {"g11*g22 - g12*g21 - 1"})));
  EXPECT_EQ(T.nu, 6);
}

TEST(Toric, LargeSystemsNeedExplicitDegree) {
  System S = system_of({{"0", "1", "0"}, {"0", "0", "1"}, {"t", "0", "0"}});
  try {
    toric_ideal(S, {});
    FAIL() << "expected a bound error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind, Error::Kind::Bound);
  }
}

class Catalog : public ::testing::TestWithParam<std::string> {};

TEST_P(Catalog, MatchesOracle) {
  oracle::Fixture f = fixture(GetParam());
  PVResult r = run(f);
  EXPECT_EQ(r.t0, *f.file.t0);
  EXPECT_TRUE(ideal_equal(r.m.D.R, r.m.gb, oracle::fixture_ideal(f, "m", r.m.D.R)));
  EXPECT_TRUE(group_equal(r.group, oracle::fixture_group(f)));
  EXPECT_TRUE(verify(r).ok());
}

INSTANTIATE_TEST_SUITE_P(Systems, Catalog, ::testing::ValuesIn(oracle::catalog_names()));

TEST(PV, LogarithmGroupIsAdditive) {
  PVResult r = run(fixture("log"));
  EXPECT_EQ(r.group_dim, 1);
  EXPECT_TRUE(group_equal(r.group, parse_group(Field::Q(), 2, {"g11 - 1", "g21", "g22 - 1"})));
  EXPECT_TRUE(same_ideal(r.m.D.R, r.m.gb, {"X11 - 1", "X21", "X22 - 1", "d - 1"}));
}

TEST(PV, FreeParticleIdealIsRational) {
  PVResult r = run(fixture("free"));
  EXPECT_EQ(r.group_dim, 0);
  EXPECT_TRUE(same_ideal(r.m.D.R, r.m.gb, {"X11 - 1", "X21", "X22 - 1", "X12 - t", "d - 1"}));
}

TEST(PV, DescentOfSquareRoot) {
  PVResult r = run(fixture("sqrt"));
  EXPECT_EQ(r.descent.orbit_size, 2);
  EXPECT_FALSE(r.kbar.alpha.adjoined.empty());
  EXPECT_TRUE(same_ideal(r.m.D.R, r.m.gb, {"x^2 - t", "x*d - 1"}));
}

TEST(Gauge, IdentityWhenPossible) {
  DiffIdeal m = ideal_of(system_of({{"0", "1"}, {"1", "0"}}), {"X11 - X22", "X21 - X12", "X11^2 - X12^2 - 1"});
  Mat g;
  ASSERT_TRUE(rational_gauge(m, 0, g));
  EXPECT_TRUE(mat_eq(Field::Q(), g, mat_identity(Field::Q(), 2)));
}

TEST(Gauge, RationalPointMovesIdeal) {
  System S = system_of({{"0", "0"}, {"0", "0"}});
  DiffIdeal m = ideal_of(S, {"X11 - 2", "X12", "X21", "X22 - 1"});
  Mat g;
  ASSERT_TRUE(rational_gauge(m, 0, g));
  EXPECT_TRUE(mat_eq(Field::Q(), g, matrix(Field::Q(), {{"2", "0"}, {"0", "1"}})));
  DiffIdeal moved = apply_gauge(m, g);
  EXPECT_TRUE(same_ideal(moved.D.R, moved.gb, {"X11 - 1", "X12", "X21", "X22 - 1", "d - 1"}));
}

TEST(Verify, HyperbolaPasses) {
  PVResult r = run(fixture("torus"));
  VerifyReport rep = verify(r);
  EXPECT_TRUE(rep.ok()) << rep.str();
  EXPECT_GE(rep.items.size(), 7u);
}

TEST(Verify, DroppedGeneratorFailsTorsorDimension) {
  oracle::Fixture f = fixture("log");
  DiffRing D = diff_ring(f.file.system->K, f.file.system->A, true);
  PolyList gens = oracle::fixture_ideal(f, "m", D.R);
  PolyList kept;
  for (auto& g : gens)
    if (!mp_eq(D.R, g, parse_mpoly(D.R, "X21"))) kept.push_back(g);
  ASSERT_EQ(kept.size() + 1, gens.size());
  VerifyInput in;
  in.system = *f.file.system;
  in.t0 = *f.file.t0;
  in.m = make_ideal(D, kept);
  VerifyReport rep = verify(in);
  EXPECT_FALSE(rep.ok());
  bool torsor_failed = false;
  for (auto& i : rep.items)
    if (i.name == "torsor dimension") torsor_failed = !i.ok;
  EXPECT_TRUE(torsor_failed) << rep.str();
}

TEST(Verify, TrivialGroupPasses) {
  PVResult r = run(fixture("free"));
  VerifyReport rep = verify(r);
  EXPECT_TRUE(rep.ok()) << rep.str();
  EXPECT_EQ(group_dimension(r.group), 0);
}

TEST(IdealFile, RoundTrip) {
  PVResult r = run(fixture("cube"));
  std::string text = write_ideal_file(&r.system, &r.t0, r.m.D.R.K, 1, {{"m", &r.m}}) + group_block("galois", r.group);
  IdealFile f = parse_ideal_file(text);
  ASSERT_TRUE(f.system.has_value());
  ASSERT_TRUE(f.t0.has_value());
  EXPECT_EQ(*f.t0, 1);
  Mat A = f.system->A;
  DiffIdeal m = file_ideal(f, "m", &A);
  EXPECT_TRUE(ideal_equal(m.D.R, m.gb, r.m.gb));
  ASSERT_EQ(f.groups.size(), 1u);
  EXPECT_TRUE(group_equal(parse_group(Field::Q(), 1, f.groups[0].second), r.group));
}

TEST(IdealFile, AlgebraicTower) {
  std::string text =
      "system\nn 1\nt0 1\nrow 1/(2*t)\nend\n"
      "tower\nt\nz : z^2 - t\nend\n"
      "ideal S\nx - z\nend\n";
  IdealFile f = parse_ideal_file(text);
  EXPECT_EQ(f.K.L, 2);
  Mat A = {{f.K.embed_from(1, f.system->A[0][0])}};
  DiffIdeal S = file_ideal(f, "S", &A);
  DescentResult d = descend(S, galois_closure(f.K));
  EXPECT_TRUE(same_ideal(d.m.D.R, d.m.gb, {"x^2 - t", "x*d - 1"}));
}

TEST(IdealFile, Errors) {
  EXPECT_THROW(parse_ideal_file("nonsense\n"), Error);
  try {
    parse_ideal_file("ideal m\nx +* 2\nend\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind, Error::Kind::Parse);
  }
}
