#include <gtest/gtest.h>

#include <cmath>

#include "inflab/config.hpp"
#include "inflab/errors.hpp"
#include "inflab/params.hpp"

using namespace inflab;

TEST(Params, DeskDefaultsAreAdmissible) {
  const ParameterSet ps = validate(RawParameters{});
  EXPECT_DOUBLE_EQ(ps.b(), kDeskB);
  EXPECT_EQ(ps.N(), kDeskN);
  EXPECT_EQ(ps.k0(), kDefaultK0);
  EXPECT_DOUBLE_EQ(ps.nu(), std::pow(64.0, 0.5));
}

TEST(Params, TheoryB) { EXPECT_NEAR(theory_b(0.25, Exponent::finite(2.0)), 0.025, 1e-15); }

TEST(Params, TheoryModeUsesTheoryB) {
  RawParameters r;
  r.theory_mode = true;
  r.N = 2;
  const ParameterSet ps = validate(r);
  EXPECT_NEAR(ps.b(), 0.025, 1e-15);
  EXPECT_TRUE(ps.b_is_theory());
}

TEST(Params, ZeroRegularityRejected) {
  RawParameters r;
  r.s = 0.0;
  EXPECT_THROW(validate(r), AdmissibilityError);
}

TEST(Params, OutsideSupercriticalWindowRejected) {
  RawParameters r;
  r.s = 1.0;  // s - 3/p = -0.5
  EXPECT_THROW(validate(r), AdmissibilityError);
  r.s = -2.0;  // s - 3/p = -3.5
  EXPECT_THROW(validate(r), AdmissibilityError);
}

TEST(Params, RangeErrors) {
  RawParameters r;
  r.eps = 0.0;
  EXPECT_THROW(validate(r), RangeError);
  r = {};
  r.mu = 0.5;
  EXPECT_THROW(validate(r), RangeError);
  r = {};
  r.b = 1.0;
  EXPECT_THROW(validate(r), RangeError);
  r = {};
  r.p = Exponent::finite(0.5);
  EXPECT_THROW(validate(r), RangeError);
  r = {};
  r.k0 = 3;  // must exceed |s| + 3
  EXPECT_THROW(validate(r), RangeError);
}

TEST(Params, DerivedScalesNegativeBranch) {
  RawParameters r;
  r.s = -0.5;
  r.eps = 0.5;
  r.mu = 64;
  r.b = 0.1;
  r.N = 2;
  const ParameterSet ps = validate(r);
  EXPECT_NEAR(ps.nu(), 42.224253144732614, 1e-10);
  const double t_star = std::pow(0.5, -4.0) * std::pow(64.0, -2.5) * std::pow(ps.nu(), -0.5);
  EXPECT_NEAR(ps.t_star() / t_star, 1.0, 1e-14);
}

TEST(Params, AmplitudeAndShear) {
  const ParameterSet ps = validate(RawParameters{});
  const double nu = 8.0;
  EXPECT_NEAR(ps.amplitude(), 0.25 * std::pow(64.0, 0.75) * std::sqrt(nu), 1e-12);
  EXPECT_NEAR(ps.zeta_scale(), std::pow(0.5, -2.0) / 64.0, 1e-15);
  // The phase shear t* A / rho equals zeta(rho) at every rho.
  EXPECT_NEAR(ps.t_star() * ps.amplitude(), ps.zeta_scale(), 1e-14);
}

TEST(Params, TheoryN) {
  EXPECT_EQ(theory_N(1.0), 100);
  EXPECT_EQ(theory_N(0.5), 200);
  EXPECT_EQ(theory_N(-2.0), 100);
}

TEST(Params, SerializeRoundTrip) {
  RawParameters r;
  r.s = -0.75;
  r.p = Exponent::finite(1.5);
  r.eps = 0.3;
  r.mu = 100;
  r.b = 0.2;
  r.N = 3;
  const ParameterSet ps = validate(r);
  const ParameterSet back = validate(raw_from_config(Config::parse(ps.serialize())));
  EXPECT_EQ(ps, back);
  EXPECT_EQ(ps.hash(), back.hash());
  EXPECT_EQ(ps.hash().size(), 16u);
}

TEST(Params, HashSeparatesParameterSets) {
  RawParameters r;
  const std::string h0 = validate(r).hash();
  r.mu = 65;
  EXPECT_NE(h0, validate(r).hash());
}

TEST(Params, ExponentParse) {
  EXPECT_TRUE(Exponent::parse("inf").is_infinite());
  EXPECT_TRUE(Exponent::parse("∞").is_infinite());
  EXPECT_DOUBLE_EQ(Exponent::parse("2.5").value(), 2.5);
  EXPECT_EQ(Exponent::infinity().reciprocal(), 0.0);
  EXPECT_THROW(Exponent::parse("two"), IOError);
}

TEST(Config, SectionsListsAndMissingKeys) {
  const Config c = Config::parse("top = 1\n# comment\n[params]\ns = -0.5\np = inf\n[experiment]\nmu = 32, 64,128\n");
  EXPECT_EQ(*c.get("", "top"), "1");
  EXPECT_DOUBLE_EQ(*c.get_double("params", "s"), -0.5);
  const auto mus = *c.get_list("experiment", "mu");
  ASSERT_EQ(mus.size(), 3u);
  EXPECT_DOUBLE_EQ(mus[2], 128);
  EXPECT_FALSE(c.get("params", "eps").has_value());
  const RawParameters r = raw_from_config(c);
  EXPECT_TRUE(r.p.is_infinite());
  EXPECT_DOUBLE_EQ(r.eps, RawParameters{}.eps);
}
