#include <random>

#include <gtest/gtest.h>

#include "dihedral/exact_circle.hpp"
#include "dihedral/json_io.hpp"
#include "oracles/oracles.hpp"

using namespace dihedral;

namespace {

struct Param
{
  ThetaSpec spec;
  oracle::Theta theta;
};

std::vector<Param> params()
{
  return {{{-1, 1, 5, 2}, {-1, 1, 5, 2}}, {{-1, 1, 2, 1}, {-1, 1, 2, 1}}, {{1, 1, 3, 4}, {1, 1, 3, 4}}};
}

std::vector<oracle::OArc> to_oracle(ClopenSet const &s)
{
  std::vector<oracle::OArc> out;
  for (auto const &a : s.arcs())
    out.push_back({static_cast<long>(a.left.m), static_cast<long>(a.left.n), static_cast<long>(a.right.m),
                   static_cast<long>(a.right.n)});
  return out;
}

bool oracle_contains(oracle::Theta const &t, ClopenSet const &s, oracle::Point const &x)
{
  return s.is_full() || oracle::in_set(t, to_oracle(s), x);
}

oracle::Point sample(std::mt19937_64 &rng, oracle::Theta const &t)
{
  // odd numerators over an even denominator are never integers
  long den = 2 * (1 + static_cast<long>(rng() % 500));
  long num = 1 + 2 * static_cast<long>(rng() % static_cast<unsigned long>(den / 2));
  return oracle::reduce(t, mpq_class(num, den), 0);
}

ClopenSet random_set(std::mt19937_64 &rng, DoubledCircle const &c)
{
  ClopenSet s = ClopenSet::empty();
  int arcs = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < arcs; ++i) {
    long l = static_cast<long>(rng() % 13) - 6, r = static_cast<long>(rng() % 13) - 6;
    if (l == r)
      continue;
    s = c.unite(s, c.arc(l, r));
  }
  return s;
}

} // namespace

TEST(QuadField, SignAgreesWithSquareRootBracketing)
{
  std::mt19937_64 rng(21);
  for (auto const &p : params()) {
    QuadField f(p.spec);
    for (int trial = 0; trial < 400; ++trial) {
      Rational a(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 97));
      Rational b(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 97));
      a.canonicalize();
      b.canonicalize();
      ASSERT_EQ(f.sign(QuadExt{a, b}), oracle::sign(p.theta, a, b));
    }
  }
}

TEST(QuadField, FloorAndArithmetic)
{
  QuadField f = QuadField::golden();
  EXPECT_EQ(f.floor(QuadExt::theta_multiple(5)), 3);
  EXPECT_EQ(f.floor(QuadExt::theta_multiple(-1)), -1);
  // theta^2 = 1 - theta for the golden mean
  EXPECT_EQ(f.multiply(f.theta(), f.theta()), (QuadExt{1, -1}));
  QuadExt x{Rational(3), Rational(-4)};
  EXPECT_EQ(f.multiply(x, f.inverse(x)), QuadExt::integer(1));
  EXPECT_NEAR(f.approx(f.theta()), 0.6180339887, 1e-9);
}

TEST(QuadField, RejectsInvalidParameters)
{
  EXPECT_THROW(QuadField(ThetaSpec{0, 1, 4, 3}), InvalidInput);  // d a square
  EXPECT_THROW(QuadField(ThetaSpec{1, 1, 5, 2}), InvalidInput);  // theta > 1
  EXPECT_THROW(QuadField(ThetaSpec{0, 0, 5, 2}), InvalidInput);  // rational
  EXPECT_THROW(QuadField(ThetaSpec{-1, 1, 5, 0}), InvalidInput); // zero denominator
  QuadField neg(ThetaSpec{1, -1, 5, -2});
  EXPECT_GT(neg.spec().r, 0);
}

TEST(QuadExt, Printing)
{
  EXPECT_EQ((QuadExt{Rational(1, 2), Rational(0)}).to_string(), "1/2");
  EXPECT_EQ((QuadExt{Rational(0), Rational(1, 2)}).to_string(), "θ/2");
  EXPECT_EQ((QuadExt{Rational(1, 2), Rational(1, 2)}).to_string(), "(1+θ)/2");
  EXPECT_EQ((QuadExt{Rational(3), Rational(-4)}).to_string(), "3-4θ");
}

TEST(DoubledCircle, CutPointsAreReduced)
{
  for (auto const &p : params()) {
    DoubledCircle c{QuadField(p.spec)};
    for (long n = -40; n <= 40; ++n) {
      CutPoint cp = c.cut(n);
      EXPECT_EQ(cp.n, n);
      EXPECT_GE(oracle::sign(p.theta, cp.m, n), 0);
      EXPECT_LT(oracle::sign(p.theta, cp.m - 1, n), 0);
    }
  }
}

TEST(DoubledCircle, SetAlgebraMatchesPointwiseMembership)
{
  std::mt19937_64 rng(22);
  for (auto const &p : params()) {
    DoubledCircle c{QuadField(p.spec)};
    for (int trial = 0; trial < 40; ++trial) {
      ClopenSet A = random_set(rng, c), B = random_set(rng, c);
      ClopenSet U = c.unite(A, B), I = c.intersect(A, B), D = c.difference(A, B), X = c.symmetric_difference(A, B),
                C = c.complement(A);
      long k = static_cast<long>(rng() % 11) - 5;
      ClopenSet R = c.rotate(A, k), F = c.flip(A);
      for (int s = 0; s < 25; ++s) {
        oracle::Point x = sample(rng, p.theta);
        bool a = oracle_contains(p.theta, A, x), b = oracle_contains(p.theta, B, x);
        ASSERT_EQ(oracle_contains(p.theta, U, x), a || b);
        ASSERT_EQ(oracle_contains(p.theta, I, x), a && b);
        ASSERT_EQ(oracle_contains(p.theta, D, x), a && !b);
        ASSERT_EQ(oracle_contains(p.theta, X, x), a != b);
        ASSERT_EQ(oracle_contains(p.theta, C, x), !a);
        ASSERT_EQ(oracle_contains(p.theta, R, x), oracle_contains(p.theta, A, oracle::act(p.theta, -k, 0, x)));
        ASSERT_EQ(oracle_contains(p.theta, F, x), oracle_contains(p.theta, A, oracle::act(p.theta, 0, 1, x)));
      }
      EXPECT_TRUE(c.disjoint(D, B));
      EXPECT_TRUE(c.subset(I, A));
      EXPECT_EQ(c.unite(A, C), ClopenSet::full());
      EXPECT_EQ(c.length(A) + c.length(C), QuadExt::integer(1));
    }
  }
}

TEST(DoubledCircle, ComplementOfInitialArc)
{
  DoubledCircle c{QuadField::golden()};
  EXPECT_EQ(c.complement(c.arc(0, 1)), c.arc(1, 0));
  EXPECT_TRUE(c.complement(ClopenSet::full()).is_empty());
  EXPECT_EQ(c.complement(ClopenSet::empty()), ClopenSet::full());
  EXPECT_EQ(c.length(c.arc(0, 1)), c.field().theta());
}

TEST(DoubledCircle, PartitionOfWindow)
{
  DoubledCircle c{QuadField::golden()};
  std::vector<ClopenSet> parts{c.arc(0, -1), c.arc(-1, 1), c.arc(1, 0)};
  EXPECT_TRUE(c.is_partition(parts));
  parts.pop_back();
  EXPECT_FALSE(c.is_partition(parts));
}

TEST(DoubledCircle, JsonRoundTripIsBitExact)
{
  std::mt19937_64 rng(23);
  DenjoyFlipSystem sys(QuadField::golden());
  for (int trial = 0; trial < 50; ++trial) {
    ClopenSet s = random_set(rng, sys.circle());
    Json j = to_json(s);
    ClopenSet back = parse_set(sys, Json::parse(j.dump()));
    EXPECT_EQ(back, s);
    EXPECT_EQ(to_json(back).dump(), j.dump());
  }
  ThetaSpec t{-1, 1, 5, 2};
  EXPECT_EQ(parse_theta(to_json(t)), t);
}

TEST(DoubledCircle, JsonRejectsUnreducedCutPoints)
{
  DenjoyFlipSystem sys(QuadField::golden());
  Json bad = Json::parse(R"({"full":false,"arcs":[{"left":{"m":0,"n":0},"right":{"m":5,"n":1}}]})");
  EXPECT_THROW(parse_set(sys, bad), InvalidInput);
  Json extra = Json::parse(R"({"full":false,"arcs":[],"colour":1})");
  EXPECT_THROW(parse_set(sys, extra), InvalidInput);
}
