#include <random>

#include <gtest/gtest.h>

#include "dihedral/abgroups.hpp"
#include "dihedral/homology.hpp"
#include "oracles/oracles.hpp"

using namespace dihedral;

namespace {

IntMatrix random_matrix(std::mt19937_64 &rng, std::size_t rows, std::size_t cols, long bound)
{
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = static_cast<long>(rng() % (2 * bound + 1)) - bound;
  return m;
}

oracle::Dense dense(IntMatrix const &m)
{
  oracle::Dense d(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      d[i][j] = m(i, j);
  return d;
}

AbHom scalar(long k)
{
  return AbHom(PresentedGroup::free(1), PresentedGroup::free(1), IntMatrix{{k}});
}

} // namespace

TEST(Smith, RoundTripOnRandomMatrices)
{
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 12;
    IntMatrix M = random_matrix(rng, rows, cols, 1000);
    SmithForm f = snf(M);
    ASSERT_EQ(f.U * M * f.V, f.S);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (i != j || i >= f.rank)
          ASSERT_EQ(f.S(i, j), 0);
    for (std::size_t k = 0; k + 1 < f.rank; ++k)
      ASSERT_TRUE(mpz_divisible_p(f.S(k + 1, k + 1).get_mpz_t(), f.S(k, k).get_mpz_t()));
    if (rows <= 6)
      ASSERT_EQ(abs(oracle::bareiss_det(dense(f.U))), 1);
    if (cols <= 6)
      ASSERT_EQ(abs(oracle::bareiss_det(dense(f.V))), 1);
  }
}

TEST(Smith, DiagonalMatchesDeterminantalDivisors)
{
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix M = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 5, 30);
    // rank-deficient cases too
    if (trial % 5 == 0 && M.rows() > 1)
      for (std::size_t j = 0; j < M.cols(); ++j)
        M(M.rows() - 1, j) = 3 * M(0, j);
    auto want = oracle::invariant_factors(dense(M));
    ASSERT_EQ(smith_diagonal(M), want) << M.to_string();
    ASSERT_EQ(snf(M, {false, false, false}).diagonal, want);
  }
}

TEST(Smith, InversesTrackTransforms)
{
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix M = random_matrix(rng, 1 + rng() % 7, 1 + rng() % 7, 50);
    SmithForm f = snf(M, {true, true, true});
    EXPECT_EQ(f.U * f.U_inv, IntMatrix::identity(M.rows()));
    EXPECT_EQ(f.V * f.V_inv, IntMatrix::identity(M.cols()));
  }
}

TEST(Groups, CanonicalForm)
{
  FGAbGroup g(1, {2, 3, 1});
  EXPECT_EQ(g.torsion(), std::vector<Integer>{6});
  EXPECT_EQ(g.to_string(), "Z + Z/6");
  EXPECT_EQ(FGAbGroup().to_string(), "0");
  EXPECT_EQ(FGAbGroup::elementary(2, 3), FGAbGroup(0, {2, 2, 2}));
  EXPECT_EQ(quotient_group(2, IntMatrix{{2, 0}, {0, 4}}), FGAbGroup(0, {2, 4}));
  EXPECT_EQ(quotient_group(3, IntMatrix{{2}, {2}, {0}}), FGAbGroup(2, {2}));
}

TEST(Groups, PresentedCoordinatesAndOrders)
{
  PresentedGroup g(2, IntMatrix{{2}, {-2}});
  EXPECT_EQ(g.canonical(), FGAbGroup(1, {2}));
  EXPECT_EQ(g.order({1, -1}), 2);
  EXPECT_EQ(g.order({1, 1}), 0);
  EXPECT_TRUE(g.is_zero({2, -2}));
  EXPECT_FALSE(g.is_zero({1, -1}));
}

TEST(Lattices, KernelAndSolver)
{
  IntMatrix m{{1, 1, 0}, {0, 2, 2}};
  IntMatrix k = kernel_basis(m);
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_TRUE((m * k).is_zero());
  EXPECT_TRUE(same_lattice(k, IntMatrix{{1}, {-1}, {1}}));
  LatticeSolver s(IntMatrix{{2, 0}, {0, 3}});
  EXPECT_TRUE(s.contains({4, 9}));
  EXPECT_FALSE(s.contains({1, 0}));
  EXPECT_EQ(matrix_rank(IntMatrix{{1, 2}, {2, 4}}), 1u);
}

TEST(Homs, KernelImageCokernel)
{
  // Z/4 -> Z/4, x -> 2x
  PresentedGroup z4(1, IntMatrix{{4}});
  AbHom f(z4, z4, IntMatrix{{2}});
  EXPECT_EQ(f.kernel(), FGAbGroup::cyclic(2));
  EXPECT_EQ(f.image(), FGAbGroup::cyclic(2));
  EXPECT_EQ(f.cokernel(), FGAbGroup::cyclic(2));
  EXPECT_FALSE(f.is_injective());
  EXPECT_THROW(AbHom(z4, PresentedGroup::free(1), IntMatrix{{1}}), InvalidInput);
}

TEST(Subquotients, InvariantUnderUnimodularChange)
{
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    InvolutionModule m = random_involution(rng, 8, trial % 2 == 1);
    std::size_t n = m.size();
    IntMatrix P = IntMatrix::identity(n), Pinv = IntMatrix::identity(n);
    for (int step = 0; step < 12 && n > 1; ++step) {
      std::size_t a = rng() % n, b = rng() % n;
      if (a == b)
        continue;
      long f = static_cast<long>(rng() % 5) - 2;
      P.add_row(a, b, f);
      Pinv.add_col(b, a, -f);
    }
    ASSERT_EQ(P * Pinv, IntMatrix::identity(n));
    InvolutionModule conj(P * m.action() * Pinv);
    EXPECT_EQ(h_odd(conj), h_odd(m));
    EXPECT_EQ(h_even(conj), h_even(m));
    EXPECT_EQ(coinvariants(conj), coinvariants(m));
  }
}

TEST(Limits, LocalizationDescriptor)
{
  std::vector<AbHom> maps;
  for (int k = 0; k < 6; ++k)
    maps.push_back(scalar(k % 2 ? 3 : 2));
  LimitDescriptor d = limit(DirectSystem(maps));
  ASSERT_EQ(d.kind, LimitKind::localization);
  EXPECT_EQ(d.localization->descriptor(), "Z[1/6]");
  EXPECT_EQ(d.localization->describe(), "Z[1/6]-type, multipliers (2,3)-periodic");
}

TEST(Limits, ConstantSystemsStabilize)
{
  AbHom id2(PresentedGroup::free(2), PresentedGroup::free(2), IntMatrix::identity(2));
  LimitDescriptor d = limit(DirectSystem({id2, id2, id2}));
  EXPECT_EQ(d.kind, LimitKind::stabilized);
  EXPECT_EQ(d.group, FGAbGroup::free(2));
  EXPECT_EQ(d.level, 1);

  PresentedGroup z2(1, IntMatrix{{2}});
  AbHom idz2(z2, z2, IntMatrix{{1}});
  d = limit(DirectSystem({idz2, idz2, idz2}));
  EXPECT_EQ(d.kind, LimitKind::stabilized);
  EXPECT_EQ(d.group, FGAbGroup::cyclic(2));
}

TEST(Limits, PrefixDropDoesNotChangeStabilizedValue)
{
  PresentedGroup z2(1, IntMatrix{{2}});
  AbHom zero(PresentedGroup::free(1), z2, IntMatrix{{0}});
  AbHom to_z2(z2, PresentedGroup::free(2), IntMatrix{{0}, {0}});
  AbHom id2(PresentedGroup::free(2), PresentedGroup::free(2), IntMatrix::identity(2));
  DirectSystem sys({zero, to_z2, id2, id2, id2});
  LimitDescriptor full = limit(sys);
  ASSERT_EQ(full.kind, LimitKind::stabilized);
  for (std::size_t k = 1; k <= 2; ++k) {
    LimitDescriptor dropped = limit(sys.drop_prefix(k));
    EXPECT_EQ(dropped.kind, LimitKind::stabilized);
    EXPECT_EQ(dropped.group, full.group);
  }
}

TEST(Limits, SingleTrailingIsomorphismIsNotEnough)
{
  AbHom id2(PresentedGroup::free(2), PresentedGroup::free(2), IntMatrix::identity(2));
  AbHom proj(PresentedGroup::free(2), PresentedGroup::free(2), IntMatrix{{1, 0}, {0, 0}});
  EXPECT_EQ(limit(DirectSystem({proj, proj, id2})).kind, LimitKind::undetermined);
}

TEST(Limits, ImageSystemDropsDyingClasses)
{
  // (Z/2)^2 -> (Z/2)^2 killing the second summand each time: limit Z/2
  PresentedGroup g(2, IntMatrix{{2, 0}, {0, 2}});
  AbHom f(g, g, IntMatrix{{1, 0}, {0, 0}});
  DirectSystem sys({f, f, f, f});
  EXPECT_EQ(limit(sys).kind, LimitKind::undetermined);
  LimitDescriptor d = limit(image_system(sys));
  EXPECT_EQ(d.kind, LimitKind::stabilized);
  EXPECT_EQ(d.group, FGAbGroup::cyclic(2));
}
