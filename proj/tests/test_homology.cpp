#include <random>

#include <gtest/gtest.h>

#include "dihedral/analysis.hpp"
#include "dihedral/homology.hpp"

using namespace dihedral;

namespace {

/// Permutation module with `fixed` fixed cells followed by `pairs` swapped pairs.
InvolutionModule permutation_module(std::size_t fixed, std::size_t pairs)
{
  CellPermutation p;
  for (std::size_t i = 0; i < fixed; ++i)
    p.image.push_back(i);
  for (std::size_t k = 0; k < pairs; ++k) {
    std::size_t a = fixed + 2 * k;
    p.image.push_back(a + 1);
    p.image.push_back(a);
  }
  return InvolutionModule::from_permutation(p);
}

InvolutionModule minus_identity(std::size_t n)
{
  return InvolutionModule(-IntMatrix::identity(n));
}

FreeProductStage trivial_stage(int level)
{
  FreeProductStage st;
  st.level = level;
  st.sigma = InvolutionModule(IntMatrix::identity(1));
  st.phi_sigma = InvolutionModule(IntMatrix::identity(1));
  st.common_to_sigma = IntMatrix::identity(1);
  st.sigma_refinement = IntMatrix::identity(1);
  st.phi_sigma_refinement = IntMatrix::identity(1);
  return st;
}

} // namespace

TEST(Involutions, OddDegrees)
{
  EXPECT_EQ(h_odd(permutation_module(3, 0)), FGAbGroup::elementary(2, 3));
  EXPECT_EQ(h_odd(permutation_module(3, 4)), FGAbGroup::elementary(2, 3));
  EXPECT_EQ(h_odd(minus_identity(1)), FGAbGroup());
  EXPECT_EQ(h_odd(permutation_module(0, 3)), FGAbGroup());
}

TEST(Involutions, EvenDegrees)
{
  EXPECT_EQ(h_even(permutation_module(2, 3)), FGAbGroup());
  EXPECT_EQ(h_even(minus_identity(1)), FGAbGroup::cyclic(2));
  EXPECT_EQ(h_even(InvolutionModule(IntMatrix::identity(3))), FGAbGroup());
}

TEST(Involutions, Coinvariants)
{
  for (std::size_t f = 0; f <= 3; ++f)
    for (std::size_t p = 0; p <= 3; ++p)
      if (f + p > 0)
        EXPECT_EQ(coinvariants(permutation_module(f, p)), FGAbGroup::free(f + p));
  EXPECT_EQ(coinvariants(InvolutionModule(IntMatrix::identity(2))), FGAbGroup::free(2));
}

TEST(Involutions, RejectsNonInvolutions)
{
  EXPECT_THROW(InvolutionModule(IntMatrix{{1, 1}, {0, 1}}), InvalidInput);
  EXPECT_THROW(InvolutionModule(IntMatrix(2, 3)), InvalidInput);
}

TEST(Involutions, FixedCellAndVanishingLaws)
{
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    InvolutionModule m = random_involution(rng, 10, false);
    ASSERT_TRUE(m.is_permutation());
    EXPECT_EQ(h_odd(m), FGAbGroup::elementary(2, m.fixed_cells()));
    EXPECT_EQ(h_even(m), FGAbGroup());
    EXPECT_TRUE(psi_check(m));
  }
  EXPECT_THROW(psi_check(minus_identity(2)), InvalidInput);
}

TEST(BarOracle, SmallCases)
{
  InvolutionModule one(IntMatrix::identity(1));
  EXPECT_EQ(bar_oracle(one, 1), FGAbGroup::cyclic(2));
  EXPECT_EQ(bar_oracle(one, 1), h_odd(one));
  InvolutionModule m = permutation_module(1, 2);
  EXPECT_EQ(bar_oracle(m, 0), coinvariants(m));
  EXPECT_EQ(bar_oracle(m, 2), FGAbGroup());
  EXPECT_EQ(bar_oracle(m, 2), h_even(m));
  EXPECT_THROW(bar_oracle(permutation_module(9, 0), 1), InvalidInput);
  EXPECT_THROW(bar_oracle(one, 7), InvalidInput);
}

TEST(BarOracle, AgreesWithClosedFormsOnRandomModules)
{
  OracleReport r = oracle_check(2024);
  EXPECT_EQ(r.modules, 100u);
  EXPECT_EQ(r.comparisons, 600u);
  EXPECT_TRUE(r.mismatches.empty()) << r.mismatches.front();
}

TEST(ClosedForm, FixedPointCase)
{
  CompEvidence e;
  e.fix_sigma = 1;
  e.fix_phi_sigma = 2;
  e.h0_image = FGAbGroup::free(2);
  HomologyTable t = theorem_comp(e);
  EXPECT_EQ(t.which, CompCase::fixed_points);
  EXPECT_EQ(t.degrees[0].group, FGAbGroup::free(2));
  for (std::size_t n = 1; n <= 9; ++n)
    EXPECT_EQ(t.at(n).group, n % 2 ? FGAbGroup::elementary(2, 3) : FGAbGroup()) << n;
  EXPECT_EQ(t.at(3).group, t.at(1).group);
  EXPECT_EQ(t.at(5).group, t.at(1).group);
}

TEST(ClosedForm, FreeAndSplittingCases)
{
  CompEvidence free;
  free.h0_image = FGAbGroup::free(2);
  HomologyTable t = theorem_comp(free);
  EXPECT_EQ(t.which, CompCase::free_minimal);
  EXPECT_EQ(t.degrees[0].group, FGAbGroup(2, {2}));
  for (std::size_t n = 1; n <= 6; ++n)
    EXPECT_TRUE(t.at(n).group.is_trivial());

  CompEvidence split;
  split.phi_minimal = false;
  split.splitting = true;
  split.h0_z = FGAbGroup::free(2);
  t = theorem_comp(split);
  EXPECT_EQ(t.which, CompCase::splitting);
  EXPECT_EQ(t.degrees[0].group, FGAbGroup::free(2));
  EXPECT_EQ(t.degrees[1].group, FGAbGroup::free(1));
  for (std::size_t n = 2; n <= 6; ++n)
    EXPECT_TRUE(t.at(n).group.is_trivial());
}

TEST(ClosedForm, RejectsInconsistentEvidence)
{
  CompEvidence e;
  e.phi_minimal = false;
  EXPECT_THROW(theorem_comp(e), InvalidInput);
  e.splitting = true;
  e.fix_sigma = 1;
  EXPECT_THROW(theorem_comp(e), InvalidInput);
  CompEvidence m;
  m.splitting = true;
  EXPECT_THROW(theorem_comp(m), InvalidInput);
  CompEvidence claimed;
  claimed.fix_sigma = 1;
  claimed.claimed = CompCase::free_minimal;
  EXPECT_THROW(theorem_comp(claimed), InvalidInput);
  claimed.claimed = CompCase::fixed_points;
  EXPECT_NO_THROW(theorem_comp(claimed));
}

TEST(FreeProduct, TrivialSystemHasTwoReflections)
{
  std::vector<FreeProductStage> stages;
  for (int k = 1; k <= 4; ++k)
    stages.push_back(trivial_stage(k));
  FreeProductResult r = freeproduct_homology(stages);
  ASSERT_EQ(r.h1.kind, LimitKind::stabilized);
  EXPECT_EQ(r.h1.group, FGAbGroup::elementary(2, 2));
  ASSERT_EQ(r.h0.kind, LimitKind::stabilized);
  EXPECT_EQ(r.h0.group, FGAbGroup::free(1));
}

TEST(FreeProduct, DenjoyStagesAreExact)
{
  DenjoyFlipSystem d(QuadField::golden());
  auto stages = freeproduct_stages(d, 1, 16);
  FreeProductResult r = freeproduct_homology(stages);
  for (std::size_t k = 0; k < stages.size(); ++k) {
    EXPECT_TRUE(r.injective[k]) << "level " << stages[k].level;
    EXPECT_TRUE(r.middle_exact[k]) << "level " << stages[k].level;
  }
  // level 8: one fixed sigma cell, two fixed phi-sigma cells
  EXPECT_EQ(r.h1_stages[7].canonical(), FGAbGroup::elementary(2, 3));
  EXPECT_EQ(h_odd(stages[7].sigma), FGAbGroup::cyclic(2));
  EXPECT_EQ(h_odd(stages[7].phi_sigma), FGAbGroup::elementary(2, 2));
  ASSERT_EQ(r.h0.kind, LimitKind::stabilized);
  EXPECT_EQ(r.h0.group, FGAbGroup::free(2));
  EXPECT_EQ(r.h1.group, FGAbGroup::elementary(2, 3));
  EXPECT_TRUE(r.higher_even.group.is_trivial());
}

TEST(Telescope, DenjoyStabilizesWithTrivialFlip)
{
  DenjoyFlipSystem d(QuadField::golden());
  TelescopeResult t = h0_telescope(telescope_stages(d, 1, 8));
  ASSERT_EQ(t.limit.kind, LimitKind::stabilized);
  EXPECT_LE(t.limit.level, 16);
  EXPECT_EQ(t.h0.group, FGAbGroup::free(2));
  ASSERT_TRUE(t.sigma_star);
  EXPECT_EQ(*t.sigma_star, IntMatrix::identity(2));
  EXPECT_EQ(t.image.group, FGAbGroup::free(2));
  EXPECT_EQ(t.image_divisors, (std::vector<Integer>{2, 2}));
}

TEST(Telescope, InitialArcsGenerate)
{
  DenjoyFlipSystem d(QuadField::golden());
  auto stages = telescope_stages(d, 1, 6);
  TelescopeResult t = h0_telescope(stages);
  auto const &c = d.circle();
  for (std::size_t k = 2; k < t.stages.size(); ++k) {
    auto cells = d.window_cells(-stages[k].level, stages[k].level);
    auto a = decompose(d, c.arc(0, 1), cells);
    auto b = decompose(d, c.arc(1, 0), cells);
    EXPECT_TRUE(generates(t.stages[k], {a, b})) << "level " << stages[k].level;
    EXPECT_FALSE(generates(t.stages[k], {a, a}));
  }
}

TEST(Telescope, OdometerGivesLocalization)
{
  OdometerSystem o(geometric_chain(3, 6));
  TelescopeResult t = h0_telescope(telescope_stages(o, 1, 4));
  ASSERT_EQ(t.limit.kind, LimitKind::localization);
  EXPECT_EQ(t.limit.localization->descriptor(), "Z[1/3]");
  EXPECT_EQ(t.limit.localization->multipliers, (std::vector<Integer>{3, 3}));
  EXPECT_EQ(*t.sigma_scalar, 1);
  for (auto const &s : t.stages)
    EXPECT_EQ(s.canonical(), FGAbGroup::free(1));
}

TEST(Transfer, DenjoyKernelVanishes)
{
  DenjoyFlipSystem d(QuadField::golden());
  for (int level : {4, 8}) {
    TransferReport r = transfer_kernel(denjoy_transfer(d, level));
    EXPECT_TRUE(r.kernel.is_trivial());
    EXPECT_EQ(r.image, FGAbGroup::free(2));
  }
}

TEST(Transfer, FreeCaseMockHasOrderTwoKernel)
{
  // coinvariants Z^2 / <(2,-2)>, transfer (u, v) -> u + v
  PresentedGroup h0(2, IntMatrix{{2}, {-2}});
  AbHom tr(h0, PresentedGroup::free(1), IntMatrix{{1, 1}});
  TransferReport r = transfer_kernel(tr, std::vector<Integer>{1, -1});
  EXPECT_EQ(r.kernel, FGAbGroup::cyclic(2));
  EXPECT_TRUE(r.witness_checked);
  EXPECT_EQ(r.witness_order, 2);
  EXPECT_TRUE(r.witness_generates);
  TransferReport wrong = transfer_kernel(tr, std::vector<Integer>{1, 0});
  EXPECT_EQ(wrong.witness_order, 0);
  EXPECT_FALSE(wrong.witness_generates);
}

TEST(Transfer, WitnessSetsAreChecked)
{
  DoubledSystem two(QuadField::golden());
  EXPECT_TRUE(check_witnesses(two, two.sheet(0), two.sheet(0)).ok);

  DenjoyFlipSystem d(QuadField::golden());
  auto const &c = d.circle();
  ClopenSet K = c.arc(0, 1);
  auto r = check_witnesses(d, K, K);
  EXPECT_FALSE(r.ok);
  ClopenSet sk = d.act(GroupElement::sigma(), K);
  EXPECT_EQ(r.k_uncovered, c.difference(d.full(), c.unite(K, sk)));
  EXPECT_EQ(r.k_overlap, c.intersect(K, sk));
  EXPECT_FALSE(r.k_overlap.is_empty());
}

TEST(Analysis, DenjoyTwoPathsAgree)
{
  DenjoyFlipSystem d(QuadField::golden());
  SystemHomology h = analyze(d, 10, Method::both);
  EXPECT_TRUE(h.delta.empty());
  EXPECT_EQ(h.table.which, CompCase::fixed_points);
  EXPECT_EQ(h.table.degrees[0].group, FGAbGroup::free(2));
  EXPECT_EQ(h.table.degrees[1].group, FGAbGroup::elementary(2, 3));
  SystemHomology fp = analyze(d, 10, Method::freeproduct);
  for (std::size_t n = 0; n < 6; ++n)
    EXPECT_TRUE(fp.table.degrees[n].same_type(h.table.degrees[n])) << n;
}

TEST(Analysis, OdometersAndDoubled)
{
  SystemHomology three = analyze(OdometerSystem(geometric_chain(3, 7)), 7, Method::both);
  EXPECT_TRUE(three.delta.empty());
  EXPECT_EQ(three.table.degrees[0].localization->descriptor(), "Z[1/3]");
  EXPECT_EQ(three.table.degrees[1].group, FGAbGroup::elementary(2, 2));
  EXPECT_LE(three.sigma_threads->stabilized_at, 3);

  SystemHomology two = analyze(OdometerSystem(geometric_chain(2, 9)), 9, Method::both);
  EXPECT_TRUE(two.delta.empty());
  EXPECT_EQ(two.table.degrees[0].localization->descriptor(), "Z[1/2]");
  EXPECT_EQ(two.table.degrees[1].group, FGAbGroup::cyclic(2));

  SystemHomology dbl = analyze(DoubledSystem(QuadField::golden()), 8, Method::comp);
  EXPECT_EQ(dbl.table.which, CompCase::splitting);
  EXPECT_EQ(dbl.table.degrees[1].group, FGAbGroup::free(1));
  EXPECT_THROW(analyze(DoubledSystem(QuadField::golden()), 8, Method::freeproduct), InvalidInput);
}
