#include "dihedral/analysis.hpp"

namespace dihedral {

namespace {

constexpr std::int64_t kTelescopeCellBudget = 256;

void check_range(int first, int last, char const *what)
{
  if (first < 0 || last < first)
    throw InvalidInput(std::string(what) + ": bad level range " + std::to_string(first) + ".." +
                       std::to_string(last));
}

} // namespace

std::vector<FreeProductStage> freeproduct_stages(DenjoyFlipSystem const &system, int first, int last)
{
  check_range(first, last, "freeproduct_stages");
  std::vector<LevelPartition<ClopenSet>> parts;
  for (int n = first; n <= last + 1; ++n)
    parts.push_back(system.level_partition(n));

  std::vector<FreeProductStage> stages;
  for (int n = first; n <= last; ++n) {
    auto const &lp = parts[n - first];
    FreeProductStage st;
    st.level = n;
    st.sigma = InvolutionModule::from_permutation(lp.sigma);
    st.phi_sigma = InvolutionModule::from_permutation(lp.phi_sigma);
    st.common_to_sigma = decompose_all(system, lp.phi_sigma_cells, lp.cells);
    st.sigma_refinement = system.refinement(n);
    st.phi_sigma_refinement = decompose_all(system, lp.phi_sigma_cells, parts[n - first + 1].phi_sigma_cells);
    stages.push_back(std::move(st));
  }
  return stages;
}

std::vector<FreeProductStage> freeproduct_stages(OdometerSystem const &system, int first, int last)
{
  check_range(first, last, "freeproduct_stages");
  if (first < 1 || last >= system.levels())
    throw InvalidInput("freeproduct_stages: odometer levels must lie in [1, chain length - 1]");
  std::vector<FreeProductStage> stages;
  for (int i = first; i <= last; ++i) {
    auto lp = system.level_partition(i);
    FreeProductStage st;
    st.level = i;
    st.sigma = InvolutionModule::from_permutation(lp.sigma);
    st.phi_sigma = InvolutionModule::from_permutation(lp.phi_sigma);
    st.common_to_sigma = IntMatrix::identity(lp.cells.size());
    st.sigma_refinement = system.refinement(i);
    st.phi_sigma_refinement = st.sigma_refinement;
    stages.push_back(std::move(st));
  }
  return stages;
}

std::vector<TelescopeStage> telescope_stages(DenjoyFlipSystem const &system, int first, int last)
{
  check_range(first, last, "telescope_stages");
  if (first < 1)
    throw InvalidInput("telescope_stages: the first level must be at least 1");
  std::vector<TelescopeStage> stages;
  LevelPartition<ClopenSet> previous = system.level_partition(first - 1);
  IntMatrix previous_refinement = system.refinement(first - 1);
  for (int t = first; t <= last; ++t) {
    LevelPartition<ClopenSet> current = system.level_partition(t);
    TelescopeStage st;
    st.level = t;
    st.cells = current.cells.size();
    st.relations = previous_refinement - previous.phi;
    IntMatrix refinement = system.refinement(t);
    st.to_next = refinement;
    st.sigma = refinement * current.sigma.matrix();
    stages.push_back(std::move(st));
    previous = std::move(current);
    previous_refinement = std::move(refinement);
  }
  return stages;
}

std::vector<TelescopeStage> telescope_stages(OdometerSystem const &system, int first, int last)
{
  check_range(first, last, "telescope_stages");
  if (first < 1 || last >= system.levels())
    throw InvalidInput("telescope_stages: odometer levels must lie in [1, chain length - 1]");
  if (system.modulus(last + 1) > kTelescopeCellBudget)
    throw InvalidInput("telescope_stages: level " + std::to_string(last + 1) + " has more than " +
                       std::to_string(kTelescopeCellBudget) + " cells");
  std::vector<TelescopeStage> stages;
  for (int i = first; i <= last; ++i) {
    auto lp = system.level_partition(i);
    std::size_t n = lp.cells.size();
    IntMatrix shift(n, n);
    for (std::size_t r = 0; r < n; ++r)
      shift((r + 1) % n, r) = 1;
    TelescopeStage st;
    st.level = i;
    st.cells = n;
    st.relations = IntMatrix::identity(n) - shift;
    st.to_next = system.refinement(i);
    st.sigma = st.to_next * lp.sigma.matrix();
    stages.push_back(std::move(st));
  }
  return stages;
}

AbHom denjoy_transfer(DenjoyFlipSystem const &system, int level)
{
  FreeProductStage fp = freeproduct_stages(system, level, level).front();
  auto tel = telescope_stages(system, level, level + 1);
  PresentedGroup target = image_stage(tel[0], tel[1]);
  IntMatrix const &A = fp.sigma.action();
  IntMatrix sum = IntMatrix::identity(A.rows()).hconcat(fp.common_to_sigma);
  return AbHom(freeproduct_h0_stage(fp), target, (A + IntMatrix::identity(A.rows())) * sum);
}

namespace {

HomologyGroup from_limit(LimitDescriptor const &d)
{
  if (d.kind == LimitKind::localization)
    return HomologyGroup(FGAbGroup(), *d.localization);
  return HomologyGroup(d.group);
}

void compare(SystemHomology &out, FreeProductResult const &fp, int first_level)
{
  auto check = [&](std::size_t degree, HomologyGroup const &got) {
    HomologyGroup const &want = out.table.degrees[degree];
    if (!want.same_type(got))
      out.delta.push_back("H" + std::to_string(degree) + ": closed form " + want.to_string() + ", free product " +
                          got.to_string());
  };
  for (std::size_t n = 0; n < out.table.degrees.size(); ++n) {
    LimitDescriptor const &d = n == 0 ? fp.h0 : n == 1 ? fp.h1 : n % 2 ? fp.higher_odd : fp.higher_even;
    if (d.kind == LimitKind::undetermined)
      out.delta.push_back("H" + std::to_string(n) + ": free-product limit undetermined");
    else
      check(n, from_limit(d));
  }
  for (std::size_t k = 0; k < fp.injective.size(); ++k) {
    int level = first_level + static_cast<int>(k);
    if (!fp.injective[k])
      out.delta.push_back("level " + std::to_string(level) + ": (cor, -cor) is not injective");
    if (!fp.middle_exact[k])
      out.delta.push_back("level " + std::to_string(level) + ": sequence not exact in the middle");
  }
}

void apply_method(SystemHomology &out, Method method, std::vector<FreeProductStage> const &stages)
{
  if (method == Method::comp)
    return;
  out.freeproduct = freeproduct_homology(stages);
  compare(out, *out.freeproduct, stages.front().level);
  if (method == Method::freeproduct) {
    auto const &fp = *out.freeproduct;
    for (auto const *d : {&fp.h0, &fp.h1, &fp.higher_even})
      if (d->kind == LimitKind::undetermined)
        throw NotStabilized("free-product limits did not stabilize up to level " + std::to_string(out.max_level));
    HomologyTable t;
    t.which = out.table.which;
    t.degrees = {from_limit(fp.h0), from_limit(fp.h1)};
    for (std::size_t n = 2; n <= 5; ++n)
      t.degrees.push_back(from_limit(n % 2 ? fp.higher_odd : fp.higher_even));
    t.tail_odd = from_limit(fp.higher_odd);
    t.tail_even = from_limit(fp.higher_even);
    out.table = t;
  }
}

StableCount threads(OdometerSystem const &system, GroupElement g, int max_level)
{
  StableCount c = system.stable_fixed_count(g, max_level);
  if (!c.stabilized)
    throw NotStabilized("fixed threads of " + g.to_string() + " did not stabilize up to level " +
                        std::to_string(max_level));
  return c;
}

} // namespace

SystemHomology analyze(DenjoyFlipSystem const &system, int max_level, Method method)
{
  if (max_level < 5)
    throw InvalidInput("homology: max level must be at least 5");
  SystemHomology out;
  out.system = "denjoy_flip";
  out.max_level = max_level;

  out.telescope = h0_telescope(telescope_stages(system, 1, max_level));
  out.evidence.phi_minimal = true;
  out.evidence.fix_sigma = static_cast<std::int64_t>(system.fixed_points(GroupElement::sigma()).size());
  out.evidence.fix_phi_sigma = static_cast<std::int64_t>(system.fixed_points(GroupElement{1, 1}).size());
  out.evidence.h0_image = out.telescope->image;
  out.table = theorem_comp(out.evidence);

  out.transfer = transfer_kernel(denjoy_transfer(system, max_level - 1));
  if (out.evidence.fix_sigma + out.evidence.fix_phi_sigma > 0 && !out.transfer->kernel.is_trivial())
    throw VerificationFailure("transfer: kernel " + out.transfer->kernel.to_string() + " for a non-free action");

  apply_method(out, method, freeproduct_stages(system, 1, max_level));
  return out;
}

SystemHomology analyze(OdometerSystem const &system, int max_level, Method method)
{
  int top = std::min(max_level, system.levels());
  if (top < 3)
    throw InvalidInput("homology: odometers need at least three levels");
  SystemHomology out;
  out.system = "odometer";
  out.max_level = top;

  out.sigma_threads = threads(system, GroupElement::sigma(), top);
  out.phi_sigma_threads = threads(system, GroupElement{1, 1}, top);

  int last = top - 1;
  while (last >= 1 && system.modulus(last + 1) > kTelescopeCellBudget)
    --last;
  if (last < 4)
    throw InvalidInput("homology: fewer than four odometer levels within " + std::to_string(kTelescopeCellBudget) +
                       " cells");
  out.telescope = h0_telescope(telescope_stages(system, 1, last));

  out.evidence.phi_minimal = true;
  out.evidence.fix_sigma = out.sigma_threads->count;
  out.evidence.fix_phi_sigma = out.phi_sigma_threads->count;
  out.evidence.h0_image = out.telescope->image;
  out.table = theorem_comp(out.evidence);

  apply_method(out, method, freeproduct_stages(system, 1, last));
  return out;
}

SystemHomology analyze(DoubledSystem const &system, int max_level, Method method)
{
  if (max_level < 5)
    throw InvalidInput("homology: max level must be at least 5");
  if (method == Method::freeproduct)
    throw InvalidInput("homology: the free-product method is not available for the doubled system");
  SystemHomology out;
  out.system = "doubled";
  out.max_level = max_level;

  DenjoyFlipSystem rotation(system.field());
  out.telescope = h0_telescope(telescope_stages(rotation, 1, max_level));
  out.evidence.phi_minimal = false;
  out.evidence.splitting = system.splitting_holds();
  out.evidence.fix_sigma = static_cast<std::int64_t>(system.fixed_points(GroupElement::sigma()).size());
  out.evidence.fix_phi_sigma = static_cast<std::int64_t>(system.fixed_points(GroupElement{1, 1}).size());
  out.evidence.h0_z = out.telescope->h0;
  out.table = theorem_comp(out.evidence);
  return out;
}

} // namespace dihedral
