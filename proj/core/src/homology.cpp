#include "dihedral/homology.hpp"

#include <algorithm>

#include "dihedral/errors.hpp"

namespace dihedral {

// --- involution modules ---------------------------------------------------

InvolutionModule::InvolutionModule(IntMatrix A) : A_(std::move(A))
{
  if (A_.rows() != A_.cols())
    throw InvalidInput("InvolutionModule: action must be square");
  if (!(A_ * A_ == IntMatrix::identity(A_.rows())))
    throw InvalidInput("InvolutionModule: action does not square to the identity");
}

bool InvolutionModule::is_permutation() const
{
  for (std::size_t j = 0; j < A_.cols(); ++j) {
    int ones = 0;
    for (std::size_t i = 0; i < A_.rows(); ++i) {
      if (A_(i, j) == 1)
        ++ones;
      else if (A_(i, j) != 0)
        return false;
    }
    if (ones != 1)
      return false;
  }
  return true;
}

std::size_t InvolutionModule::fixed_cells() const
{
  std::size_t c = 0;
  for (std::size_t i = 0; i < A_.rows(); ++i)
    c += A_(i, i) == 1;
  return c;
}

namespace {

IntMatrix minus_identity(IntMatrix const &A)
{
  return A - IntMatrix::identity(A.rows());
}

IntMatrix plus_identity(IntMatrix const &A)
{
  return A + IntMatrix::identity(A.rows());
}

} // namespace

FGAbGroup h_odd(InvolutionModule const &m)
{
  return subquotient(minus_identity(m.action()), plus_identity(m.action())).group.canonical();
}

FGAbGroup h_even(InvolutionModule const &m)
{
  return subquotient(plus_identity(m.action()), minus_identity(m.action())).group.canonical();
}

FGAbGroup coinvariants(InvolutionModule const &m)
{
  return quotient_group(m.size(), minus_identity(m.action()));
}

bool psi_check(InvolutionModule const &m)
{
  if (!m.is_permutation())
    throw InvalidInput("psi_check: permutation module required");
  IntMatrix const &A = m.action();
  std::size_t n = m.size();

  // injective on coinvariants: ker(I + A) lies in im(A - I)
  IntMatrix ker = kernel_basis(plus_identity(A));
  if (ker.cols() > 0 && !LatticeSolver(minus_identity(A)).contains_all(ker))
    return false;

  std::vector<std::vector<Integer>> target;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Integer> v(n);
    std::size_t i = 0;
    while (A(i, j) != 1)
      ++i;
    if (i == j) {
      v[j] = 2;
      target.push_back(v);
    } else if (j < i) {
      v[j] = 1;
      v[i] = 1;
      target.push_back(v);
    }
  }
  IntMatrix T(n, target.size());
  for (std::size_t c = 0; c < target.size(); ++c)
    for (std::size_t r = 0; r < n; ++r)
      T(r, c) = target[c][r];
  return same_lattice(plus_identity(A), T);
}

// --- bar complex ------------------------------------------------------------

namespace {

// C_k has basis e_c (x) [g_1 | ... | g_k], g_i in {1, t}; bit i-1 of the tuple is g_i.
IntMatrix bar_boundary(IntMatrix const &A, int k)
{
  std::size_t cells = A.rows();
  std::size_t tuples = std::size_t(1) << k, lower = std::size_t(1) << (k - 1);
  IntMatrix d(cells * lower, cells * tuples);
  for (std::size_t c = 0; c < cells; ++c)
    for (std::size_t t = 0; t < tuples; ++t) {
      std::size_t col = c * tuples + t;
      // m g_1 (x) [g_2 | ... | g_k]
      std::size_t rest = t >> 1;
      if (t & 1) {
        for (std::size_t r = 0; r < cells; ++r)
          if (A(r, c) != 0)
            d(r * lower + rest, col) += A(r, c);
      } else {
        d(c * lower + rest, col) += 1;
      }
      // (-1)^i m (x) [... | g_i g_{i+1} | ...]
      for (int i = 1; i < k; ++i) {
        std::size_t gi = (t >> (i - 1)) & 1, gj = (t >> i) & 1;
        std::size_t low = t & ((std::size_t(1) << (i - 1)) - 1);
        std::size_t high = t >> (i + 1);
        std::size_t merged = low | ((gi ^ gj) << (i - 1)) | (high << i);
        d(c * lower + merged, col) += (i % 2 ? -1 : 1);
      }
      // (-1)^k m (x) [g_1 | ... | g_{k-1}]
      std::size_t front = t & (lower - 1);
      d(c * lower + front, col) += (k % 2 ? -1 : 1);
    }
  return d;
}

} // namespace

std::vector<FGAbGroup> bar_oracle_all(InvolutionModule const &m, int max_degree)
{
  if (max_degree < 0 || max_degree > 6)
    throw InvalidInput("bar_oracle: degree must lie in [0, 6]");
  if (m.size() > 8)
    throw InvalidInput("bar_oracle: at most 8 cells");
  std::vector<std::vector<Integer>> diag(max_degree + 2);
  IntMatrix previous;
  for (int k = 1; k <= max_degree + 1; ++k) {
    IntMatrix d = bar_boundary(m.action(), k);
    if (k > 1 && !(previous * d).is_zero())
      throw VerificationFailure("bar_oracle: boundary does not square to zero");
    diag[k] = smith_diagonal(d);
    previous = std::move(d);
  }
  std::vector<FGAbGroup> out;
  for (int n = 0; n <= max_degree; ++n) {
    std::size_t dim = m.size() << n;
    std::size_t rank_out = n == 0 ? 0 : diag[n].size();
    std::size_t rank_in = diag[n + 1].size();
    std::vector<Integer> torsion;
    for (auto const &x : diag[n + 1])
      if (x > 1)
        torsion.push_back(x);
    out.emplace_back(dim - rank_out - rank_in, torsion);
  }
  return out;
}

FGAbGroup bar_oracle(InvolutionModule const &m, int n)
{
  return bar_oracle_all(m, n).back();
}

InvolutionModule random_involution(std::mt19937_64 &rng, std::size_t max_cells, bool signed_entries)
{
  if (max_cells == 0)
    throw InvalidInput("random_involution: need at least one cell");
  std::size_t n = 1 + rng() % max_cells;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
    order[i] = i;
  for (std::size_t i = n; i > 1; --i)
    std::swap(order[i - 1], order[rng() % i]);
  IntMatrix A(n, n);
  std::size_t k = 0;
  while (k < n) {
    long sign = signed_entries && rng() % 2 ? -1 : 1;
    if (k + 1 < n && rng() % 2) {
      A(order[k + 1], order[k]) = sign;
      A(order[k], order[k + 1]) = sign;
      k += 2;
    } else {
      A(order[k], order[k]) = sign;
      k += 1;
    }
  }
  return InvolutionModule(A);
}

OracleReport oracle_check(std::uint64_t seed, std::size_t modules, std::size_t max_cells, int max_degree)
{
  std::mt19937_64 rng(seed);
  OracleReport r;
  for (std::size_t i = 0; i < modules; ++i) {
    InvolutionModule m = random_involution(rng, max_cells, i % 2 == 1);
    auto bar = bar_oracle_all(m, max_degree);
    FGAbGroup odd = h_odd(m), even = h_even(m);
    for (int n = 0; n <= max_degree; ++n) {
      FGAbGroup want = n == 0 ? coinvariants(m) : n % 2 ? odd : even;
      ++r.comparisons;
      if (!(bar[n] == want))
        r.mismatches.push_back("module " + std::to_string(i) + " degree " + std::to_string(n) + ": bar " +
                               bar[n].to_string() + ", formula " + want.to_string() + ", A = " +
                               m.action().to_string());
    }
    ++r.modules;
  }
  return r;
}

// --- homology values --------------------------------------------------------

HomologyGroup HomologyGroup::direct_sum(HomologyGroup const &other) const
{
  if (localization && other.localization)
    throw InvalidInput("HomologyGroup: two localization summands are not representable");
  HomologyGroup out(group.direct_sum(other.group));
  out.localization = localization ? localization : other.localization;
  return out;
}

bool HomologyGroup::same_type(HomologyGroup const &other) const
{
  if (!(group == other.group) || localization.has_value() != other.localization.has_value())
    return false;
  return !localization || localization->primes == other.localization->primes;
}

std::string HomologyGroup::to_string() const
{
  if (!localization)
    return group.to_string();
  if (group.is_trivial())
    return localization->descriptor();
  return group.to_string() + " + " + localization->descriptor();
}

HomologyGroup const &HomologyTable::at(std::size_t n) const
{
  if (n < degrees.size())
    return degrees[n];
  return n % 2 ? tail_odd : tail_even;
}

CompCase classify(CompEvidence const &e)
{
  std::int64_t fixed = e.fix_sigma + e.fix_phi_sigma;
  if (e.fix_sigma < 0 || e.fix_phi_sigma < 0)
    throw InvalidInput("theorem_comp: negative fixed-point count");
  CompCase c;
  if (!e.phi_minimal) {
    if (!e.splitting)
      throw InvalidInput("theorem_comp: phi is not minimal but no splitting X = Y u sigma(Y) was verified");
    if (fixed > 0)
      throw InvalidInput("theorem_comp: a splitting forces a free action, yet fixed points were reported");
    c = CompCase::splitting;
  } else {
    if (e.splitting)
      throw InvalidInput("theorem_comp: a phi-invariant proper clopen set contradicts minimality");
    c = fixed > 0 ? CompCase::fixed_points : CompCase::free_minimal;
  }
  if (e.claimed && *e.claimed != c)
    throw InvalidInput("theorem_comp: claimed case " + std::to_string(static_cast<int>(*e.claimed)) +
                       " contradicts the evidence (case " + std::to_string(static_cast<int>(c)) + ")");
  return c;
}

HomologyTable theorem_comp(CompEvidence const &e)
{
  HomologyTable t;
  t.which = classify(e);
  HomologyGroup zero;
  switch (t.which) {
  case CompCase::splitting:
    t.degrees = {e.h0_z, FGAbGroup::free(1), zero, zero, zero, zero};
    t.tail_odd = zero;
    t.tail_even = zero;
    break;
  case CompCase::free_minimal:
    t.degrees = {HomologyGroup(FGAbGroup::cyclic(2)).direct_sum(e.h0_image), zero, zero, zero, zero, zero};
    t.tail_odd = zero;
    t.tail_even = zero;
    break;
  case CompCase::fixed_points: {
    HomologyGroup odd(FGAbGroup::elementary(2, static_cast<std::size_t>(e.fix_sigma + e.fix_phi_sigma)));
    t.degrees = {e.h0_image, odd, zero, odd, zero, odd};
    t.tail_odd = odd;
    t.tail_even = zero;
    break;
  }
  }
  return t;
}

// --- free product assembly ----------------------------------------------------

namespace {

AbHom direct_sum(AbHom const &a, AbHom const &b)
{
  return AbHom(a.source().direct_sum(b.source()), a.target().direct_sum(b.target()), a.matrix().direct_sum(b.matrix()));
}

IntMatrix zeros(std::size_t r, std::size_t c)
{
  return IntMatrix(r, c);
}

IntMatrix coinvariant_relations(FreeProductStage const &st)
{
  std::size_t S = st.sigma.size(), P = st.phi_sigma.size();
  IntMatrix rel_s = minus_identity(st.sigma.action()).vconcat(zeros(P, S));
  IntMatrix rel_p = zeros(S, P).vconcat(minus_identity(st.phi_sigma.action()));
  return rel_s.hconcat(rel_p);
}

} // namespace

PresentedGroup freeproduct_h0_stage(FreeProductStage const &st)
{
  std::size_t S = st.sigma.size(), P = st.phi_sigma.size();
  if (st.common_to_sigma.rows() != S || st.common_to_sigma.cols() != P)
    throw InvalidInput("freeproduct_homology: common module inclusion has the wrong shape");
  IntMatrix cor = st.common_to_sigma.vconcat(-IntMatrix::identity(P));
  return PresentedGroup(S + P, coinvariant_relations(st).hconcat(cor));
}

FreeProductResult freeproduct_homology(std::vector<FreeProductStage> const &stages)
{
  if (stages.size() < 4)
    throw InvalidInput("freeproduct_homology: at least four stages are required");
  FreeProductResult out;
  std::vector<Subquotient> sq_sigma, sq_phi_sigma, ev_sigma, ev_phi_sigma;

  for (auto const &st : stages) {
    IntMatrix const &As = st.sigma.action();
    IntMatrix const &Ap = st.phi_sigma.action();
    IntMatrix const &iota = st.common_to_sigma;
    std::size_t S = As.rows(), P = Ap.rows();
    if (iota.rows() != S || iota.cols() != P)
      throw InvalidInput("freeproduct_homology: common module inclusion has the wrong shape");

    IntMatrix coinv_rel = coinvariant_relations(st);
    IntMatrix cor = iota.vconcat(-IntMatrix::identity(P));

    PresentedGroup coinv(S + P, coinv_rel);
    AbHom cor_map(PresentedGroup::free(P), coinv, cor);
    out.injective.push_back(cor_map.is_injective());
    out.h0_stages.push_back(freeproduct_h0_stage(st));

    // kernel of (x, y) -> x + iota y modulo both relation sets, against im(cor) + relations
    IntMatrix sum_map = IntMatrix::identity(S).hconcat(iota);
    IntMatrix target_rel = minus_identity(As).hconcat(iota * minus_identity(Ap));
    IntMatrix big = sum_map.hconcat(-target_rel);
    IntMatrix ker = kernel_basis(big).rows_range(0, S + P);
    out.middle_exact.push_back(same_lattice(ker, coinv_rel.hconcat(cor)));

    sq_sigma.push_back(subquotient(minus_identity(As), plus_identity(As)));
    sq_phi_sigma.push_back(subquotient(minus_identity(Ap), plus_identity(Ap)));
    out.h1_stages.push_back(sq_sigma.back().group.direct_sum(sq_phi_sigma.back().group));
    ev_sigma.push_back(subquotient(plus_identity(As), minus_identity(As)));
    ev_phi_sigma.push_back(subquotient(plus_identity(Ap), minus_identity(Ap)));
  }

  std::vector<AbHom> h0_maps, h1_maps, even_maps;
  for (std::size_t k = 0; k + 1 < stages.size(); ++k) {
    IntMatrix ref = stages[k].sigma_refinement.direct_sum(stages[k].phi_sigma_refinement);
    h0_maps.emplace_back(out.h0_stages[k], out.h0_stages[k + 1], ref);
    h1_maps.push_back(direct_sum(induced_map(sq_sigma[k], sq_sigma[k + 1], stages[k].sigma_refinement),
                                 induced_map(sq_phi_sigma[k], sq_phi_sigma[k + 1], stages[k].phi_sigma_refinement)));
    even_maps.push_back(direct_sum(induced_map(ev_sigma[k], ev_sigma[k + 1], stages[k].sigma_refinement),
                                   induced_map(ev_phi_sigma[k], ev_phi_sigma[k + 1], stages[k].phi_sigma_refinement)));
  }
  out.h0 = limit(image_system(DirectSystem(h0_maps, stages.front().level)));
  out.h1 = limit(image_system(DirectSystem(h1_maps, stages.front().level)));

  out.higher_odd = out.h1;
  out.higher_even = limit(image_system(DirectSystem(even_maps, stages.front().level)));
  return out;
}

// --- telescope ----------------------------------------------------------------

PresentedGroup image_stage(TelescopeStage const &stage, TelescopeStage const &next)
{
  PresentedGroup G_next(next.cells, next.relations);
  AbHom into(PresentedGroup::free(stage.cells), G_next, stage.to_next);
  return PresentedGroup(stage.cells, into.kernel_lattice());
}

namespace {

IntMatrix solve_columns(IntMatrix const &lhs, IntMatrix const &rhs)
{
  LatticeSolver solver(lhs);
  IntMatrix out(lhs.cols(), rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    auto x = solver.solve(rhs.column_vector(j));
    if (!x)
      throw VerificationFailure("sigma_*: inclusion is not invertible on the stable group");
    for (std::size_t i = 0; i < x->size(); ++i)
      out(i, j) = (*x)[i];
  }
  return out;
}

} // namespace

TelescopeResult h0_telescope(std::vector<TelescopeStage> const &stages)
{
  if (stages.size() < 4)
    throw InvalidInput("h0_telescope: at least four stages are required");
  TelescopeResult out;
  for (std::size_t k = 0; k + 1 < stages.size(); ++k)
    out.stages.push_back(image_stage(stages[k], stages[k + 1]));

  std::vector<AbHom> maps;
  for (std::size_t k = 0; k + 1 < out.stages.size(); ++k)
    maps.emplace_back(out.stages[k], out.stages[k + 1], stages[k].to_next);
  out.limit = limit(DirectSystem(maps, stages.front().level));

  std::size_t j = out.stages.size() - 2;
  AbHom iota(out.stages[j], out.stages[j + 1], stages[j].to_next);
  AbHom sigma(out.stages[j], out.stages[j + 1], stages[j].sigma);

  switch (out.limit.kind) {
  case LimitKind::stabilized: {
    out.h0 = out.limit.group;
    if (!out.limit.group.torsion().empty())
      throw NotStabilized("h0_telescope: sigma_* is only computed on torsion-free limits");
    IntMatrix star = solve_columns(iota.canonical_matrix(), sigma.canonical_matrix());
    if (!(star * star == IntMatrix::identity(star.rows())))
      throw VerificationFailure("h0_telescope: sigma_* is not an involution");
    out.sigma_star = star;
    IntMatrix one_plus = plus_identity(star);
    auto divisors = smith_diagonal(one_plus);
    out.image = HomologyGroup(FGAbGroup::free(divisors.size()));
    out.image_divisors = divisors;
    break;
  }
  case LimitKind::localization: {
    out.h0 = HomologyGroup(FGAbGroup(), *out.limit.localization);
    Integer s = sigma.canonical_matrix()(0, 0), k = iota.canonical_matrix()(0, 0);
    Rational scalar(s, k);
    scalar.canonicalize();
    if (scalar != 1 && scalar != -1)
      throw VerificationFailure("h0_telescope: sigma_* on a rank-one limit must be +1 or -1");
    out.sigma_scalar = scalar;
    if (scalar == 1) {
      out.image = out.h0;
      out.image_divisors = {Integer(2)};
    }
    break;
  }
  case LimitKind::undetermined:
    throw NotStabilized("h0_telescope: no stabilization up to level " + std::to_string(out.limit.level));
  }
  return out;
}

bool generates(PresentedGroup const &stage, std::vector<std::vector<Integer>> const &vectors)
{
  FGAbGroup const &g = stage.canonical();
  if (!g.torsion().empty() || vectors.size() != g.rank())
    return false;
  IntMatrix m(g.rank(), g.rank());
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    auto c = stage.coordinates(vectors[j]);
    for (std::size_t i = 0; i < g.rank(); ++i)
      m(i, j) = c[i];
  }
  auto d = smith_diagonal(m);
  return d.size() == g.rank() && std::all_of(d.begin(), d.end(), [](Integer const &x) { return x == 1; });
}

// --- transfer -------------------------------------------------------------------

TransferReport transfer_kernel(AbHom const &tr, std::optional<std::vector<Integer>> witness)
{
  TransferReport r;
  r.kernel = tr.kernel();
  r.image = tr.image();
  if (witness) {
    r.witness_checked = true;
    if (!tr.target().is_zero(tr.matrix() * *witness)) {
      r.witness_order = 0;
      r.witness_generates = false;
      return r;
    }
    r.witness_order = tr.source().order(*witness);
    IntMatrix span = IntMatrix::column(*witness).hconcat(tr.source().relations());
    r.witness_generates = LatticeSolver(span).contains_all(tr.kernel_lattice());
  }
  return r;
}

} // namespace dihedral
