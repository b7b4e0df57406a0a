#include "dihedral/abgroups.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <utility>

#include "dihedral/errors.hpp"

namespace dihedral {

namespace {

// Row/column operations on S mirrored into the requested transforms.
class SmithReducer
{
 public:
  SmithReducer(IntMatrix const &m, SmithOptions options) : opt_(options)
  {
    form_.S = m;
    if (opt_.left) {
      form_.U = IntMatrix::identity(m.rows());
      if (opt_.inverses)
        form_.U_inv = IntMatrix::identity(m.rows());
    }
    if (opt_.right) {
      form_.V = IntMatrix::identity(m.cols());
      if (opt_.inverses)
        form_.V_inv = IntMatrix::identity(m.cols());
    }
  }

  SmithForm run()
  {
    IntMatrix &S = form_.S;
    std::size_t const m = S.rows(), n = S.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      std::size_t pi = 0, pj = 0;
      if (!find_min(t, t, m, n, pi, pj))
        break;
      row_swap(t, pi);
      col_swap(t, pj);

      for (;;) {
        Integer q;
        for (std::size_t i = t + 1; i < m; ++i)
          if (S(i, t) != 0) {
            mpz_tdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
            row_add(i, t, -q);
          }
        if (find_min(t + 1, t, m, t + 1, pi, pj)) {
          row_swap(t, pi);
          continue;
        }
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(t, j) != 0) {
            mpz_tdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
            col_add(j, t, -q);
          }
        if (find_min(t, t + 1, t + 1, n, pi, pj)) {
          col_swap(t, pj);
          continue;
        }
        bool fixed = false;
        for (std::size_t i = t + 1; i < m && !fixed; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (S(i, j) != 0 && !mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
              row_add(t, i, 1);
              fixed = true;
              break;
            }
        if (!fixed)
          break;
      }
      if (S(t, t) < 0)
        row_negate(t);
    }
    form_.rank = t;
    for (std::size_t i = 0; i < t; ++i)
      form_.diagonal.push_back(S(i, i));
    return std::move(form_);
  }

 private:
  // Smallest nonzero |S(i,j)| over [r0, r1) x [c0, c1), first in row-major order.
  bool find_min(std::size_t r0, std::size_t c0, std::size_t r1, std::size_t c1, std::size_t &bi,
                std::size_t &bj) const
  {
    IntMatrix const &S = form_.S;
    bool found = false;
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) {
        if (S(i, j) == 0)
          continue;
        if (!found || mpz_cmpabs(S(i, j).get_mpz_t(), S(bi, bj).get_mpz_t()) < 0) {
          bi = i;
          bj = j;
          found = true;
        }
      }
    return found;
  }

  void row_swap(std::size_t a, std::size_t b)
  {
    if (a == b)
      return;
    form_.S.swap_rows(a, b);
    if (opt_.left) {
      form_.U.swap_rows(a, b);
      if (opt_.inverses)
        form_.U_inv.swap_cols(a, b);
    }
  }

  void col_swap(std::size_t a, std::size_t b)
  {
    if (a == b)
      return;
    form_.S.swap_cols(a, b);
    if (opt_.right) {
      form_.V.swap_cols(a, b);
      if (opt_.inverses)
        form_.V_inv.swap_rows(a, b);
    }
  }

  void row_add(std::size_t dst, std::size_t src, Integer const &f)
  {
    form_.S.add_row(dst, src, f);
    if (opt_.left) {
      form_.U.add_row(dst, src, f);
      if (opt_.inverses)
        form_.U_inv.add_col(src, dst, -f);
    }
  }

  void col_add(std::size_t dst, std::size_t src, Integer const &f)
  {
    form_.S.add_col(dst, src, f);
    if (opt_.right) {
      form_.V.add_col(dst, src, f);
      if (opt_.inverses)
        form_.V_inv.add_row(src, dst, -f);
    }
  }

  void row_negate(std::size_t r)
  {
    form_.S.negate_row(r);
    if (opt_.left) {
      form_.U.negate_row(r);
      if (opt_.inverses)
        form_.U_inv.negate_col(r);
    }
  }

  SmithOptions opt_;
  SmithForm form_;
};

struct Overflow
{};

using i64 = std::int64_t;

// Diagonalization without transforms on machine integers; throws Overflow.
std::vector<Integer> diagonalize_i64(IntMatrix const &src)
{
  std::size_t const m = src.rows(), n = src.cols();
  std::vector<i64> a(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!src(i, j).fits_slong_p())
        throw Overflow{};
      a[i * n + j] = src(i, j).get_si();
    }
  auto at = [&](std::size_t i, std::size_t j) -> i64 & { return a[i * n + j]; };
  auto absval = [](i64 v) { return v < 0 ? -v : v; };

  std::vector<Integer> diag;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (at(i, j) != 0 && (!found || absval(at(i, j)) < absval(at(bi, bj)))) {
          bi = i;
          bj = j;
          found = true;
          if (absval(at(i, j)) == 1)
            goto have_pivot;
        }
  have_pivot:
    if (!found)
      break;
    if (bi != t)
      for (std::size_t j = 0; j < n; ++j)
        std::swap(at(t, j), at(bi, j));
    if (bj != t)
      for (std::size_t i = 0; i < m; ++i)
        std::swap(at(i, t), at(i, bj));

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (at(i, t) == 0)
          continue;
        i64 q = at(i, t) / at(t, t);
        for (std::size_t j = t; j < n; ++j) {
          if (at(t, j) == 0)
            continue;
          i64 prod, diff;
          if (__builtin_mul_overflow(q, at(t, j), &prod) || __builtin_sub_overflow(at(i, j), prod, &diff))
            throw Overflow{};
          at(i, j) = diff;
        }
        if (at(i, t) != 0)
          dirty = true;
      }
      if (dirty) {
        std::size_t best = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (at(i, t) != 0 && (best == t || absval(at(i, t)) < absval(at(best, t))))
            best = i;
        if (absval(at(best, t)) < absval(at(t, t)))
          for (std::size_t j = 0; j < n; ++j)
            std::swap(at(t, j), at(best, j));
        continue;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (at(t, j) == 0)
          continue;
        i64 q = at(t, j) / at(t, t);
        for (std::size_t i = t; i < m; ++i) {
          if (at(i, t) == 0)
            continue;
          i64 prod, diff;
          if (__builtin_mul_overflow(q, at(i, t), &prod) || __builtin_sub_overflow(at(i, j), prod, &diff))
            throw Overflow{};
          at(i, j) = diff;
        }
        if (at(t, j) != 0)
          dirty = true;
      }
      if (dirty) {
        std::size_t best = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (at(t, j) != 0 && (best == t || absval(at(t, j)) < absval(at(t, best))))
            best = j;
        if (absval(at(t, best)) < absval(at(t, t)))
          for (std::size_t i = 0; i < m; ++i)
            std::swap(at(i, t), at(i, best));
        continue;
      }
      break;
    }
    diag.emplace_back(static_cast<long>(absval(at(t, t))));
  }
  return diag;
}

} // namespace

SmithForm snf(IntMatrix const &m, SmithOptions options)
{
  return SmithReducer(m, options).run();
}

std::vector<Integer> invariant_factors(std::vector<Integer> diagonal)
{
  std::vector<Integer> d;
  for (auto &x : diagonal) {
    Integer a = abs(x);
    if (a > 1)
      d.push_back(a);
    else if (a == 0)
      throw InvalidInput("invariant_factors: zero entry");
  }
  std::sort(d.begin(), d.end());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (mpz_divisible_p(d[j].get_mpz_t(), d[i].get_mpz_t()))
        continue;
      Integer g = gcd(d[i], d[j]);
      Integer l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  std::vector<Integer> out;
  for (auto &x : d)
    if (x > 1)
      out.push_back(x);
  return out;
}

std::vector<Integer> smith_diagonal(IntMatrix const &m)
{
  std::vector<Integer> diag;
  try {
    diag = diagonalize_i64(m);
  } catch (Overflow const &) {
    diag = snf(m, {false, false, false}).diagonal;
  }
  auto factors = invariant_factors(diag);
  std::vector<Integer> out(diag.size() - factors.size(), Integer(1));
  out.insert(out.end(), factors.begin(), factors.end());
  return out;
}

// --- FGAbGroup ------------------------------------------------------------

FGAbGroup::FGAbGroup(std::size_t rank, std::vector<Integer> torsion)
  : rank_(rank), torsion_(invariant_factors(std::move(torsion)))
{}

FGAbGroup FGAbGroup::cyclic(Integer order)
{
  if (order == 0)
    return free(1);
  return FGAbGroup(0, {order});
}

FGAbGroup FGAbGroup::elementary(Integer p, std::size_t count)
{
  return FGAbGroup(0, std::vector<Integer>(count, p));
}

FGAbGroup FGAbGroup::direct_sum(FGAbGroup const &other) const
{
  std::vector<Integer> t = torsion_;
  t.insert(t.end(), other.torsion_.begin(), other.torsion_.end());
  return FGAbGroup(rank_ + other.rank_, std::move(t));
}

std::string FGAbGroup::to_string() const
{
  if (is_trivial())
    return "0";
  std::ostringstream os;
  bool first = true;
  if (rank_ > 0) {
    os << "Z";
    if (rank_ > 1)
      os << '^' << rank_;
    first = false;
  }
  for (auto const &d : torsion_) {
    os << (first ? "" : " + ") << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

// --- lattices -------------------------------------------------------------

IntMatrix kernel_basis(IntMatrix const &m)
{
  auto form = snf(m, {false, true, false});
  return form.V.columns(form.rank, m.cols() - form.rank);
}

IntMatrix lattice_basis(IntMatrix const &generators)
{
  auto form = snf(generators, {false, true, false});
  return (generators * form.V).columns(0, form.rank);
}

std::size_t matrix_rank(IntMatrix const &m)
{
  return smith_diagonal(m).size();
}

LatticeSolver::LatticeSolver(IntMatrix lattice)
  : lattice_(std::move(lattice)), form_(snf(lattice_, {true, true, false}))
{}

std::optional<std::vector<Integer>> LatticeSolver::solve(std::vector<Integer> const &v) const
{
  if (v.size() != lattice_.rows())
    throw InvalidInput("LatticeSolver: vector dimension mismatch");
  auto y = form_.U * v;
  std::vector<Integer> w(lattice_.cols());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < form_.rank) {
      if (!mpz_divisible_p(y[i].get_mpz_t(), form_.diagonal[i].get_mpz_t()))
        return std::nullopt;
      w[i] = y[i] / form_.diagonal[i];
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return form_.V * w;
}

bool LatticeSolver::contains(std::vector<Integer> const &v) const
{
  return solve(v).has_value();
}

bool LatticeSolver::contains_all(IntMatrix const &vectors) const
{
  for (std::size_t j = 0; j < vectors.cols(); ++j)
    if (!contains(vectors.column_vector(j)))
      return false;
  return true;
}

bool same_lattice(IntMatrix const &a, IntMatrix const &b)
{
  return LatticeSolver(a).contains_all(b) && LatticeSolver(b).contains_all(a);
}

FGAbGroup quotient_group(std::size_t ambient, IntMatrix const &relations)
{
  if (relations.cols() > 0 && relations.rows() != ambient)
    throw InvalidInput("quotient_group: relation dimension mismatch");
  if (relations.cols() == 0)
    return FGAbGroup::free(ambient);
  auto diag = smith_diagonal(relations);
  return FGAbGroup(ambient - diag.size(), diag);
}

// --- PresentedGroup -------------------------------------------------------

PresentedGroup::PresentedGroup(std::size_t generators, IntMatrix relations)
  : generators_(generators), relations_(std::move(relations))
{
  if (relations_.cols() == 0)
    relations_ = IntMatrix(generators_, 0);
  if (relations_.rows() != generators_)
    throw InvalidInput("PresentedGroup: relation rows must equal generator count");

  auto form = snf(relations_, {true, false, true});
  std::vector<std::size_t> keep;
  std::vector<Integer> torsion;
  for (std::size_t i = 0; i < form.rank; ++i)
    if (form.diagonal[i] > 1) {
      keep.push_back(i);
      torsion.push_back(form.diagonal[i]);
    }
  for (std::size_t i = form.rank; i < generators_; ++i)
    keep.push_back(i);

  canonical_ = FGAbGroup(generators_ - form.rank, torsion);
  to_canonical_ = IntMatrix(keep.size(), generators_);
  from_canonical_ = IntMatrix(generators_, keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k)
    for (std::size_t j = 0; j < generators_; ++j) {
      to_canonical_(k, j) = form.U(keep[k], j);
      from_canonical_(j, k) = form.U_inv(j, keep[k]);
    }
}

PresentedGroup PresentedGroup::free(std::size_t generators)
{
  return PresentedGroup(generators, IntMatrix(generators, 0));
}

std::vector<Integer> PresentedGroup::coordinates(std::vector<Integer> const &x) const
{
  auto y = to_canonical_ * x;
  auto const &t = canonical_.torsion();
  for (std::size_t i = 0; i < t.size(); ++i)
    mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), t[i].get_mpz_t());
  return y;
}

bool PresentedGroup::is_zero(std::vector<Integer> const &x) const
{
  for (auto const &c : coordinates(x))
    if (c != 0)
      return false;
  return true;
}

Integer PresentedGroup::order(std::vector<Integer> const &x) const
{
  auto y = coordinates(x);
  auto const &t = canonical_.torsion();
  for (std::size_t i = t.size(); i < y.size(); ++i)
    if (y[i] != 0)
      return 0;
  Integer result = 1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    Integer ord = t[i] / gcd(t[i], y[i]);
    result = lcm(result, ord);
  }
  return result;
}

PresentedGroup PresentedGroup::direct_sum(PresentedGroup const &other) const
{
  return PresentedGroup(generators_ + other.generators_, relations_.direct_sum(other.relations_));
}

// --- AbHom ----------------------------------------------------------------

AbHom::AbHom(PresentedGroup source, PresentedGroup target, IntMatrix matrix)
  : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix))
{
  if (matrix_.rows() != target_.generators() || matrix_.cols() != source_.generators())
    throw InvalidInput("AbHom: matrix shape does not match generator counts");
  if (source_.relations().cols() > 0) {
    LatticeSolver solver(target_.relations());
    if (!solver.contains_all(matrix_ * source_.relations()))
      throw InvalidInput("AbHom: relations of the source are not mapped into relations of the target");
  }
}

IntMatrix AbHom::kernel_lattice() const
{
  std::size_t const n = source_.generators();
  auto joint = matrix_.hconcat(target_.relations());
  auto k = kernel_basis(joint);
  return lattice_basis(k.rows_range(0, n));
}

FGAbGroup AbHom::kernel() const
{
  auto k = kernel_lattice();
  auto const &rel = source_.relations();
  if (rel.cols() == 0)
    return FGAbGroup::free(k.cols());
  LatticeSolver solver(k);
  IntMatrix coords(k.cols(), rel.cols());
  for (std::size_t j = 0; j < rel.cols(); ++j) {
    auto c = solver.solve(rel.column_vector(j));
    if (!c)
      throw VerificationFailure("AbHom::kernel: relation outside kernel lattice");
    for (std::size_t i = 0; i < c->size(); ++i)
      coords(i, j) = (*c)[i];
  }
  return quotient_group(k.cols(), coords);
}

FGAbGroup AbHom::image() const
{
  return quotient_group(source_.generators(), kernel_lattice());
}

FGAbGroup AbHom::cokernel() const
{
  return quotient_group(target_.generators(), matrix_.hconcat(target_.relations()));
}

bool AbHom::is_injective() const
{
  return kernel().is_trivial();
}

bool AbHom::is_surjective() const
{
  return cokernel().is_trivial();
}

IntMatrix AbHom::canonical_matrix() const
{
  auto m = target_.to_canonical() * matrix_ * source_.from_canonical();
  auto const &t = target_.canonical().torsion();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      mpz_fdiv_r(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), t[i].get_mpz_t());
  return m;
}

AbHom AbHom::then(AbHom const &next) const
{
  if (next.source_.generators() != target_.generators())
    throw InvalidInput("AbHom::then: incompatible groups");
  return AbHom(source_, next.target_, next.matrix_ * matrix_);
}

// --- subquotients ---------------------------------------------------------

std::vector<Integer> Subquotient::coordinates(std::vector<Integer> const &v) const
{
  auto c = coordinate_map * v;
  if (kernel_basis * c != v)
    throw VerificationFailure("Subquotient: vector does not lie in the kernel");
  return c;
}

Subquotient subquotient(IntMatrix const &kernel_of, IntMatrix const &image_of)
{
  if (kernel_of.cols() != image_of.rows())
    throw InvalidInput("subquotient: dimension mismatch");
  if (!(kernel_of * image_of).is_zero())
    throw VerificationFailure("subquotient: image is not contained in kernel");
  auto form = snf(kernel_of, {false, true, true});
  std::size_t const n = kernel_of.cols();
  std::size_t const k = n - form.rank;
  Subquotient out;
  out.kernel_basis = form.V.columns(form.rank, k);
  out.coordinate_map = form.V_inv.rows_range(form.rank, k);
  out.group = PresentedGroup(k, out.coordinate_map * image_of);
  return out;
}

AbHom induced_map(Subquotient const &from, Subquotient const &to, IntMatrix const &module_map)
{
  auto images = module_map * from.kernel_basis;
  IntMatrix m(to.kernel_basis.cols(), from.kernel_basis.cols());
  for (std::size_t j = 0; j < images.cols(); ++j) {
    auto c = to.coordinates(images.column_vector(j));
    for (std::size_t i = 0; i < c.size(); ++i)
      m(i, j) = c[i];
  }
  return AbHom(from.group, to.group, m);
}

// --- direct systems -------------------------------------------------------

namespace {

std::vector<Integer> prime_divisors(Integer n)
{
  std::vector<Integer> primes;
  n = abs(n);
  for (Integer p = 2; p * p <= n; ++p)
    if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      primes.push_back(p);
      while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()))
        n /= p;
    }
  if (n > 1)
    primes.push_back(n);
  return primes;
}

std::string join(std::vector<Integer> const &xs, char const *sep)
{
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i)
    os << (i ? sep : "") << xs[i].get_str();
  return os.str();
}

} // namespace

std::string Localization::descriptor() const
{
  if (primes.empty())
    return "Z";
  Integer prod = 1;
  for (auto const &p : primes)
    prod *= p;
  return "Z[1/" + prod.get_str() + "]";
}

std::string Localization::describe() const
{
  std::string out = descriptor() + "-type, multipliers ";
  if (period > 0) {
    std::vector<Integer> head(multipliers.begin(), multipliers.begin() + static_cast<long>(period));
    return out + "(" + join(head, ",") + ")-periodic";
  }
  return out + "(" + join(multipliers, ",") + ")";
}

std::string to_string(LimitKind kind)
{
  switch (kind) {
  case LimitKind::stabilized:
    return "stabilized";
  case LimitKind::localization:
    return "localization";
  case LimitKind::undetermined:
    return "undetermined";
  }
  return "undetermined";
}

DirectSystem::DirectSystem(std::vector<AbHom> maps, int first_level)
  : maps_(std::move(maps)), first_level_(first_level)
{
  if (maps_.empty())
    throw InvalidInput("DirectSystem: need at least one connecting map");
  for (std::size_t k = 0; k + 1 < maps_.size(); ++k) {
    auto const &a = maps_[k].target();
    auto const &b = maps_[k + 1].source();
    if (a.generators() != b.generators() || a.relations() != b.relations())
      throw InvalidInput("DirectSystem: consecutive maps do not share a stage");
  }
}

PresentedGroup const &DirectSystem::stage(std::size_t k) const
{
  if (k < maps_.size())
    return maps_[k].source();
  if (k == maps_.size())
    return maps_.back().target();
  throw InvalidInput("DirectSystem: stage index out of range");
}

DirectSystem DirectSystem::drop_prefix(std::size_t count) const
{
  if (count >= maps_.size())
    throw InvalidInput("DirectSystem: cannot drop every map");
  return DirectSystem(std::vector<AbHom>(maps_.begin() + static_cast<long>(count), maps_.end()),
                      first_level_ + static_cast<int>(count));
}

DirectSystem image_system(DirectSystem const &system)
{
  auto const &maps = system.maps();
  if (maps.size() < 2)
    throw InvalidInput("image_system: at least three stages are required");
  std::vector<PresentedGroup> images;
  for (auto const &f : maps)
    images.emplace_back(f.source().generators(), f.kernel_lattice());
  std::vector<AbHom> out;
  for (std::size_t k = 0; k + 1 < images.size(); ++k)
    out.emplace_back(images[k], images[k + 1], maps[k].matrix());
  return DirectSystem(out, system.first_level());
}

LimitDescriptor limit(DirectSystem const &system)
{
  if (system.stages() < 3)
    throw InvalidInput("limit: at least three stages are required");
  auto const &maps = system.maps();

  std::size_t first_iso = maps.size();
  while (first_iso > 0 && maps[first_iso - 1].is_isomorphism())
    --first_iso;

  LimitDescriptor out;
  // a single trailing isomorphism is not enough evidence
  if (maps.size() - first_iso >= 2) {
    out.kind = LimitKind::stabilized;
    out.group = system.stage(first_iso).canonical();
    out.level = system.first_level() + static_cast<int>(first_iso);
    return out;
  }

  bool rank_one = true;
  for (std::size_t k = 0; k < system.stages(); ++k)
    if (!(system.stage(k).canonical() == FGAbGroup::free(1)))
      rank_one = false;
  if (rank_one) {
    Localization loc;
    for (auto const &f : maps) {
      Integer k = abs(f.canonical_matrix()(0, 0));
      if (k == 0) {
        rank_one = false;
        break;
      }
      loc.multipliers.push_back(k);
    }
    if (rank_one) {
      std::vector<Integer> primes;
      for (auto const &k : loc.multipliers)
        for (auto &p : prime_divisors(k))
          primes.push_back(p);
      std::sort(primes.begin(), primes.end());
      primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
      loc.primes = primes;
      auto const &mul = loc.multipliers;
      for (std::size_t p = 1; 2 * p <= mul.size(); ++p) {
        bool periodic = true;
        for (std::size_t i = 0; i + p < mul.size(); ++i)
          if (mul[i] != mul[i + p]) {
            periodic = false;
            break;
          }
        if (periodic) {
          loc.period = p;
          break;
        }
      }
      out.kind = LimitKind::localization;
      out.level = system.first_level() + static_cast<int>(maps.size());
      out.localization = loc;
      return out;
    }
  }

  out.kind = LimitKind::undetermined;
  out.level = system.first_level() + static_cast<int>(maps.size());
  return out;
}

} // namespace dihedral
