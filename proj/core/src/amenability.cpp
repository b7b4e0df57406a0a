#include "dihedral/amenability.hpp"

#include <algorithm>
#include <set>

#include "dihedral/errors.hpp"

namespace dihedral {

std::vector<GroupElement> folner(std::int64_t m)
{
  if (m < 1)
    throw InvalidInput("folner: m must be positive");
  std::int64_t flips = m / 2, rest = m - flips;
  std::vector<GroupElement> F;
  F.reserve(static_cast<std::size_t>(m));
  for (std::int64_t k = -flips; k <= -1; ++k)
    F.push_back({k, 1});
  for (std::int64_t k = 0; k < rest; ++k)
    F.push_back({k, 0});
  return F;
}

bool is_transversal(std::span<GroupElement const> F, std::int64_t m)
{
  if (m < 1 || static_cast<std::int64_t>(F.size()) != m)
    return false;
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  for (auto const &g : F) {
    std::int64_t r = ((g.n % m) + m) % m;
    if (seen[r])
      return false;
    seen[r] = 1;
  }
  return true;
}

Rational folner_ratio(std::span<GroupElement const> F, std::span<GroupElement const> K)
{
  if (F.empty())
    throw InvalidInput("folner_ratio: F must be nonempty");
  std::set<GroupElement> base(F.begin(), F.end());
  std::set<GroupElement> moved;
  for (auto const &k : K)
    for (auto const &f : F)
      moved.insert(k * f);
  std::size_t delta = 0;
  for (auto const &x : moved)
    delta += !base.count(x);
  for (auto const &x : base)
    delta += !moved.count(x);
  Rational r(static_cast<long>(delta), static_cast<long>(base.size()));
  r.canonicalize();
  return r;
}

Integer folner_boundary_constant(std::span<GroupElement const> K)
{
  if (K.empty())
    throw InvalidInput("folner_boundary_constant: K must be nonempty");
  Integer sum = 0, least;
  for (std::size_t i = 0; i < K.size(); ++i) {
    Integer half = 2 * Integer(K[i].n < 0 ? -K[i].n : K[i].n) + 3;
    sum += half;
    if (i == 0 || half < least)
      least = half;
  }
  return sum + least;
}

std::int64_t min_invariant_index(std::span<GroupElement const> K, Rational const &eps)
{
  if (eps <= 0)
    throw InvalidInput("min_invariant_index: eps must be positive");
  Integer C = folner_boundary_constant(K);
  Rational bound = Rational(C) / eps;
  Integer last = bound.get_num() / bound.get_den() + 1;
  if (last > 1000000)
    throw InvalidInput("min_invariant_index: scan range " + last.get_str() + " too large");
  std::int64_t N = 1;
  for (std::int64_t m = 1; m <= last.get_si(); ++m) {
    auto F = folner(m);
    if (folner_ratio(F, K) >= eps)
      N = m + 1;
  }
  return N;
}

Castle<OdometerSet> odometer_castle(OdometerSystem const &system, int n, int j)
{
  if (n < 1 || j < n)
    throw InvalidInput("odometer_castle: need 1 <= n <= j");
  Integer const &nn = system.modulus(n);
  Integer const &nj = system.modulus(j);
  if (nj > 100000000)
    throw InvalidInput("odometer_castle: level too large to enumerate");
  std::int64_t step = nn.get_si(), size = nj.get_si();
  OdometerSet base{j, {}};
  for (std::int64_t r = 0; r < size; r += step)
    base.residues.push_back(r);
  Castle<OdometerSet> castle;
  castle.towers.push_back(Tower<OdometerSet>{base, step, folner(step)});
  return castle;
}

} // namespace dihedral
