#pragma once

// First-return castles for sigma-invariant clopen sets and almost-finiteness
// certificates built from them.

#include <cstdint>
#include <span>
#include <vector>

#include "dihedral/amenability.hpp"
#include "dihedral/castle.hpp"
#include "dihedral/errors.hpp"

namespace dihedral {

/// Splits y by first-return time under phi; tower i has base {lambda = J_i}
/// and shape F_{J_i}. The result is verified before it is returned.
template <class System>
Castle<typename System::Set> first_return_castle(System const &system, typename System::Set const &y)
{
  using Set = typename System::Set;
  if (system.is_empty(y))
    throw InvalidInput("first_return_castle: empty base");
  if (!(system.act(GroupElement::sigma(), y) == y))
    throw InvalidInput("first_return_castle: base is not sigma-invariant");

  std::int64_t cap = system.return_time_cap(y);
  Castle<Set> castle;
  Set pending = y;
  for (std::int64_t k = 1; k <= cap && !system.is_empty(pending); ++k) {
    Set hit = system.intersect(pending, system.act(GroupElement::phi(-k), y));
    if (system.is_empty(hit))
      continue;
    castle.towers.push_back(Tower<Set>{hit, k, folner(k)});
    pending = system.difference(pending, hit);
  }
  if (!system.is_empty(pending))
    throw InvalidInput("first_return_castle: return times exceed " + std::to_string(cap));

  CastleReport report = verify_castle(system, castle);
  if (!report.ok())
    throw VerificationFailure("first_return_castle: " + report.detail);
  return castle;
}

template <class Set> struct Certificate
{
  Castle<Set> castle;
  std::vector<GroupElement> K;
  Rational eps;
  std::int64_t min_index = 0; ///< every F_m with m >= min_index is (K, eps)-invariant
  int base_level = 0;         ///< window level of the symmetric base cell
  std::vector<Rational> ratios;
  CastleReport report;
};

/// Checks a certificate using only its castle, K and eps.
template <class System>
bool recheck_certificate(System const &system, Certificate<typename System::Set> &cert)
{
  cert.report = verify_castle(system, cert.castle);
  cert.ratios.clear();
  bool invariant = true;
  for (auto const &t : cert.castle.towers) {
    cert.ratios.push_back(folner_ratio(t.shape, cert.K));
    invariant = invariant && cert.ratios.back() < cert.eps;
  }
  return cert.report.ok() && invariant;
}

/// Shrinks the symmetric cell around 1/2 until its first min_index translates
/// are disjoint, then takes the first-return castle.
template <class System>
Certificate<typename System::Set> almost_finite_certificate(System const &system, std::span<GroupElement const> K,
                                                            Rational const &eps, int level_budget = 1 << 14)
{
  using Set = typename System::Set;
  Certificate<Set> cert;
  cert.K.assign(K.begin(), K.end());
  cert.eps = eps;
  cert.min_index = min_invariant_index(K, eps);

  for (int level = 1; level <= level_budget; level *= 2) {
    Set y = system.symmetric_cell(level);
    bool separated = true;
    for (std::int64_t k = 1; k < cert.min_index && separated; ++k)
      separated = system.is_empty(system.intersect(y, system.act(GroupElement::phi(k), y)));
    if (!separated)
      continue;
    cert.base_level = level;
    cert.castle = first_return_castle(system, y);
    for (auto const &t : cert.castle.towers)
      if (t.J < cert.min_index)
        throw VerificationFailure("almost_finite_certificate: return time below the invariance index");
    if (!recheck_certificate(system, cert))
      throw VerificationFailure("almost_finite_certificate: castle fails verification");
    return cert;
  }
  throw InvalidInput("almost_finite_certificate: no separated base within the level budget");
}

} // namespace dihedral
