#pragma once

// Clopen towers and castles over any system exposing act() and set algebra.

#include <cstdint>
#include <string>
#include <vector>

#include "dihedral/systems.hpp"

namespace dihedral {

template <class Set> struct Tower
{
  Set base;
  std::int64_t J = 0; ///< first-return time (or level size) the shape was built from
  std::vector<GroupElement> shape;
};

template <class Set> struct Castle
{
  std::vector<Tower<Set>> towers;
};

struct CastleReport
{
  bool disjoint = false;
  bool covers = false;
  bool sigma_compatible = false;
  std::string detail; ///< first failure, empty when all checks pass

  bool ok() const { return disjoint && covers && sigma_compatible; }
};

/// Exact check that all translates are pairwise disjoint, that they cover the
/// space, and that sigma phi^J fixes every base.
template <class System>
CastleReport verify_castle(System const &system, Castle<typename System::Set> const &castle)
{
  using Set = typename System::Set;
  CastleReport r;
  r.disjoint = true;
  r.sigma_compatible = true;
  Set covered = system.empty();
  for (std::size_t t = 0; t < castle.towers.size(); ++t) {
    auto const &tower = castle.towers[t];
    for (auto const &g : tower.shape) {
      Set piece = system.act(g, tower.base);
      if (r.disjoint && !system.is_empty(system.intersect(covered, piece))) {
        r.disjoint = false;
        r.detail = "tower " + std::to_string(t) + " translate " + g.to_string() + " overlaps an earlier translate";
      }
      covered = system.unite(covered, piece);
    }
    GroupElement flip_return = GroupElement::sigma() * GroupElement::phi(tower.J);
    if (!(system.act(flip_return, tower.base) == tower.base)) {
      r.sigma_compatible = false;
      if (r.detail.empty())
        r.detail = "tower " + std::to_string(t) + " base is not fixed by " + flip_return.to_string();
    }
  }
  r.covers = system.is_empty(system.difference(system.full(), covered));
  if (!r.covers && r.detail.empty())
    r.detail = "translates do not cover the space";
  return r;
}

} // namespace dihedral
