#pragma once

// Concrete Cantor minimal actions of the infinite dihedral group Z x| Z/2:
// the flip system on the doubled circle, dihedral odometers, and the doubled
// (two-sheet) system whose translation part is not minimal.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dihedral/exact_circle.hpp"
#include "dihedral/matrix.hpp"

namespace dihedral {

/// (n, s) with product (n,s)(m,t) = (n + (-1)^s m, s xor t). Acts as phi^n sigma^s.
struct GroupElement
{
  std::int64_t n = 0;
  int s = 0;

  static GroupElement identity() { return {}; }
  static GroupElement phi(std::int64_t k = 1) { return {k, 0}; }
  static GroupElement sigma() { return {0, 1}; }

  GroupElement operator*(GroupElement const &o) const { return {n + (s ? -o.n : o.n), s ^ o.s}; }
  GroupElement inverse() const { return s ? *this : GroupElement{-n, 0}; }
  bool is_identity() const { return n == 0 && s == 0; }

  auto operator<=>(GroupElement const &) const = default;

  /// "(n,s)"
  std::string to_string() const;
};

/// Permutation of a finite cell list; image[j] is the cell that cell j goes to.
struct CellPermutation
{
  std::vector<std::size_t> image;

  /// Column j is the basis vector of image[j].
  IntMatrix matrix() const;
  std::size_t fixed_count() const;
  bool is_involution() const;
};

/// Membership vector of `set` with respect to a list of disjoint cells.
/// Throws VerificationFailure when `set` is not a union of cells.
template <class System, class Set>
std::vector<Integer> decompose(System const &system, Set const &set, std::vector<Set> const &cells);
/// Column j is decompose(sets[j]).
template <class System, class Set>
IntMatrix decompose_all(System const &system, std::vector<Set> const &sets, std::vector<Set> const &cells);

// --- flip system on the doubled circle ------------------------------------

/// Cells of one finite stage. The sigma window uses the cut points n theta,
/// |n| <= N; the phi-sigma window uses 1 - N <= n <= N.
template <class Set> struct LevelPartition
{
  int level = 0;
  std::vector<Set> cells;
  CellPermutation sigma;
  /// Rows: cells of level + 1, columns: cells. Column j is phi(cell j).
  IntMatrix phi;
  std::vector<Set> phi_sigma_cells;
  CellPermutation phi_sigma;
};

class DenjoyFlipSystem
{
 public:
  using Set = ClopenSet;
  using Point = CirclePoint;

  explicit DenjoyFlipSystem(QuadField field);

  DoubledCircle const &circle() const { return circle_; }
  QuadField const &field() const { return circle_.field(); }

  Set act(GroupElement const &g, Set const &s) const;
  Point act(GroupElement const &g, Point const &x) const;

  Set full() const { return ClopenSet::full(); }
  Set empty() const { return ClopenSet::empty(); }
  Set unite(Set const &a, Set const &b) const { return circle_.unite(a, b); }
  Set intersect(Set const &a, Set const &b) const { return circle_.intersect(a, b); }
  Set difference(Set const &a, Set const &b) const { return circle_.difference(a, b); }
  bool is_empty(Set const &a) const { return a.is_empty(); }
  bool is_partition(std::span<Set const> parts) const { return circle_.is_partition(parts); }
  QuadExt measure(Set const &a) const { return circle_.length(a); }

  /// Safe upper bound on first-return times to y under phi.
  std::int64_t return_time_cap(Set const &y) const;
  /// The sigma-invariant cell of the level window; it contains 1/2.
  Set symmetric_cell(int level) const;

  /// Solutions of x = (-1)^s x + n theta on the doubled circle, sorted.
  /// Rejects the identity; empty for rotations.
  std::vector<QuadExt> fixed_points(GroupElement const &g) const;

  /// Cells between consecutive cut points n theta, lo <= n <= hi, sorted by
  /// left endpoint. An empty window gives the single full cell.
  std::vector<Set> window_cells(std::int64_t lo, std::int64_t hi) const;
  LevelPartition<Set> level_partition(int level) const;
  /// Rows: cells of level + 1, columns: cells of level; column j lists the subcells.
  IntMatrix refinement(int level) const;

 private:
  DoubledCircle circle_;
};

// --- two-sheet system -------------------------------------------------------

/// A clopen subset of circle x {0, 1}.
struct SheetSet
{
  std::array<ClopenSet, 2> sheets;

  bool operator==(SheetSet const &other) const = default;
};

/// phi(y, 0) = (y + theta, 0), phi(y, 1) = (y - theta, 1), sigma swaps sheets.
class DoubledSystem
{
 public:
  using Set = SheetSet;

  explicit DoubledSystem(QuadField field);

  DoubledCircle const &circle() const { return circle_; }
  QuadField const &field() const { return circle_.field(); }

  Set act(GroupElement const &g, Set const &s) const;

  Set full() const { return {{ClopenSet::full(), ClopenSet::full()}}; }
  Set empty() const { return {}; }
  Set sheet(int i) const;
  Set unite(Set const &a, Set const &b) const;
  Set intersect(Set const &a, Set const &b) const;
  Set difference(Set const &a, Set const &b) const;
  bool is_empty(Set const &a) const { return a.sheets[0].is_empty() && a.sheets[1].is_empty(); }
  bool is_partition(std::span<Set const> parts) const;
  QuadExt measure(Set const &a) const;

  std::int64_t return_time_cap(Set const &y) const;
  /// The flip system's symmetric cell, on both sheets.
  Set symmetric_cell(int level) const;

  /// The action is free: always empty. Rejects the identity.
  std::vector<QuadExt> fixed_points(GroupElement const &g) const;

  /// Checks that sheet 0 is phi-invariant and X = Y u sigma(Y) disjointly.
  bool splitting_holds() const;

 private:
  DoubledCircle circle_;
};

// --- odometers --------------------------------------------------------------

/// Union of residue classes at one level of the chain.
struct OdometerSet
{
  int level = 1;
  std::vector<std::int64_t> residues; ///< sorted, distinct, in [0, n_level)

  bool operator==(OdometerSet const &other) const = default;
};

struct StableCount
{
  bool stabilized = false;
  std::int64_t count = 0;
  int stabilized_at = 0;
  /// Image sizes of the top-level fixed set at levels 1 .. maxLevel - 1.
  std::vector<std::int64_t> per_level;
};

struct FreenessWitness
{
  int level = 0;
  GroupElement b;
  GroupElement conjugate; ///< b^-1 gamma b
};

struct TopFreenessReport
{
  bool free = false;
  std::vector<FreenessWitness> witnesses;
};

/// Inverse limit of Z/n_i with (k, s) x = k + (-1)^s x. Levels are 1-based.
class OdometerSystem
{
 public:
  using Set = OdometerSet;

  /// Chain must be strictly increasing with n_i | n_{i+1} and n_1 >= 2.
  explicit OdometerSystem(std::vector<Integer> chain);

  std::vector<Integer> const &chain() const { return chain_; }
  int levels() const { return static_cast<int>(chain_.size()); }
  Integer const &modulus(int level) const;

  Integer apply(GroupElement const &g, Integer const &x, int level) const;
  Set act(GroupElement const &g, Set const &s) const;

  Set full(int level) const;
  Set full() const { return full(1); }
  Set empty() const { return {}; }
  /// Same set at a finer level.
  Set lift(Set const &s, int level) const;
  Set unite(Set const &a, Set const &b) const;
  Set intersect(Set const &a, Set const &b) const;
  Set difference(Set const &a, Set const &b) const;
  bool is_empty(Set const &a) const { return a.residues.empty(); }
  bool is_partition(std::span<Set const> parts) const;

  /// |{x in Z/n_level : g x = x}| / n_level
  Rational fixed_fraction(GroupElement const &g, int level) const;
  /// Same by enumeration of every residue.
  Rational fixed_fraction_by_enumeration(GroupElement const &g, int level) const;

  /// Number of compatible threads of fixed points, from the images of the
  /// fixed set at max_level in the coarser levels.
  StableCount stable_fixed_count(GroupElement const &g, int max_level) const;

  /// (k, j) Gamma_i -> k mod n_i is a bijection, checked over all pairs of representatives.
  bool coset_bijection(int level) const;
  /// Reduction Z/n_{i+1} -> Z/n_i commutes with phi and sigma.
  bool projection_equivariant(int level) const;

  TopFreenessReport top_freeness(int max_level) const;

  /// Residue cells; phi_sigma uses the same cells.
  LevelPartition<Set> level_partition(int level) const;
  IntMatrix refinement(int level) const;

 private:
  std::int64_t small_modulus(int level) const;

  std::vector<Integer> chain_;
};

/// 3, 9, 27, ... style chains: base^1 .. base^levels.
std::vector<Integer> geometric_chain(Integer const &base, int levels);

} // namespace dihedral

#include "dihedral/errors.hpp"

namespace dihedral {

template <class System, class Set>
std::vector<Integer> decompose(System const &system, Set const &set, std::vector<Set> const &cells)
{
  std::vector<Integer> v(cells.size());
  Set covered = system.empty();
  for (std::size_t j = 0; j < cells.size(); ++j) {
    Set common = system.intersect(set, cells[j]);
    if (system.is_empty(common))
      continue;
    if (!(common == cells[j]))
      throw VerificationFailure("decompose: set cuts through a cell");
    v[j] = 1;
    covered = system.unite(covered, cells[j]);
  }
  if (!system.is_empty(system.difference(set, covered)))
    throw VerificationFailure("decompose: set is not covered by the cells");
  return v;
}

template <class System, class Set>
IntMatrix decompose_all(System const &system, std::vector<Set> const &sets, std::vector<Set> const &cells)
{
  IntMatrix m(cells.size(), sets.size());
  for (std::size_t j = 0; j < sets.size(); ++j) {
    auto v = decompose(system, sets[j], cells);
    for (std::size_t i = 0; i < cells.size(); ++i)
      m(i, j) = v[i];
  }
  return m;
}

} // namespace dihedral
