#pragma once

// Finitely generated abelian groups over exact integers.
//
// Lattices are always given by generating columns: an n x k matrix L stands
// for the subgroup of Z^n spanned by its k columns.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dihedral/matrix.hpp"

namespace dihedral {

struct SmithOptions
{
  bool left = true;      ///< track U
  bool right = true;     ///< track V
  bool inverses = false; ///< also track U^{-1} and V^{-1}
};

/// U * M * V = S with S diagonal, s_0 | s_1 | ... and U, V unimodular.
struct SmithForm
{
  IntMatrix U, S, V;
  IntMatrix U_inv, V_inv; // empty unless requested
  std::size_t rank = 0;
  std::vector<Integer> diagonal; // the rank nonzero diagonal entries, all positive
};

/// Smallest-absolute-value pivoting with row-major tie breaking, so results
/// are reproducible entry for entry.
SmithForm snf(IntMatrix const &m, SmithOptions options = {});

/// Nonzero invariant factors of m, without transformation matrices.
/// Runs on machine integers and falls back to GMP on overflow.
std::vector<Integer> smith_diagonal(IntMatrix const &m);

/// Canonical form Z^rank + Z/d_1 + ... + Z/d_k with d_1 | ... | d_k, d_i >= 2.
class FGAbGroup
{
 public:
  FGAbGroup() = default;
  /// Torsion orders may be arbitrary positive integers; they are brought to
  /// invariant-factor form (e.g. {2, 3} becomes {6}) and 1s are dropped.
  FGAbGroup(std::size_t rank, std::vector<Integer> torsion);

  static FGAbGroup free(std::size_t rank) { return FGAbGroup(rank, {}); }
  static FGAbGroup cyclic(Integer order);
  static FGAbGroup elementary(Integer p, std::size_t count);

  std::size_t rank() const { return rank_; }
  std::vector<Integer> const &torsion() const { return torsion_; }
  bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }

  FGAbGroup direct_sum(FGAbGroup const &other) const;

  bool operator==(FGAbGroup const &other) const = default;

  /// e.g. "Z^2 + Z/2 + Z/2", "0"
  std::string to_string() const;

 private:
  std::size_t rank_ = 0;
  std::vector<Integer> torsion_;
};

/// Invariant factors > 1 of the given nonzero diagonal entries.
std::vector<Integer> invariant_factors(std::vector<Integer> diagonal);

// --- lattice toolbox ------------------------------------------------------

/// Basis (as columns) of the integer kernel {x : m x = 0}.
IntMatrix kernel_basis(IntMatrix const &m);

/// Linearly independent columns spanning the same lattice as `generators`.
IntMatrix lattice_basis(IntMatrix const &generators);

std::size_t matrix_rank(IntMatrix const &m);

/// Solves x in L * x = v over Z for many right-hand sides against one lattice.
class LatticeSolver
{
 public:
  explicit LatticeSolver(IntMatrix lattice);

  std::optional<std::vector<Integer>> solve(std::vector<Integer> const &v) const;
  bool contains(std::vector<Integer> const &v) const;
  /// True iff every column of `vectors` lies in the lattice.
  bool contains_all(IntMatrix const &vectors) const;

  IntMatrix const &lattice() const { return lattice_; }

 private:
  IntMatrix lattice_;
  SmithForm form_;
};

bool same_lattice(IntMatrix const &a, IntMatrix const &b);

/// Z^ambient / span(relations) in canonical form.
FGAbGroup quotient_group(std::size_t ambient, IntMatrix const &relations);

// --- presented groups and homomorphisms -----------------------------------

/// Z^generators / span(relations). Canonical coordinates are computed once.
class PresentedGroup
{
 public:
  PresentedGroup() : PresentedGroup(0, IntMatrix(0, 0)) {}
  PresentedGroup(std::size_t generators, IntMatrix relations);

  static PresentedGroup free(std::size_t generators);

  std::size_t generators() const { return generators_; }
  IntMatrix const &relations() const { return relations_; }
  FGAbGroup const &canonical() const { return canonical_; }

  /// Rows map Z^generators onto canonical coordinates: first one row per
  /// torsion factor (reduce modulo the factor), then one row per free summand.
  IntMatrix const &to_canonical() const { return to_canonical_; }
  /// Columns are representatives of the canonical generators.
  IntMatrix const &from_canonical() const { return from_canonical_; }

  /// Canonical coordinates of x with torsion entries reduced to [0, d).
  std::vector<Integer> coordinates(std::vector<Integer> const &x) const;
  bool is_zero(std::vector<Integer> const &x) const;
  /// Order of the class of x; 0 when infinite.
  Integer order(std::vector<Integer> const &x) const;

  PresentedGroup direct_sum(PresentedGroup const &other) const;

 private:
  std::size_t generators_ = 0;
  IntMatrix relations_;
  FGAbGroup canonical_;
  IntMatrix to_canonical_;
  IntMatrix from_canonical_;
};

/// Homomorphism between presented groups given by a matrix on generators.
class AbHom
{
 public:
  /// Throws InvalidInput unless matrix * relations(source) lies in the
  /// relation lattice of the target.
  AbHom(PresentedGroup source, PresentedGroup target, IntMatrix matrix);

  PresentedGroup const &source() const { return source_; }
  PresentedGroup const &target() const { return target_; }
  IntMatrix const &matrix() const { return matrix_; }

  /// Basis of {x in Z^source : matrix x in relations(target)}.
  IntMatrix kernel_lattice() const;
  FGAbGroup kernel() const;
  FGAbGroup image() const;
  FGAbGroup cokernel() const;

  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const { return is_injective() && is_surjective(); }

  /// Matrix in canonical coordinates (torsion rows reduced modulo their factor).
  IntMatrix canonical_matrix() const;

  /// this followed by `next`.
  AbHom then(AbHom const &next) const;

 private:
  PresentedGroup source_;
  PresentedGroup target_;
  IntMatrix matrix_;
};

/// ker(kernel_of) / im(image_of) for endomorphism-like matrices on one free
/// module. The presented group is written in coordinates of kernel_basis.
struct Subquotient
{
  IntMatrix kernel_basis;   ///< n x k
  IntMatrix coordinate_map; ///< k x n, left inverse of kernel_basis on the kernel
  PresentedGroup group;

  /// Kernel coordinates of a module vector, which must lie in the kernel.
  std::vector<Integer> coordinates(std::vector<Integer> const &v) const;
};

/// Throws VerificationFailure if im(image_of) is not inside ker(kernel_of).
Subquotient subquotient(IntMatrix const &kernel_of, IntMatrix const &image_of);

/// Map on subquotients induced by a module map sending ker into ker and im into im.
AbHom induced_map(Subquotient const &from, Subquotient const &to, IntMatrix const &module_map);

// --- direct systems -------------------------------------------------------

/// Rank-one limit Z -> Z -> ... with multipliers k_1, k_2, ...
struct Localization
{
  std::vector<Integer> multipliers;
  std::vector<Integer> primes; ///< primes dividing some multiplier, ascending
  std::size_t period = 0;      ///< smallest period of the multiplier sequence seen twice; 0 if none

  /// "Z[1/6]" style name; "Z" when no prime occurs.
  std::string descriptor() const;
  /// Descriptor plus multiplier pattern, e.g. "Z[1/6]-type, multipliers (2,3)-periodic".
  std::string describe() const;

  bool operator==(Localization const &other) const = default;
};

enum class LimitKind
{
  stabilized,
  localization,
  undetermined
};

std::string to_string(LimitKind kind);

struct LimitDescriptor
{
  LimitKind kind = LimitKind::undetermined;
  FGAbGroup group;                          ///< stabilized value
  int level = 0;                            ///< stabilization level, or last level when undetermined
  std::optional<Localization> localization; ///< set iff kind == localization
};

/// G_first -> G_{first+1} -> ... with maps[k] : stages[k] -> stages[k+1].
class DirectSystem
{
 public:
  DirectSystem(std::vector<AbHom> maps, int first_level = 1);

  std::size_t stages() const { return maps_.size() + 1; }
  int first_level() const { return first_level_; }
  std::vector<AbHom> const &maps() const { return maps_; }
  PresentedGroup const &stage(std::size_t k) const;

  DirectSystem drop_prefix(std::size_t count) const;

 private:
  std::vector<AbHom> maps_;
  int first_level_;
};

/// Replaces each stage by its image in the next one. Same limit, one stage fewer,
/// and no classes that die later.
DirectSystem image_system(DirectSystem const &system);

/// Needs at least three stages.
LimitDescriptor limit(DirectSystem const &system);

} // namespace dihedral
