#pragma once

// Homology of Z/2 and of the infinite dihedral group with coefficients in
// modules of locally constant integer functions.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dihedral/abgroups.hpp"
#include "dihedral/matrix.hpp"
#include "dihedral/systems.hpp"

namespace dihedral {

/// Z^n with an order-two automorphism A.
class InvolutionModule
{
 public:
  InvolutionModule() = default;
  /// Throws InvalidInput unless A is square with A^2 = I.
  explicit InvolutionModule(IntMatrix A);

  static InvolutionModule from_permutation(CellPermutation const &p) { return InvolutionModule(p.matrix()); }

  std::size_t size() const { return A_.rows(); }
  IntMatrix const &action() const { return A_; }
  bool is_permutation() const;
  std::size_t fixed_cells() const; ///< for permutation modules

 private:
  IntMatrix A_;
};

/// ker(A - I) / im(A + I)
FGAbGroup h_odd(InvolutionModule const &m);
/// ker(A + I) / im(A - I)
FGAbGroup h_even(InvolutionModule const &m);
/// coker(A - I)
FGAbGroup coinvariants(InvolutionModule const &m);

/// For permutation modules: f -> f + fA is injective on coinvariants and its
/// image is {g : gA = g, g even on fixed cells}.
bool psi_check(InvolutionModule const &m);

/// H_n(Z/2, M) from the unnormalized bar complex. Needs n <= 6 and at most 8 cells.
FGAbGroup bar_oracle(InvolutionModule const &m, int n);
/// All degrees 0 .. max_degree at once, sharing the boundary matrices.
std::vector<FGAbGroup> bar_oracle_all(InvolutionModule const &m, int max_degree);

/// Random involution on 1 .. max_cells cells: a permutation involution, with
/// random signs on its orbits when signed is set.
InvolutionModule random_involution(std::mt19937_64 &rng, std::size_t max_cells, bool signed_entries);

struct OracleReport
{
  std::size_t modules = 0;
  std::size_t comparisons = 0;
  std::vector<std::string> mismatches;
};

/// bar_oracle against coinvariants, h_odd, h_even, h_odd, ... in degrees
/// 0 .. max_degree on seeded random modules, alternating plain and signed.
OracleReport oracle_check(std::uint64_t seed, std::size_t modules = 100, std::size_t max_cells = 8, int max_degree = 5);

// --- homology values ----------------------------------------------------------

/// A finitely generated group plus, optionally, one rank-one localization summand.
struct HomologyGroup
{
  FGAbGroup group;
  std::optional<Localization> localization;

  HomologyGroup() = default;
  HomologyGroup(FGAbGroup g) : group(std::move(g)) {}
  HomologyGroup(FGAbGroup g, Localization loc) : group(std::move(g)), localization(std::move(loc)) {}

  HomologyGroup direct_sum(HomologyGroup const &other) const;
  bool same_type(HomologyGroup const &other) const; ///< compares localizations by prime set only
  std::string to_string() const;
};

enum class CompCase
{
  splitting = 1,    ///< phi not minimal, X = Y u sigma(Y)
  free_minimal = 2, ///< phi minimal, action free
  fixed_points = 3  ///< some sigma or phi-sigma fixed point
};

struct HomologyTable
{
  std::vector<HomologyGroup> degrees; ///< H_0 .. H_5
  HomologyGroup tail_odd;
  HomologyGroup tail_even;
  int tail_from = 2;
  CompCase which = CompCase::fixed_points;

  HomologyGroup const &at(std::size_t n) const;
};

struct CompEvidence
{
  bool phi_minimal = true;
  bool splitting = false;          ///< verified X = Y u sigma(Y), phi(Y) = Y
  std::int64_t fix_sigma = 0;      ///< points or threads
  std::int64_t fix_phi_sigma = 0;
  HomologyGroup h0_z;              ///< H_0(Z, C(Y,Z)) in the splitting case
  HomologyGroup h0_image;          ///< (1 + sigma_*) H_0(Z, C(X,Z)) otherwise
  std::optional<CompCase> claimed;
};

/// Case analysis with full table. Throws InvalidInput on contradictory evidence.
HomologyTable theorem_comp(CompEvidence const &evidence);
CompCase classify(CompEvidence const &evidence);

// --- free product assembly ------------------------------------------------------

/// One finite stage: sigma acts on one cell set and phi-sigma on a coarser
/// one, which also serves as the common module of the amalgam.
struct FreeProductStage
{
  int level = 0;
  InvolutionModule sigma;
  InvolutionModule phi_sigma;
  IntMatrix common_to_sigma;      ///< sigma cells x phi-sigma cells
  IntMatrix sigma_refinement;     ///< into the next stage's sigma cells
  IntMatrix phi_sigma_refinement; ///< into the next stage's phi-sigma cells
};

struct FreeProductResult
{
  std::vector<PresentedGroup> h0_stages;
  std::vector<PresentedGroup> h1_stages;
  std::vector<bool> injective;     ///< (cor, -cor) injective per stage
  std::vector<bool> middle_exact;  ///< kernel of the sum map equals the image of (cor, -cor)
  LimitDescriptor h0;
  LimitDescriptor h1;
  /// H_n for n >= 2 from the two Z/2 pieces: odd degrees repeat H_1.
  LimitDescriptor higher_odd;
  LimitDescriptor higher_even;
};

/// Z^(sigma cells + phi-sigma cells) modulo both coinvariant relations and the
/// identification of each common cell with its image.
PresentedGroup freeproduct_h0_stage(FreeProductStage const &stage);

/// Needs at least four stages; the last stage's refinements are ignored.
FreeProductResult freeproduct_homology(std::vector<FreeProductStage> const &stages);

// --- H_0(Z, C(X,Z)) telescope -----------------------------------------------------

/// G_T = Z^cells / relations, with the inclusion and sigma into the next stage.
/// The telescope works with the images I_T of Z^cells in G_{T+1}, which have
/// the same direct limit but no classes that die later.
struct TelescopeStage
{
  int level = 0;
  std::size_t cells = 0;
  IntMatrix relations; ///< cells x r
  IntMatrix to_next;   ///< next cells x cells
  IntMatrix sigma;     ///< next cells x cells, the flip followed by inclusion
};

/// I_k presented on the cells of stage k; needs stage k + 1.
PresentedGroup image_stage(TelescopeStage const &stage, TelescopeStage const &next);

struct TelescopeResult
{
  std::vector<PresentedGroup> stages; ///< I_T for all but the last input stage
  LimitDescriptor limit;
  /// sigma_* on the stabilized group in canonical coordinates (torsion-free case).
  std::optional<IntMatrix> sigma_star;
  /// Scalar by which sigma_* acts on a rank-one localization.
  std::optional<Rational> sigma_scalar;
  HomologyGroup h0;
  HomologyGroup image;                  ///< (1 + sigma_*) H_0 as an abstract group
  std::vector<Integer> image_divisors;  ///< invariant factors of the embedding into H_0
};

/// Throws NotStabilized when the limit is undetermined.
TelescopeResult h0_telescope(std::vector<TelescopeStage> const &stages);

/// True iff the given cell vectors form a basis of the torsion-free group.
bool generates(PresentedGroup const &stage, std::vector<std::vector<Integer>> const &vectors);

// --- transfer -----------------------------------------------------------------------

struct TransferReport
{
  FGAbGroup kernel;
  FGAbGroup image;
  bool witness_checked = false;
  Integer witness_order = 0;
  bool witness_generates = false;
};

/// Kernel and image of tr; with a witness vector also its order and whether it
/// generates the kernel.
TransferReport transfer_kernel(AbHom const &tr, std::optional<std::vector<Integer>> witness = std::nullopt);

} // namespace dihedral
