#pragma once

// Level data of the concrete systems fed into the homology machinery, and the
// full homology computation per system.

#include <optional>
#include <string>
#include <vector>

#include "dihedral/errors.hpp"
#include "dihedral/homology.hpp"
#include "dihedral/systems.hpp"

namespace dihedral {

std::vector<FreeProductStage> freeproduct_stages(DenjoyFlipSystem const &system, int first, int last);
/// Same residue cells for both involutions; the common module is the whole level.
std::vector<FreeProductStage> freeproduct_stages(OdometerSystem const &system, int first, int last);

/// Stage T: cells of level T, relations 1_c - phi(1_c) for the cells c of level T - 1.
std::vector<TelescopeStage> telescope_stages(DenjoyFlipSystem const &system, int first, int last);
/// Stage i: residues mod n_i, relations 1 - phi on the same level. Needs last < levels().
std::vector<TelescopeStage> telescope_stages(OdometerSystem const &system, int first, int last);

/// [f] -> [f + f sigma] from the level-N free-product H_0 stage into the
/// level-N telescope image stage.
AbHom denjoy_transfer(DenjoyFlipSystem const &system, int level);

template <class Set> struct WitnessReport
{
  Set k_overlap;   ///< K n sigma(K)
  Set k_uncovered; ///< X \ (K u sigma(K))
  Set l_overlap;   ///< L n phi sigma(L)
  Set l_uncovered; ///< X \ (L u phi sigma(L))
  bool ok = false;
};

/// Checks X = K u sigma(K) and X = L u phi sigma(L), both disjoint.
template <class System>
WitnessReport<typename System::Set> check_witnesses(System const &system, typename System::Set const &K,
                                                    typename System::Set const &L)
{
  WitnessReport<typename System::Set> r;
  auto sk = system.act(GroupElement::sigma(), K);
  auto pl = system.act(GroupElement{1, 1}, L);
  r.k_overlap = system.intersect(K, sk);
  r.k_uncovered = system.difference(system.full(), system.unite(K, sk));
  r.l_overlap = system.intersect(L, pl);
  r.l_uncovered = system.difference(system.full(), system.unite(L, pl));
  r.ok = system.is_empty(r.k_overlap) && system.is_empty(r.k_uncovered) && system.is_empty(r.l_overlap) &&
         system.is_empty(r.l_uncovered);
  return r;
}

enum class Method
{
  comp,
  freeproduct,
  both
};

/// Everything behind one homology table.
struct SystemHomology
{
  std::string system;
  HomologyTable table;
  CompEvidence evidence;
  std::optional<TelescopeResult> telescope;
  std::optional<FreeProductResult> freeproduct;
  std::optional<TransferReport> transfer;
  std::optional<StableCount> sigma_threads;
  std::optional<StableCount> phi_sigma_threads;
  int max_level = 0;
  /// Disagreements between the closed form and the free-product pipeline.
  std::vector<std::string> delta;
};

/// Throws NotStabilized if the telescope or a thread count does not settle,
/// VerificationFailure if a cross-check fails.
SystemHomology analyze(DenjoyFlipSystem const &system, int max_level, Method method);
SystemHomology analyze(OdometerSystem const &system, int max_level, Method method);
/// Case (i) only; H_0(Z, C(Y,Z)) comes from the rotation's telescope and the
/// free-product pipeline is not run.
SystemHomology analyze(DoubledSystem const &system, int max_level, Method method);

} // namespace dihedral
