#pragma once

// The transversal Følner sets F_m of the infinite dihedral group and
// odometer castles built from them.

#include <cstdint>
#include <span>
#include <vector>

#include "dihedral/castle.hpp"
#include "dihedral/systems.hpp"

namespace dihedral {

/// F_m = {(k,1) : -floor(m/2) <= k <= -1} u {(k,0) : 0 <= k < ceil(m/2)}, flip part first.
std::vector<GroupElement> folner(std::int64_t m);

/// True iff the first coordinates of F hit every residue mod m exactly once.
bool is_transversal(std::span<GroupElement const> F, std::int64_t m);

/// |KF Δ F| / |F|
Rational folner_ratio(std::span<GroupElement const> F, std::span<GroupElement const> K);

/// C(K) with |K F_m Δ F_m| <= C(K) for every m. Each g = (j, t) moves F_m by at
/// most 4|j| + 6 elements, so half of that bounds |gF \ F|.
Integer folner_boundary_constant(std::span<GroupElement const> K);

/// Smallest N such that F_m is (K, eps)-invariant for every m >= N: exact
/// ratios up to C(K)/eps, the boundary constant beyond.
std::int64_t min_invariant_index(std::span<GroupElement const> K, Rational const &eps);

/// Single tower: base {x = 0 mod n_n} at level j, shape F_{n_n}.
Castle<OdometerSet> odometer_castle(OdometerSystem const &system, int n, int j);

} // namespace dihedral
