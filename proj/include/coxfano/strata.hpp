#pragma once

// Which coordinates can be simultaneously nonzero on the punctured total
// coordinate space.
//
// Writing z_i for the monomial T_i^{l_i}, the relations g_0, ..., g_{r-2}
// force (z_0, ..., z_r) onto a plane on which any two coordinates are
// independent.  A vanishing pattern of the monomials is therefore realizable
// exactly when none, exactly one, or all of the monomials vanish.

#include "coxfano/coxring.hpp"

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

namespace coxfano {

struct MonomialPattern {
    std::vector<bool> nonzero; // one flag per monomial

    auto operator<=>(const MonomialPattern&) const = default;
};

/// Whether a vanishing pattern of the r + 1 monomials is realizable.
bool is_admissible(const MonomialPattern& pattern);

struct Support {
    std::vector<std::pair<std::size_t, std::size_t>> t_coords; // (block, position), sorted
    std::vector<std::size_t> s_coords;                          // S indices, sorted

    std::size_t size() const { return t_coords.size() + s_coords.size(); }
    auto operator<=>(const Support&) const = default;
};

/// All admissible patterns for r >= 2, in lexicographic order (false < true).
std::vector<MonomialPattern> admissible_patterns(int r);

/// Inclusion-minimal supports, ordered by size and then by coordinates.
/// For data without relations these are the coordinate singletons.
std::vector<Support> minimal_supports(const RingData& data);

/// Independent oracle: scans all 2^(n+m) - 1 coordinate subsets (n + m <= 20).
std::vector<Support> brute_force_supports(const RingData& data);

/// Generator degrees indexed by the support.
std::vector<GroupElem> weight_set(const RingData& data, const Support& s);

/// The monomial pattern a support induces: monomial i is nonzero iff all of
/// block i lies in the support.
MonomialPattern induced_pattern(const RingData& data, const Support& s);

} // namespace coxfano
