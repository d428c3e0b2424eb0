#pragma once

// Graded trinomial rings R(A, n, L, m).
//
// Variables T_ij (block i, position j) come first in block order, followed by
// the free variables S_1, ..., S_m.  Coefficients are never stored: they are
// normalized to a_0 = (1,0), a_1 = (0,1), a_2 = (1,1), a_i = (1, lambda_i), and
// only the number of continuous parameters max(r - 2, 0) is kept.
//
// Toric data (a polynomial Cox ring) are encoded with no blocks at all, r = 0
// and m = d + 1 free variables.

#include "coxfano/intlin.hpp"

#include <compare>
#include <string>
#include <vector>

namespace coxfano {

struct BlockData {
    std::vector<Int> exponents; // l_i1, ..., l_in_i

    std::size_t size() const { return exponents.size(); }
    /// gcd of the exponents.
    Int ell() const;

    auto operator<=>(const BlockData&) const = default;
};

struct Grading {
    AbGroup group;                      // K = Z + K^t
    std::vector<GroupElem> weights;     // w_ij, flattened in block order
    std::vector<GroupElem> free_weights; // u_k

    auto operator<=>(const Grading&) const = default;
};

struct RingData {
    int r = 0;
    std::vector<BlockData> blocks;
    int m = 0;
    Grading grading;
    int moduli_count = 0;

    /// Builds a datum, deriving r and moduli_count from the blocks.
    static RingData make(std::vector<BlockData> blocks, int m, AbGroup group,
                         std::vector<GroupElem> weights, std::vector<GroupElem> free_weights);
    /// Toric datum: no blocks, free variables only.
    static RingData toric(AbGroup group, std::vector<GroupElem> free_weights);

    std::size_t n() const;               // number of T variables
    std::size_t generator_count() const { return n() + static_cast<std::size_t>(m); }
    std::size_t offset(std::size_t block) const; // flat index of T_{block,1}
    const GroupElem& weight(std::size_t block, std::size_t j) const;
    /// Degrees of all generators: T variables in block order, then S variables.
    std::vector<GroupElem> degrees() const;
    const AbGroup& group() const { return grading.group; }

    auto operator<=>(const RingData&) const = default;
};

struct Violation {
    std::string check;
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
};

/// Checks, in order: structure, positivity, homogeneity, almost-freeness,
/// factoriality, non-redundancy, Picard number one.  Never throws on bad data.
ValidationReport validate(const RingData& data);

/// Rows e(l_i) - e(l_0), i = 1..r, spanning the lattice of relation degrees
/// in Z^(n+m).
std::vector<std::vector<Int>> relation_lattice(const RingData& data);

/// Whether the grading is factorial: the torsion of Z^(n+m) / Lambda maps
/// injectively to K, i.e. the kernel of the degree map is Lambda plus
/// n + m - 1 - r further vectors.  Assumes homogeneity; true for r < 2.
bool factorially_graded(const RingData& data);

bool is_toric(const RingData& data);

/// gamma = sum_j l_0j w_0j, the common degree of every relation (r >= 2).
GroupElem relation_degree(const RingData& data);

/// -K_X = sum w_ij + sum u_k - (r - 1) gamma.
GroupElem anticanonical_class(const RingData& data);

/// (r - 1) gamma^0 < sum w_ij^0 + sum u_k^0; vacuous without relations.
bool is_fano(const RingData& data);

int dimension(const RingData& data);

struct CanonicalOptions {
    std::size_t orbit_limit = 1'000'000;
};

/// Minimal representative of the graded-isomorphism orbit: block permutations,
/// permutations inside blocks and of the S variables, and automorphisms
/// (w0, wt) -> (w0, w0 * tau + psi(wt)) of K = Z + K^t.
RingData canonical_form(const RingData& data, const CanonicalOptions& opts = {});

bool equivalent(const RingData& a, const RingData& b, const CanonicalOptions& opts = {});

/// Total order used for canonical forms and output sorting.
bool canonical_less(const RingData& a, const RingData& b);

} // namespace coxfano
