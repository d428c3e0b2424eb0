#pragma once

#include "coxfano/bounds.hpp"
#include "coxfano/coxring.hpp"
#include "coxfano/invariants.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coxfano {

class ResourceLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class TorsionFilter { Any, NontrivialOnly, TrivialOnly };

std::string to_string(TorsionFilter f);
TorsionFilter torsion_filter_from_string(const std::string& s); // any | nontrivial | trivial

struct ClassifyOptions {
    int dimension = 2;
    Int picard_index = 1;
    TorsionFilter torsion_filter = TorsionFilter::Any;
    bool include_toric = false;
    bool require_fano = true;
    bool separated_only = false;

    unsigned jobs = 1;
    std::uint64_t candidate_limit = 100'000'000;
    BoundsConfig bounds;
    CanonicalOptions canonical;

    void check() const; // throws std::invalid_argument
};

struct ClassifiedVariety {
    RingData data; // canonical form
    VarietyInvariants invariants;
    CaseTag case_tag = CaseTag::II;
    int moduli_count = 0;

    bool operator==(const ClassifiedVariety&) const = default;
};

struct ClassifyResult {
    std::vector<ClassifiedVariety> varieties; // non-toric, canonically sorted
    std::vector<ClassifiedVariety> toric;     // only with include_toric
    std::vector<std::string> warnings;
    std::uint64_t candidates = 0;             // visited candidates
};

/// Abelian groups of order t for every t | mu, by order and then invariant factors.
std::vector<AbGroup> enumerate_torsion_groups(Int mu);

/// Abelian groups of order exactly t, as invariant-factor chains.
std::vector<AbGroup> abelian_groups_of_order(Int t);

/// One block of a free datum: exponents and free weight parts, with the
/// (l, w) pairs in nondecreasing order.
struct BlockSolution {
    std::vector<Int> l;
    std::vector<Int> w;

    auto operator<=>(const BlockSolution&) const = default;
};

/// For each block size, all solutions of sum_j l_j w_j = gamma within the
/// bounds (multi-variable or singleton limits), excluding the linear
/// singleton l = 1.
std::vector<std::vector<BlockSolution>> free_solutions(Int gamma, const std::vector<std::size_t>& block_sizes,
                                                       const SearchBounds& bounds, int r);

/// All torsion parts for the degrees of a datum graded by Z, making the
/// relations homogeneous and the grading almost free in Z + K_t.
std::vector<Grading> torsion_gradings(const RingData& free_datum, const AbGroup& k_t);

ClassifyResult classify(const ClassifyOptions& opts);

/// Data with n_i = 1 for all i, without the Fano condition.
ClassifyResult classify_separated(int d, Int mu, const ClassifyOptions& base = {});

struct TypeCount {
    std::size_t types = 0;
    std::size_t toric = 0; // upper estimate, see ClassifyResult::warnings
};

TypeCount count_types(int d, Int mu, const ClassifyOptions& base = {});

} // namespace coxfano
