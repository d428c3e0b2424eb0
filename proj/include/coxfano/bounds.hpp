#pragma once

// Effective bounds on the discrete data of a Fano datum with fixed dimension d
// and Picard index mu.  Strict inequalities are stored as inclusive maxima.

#include "coxfano/coxring.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace coxfano {

enum class CaseTag { I, II, III, IV, V };

std::string to_string(CaseTag tag);
CaseTag case_tag_from_string(const std::string& s);

/// Case of a datum, read off the block sizes sorted in descending order:
/// I: r <= 1; II: n_0 = 1; III: n_0 > n_1 = 1; IV: n_1 > n_2 = 1; V: n_2 > 1.
CaseTag case_of(const RingData& data);

struct BoundsConfig {
    /// Count primes p <= x instead of p < x in the r-bounds.
    bool inclusive_prime_count = false;
};

struct SearchBounds {
    CaseTag case_tag = CaseTag::II;
    int d = 1;
    Int mu = 1;

    int min_r = 2;
    int max_r = 2;
    int min_multi = 0;  // blocks with n_i >= 2
    int max_multi = 0;

    Int max_u = 1;
    Int max_torsion_order = 1;

    Int max_gamma = 1;        // case II: value at r = max_r, see gamma_limit
    Int max_w_multi = 1;      // weights inside blocks with n_i >= 2
    Int max_l_multi = 1;
    Int max_w_single = 1;     // weights of singleton blocks
    Int max_l_single = 1;
    Int max_w_first_single = 1;  // singleton with the largest exponent
    Int max_w_second_single = 1; // singleton with the second largest exponent
    bool exponents_divide_mu = false;

    Int gamma_limit(int r) const;
    Int single_weight_limit(int r) const;
};

/// #{p prime : p < x}, or p <= x when inclusive.
int prime_count_below(Int x, bool inclusive = false);

SearchBounds search_bounds(int d, Int mu, CaseTag tag, const BoundsConfig& cfg = {});

/// Whether the datum meets every bound of its case for (d, mu).
bool check_bounds(const RingData& data, int d, Int mu, const BoundsConfig& cfg = {});

enum class LemmaShape { StrictI, EqualI, II };

struct LemmaBounds {
    bool strict = true; // values are strict upper bounds (otherwise inclusive)
    Int w11 = 0;        // unused (0) for shape II
    Int w21 = 0;
    Int l11 = 0;        // EqualI only
    Int l21 = 0;
    Int degree = 0;
};

/// Bounds for a single relation with three monomials.
LemmaBounds lemma_one_relation_bounds(LemmaShape shape, int d, Int mu);

/// mu^(mu^2 + 3mu + xi(mu)^2 + xi(6d mu) + 5d) * (6d mu)^(2mu + 2 xi(6d mu) + 3d - 2).
mpz_class count_upper_bound(int d, Int mu);

/// mu^(d^2), the bound for fake weighted projective spaces.
mpz_class toric_count_bound(int d, Int mu);

} // namespace coxfano
