#pragma once

#include "coxfano/coxring.hpp"
#include "coxfano/rational.hpp"
#include "coxfano/strata.hpp"

#include <optional>
#include <vector>

namespace coxfano {

struct VarietyInvariants {
    Int picard_index = 1;
    GroupElem anticanonical;
    Rational degree;          // d_X = (-K_X)^d
    Int gorenstein_index = 1;
    Int torsion_order = 1;    // |Cl(X)^t|
    std::vector<Int> local_group_orders; // one per minimal support

    bool operator==(const VarietyInvariants&) const = default;
};

/// Cl(X, x) = K / <W_s> for the point class of a minimal support.
AbGroup local_class_group(const RingData& data, const Support& s);

/// lcm over minimal supports of gcd(w^0; w in W_s), times |K^t|.
Int picard_index(const RingData& data);

/// [K : intersection of <W_s>], by subgroup intersection; nullopt if infinite.
std::optional<Int> picard_index_by_intersection(const RingData& data);

/// (sum w^0 + sum u^0 - (r-1) gamma^0)^d * (gamma^0)^(r-1) / (prod w^0 prod u^0 |K^t|).
Rational self_intersection(const RingData& data, int d);

/// Least iota with iota * K_X in every <W_s>.
Int gorenstein_index(const RingData& data);

/// gcd(ell_i, ell_j) divides |K^t| for all i != j.
bool ell_divisibility_check(const RingData& data);

VarietyInvariants compute_all(const RingData& data);

} // namespace coxfano
