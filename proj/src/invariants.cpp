#include "coxfano/invariants.hpp"

#include <stdexcept>

namespace coxfano {

namespace {

Int free_gcd(const std::vector<GroupElem>& ws)
{
    Int g = 0;
    for (const auto& w : ws) g = checked::gcd(g, w.free.at(0));
    return g;
}

void require_support(const RingData& data, const Support& s)
{
    for (const auto& [i, j] : s.t_coords)
        if (i >= data.blocks.size() || j >= data.blocks[i].size())
            throw std::out_of_range("support coordinate outside the datum");
    for (std::size_t k : s.s_coords)
        if (k >= static_cast<std::size_t>(data.m)) throw std::out_of_range("support coordinate outside the datum");
}

} // namespace

AbGroup local_class_group(const RingData& data, const Support& s)
{
    require_support(data, s);
    const AbGroup& k = data.group();
    return quotient(k, span(k, weight_set(data, s))).group();
}

Int picard_index(const RingData& data)
{
    Int l = 1;
    for (const auto& s : minimal_supports(data)) l = checked::lcm(l, free_gcd(weight_set(data, s)));
    return checked::mul(l, data.group().torsion_order());
}

std::optional<Int> picard_index_by_intersection(const RingData& data)
{
    const AbGroup& k = data.group();
    std::vector<Subgroup> subs;
    for (const auto& s : minimal_supports(data)) subs.push_back(span(k, weight_set(data, s)));
    return intersection_index(k, subs);
}

Rational self_intersection(const RingData& data, int d)
{
    if (d < 0) throw std::invalid_argument("negative dimension");
    Int sum = 0;
    Int prod = 1;
    for (const auto& g : data.degrees()) {
        sum = checked::add(sum, g.free.at(0));
        prod = checked::mul(prod, g.free.at(0));
    }
    Rational gamma_part(1);
    if (data.r >= 2) {
        const Int gamma = relation_degree(data).free.at(0);
        sum = checked::sub(sum, checked::mul(data.r - 1, gamma));
        gamma_part = Rational(checked::pow(gamma, static_cast<unsigned>(data.r - 1)));
    }
    Rational value(checked::pow(sum, static_cast<unsigned>(d)));
    value = value * gamma_part;
    return value / Rational(checked::mul(prod, data.group().torsion_order()));
}

Int gorenstein_index(const RingData& data)
{
    const AbGroup& k = data.group();
    const GroupElem canonical = k.neg(anticanonical_class(data));
    Int iota = 1;
    for (const auto& s : minimal_supports(data)) {
        const auto order = order_in_quotient(k, span(k, weight_set(data, s)), canonical);
        if (!order) throw std::domain_error("local class group is infinite");
        iota = checked::lcm(iota, *order);
    }
    return iota;
}

bool ell_divisibility_check(const RingData& data)
{
    const Int t = data.group().torsion_order();
    for (std::size_t i = 0; i < data.blocks.size(); ++i)
        for (std::size_t j = i + 1; j < data.blocks.size(); ++j)
            if (t % checked::gcd(data.blocks[i].ell(), data.blocks[j].ell()) != 0) return false;
    return true;
}

VarietyInvariants compute_all(const RingData& data)
{
    VarietyInvariants inv;
    inv.picard_index = picard_index(data);
    inv.anticanonical = anticanonical_class(data);
    inv.degree = self_intersection(data, dimension(data));
    inv.gorenstein_index = gorenstein_index(data);
    inv.torsion_order = data.group().torsion_order();
    for (const auto& s : minimal_supports(data)) {
        const AbGroup local = local_class_group(data, s);
        if (!local.is_finite()) throw std::domain_error("local class group is infinite");
        inv.local_group_orders.push_back(local.torsion_order());
    }
    return inv;
}

} // namespace coxfano
