#pragma once

// Brute-force references shared by the unit tests and the acceptance binary.
// Nothing here calls the Smith/Hermite machinery.

#include "coxfano/coxring.hpp"
#include "coxfano/strata.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using coxfano::AbGroup;
using coxfano::GroupElem;
using coxfano::Int;

/// Every invariant-factor chain t_1 | ... | t_q with product `order`.
inline std::vector<std::vector<Int>> chains(Int order)
{
    std::vector<std::vector<Int>> out;
    std::function<void(Int, Int, std::vector<Int>)> rec = [&](Int left, Int last, std::vector<Int> cur) {
        if (left == 1) {
            std::reverse(cur.begin(), cur.end());
            out.push_back(cur);
            return;
        }
        // build from the largest factor down: each new factor divides the previous one
        for (Int t = 2; t <= left; ++t) {
            if (left % t != 0) continue;
            if (last != 0 && last % t != 0) continue;
            auto next = cur;
            next.push_back(t);
            rec(left / t, t, next);
        }
    };
    rec(order, 0, {});
    std::sort(out.begin(), out.end());
    return out;
}

/// Elements of a finite group.
inline std::vector<GroupElem> elements(const AbGroup& g)
{
    std::vector<GroupElem> out;
    std::vector<Int> cur(g.torsion.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == cur.size()) {
            out.push_back(GroupElem{{}, cur});
            return;
        }
        for (Int v = 0; v < g.torsion[i]; ++v) {
            cur[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

inline GroupElem add(const AbGroup& g, const GroupElem& a, const GroupElem& b)
{
    GroupElem c = a;
    for (std::size_t i = 0; i < c.free.size(); ++i) c.free[i] += b.free[i];
    for (std::size_t i = 0; i < c.tors.size(); ++i) c.tors[i] = (c.tors[i] + b.tors[i]) % g.torsion[i];
    return c;
}

inline GroupElem scale(const AbGroup& g, Int k, const GroupElem& a)
{
    GroupElem c = a;
    for (auto& f : c.free) f *= k;
    for (std::size_t i = 0; i < c.tors.size(); ++i) c.tors[i] = ((c.tors[i] * k) % g.torsion[i] + g.torsion[i]) % g.torsion[i];
    return c;
}

/// Subgroup of a finite group generated by gens, by closure.
inline std::set<GroupElem> closure(const AbGroup& g, const std::vector<GroupElem>& gens)
{
    std::set<GroupElem> seen = {g.zero()};
    std::vector<GroupElem> frontier = {g.zero()};
    while (!frontier.empty()) {
        std::vector<GroupElem> next;
        for (const auto& x : frontier)
            for (const auto& s : gens) {
                auto y = add(g, x, s);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return seen;
}

/// Least k >= 1 with k*x in h.
inline Int order_mod(const AbGroup& g, const std::set<GroupElem>& h, const GroupElem& x)
{
    GroupElem y = x;
    for (Int k = 1;; ++k) {
        if (h.count(y)) return k;
        y = add(g, y, x);
    }
}

/// Number of elements of each order in G/H, computed on cosets.
inline std::map<Int, Int> coset_order_profile(const AbGroup& g, const std::set<GroupElem>& h)
{
    std::map<Int, Int> profile;
    std::set<GroupElem> done;
    for (const auto& x : elements(g)) {
        if (done.count(x)) continue;
        for (const auto& y : h) done.insert(add(g, x, y));
        ++profile[order_mod(g, h, x)];
    }
    return profile;
}

/// Number of elements of each order in a finite group.
inline std::map<Int, Int> order_profile(const AbGroup& g)
{
    return coset_order_profile(g, {g.zero()});
}

/// Number of automorphisms, by testing all generator images.
inline Int automorphism_count(const AbGroup& g)
{
    const auto elems = elements(g);
    const std::size_t q = g.torsion.size();
    Int count = 0;
    std::vector<GroupElem> imgs(q);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == q) {
            std::set<GroupElem> image;
            for (const auto& x : elems) {
                GroupElem y = g.zero();
                for (std::size_t k = 0; k < q; ++k) y = add(g, y, scale(g, x.tors[k], imgs[k]));
                image.insert(y);
            }
            if (image.size() == elems.size()) ++count;
            return;
        }
        for (const auto& c : elems) {
            if (!(scale(g, g.torsion[i], c) == g.zero())) continue; // t_i * image must vanish
            imgs[i] = c;
            rec(i + 1);
        }
    };
    rec(0);
    return count;
}

/// A subgroup H of K = Z + K^t containing (m, 0), stored as its image in
/// Z/m + K^t, found by closure.
struct RankOneSubgroup {
    Int m = 1;
    std::vector<Int> mods;
    std::set<std::vector<Int>> image;

    std::vector<Int> reduce(const GroupElem& x) const
    {
        std::vector<Int> y = {((x.free.at(0) % m) + m) % m};
        for (std::size_t i = 0; i < x.tors.size(); ++i) y.push_back(((x.tors[i] % mods[i + 1]) + mods[i + 1]) % mods[i + 1]);
        return y;
    }
    bool contains(const GroupElem& x) const { return image.count(reduce(x)) > 0; }
};

/// <ws> with a chosen multiple m of gcd(free parts) * |K^t|; nullopt when all
/// free parts vanish.
inline std::optional<RankOneSubgroup> rank_one_span(const AbGroup& k, const std::vector<GroupElem>& ws, Int multiple = 1)
{
    Int tors = 1;
    for (Int t : k.torsion) tors *= t;
    Int g = 0;
    for (const auto& w : ws) g = std::gcd(g, w.free.at(0));
    if (g == 0) return std::nullopt;
    RankOneSubgroup h;
    h.m = std::lcm(g * tors, multiple);
    h.mods = {h.m};
    for (Int t : k.torsion) h.mods.push_back(t);
    std::vector<Int> zero(h.mods.size(), 0);
    h.image.insert(zero);
    std::vector<std::vector<Int>> frontier = {zero};
    while (!frontier.empty()) {
        std::vector<std::vector<Int>> next;
        for (const auto& x : frontier)
            for (const auto& w : ws) {
                std::vector<Int> y = h.reduce(w);
                for (std::size_t i = 0; i < y.size(); ++i) y[i] = (y[i] + x[i]) % h.mods[i];
                if (h.image.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return h;
}

/// [K : intersection of <W_s>] for K = Z + K^t, counted inside a common
/// finite quotient K / (M Z + 0).
inline std::optional<Int> intersection_index(const AbGroup& k, const std::vector<std::vector<GroupElem>>& sets)
{
    Int tors = 1;
    for (Int t : k.torsion) tors *= t;
    Int m = 1;
    for (const auto& ws : sets) {
        Int g = 0;
        for (const auto& w : ws) g = std::gcd(g, w.free.at(0));
        if (g == 0) return std::nullopt;
        m = std::lcm(m, g * tors);
    }
    if (sets.empty()) return 1;
    std::set<std::vector<Int>> common;
    bool first = true;
    for (const auto& ws : sets) {
        auto s = rank_one_span(k, ws, m)->image;
        if (first) {
            common = std::move(s);
            first = false;
        } else {
            std::set<std::vector<Int>> both;
            std::set_intersection(common.begin(), common.end(), s.begin(), s.end(), std::inserter(both, both.begin()));
            common = std::move(both);
        }
    }
    return m * tors / static_cast<Int>(common.size());
}

/// Realizable vanishing patterns of z_0..z_r on the plane
/// z_i = <a_i^perp, v>, with a_0 = (1,0), a_1 = (0,1), a_i = (1, i-1) otherwise,
/// found by sampling v on an integer grid.  Flags are "nonzero".
inline std::set<std::vector<bool>> sampled_patterns(int r)
{
    std::vector<std::pair<Int, Int>> a = {{1, 0}, {0, 1}};
    for (int i = 2; i <= r; ++i) a.push_back({1, i - 1});
    std::set<std::vector<bool>> out;
    out.insert(std::vector<bool>(static_cast<std::size_t>(r + 1), false)); // v = 0
    for (Int x = -8; x <= 8; ++x)
        for (Int y = -8; y <= 8; ++y) {
            if (x == 0 && y == 0) continue;
            std::vector<bool> p;
            for (const auto& [p1, p2] : a) p.push_back(p1 * y - p2 * x != 0);
            out.insert(p);
        }
    return out;
}

} // namespace oracle
