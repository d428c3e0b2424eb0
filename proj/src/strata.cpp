#include "coxfano/strata.hpp"

#include <algorithm>
#include <stdexcept>

namespace coxfano {

namespace {

using Mask = std::uint64_t;

struct Layout {
    std::vector<Mask> block_masks;
    std::size_t n = 0;
    std::size_t total = 0;
};

Layout layout_of(const RingData& data)
{
    Layout lay;
    std::size_t flat = 0;
    for (const auto& b : data.blocks) {
        Mask mask = 0;
        for (std::size_t j = 0; j < b.size(); ++j) mask |= Mask{1} << flat++;
        lay.block_masks.push_back(mask);
    }
    lay.n = flat;
    lay.total = flat + static_cast<std::size_t>(data.m);
    if (lay.total > 64) throw std::invalid_argument("too many generators for support computations");
    return lay;
}

Support to_support(const RingData& data, const Layout& lay, Mask mask)
{
    Support s;
    std::size_t flat = 0;
    for (std::size_t i = 0; i < data.blocks.size(); ++i)
        for (std::size_t j = 0; j < data.blocks[i].size(); ++j, ++flat)
            if (mask >> flat & 1) s.t_coords.emplace_back(i, j);
    for (std::size_t k = 0; k < static_cast<std::size_t>(data.m); ++k)
        if (mask >> (lay.n + k) & 1) s.s_coords.push_back(k);
    return s;
}

MonomialPattern pattern_of(const Layout& lay, Mask mask)
{
    MonomialPattern p;
    for (Mask b : lay.block_masks) p.nonzero.push_back((mask & b) == b);
    return p;
}

// flat indices, for ordering
std::vector<std::size_t> flat_indices(Mask mask)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < 64; ++i)
        if (mask >> i & 1) idx.push_back(i);
    return idx;
}

std::vector<Support> minimal_of(const RingData& data, const Layout& lay, std::vector<Mask> cands)
{
    std::sort(cands.begin(), cands.end(), [](Mask a, Mask b) {
        const int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
        if (pa != pb) return pa < pb;
        return flat_indices(a) < flat_indices(b);
    });
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::vector<Mask> kept;
    for (Mask c : cands) {
        const bool dominated = std::any_of(kept.begin(), kept.end(), [c](Mask k) { return (k & c) == k; });
        if (!dominated) kept.push_back(c);
    }
    std::vector<Support> out;
    for (Mask k : kept) out.push_back(to_support(data, lay, k));
    return out;
}

} // namespace

bool is_admissible(const MonomialPattern& pattern)
{
    const std::size_t len = pattern.nonzero.size();
    if (len <= 2) return true; // no relations
    const auto zeros = static_cast<std::size_t>(std::count(pattern.nonzero.begin(), pattern.nonzero.end(), false));
    return zeros <= 1 || zeros == len;
}

std::vector<MonomialPattern> admissible_patterns(int r)
{
    if (r < 2) throw std::domain_error("patterns are defined for r >= 2");
    if (r > 30) throw std::invalid_argument("r too large for pattern enumeration");
    const std::size_t len = static_cast<std::size_t>(r) + 1;
    std::vector<MonomialPattern> out;
    for (Mask v = 0; v < (Mask{1} << len); ++v) {
        MonomialPattern p;
        for (std::size_t i = 0; i < len; ++i) p.nonzero.push_back((v >> (len - 1 - i)) & 1);
        if (is_admissible(p)) out.push_back(std::move(p));
    }
    return out;
}

MonomialPattern induced_pattern(const RingData& data, const Support& s)
{
    const Layout lay = layout_of(data);
    Mask mask = 0;
    for (const auto& [i, j] : s.t_coords) mask |= Mask{1} << (data.offset(i) + j);
    return pattern_of(lay, mask);
}

std::vector<Support> minimal_supports(const RingData& data)
{
    const Layout lay = layout_of(data);
    std::vector<Mask> cands;
    if (data.r <= 1 || data.blocks.empty()) {
        for (std::size_t i = 0; i < lay.total; ++i) cands.push_back(Mask{1} << i);
        return minimal_of(data, lay, std::move(cands));
    }
    // admissible patterns: every monomial nonzero, exactly one vanishing, or all vanishing
    Mask all = 0;
    for (Mask b : lay.block_masks) all |= b;
    cands.push_back(all);
    for (Mask b : lay.block_masks) cands.push_back(all & ~b);
    // every monomial vanishes: a single nonzero coordinate suffices, as long
    // as it does not make its own monomial nonzero
    for (std::size_t i = 0; i < data.blocks.size(); ++i)
        if (data.blocks[i].size() >= 2)
            for (std::size_t j = 0; j < data.blocks[i].size(); ++j) cands.push_back(Mask{1} << (data.offset(i) + j));
    for (std::size_t k = 0; k < static_cast<std::size_t>(data.m); ++k) cands.push_back(Mask{1} << (lay.n + k));
    return minimal_of(data, lay, std::move(cands));
}

std::vector<Support> brute_force_supports(const RingData& data)
{
    const Layout lay = layout_of(data);
    if (lay.total > 20) throw LimitExceeded("brute-force support scan limited to 20 coordinates");
    std::vector<Mask> cands;
    for (Mask mask = 1; mask < (Mask{1} << lay.total); ++mask)
        if (is_admissible(pattern_of(lay, mask))) cands.push_back(mask);
    return minimal_of(data, lay, std::move(cands));
}

std::vector<GroupElem> weight_set(const RingData& data, const Support& s)
{
    if (s.size() == 0) throw std::invalid_argument("empty support");
    std::vector<GroupElem> out;
    for (const auto& [i, j] : s.t_coords) out.push_back(data.weight(i, j));
    for (std::size_t k : s.s_coords) out.push_back(data.grading.free_weights.at(k));
    return out;
}

} // namespace coxfano
