#include "coxfano/bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace coxfano {

namespace {

constexpr Int power_cap = Int{1} << 60;

Int prime_term(Int x, const BoundsConfig& cfg) { return prime_count_below(x, cfg.inclusive_prime_count); }

struct SortedBlocks {
    std::vector<std::size_t> multi;  // n_i >= 2, by size descending
    std::vector<std::size_t> single; // n_i = 1, by exponent descending
};

SortedBlocks sort_blocks(const RingData& data)
{
    SortedBlocks s;
    for (std::size_t i = 0; i < data.blocks.size(); ++i)
        (data.blocks[i].size() >= 2 ? s.multi : s.single).push_back(i);
    std::stable_sort(s.multi.begin(), s.multi.end(),
                     [&](std::size_t a, std::size_t b) { return data.blocks[a].size() > data.blocks[b].size(); });
    std::stable_sort(s.single.begin(), s.single.end(), [&](std::size_t a, std::size_t b) {
        return data.blocks[a].exponents[0] > data.blocks[b].exponents[0];
    });
    return s;
}

} // namespace

std::string to_string(CaseTag tag)
{
    switch (tag) {
    case CaseTag::I: return "I";
    case CaseTag::II: return "II";
    case CaseTag::III: return "III";
    case CaseTag::IV: return "IV";
    case CaseTag::V: return "V";
    }
    throw std::invalid_argument("invalid case tag");
}

CaseTag case_tag_from_string(const std::string& s)
{
    for (CaseTag t : {CaseTag::I, CaseTag::II, CaseTag::III, CaseTag::IV, CaseTag::V})
        if (to_string(t) == s) return t;
    throw std::invalid_argument("invalid case tag: " + s);
}

CaseTag case_of(const RingData& data)
{
    if (data.r <= 1) return CaseTag::I;
    std::size_t multi = 0;
    for (const auto& b : data.blocks)
        if (b.size() >= 2) ++multi;
    switch (multi) {
    case 0: return CaseTag::II;
    case 1: return CaseTag::III;
    case 2: return CaseTag::IV;
    default: return CaseTag::V;
    }
}

int prime_count_below(Int x, bool inclusive)
{
    if (x < 1) throw std::invalid_argument("prime_count_below needs x >= 1");
    const Int limit = inclusive ? x : x - 1;
    if (limit < 2) return 0;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    int count = 0;
    for (Int p = 2; p <= limit; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        ++count;
        for (Int q = p * p; q <= limit; q += p) composite[static_cast<std::size_t>(q)] = true;
    }
    return count;
}

Int SearchBounds::gamma_limit(int r) const
{
    if (case_tag == CaseTag::II) return checked::pow_capped(mu, static_cast<unsigned>(r + 1), power_cap);
    return max_gamma;
}

Int SearchBounds::single_weight_limit(int r) const
{
    if (case_tag == CaseTag::II) return checked::pow_capped(mu, static_cast<unsigned>(r), power_cap);
    return max_w_single;
}

SearchBounds search_bounds(int d, Int mu, CaseTag tag, const BoundsConfig& cfg)
{
    if (d < 1 || mu < 1) throw std::invalid_argument("search bounds need d >= 1 and mu >= 1");
    SearchBounds b;
    b.case_tag = tag;
    b.d = d;
    b.mu = mu;
    b.max_u = mu;
    b.max_torsion_order = mu;
    const Int dm = checked::mul(d, mu);
    switch (tag) {
    case CaseTag::I:
        b.min_r = 0;
        b.max_r = 1;
        b.max_multi = 2;
        b.max_w_multi = b.max_w_single = b.max_w_first_single = b.max_w_second_single = mu;
        b.max_gamma = b.max_l_multi = b.max_l_single = 1;
        break;
    case CaseTag::II:
        b.max_r = static_cast<int>(mu + prime_term(mu, cfg) - 1);
        b.max_l_single = mu;
        b.exponents_divide_mu = true;
        b.max_w_multi = b.max_l_multi = 1;
        b.max_gamma = b.gamma_limit(b.max_r);
        b.max_w_single = b.max_w_first_single = b.max_w_second_single = b.single_weight_limit(b.max_r);
        break;
    case CaseTag::III: {
        const Int bound = checked::mul(6, dm);
        b.max_r = static_cast<int>(mu + prime_term(bound, cfg) - 1);
        b.min_multi = b.max_multi = 1;
        b.max_w_multi = mu;
        b.max_l_multi = bound;
        b.max_gamma = bound - 1;
        b.max_w_first_single = checked::mul(2, dm) - 1;
        b.max_w_second_single = checked::mul(3, dm) - 1;
        b.max_w_single = b.max_l_single = bound - 1;
        break;
    }
    case CaseTag::IV: {
        const Int bound = checked::mul(2 * (d + 1), mu);
        b.max_r = static_cast<int>(mu + prime_term(bound, cfg) - 1);
        b.min_multi = b.max_multi = 2;
        b.max_w_multi = mu;
        b.max_l_multi = bound - 1;
        b.max_gamma = bound - 1;
        b.max_w_first_single = checked::mul(d + 1, mu) - 1;
        b.max_w_second_single = b.max_w_single = b.max_l_single = bound - 1;
        break;
    }
    case CaseTag::V: {
        const Int bound = checked::mul(d + 2, mu);
        b.max_r = static_cast<int>(mu + prime_term(bound, cfg) + d - 1);
        b.min_multi = 3;
        b.max_multi = d + 1; // s <= d
        b.max_w_multi = mu;
        b.max_l_multi = bound - 1;
        b.max_gamma = bound - 1;
        b.max_w_first_single = b.max_w_second_single = b.max_w_single = b.max_l_single = bound - 1;
        break;
    }
    default: throw std::invalid_argument("invalid case tag");
    }
    return b;
}

bool check_bounds(const RingData& data, int d, Int mu, const BoundsConfig& cfg)
{
    if (dimension(data) != d) return false;
    if (data.group().torsion_order() > mu) return false;
    for (const auto& u : data.grading.free_weights)
        if (u.free.at(0) > mu) return false;

    const CaseTag tag = case_of(data);
    const SearchBounds b = search_bounds(d, mu, tag, cfg);
    if (tag == CaseTag::I) {
        if (data.generator_count() > static_cast<std::size_t>(d) + 1) return false;
        return std::all_of(data.grading.weights.begin(), data.grading.weights.end(),
                           [&](const GroupElem& w) { return w.free.at(0) <= mu; });
    }
    if (data.r < b.min_r || data.r > b.max_r) return false;

    const SortedBlocks sorted = sort_blocks(data);
    const int multi = static_cast<int>(sorted.multi.size());
    if (multi < b.min_multi || multi > b.max_multi) return false;
    if (relation_degree(data).free.at(0) > b.gamma_limit(data.r)) return false;

    for (std::size_t i : sorted.multi)
        for (std::size_t j = 0; j < data.blocks[i].size(); ++j)
            if (data.weight(i, j).free.at(0) > b.max_w_multi || data.blocks[i].exponents[j] > b.max_l_multi) return false;

    for (std::size_t k = 0; k < sorted.single.size(); ++k) {
        const std::size_t i = sorted.single[k];
        const Int l = data.blocks[i].exponents[0];
        const Int w = data.weight(i, 0).free.at(0);
        Int w_limit = b.single_weight_limit(data.r);
        if (k == 0) w_limit = std::min(w_limit, b.max_w_first_single);
        if (k == 1) w_limit = std::min(w_limit, b.max_w_second_single);
        if (w > w_limit || l > b.max_l_single) return false;
        if (b.exponents_divide_mu && mu % l != 0) return false;
    }
    return true;
}

LemmaBounds lemma_one_relation_bounds(LemmaShape shape, int d, Int mu)
{
    if (d < 1 || mu < 1) throw std::invalid_argument("lemma bounds need d >= 1 and mu >= 1");
    LemmaBounds lb;
    const Int dm = checked::mul(d, mu);
    switch (shape) {
    case LemmaShape::StrictI:
        lb.w11 = checked::mul(2, dm);
        lb.w21 = checked::mul(3, dm);
        lb.l21 = lb.degree = checked::mul(6, dm);
        break;
    case LemmaShape::EqualI:
        lb.strict = false;
        lb.l11 = lb.w11 = lb.l21 = lb.w21 = lb.degree = mu;
        break;
    case LemmaShape::II:
        lb.w21 = checked::mul(d + 1, mu);
        lb.degree = checked::mul(2 * (d + 1), mu);
        break;
    default: throw std::invalid_argument("invalid lemma shape");
    }
    return lb;
}

mpz_class count_upper_bound(int d, Int mu)
{
    if (d < 1 || mu < 1) throw std::invalid_argument("count bound needs d >= 1 and mu >= 1");
    const unsigned long xi_mu = static_cast<unsigned long>(prime_count_below(mu));
    const Int six_dmu = checked::mul(6, checked::mul(d, mu));
    const unsigned long xi_6 = static_cast<unsigned long>(prime_count_below(six_dmu));
    const auto m = static_cast<unsigned long>(mu);
    const auto dd = static_cast<unsigned long>(d);
    mpz_class a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), m, m * m + 3 * m + xi_mu * xi_mu + xi_6 + 5 * dd);
    mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(six_dmu), 2 * m + 2 * xi_6 + 3 * dd - 2);
    return a * b;
}

mpz_class toric_count_bound(int d, Int mu)
{
    if (d < 1 || mu < 1) throw std::invalid_argument("toric bound needs d >= 1 and mu >= 1");
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(mu), static_cast<unsigned long>(d) * d);
    return out;
}

} // namespace coxfano
