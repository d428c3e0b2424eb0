#include "coxfano/coxring.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>
#include <utility>

namespace coxfano {

namespace {

using BlockKey = std::vector<std::pair<Int, GroupElem>>;

std::string elem_text(const GroupElem& g)
{
    std::string s = "(";
    for (std::size_t i = 0; i < g.free.size(); ++i) s += (i ? "," : "") + std::to_string(g.free[i]);
    for (Int t : g.tors) s += "," + std::to_string(t) + "'";
    return s + ")";
}

IntMatrix unimodular_inverse(const IntMatrix& v)
{
    // the row HNF of [V | I] is [I | V^-1]
    const std::size_t n = v.rows();
    IntMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = v(i, j);
        aug(i, n + i) = 1;
    }
    const IntMatrix h = hermite_normal_form(aug);
    IntMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = h(i, n + j);
    return inv;
}

const std::vector<GroupAutomorphism>& cached_automorphisms(const AbGroup& torsion_part)
{
    static std::mutex mutex;
    static std::map<std::vector<Int>, std::vector<GroupAutomorphism>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(torsion_part.torsion);
    if (it == cache.end()) it = cache.emplace(torsion_part.torsion, torsion_automorphisms(torsion_part)).first;
    return it->second;
}

auto ordering_key(const RingData& d)
{
    std::vector<std::pair<std::size_t, BlockKey>> blocks;
    std::size_t flat = 0;
    for (const auto& b : d.blocks) {
        BlockKey key;
        for (Int l : b.exponents) key.emplace_back(l, d.grading.weights.at(flat++));
        blocks.emplace_back(b.size(), std::move(key));
    }
    return std::make_tuple(d.r, d.m, std::move(blocks), d.grading.free_weights, d.grading.group);
}

} // namespace

Int BlockData::ell() const
{
    Int g = 0;
    for (Int l : exponents) g = checked::gcd(g, l);
    return g;
}

RingData RingData::make(std::vector<BlockData> blocks, int m, AbGroup group, std::vector<GroupElem> weights,
                        std::vector<GroupElem> free_weights)
{
    RingData d;
    d.r = blocks.empty() ? 0 : static_cast<int>(blocks.size()) - 1;
    d.blocks = std::move(blocks);
    d.m = m;
    d.grading = Grading{std::move(group), std::move(weights), std::move(free_weights)};
    d.moduli_count = std::max(d.r - 2, 0);
    return d;
}

RingData RingData::toric(AbGroup group, std::vector<GroupElem> free_weights)
{
    const int m = static_cast<int>(free_weights.size());
    return make({}, m, std::move(group), {}, std::move(free_weights));
}

std::size_t RingData::n() const
{
    std::size_t total = 0;
    for (const auto& b : blocks) total += b.size();
    return total;
}

std::size_t RingData::offset(std::size_t block) const
{
    std::size_t off = 0;
    for (std::size_t i = 0; i < block; ++i) off += blocks.at(i).size();
    return off;
}

const GroupElem& RingData::weight(std::size_t block, std::size_t j) const
{
    if (j >= blocks.at(block).size()) throw std::out_of_range("variable index outside block");
    return grading.weights.at(offset(block) + j);
}

std::vector<GroupElem> RingData::degrees() const
{
    std::vector<GroupElem> all = grading.weights;
    all.insert(all.end(), grading.free_weights.begin(), grading.free_weights.end());
    return all;
}

ValidationReport validate(const RingData& data)
{
    ValidationReport rep;
    auto fail = [&](std::string check, std::string detail) {
        rep.ok = false;
        rep.violations.push_back({std::move(check), std::move(detail)});
    };

    // structure
    const AbGroup& k = data.group();
    if (data.m < 0) fail("structure", "negative number of free variables");
    if (!data.blocks.empty() && data.r != static_cast<int>(data.blocks.size()) - 1)
        fail("structure", "r must equal the number of blocks minus one");
    if (data.blocks.empty() && data.r != 0) fail("structure", "toric encoding requires r = 0");
    for (std::size_t i = 0; i < data.blocks.size(); ++i) {
        if (data.blocks[i].exponents.empty()) fail("structure", "block " + std::to_string(i) + " is empty");
        for (Int l : data.blocks[i].exponents)
            if (l < 1) fail("structure", "exponents must be positive");
    }
    if (data.grading.weights.size() != data.n()) fail("structure", "one weight per T variable required");
    if (data.m >= 0 && data.grading.free_weights.size() != static_cast<std::size_t>(data.m))
        fail("structure", "one weight per S variable required");
    for (const auto& g : data.degrees())
        if (!k.owns(g)) fail("structure", "degree " + elem_text(g) + " is not a reduced element of " + k.to_string());
    if (data.moduli_count != std::max(data.r - 2, 0)) fail("structure", "moduli_count must be max(r - 2, 0)");
    if (data.generator_count() == 0) fail("structure", "no generators");
    if (!rep.ok) return rep;

    const std::vector<GroupElem> degs = data.degrees();

    // positivity of the free parts
    if (k.free_rank == 0) {
        fail("positivity", "grading group has no free part");
    } else {
        for (std::size_t i = 0; i < degs.size(); ++i)
            if (degs[i].free[0] <= 0) fail("positivity", "generator " + std::to_string(i + 1) + " has non-positive degree");
    }

    // homogeneity of the relations
    bool homogeneous = true;
    if (data.r >= 2) {
        std::vector<GroupElem> block_degree;
        for (std::size_t i = 0; i < data.blocks.size(); ++i) {
            GroupElem deg = k.zero();
            for (std::size_t j = 0; j < data.blocks[i].size(); ++j)
                deg = k.add(deg, k.scale(data.blocks[i].exponents[j], data.weight(i, j)));
            block_degree.push_back(deg);
        }
        for (std::size_t i = 1; i < block_degree.size(); ++i) {
            if (block_degree[i] != block_degree[0]) homogeneous = false;
            if (block_degree[i].free != block_degree[0].free)
                fail("homogeneity", "free degree of monomial " + std::to_string(i) + " differs from monomial 0");
            else if (block_degree[i].tors != block_degree[0].tors)
                fail("homogeneity", "torsion degree of monomial " + std::to_string(i) + " differs from monomial 0");
        }
    }

    // almost-freeness: dropping any one degree still generates K
    for (std::size_t drop = 0; drop < degs.size(); ++drop) {
        std::vector<GroupElem> rest;
        for (std::size_t i = 0; i < degs.size(); ++i)
            if (i != drop) rest.push_back(degs[i]);
        if (!generates(k, rest)) {
            fail("almost_freeness", "degrees without generator " + std::to_string(drop + 1) + " do not generate K");
            break;
        }
    }

    if (data.r >= 2 && homogeneous && !factorially_graded(data))
        fail("factoriality", "torsion of the relation lattice's saturation is not detected by K");

    // l_i1 * n_i != 1
    if (data.r >= 2)
        for (std::size_t i = 0; i < data.blocks.size(); ++i)
            if (data.blocks[i].size() == 1 && data.blocks[i].exponents[0] == 1)
                fail("non_redundancy", "monomial " + std::to_string(i) + " is a linear term");

    if (k.free_rank != 1) fail("picard_number_one", "class group must have free rank one");
    return rep;
}

std::vector<std::vector<Int>> relation_lattice(const RingData& data)
{
    const std::size_t total = data.generator_count();
    auto exponent_vector = [&](std::size_t i) {
        std::vector<Int> v(total, 0);
        for (std::size_t j = 0; j < data.blocks.at(i).size(); ++j) v[data.offset(i) + j] = data.blocks[i].exponents[j];
        return v;
    };
    std::vector<std::vector<Int>> rows;
    const std::vector<Int> e0 = exponent_vector(0);
    for (std::size_t i = 1; i < data.blocks.size(); ++i) {
        std::vector<Int> v = exponent_vector(i);
        for (std::size_t c = 0; c < total; ++c) v[c] -= e0[c];
        rows.push_back(std::move(v));
    }
    return rows;
}

bool factorially_graded(const RingData& data)
{
    if (data.r < 2) return true;
    const AbGroup& k = data.group();
    const std::size_t total = data.generator_count();
    const SmithForm snf = smith_normal_form(IntMatrix::from_rows(relation_lattice(data), total));
    const IntMatrix basis = unimodular_inverse(snf.V);
    const std::vector<GroupElem> degs = data.degrees();

    // generators x_i of the torsion of Z^(n+m) / Lambda with their orders d_i
    std::vector<Int> orders;
    std::vector<GroupElem> images;
    Int product = 1;
    for (std::size_t i = 0; i < snf.diag.size(); ++i) {
        if (snf.diag[i] <= 1) continue;
        orders.push_back(snf.diag[i]);
        product = checked::mul(product, snf.diag[i]);
        if (product > k.torsion_order()) return false;
        GroupElem img = k.zero();
        for (std::size_t c = 0; c < total; ++c) img = k.add(img, k.scale(basis(i, c), degs[c]));
        images.push_back(std::move(img));
    }
    // injectivity: no nonzero combination sum c_i x_i maps to zero
    std::vector<Int> coeff(orders.size(), 0);
    while (true) {
        std::size_t pos = 0;
        while (pos < coeff.size() && ++coeff[pos] == orders[pos]) coeff[pos++] = 0;
        if (pos == coeff.size()) return true;
        GroupElem img = k.zero();
        for (std::size_t i = 0; i < coeff.size(); ++i) img = k.add(img, k.scale(coeff[i], images[i]));
        if (img == k.zero()) return false;
    }
}

bool is_toric(const RingData& data) { return data.r <= 1; }

GroupElem relation_degree(const RingData& data)
{
    if (data.r < 2 || data.blocks.empty()) throw std::domain_error("relation degree needs at least one relation");
    const AbGroup& k = data.group();
    GroupElem deg = k.zero();
    for (std::size_t j = 0; j < data.blocks[0].size(); ++j)
        deg = k.add(deg, k.scale(data.blocks[0].exponents[j], data.weight(0, j)));
    return deg;
}

GroupElem anticanonical_class(const RingData& data)
{
    const AbGroup& k = data.group();
    GroupElem sum = k.zero();
    for (const auto& g : data.degrees()) sum = k.add(sum, g);
    if (data.r >= 2) sum = k.sub(sum, k.scale(data.r - 1, relation_degree(data)));
    return sum;
}

bool is_fano(const RingData& data)
{
    if (data.r <= 1) return true;
    Int total = 0;
    for (const auto& g : data.degrees()) total = checked::add(total, g.free.at(0));
    return checked::mul(data.r - 1, relation_degree(data).free.at(0)) < total;
}

int dimension(const RingData& data)
{
    const int gens = static_cast<int>(data.generator_count());
    return data.r >= 2 ? gens - data.r : gens - 1;
}

bool canonical_less(const RingData& a, const RingData& b)
{
    const auto ka = ordering_key(a);
    const auto kb = ordering_key(b);
    if (ka != kb) return ka < kb;
    return a < b;
}

RingData canonical_form(const RingData& data, const CanonicalOptions& opts)
{
    const AbGroup& k = data.group();
    if (k.free_rank != 1) throw std::invalid_argument("canonical form requires a class group of free rank one");
    const AbGroup tors = k.torsion_part();
    const std::vector<GroupElem> taus = tors.torsion_elements();
    const std::vector<GroupAutomorphism>& psis = cached_automorphisms(tors);
    if (taus.size() * psis.size() > opts.orbit_limit)
        throw LimitExceeded("grading orbit of size " + std::to_string(taus.size() * psis.size()) + " exceeds limit");

    auto transform = [&](const GroupElem& w, const GroupElem& tau, const GroupAutomorphism& psi) {
        GroupElem t = psi.apply(tors, GroupElem{{}, w.tors});
        t = tors.add(t, tors.scale(w.free[0], tau));
        return GroupElem{w.free, t.tors};
    };

    std::optional<RingData> best;
    for (const auto& tau : taus)
        for (const auto& psi : psis) {
            std::vector<std::pair<std::size_t, BlockKey>> blocks;
            std::size_t flat = 0;
            for (const auto& b : data.blocks) {
                BlockKey key;
                for (Int l : b.exponents) key.emplace_back(l, transform(data.grading.weights.at(flat++), tau, psi));
                std::sort(key.begin(), key.end());
                blocks.emplace_back(b.size(), std::move(key));
            }
            std::sort(blocks.begin(), blocks.end());
            std::vector<GroupElem> us;
            for (const auto& u : data.grading.free_weights) us.push_back(transform(u, tau, psi));
            std::sort(us.begin(), us.end());

            RingData cand = data;
            cand.grading.weights.clear();
            for (std::size_t i = 0; i < blocks.size(); ++i) {
                cand.blocks[i].exponents.clear();
                for (const auto& [l, w] : blocks[i].second) {
                    cand.blocks[i].exponents.push_back(l);
                    cand.grading.weights.push_back(w);
                }
            }
            cand.grading.free_weights = std::move(us);
            if (!best || canonical_less(cand, *best)) best = std::move(cand);
        }
    return *best;
}

bool equivalent(const RingData& a, const RingData& b, const CanonicalOptions& opts)
{
    return canonical_form(a, opts) == canonical_form(b, opts);
}

} // namespace coxfano
