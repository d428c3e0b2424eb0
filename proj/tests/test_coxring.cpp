#include "coxfano/coxring.hpp"
#include "coxfano/enumerate.hpp"
#include "coxfano/fixtures.hpp"
#include "doctest.h"
#include "oracles.hpp"

#include <random>

using namespace coxfano;

namespace {

const RingData& fixture(const std::string& name)
{
    for (const auto& f : embedded_fixtures())
        if (f.name == name) return f.data;
    throw std::invalid_argument(name);
}

bool has_violation(const ValidationReport& r, const std::string& check)
{
    for (const auto& v : r.violations)
        if (v.check == check) return true;
    return false;
}

// A random move of the graded-isomorphism orbit.
RingData orbit_move(const RingData& d, std::mt19937_64& rng)
{
    const AbGroup& k = d.group();
    std::vector<std::vector<std::pair<Int, GroupElem>>> blocks;
    std::size_t flat = 0;
    for (const auto& b : d.blocks) {
        std::vector<std::pair<Int, GroupElem>> vars;
        for (std::size_t j = 0; j < b.size(); ++j) vars.push_back({b.exponents[j], d.grading.weights[flat++]});
        std::shuffle(vars.begin(), vars.end(), rng);
        blocks.push_back(vars);
    }
    std::shuffle(blocks.begin(), blocks.end(), rng);
    auto us = d.grading.free_weights;
    std::shuffle(us.begin(), us.end(), rng);

    // (w0, wt) -> (w0, w0 * tau + psi(wt))
    const AbGroup kt = k.torsion_part();
    const auto tors = oracle::elements(kt);
    const GroupElem tau = tors[std::uniform_int_distribution<std::size_t>(0, tors.size() - 1)(rng)];
    std::vector<GroupAutomorphism> autos = kt.torsion.empty() ? std::vector<GroupAutomorphism>{} : torsion_automorphisms(kt);
    // one psi for the whole datum
    const std::size_t pick = autos.empty() ? 0 : rng() % autos.size();
    auto apply = [&](const GroupElem& w) {
        GroupElem t{{}, w.tors};
        if (!autos.empty()) t = autos[pick].apply(kt, t);
        t = kt.add(t, kt.scale(w.free[0], tau));
        return k.elem(w.free, t.tors);
    };

    std::vector<BlockData> out_blocks;
    std::vector<GroupElem> ws;
    for (const auto& vars : blocks) {
        BlockData b;
        for (const auto& [l, w] : vars) {
            b.exponents.push_back(l);
            ws.push_back(apply(w));
        }
        out_blocks.push_back(b);
    }
    for (auto& u : us) u = apply(u);
    return RingData::make(out_blocks, d.m, k, ws, us);
}

} // namespace

TEST_CASE("fixtures validate")
{
    for (const auto& f : embedded_fixtures()) {
        INFO(f.name);
        const auto rep = validate(f.data);
        CHECK(rep.ok);
        CHECK(rep.violations.empty());
        CHECK(is_fano(f.data));
        CHECK(dimension(f.data) == 2);
        CHECK(relation_degree(f.data).free[0] > 0);
        CHECK(anticanonical_class(f.data).free[0] > 0);
    }
}

TEST_CASE("validation reports each failing check")
{
    const RingData s1 = fixture("surface-1");
    const AbGroup& k = s1.group();

    RingData broken = s1;
    broken.grading.weights[2] = k.elem({1}, {0});
    CHECK_FALSE(validate(broken).ok);
    CHECK(has_violation(validate(broken), "almost_freeness"));

    RingData neg = s1;
    neg.grading.weights[0] = k.elem({0}, {0});
    CHECK(has_violation(validate(neg), "positivity"));

    RingData inhom = s1;
    inhom.grading.weights[3] = k.elem({3}, {1});
    CHECK(has_violation(validate(inhom), "homogeneity"));

    // T1 + T2^2 + T3^2 style: a linear monomial makes the relation redundant
    const AbGroup z = AbGroup::rank_one({});
    const RingData lin = RingData::make({{{2}}, {{1}}, {{2}}, {{2}}}, 0, z, {z.elem({1}, {}), z.elem({2}, {}), z.elem({1}, {}), z.elem({1}, {})}, {});
    CHECK(has_violation(validate(lin), "non_redundancy"));

    RingData rank2 = s1;
    rank2.grading.group = AbGroup::make(2, {});
    CHECK_FALSE(validate(rank2).ok);
}

TEST_CASE("factoriality rejects gradings whose kernel is too small")
{
    // T1^2 + T2^2 + T3^2 with a free variable S1 graded by Z + Z/2: the
    // relation lattice has torsion (Z/2)^2, which cannot embed in Z/2.
    const AbGroup k = AbGroup::rank_one({2});
    const RingData d = RingData::make({{{2}}, {{2}}, {{2}}}, 1, k, {k.elem({1}, {0}), k.elem({1}, {1}), k.elem({1}, {1})}, {k.elem({1}, {0})});
    CHECK(validate(d).violations.size() == 1);
    CHECK_FALSE(factorially_graded(d));
    CHECK(has_violation(validate(d), "factoriality"));
    for (const auto& f : embedded_fixtures()) CHECK(factorially_graded(f.data));
}

TEST_CASE("degrees and anticanonical class")
{
    const RingData s1 = fixture("surface-1");
    const RingData s8 = fixture("surface-8");
    const RingData q2 = fixture("grading-Q2");
    CHECK(relation_degree(s1) == s1.group().elem({4}, {0}));
    CHECK(relation_degree(s8) == s8.group().elem({6}, {0}));
    CHECK(relation_degree(q2) == q2.group().elem({10}, {2}));
    CHECK(anticanonical_class(s1) == s1.group().elem({1}, {0}));
    CHECK(anticanonical_class(s8) == s8.group().elem({2}, {0}));

    const AbGroup k = AbGroup::rank_one({2});
    const RingData toric = RingData::toric(k, {k.elem({1}, {0}), k.elem({1}, {1})});
    CHECK(anticanonical_class(toric) == k.elem({2}, {1}));
    CHECK(is_toric(toric));
    CHECK(is_fano(toric));
    CHECK(dimension(toric) == 1);
    CHECK_THROWS(relation_degree(toric));
    CHECK_FALSE(is_toric(s1));
    const RingData one = RingData::make({{{1}}, {{2}}}, 0, AbGroup::rank_one({}), {AbGroup::rank_one({}).elem({2}, {}), AbGroup::rank_one({}).elem({1}, {})}, {});
    CHECK(is_toric(one));
}

TEST_CASE("Fano test")
{
    CHECK(is_fano(fixture("grading-Q1")));
    CHECK(is_fano(fixture("surface-11")));
    const AbGroup z = AbGroup::rank_one({});
    // T1^4 + T2^4 + T3^4 with unit weights: (r-1) gamma = 4 > 3
    const RingData quartic = RingData::make({{{4}}, {{4}}, {{4}}}, 0, z, {z.elem({1}, {}), z.elem({1}, {}), z.elem({1}, {})}, {});
    CHECK_FALSE(is_fano(quartic));
}

TEST_CASE("canonical form examples")
{
    const RingData s1 = fixture("surface-1");
    const AbGroup& k = s1.group();
    const RingData reordered = RingData::make({{{2}}, {{1, 3}}, {{4}}}, 0, k, {k.elem({2}, {1}), k.elem({1}, {0}), k.elem({1}, {0}), k.elem({1}, {1})}, {});
    CHECK(canonical_form(reordered) == canonical_form(s1));
    const RingData twisted = RingData::make({{{1, 3}}, {{4}}, {{2}}}, 0, k, {k.elem({1}, {1}), k.elem({1}, {1}), k.elem({1}, {0}), k.elem({2}, {1})}, {});
    CHECK(equivalent(twisted, s1));
    CHECK_FALSE(equivalent(fixture("surface-9"), fixture("surface-10")));
    CHECK(equivalent(s1, s1));
    CHECK_THROWS_AS(canonical_form(s1, CanonicalOptions{1}), LimitExceeded);
}

TEST_CASE("canonical form is constant on orbits")
{
    std::mt19937_64 rng(100);
    std::vector<RingData> sample;
    for (const auto& f : embedded_fixtures()) sample.push_back(f.data);
    ClassifyOptions o;
    o.dimension = 3;
    o.picard_index = 2;
    for (const auto& v : classify(o).varieties) sample.push_back(v.data);
    o.dimension = 2;
    o.picard_index = 4;
    for (const auto& v : classify(o).varieties) sample.push_back(v.data);
    REQUIRE(sample.size() >= 50);

    int moved = 0;
    for (std::size_t i = 0; i < sample.size() && moved < 100; ++i, ++moved) {
        const RingData c = canonical_form(sample[i]);
        CHECK(canonical_form(c) == c);
        for (int t = 0; t < 10; ++t) {
            const RingData x = orbit_move(sample[i], rng);
            REQUIRE(validate(x).ok);
            CHECK(canonical_form(x) == c);
        }
    }
}

TEST_CASE("equivalence classes and exponent multisets")
{
    std::vector<RingData> sample;
    for (const auto& f : embedded_fixtures()) sample.push_back(f.data);
    std::mt19937_64 rng(1);
    for (std::size_t i = 0; i < 11; ++i) sample.push_back(orbit_move(sample[i], rng));
    auto exps = [](const RingData& d) {
        std::vector<Int> e;
        for (const auto& b : d.blocks)
            for (Int l : b.exponents)
                if (l > 1) e.push_back(l);
        std::sort(e.begin(), e.end());
        return e;
    };
    for (const auto& a : sample)
        for (const auto& b : sample) {
            CHECK(equivalent(a, b) == equivalent(b, a));
            if (equivalent(a, b)) CHECK(exps(a) == exps(b));
            for (const auto& c : sample)
                if (equivalent(a, b) && equivalent(b, c)) CHECK(equivalent(a, c));
        }
}
