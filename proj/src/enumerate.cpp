#include "coxfano/enumerate.hpp"

#include "coxfano/strata.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace coxfano {

namespace {

std::vector<Int> divisors(Int x)
{
    std::vector<Int> out;
    for (Int k = 1; k <= x; ++k)
        if (x % k == 0) out.push_back(k);
    return out;
}

class Counter {
public:
    explicit Counter(std::uint64_t limit) : limit_(limit) {}

    void add(std::uint64_t n = 1)
    {
        if (value_.fetch_add(n, std::memory_order_relaxed) + n > limit_)
            throw ResourceLimitExceeded("candidate limit of " + std::to_string(limit_) + " exceeded");
    }
    std::uint64_t value() const { return std::min<std::uint64_t>(value_.load(), limit_); }

private:
    std::uint64_t limit_;
    std::atomic<std::uint64_t> value_{0};
};

struct Shape {
    CaseTag tag;
    int r;
    std::vector<std::size_t> sizes; // nonincreasing, r + 1 entries
    int m;
};

struct Partition {
    const Shape* shape;
    const SearchBounds* bounds;
    Int gamma;
};

struct CanonLess {
    bool operator()(const RingData& a, const RingData& b) const { return canonical_less(a, b); }
};

using DataSet = std::set<RingData, CanonLess>;

// partitions of total into exactly parts entries >= 2, nonincreasing
void multi_sizes(std::size_t total, std::size_t parts, std::size_t max_part, std::vector<std::size_t>& cur,
                 std::vector<std::vector<std::size_t>>& out)
{
    if (parts == 0) {
        if (total == 0) out.push_back(cur);
        return;
    }
    for (std::size_t s = std::min(max_part, total); s >= 2; --s) {
        if (total - s < 2 * (parts - 1)) continue;
        cur.push_back(s);
        multi_sizes(total - s, parts - 1, s, cur, out);
        cur.pop_back();
    }
}

std::vector<Shape> shapes_for(const SearchBounds& b, int d)
{
    std::vector<Shape> out;
    for (int p = b.min_multi; p <= b.max_multi; ++p)
        for (int r = std::max({b.min_r, 2, p - 1}); r <= b.max_r; ++r)
            for (int total = 2 * p; total <= d + p - 1; ++total) {
                const int m = d + p - 1 - total;
                std::vector<std::vector<std::size_t>> multis;
                std::vector<std::size_t> cur;
                multi_sizes(static_cast<std::size_t>(total), static_cast<std::size_t>(p), static_cast<std::size_t>(total), cur,
                            multis);
                for (auto& sizes : multis) {
                    sizes.resize(static_cast<std::size_t>(r) + 1, 1);
                    out.push_back({b.case_tag, r, std::move(sizes), m});
                }
            }
    return out;
}

// flat generator indices of every minimal support of a shape
std::vector<std::vector<std::size_t>> support_indices(const Shape& shape)
{
    std::vector<BlockData> blocks;
    std::size_t n = 0;
    for (std::size_t s : shape.sizes) {
        blocks.push_back({std::vector<Int>(s, 2)});
        n += s;
    }
    RingData probe = RingData::make(std::move(blocks), shape.m, AbGroup::rank_one({}), {}, {});
    std::vector<std::vector<std::size_t>> out;
    for (const auto& s : minimal_supports(probe)) {
        std::vector<std::size_t> idx;
        for (const auto& [i, j] : s.t_coords) idx.push_back(probe.offset(i) + j);
        for (std::size_t k : s.s_coords) idx.push_back(n + k);
        out.push_back(std::move(idx));
    }
    return out;
}

void gen_multi(std::size_t left, Int remaining, Int lo_l, Int lo_w, const SearchBounds& b, BlockSolution& cur,
               std::vector<BlockSolution>& out)
{
    if (left == 0) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    for (Int l = lo_l; l <= b.max_l_multi && l <= remaining; ++l)
        for (Int w = (l == lo_l ? lo_w : 1); w <= b.max_w_multi && l * w <= remaining; ++w) {
            const Int rest = remaining - l * w;
            if (left == 1 ? rest != 0 : rest < static_cast<Int>(left - 1) * l) continue;
            cur.l.push_back(l);
            cur.w.push_back(w);
            gen_multi(left - 1, rest, l, w, b, cur, out);
            cur.l.pop_back();
            cur.w.pop_back();
        }
}

std::vector<BlockSolution> block_solutions(Int gamma, std::size_t size, const SearchBounds& b, int r)
{
    std::vector<BlockSolution> out;
    if (size == 1) {
        for (Int l = 2; l <= std::min(gamma, b.max_l_single); ++l) {
            if (gamma % l != 0) continue;
            if (b.exponents_divide_mu && b.mu % l != 0) continue;
            if (gamma / l > b.single_weight_limit(r)) continue;
            out.push_back({{l}, {gamma / l}});
        }
        return out;
    }
    BlockSolution cur;
    gen_multi(size, gamma, 1, 1, b, cur, out);
    return out;
}

bool almost_free(const AbGroup& k, const std::vector<GroupElem>& degs)
{
    std::vector<GroupElem> rest;
    for (std::size_t drop = 0; drop < degs.size(); ++drop) {
        rest.clear();
        for (std::size_t i = 0; i < degs.size(); ++i)
            if (i != drop) rest.push_back(degs[i]);
        if (!generates(k, rest)) return false;
    }
    return true;
}

bool torsion_allowed(TorsionFilter f, Int t)
{
    switch (f) {
    case TorsionFilter::Any: return true;
    case TorsionFilter::NontrivialOnly: return t > 1;
    case TorsionFilter::TrivialOnly: return t == 1;
    }
    return false;
}

class PartitionSearch {
public:
    PartitionSearch(const ClassifyOptions& o, const Partition& part, const std::vector<std::vector<std::size_t>>& supports,
                    Counter& counter)
        : o_(o), shape_(*part.shape), b_(*part.bounds), gamma_(part.gamma), supports_(supports), counter_(counter)
    {
        const auto sols = free_solutions(gamma_, shape_.sizes, b_, shape_.r);
        for (std::size_t i = 0; i < sols.size(); ++i) {
            std::vector<BlockSolution> keep;
            for (const auto& s : sols[i]) {
                // singleton supports {T_ij} in multi-variable blocks force w_ij | mu
                if (shape_.sizes[i] >= 2 &&
                    std::any_of(s.w.begin(), s.w.end(), [&](Int w) { return o_.picard_index % w != 0; }))
                    continue;
                keep.push_back(s);
            }
            options_.push_back(std::move(keep));
        }
        for (Int u : divisors(o_.picard_index))
            if (u <= b_.max_u) u_values_.push_back(u);
    }

    DataSet run()
    {
        choice_.assign(shape_.sizes.size(), 0);
        blocks_dfs(0, 0, 0);
        return std::move(found_);
    }

private:
    void blocks_dfs(std::size_t i, Int excess, Int weight_sum)
    {
        counter_.add();
        if (i == shape_.sizes.size()) {
            us_.clear();
            u_dfs(0, weight_sum);
            return;
        }
        const std::size_t start = (i > 0 && shape_.sizes[i] == shape_.sizes[i - 1]) ? choice_[i - 1] : 0;
        for (std::size_t c = start; c < options_[i].size(); ++c) {
            const auto& sol = options_[i][c];
            Int w_sum = 0;
            for (Int w : sol.w) w_sum += w;
            const Int e = excess + (gamma_ - w_sum);
            // Fano: sum_i (gamma - W_i) < 2 gamma + sum u
            if (o_.require_fano && e >= 2 * gamma_ + shape_.m * b_.max_u) continue;
            choice_[i] = c;
            blocks_dfs(i + 1, e, weight_sum + w_sum);
        }
    }

    void u_dfs(std::size_t k, Int weight_sum)
    {
        if (k == static_cast<std::size_t>(shape_.m)) {
            process_free(weight_sum);
            return;
        }
        const Int lo = k == 0 ? 0 : us_.back();
        for (Int u : u_values_) {
            if (u < lo) continue;
            us_.push_back(u);
            u_dfs(k + 1, weight_sum + u);
            us_.pop_back();
        }
    }

    void process_free(Int weight_sum)
    {
        counter_.add();
        if (o_.require_fano && checked::mul(shape_.r - 1, gamma_) >= weight_sum) return;

        std::vector<Int> w0;
        for (std::size_t i = 0; i < shape_.sizes.size(); ++i) {
            const auto& sol = options_[i][choice_[i]];
            w0.insert(w0.end(), sol.w.begin(), sol.w.end());
        }
        w0.insert(w0.end(), us_.begin(), us_.end());
        Int lcm = 1;
        for (const auto& s : supports_) {
            Int g = 0;
            for (std::size_t idx : s) g = checked::gcd(g, w0[idx]);
            lcm = checked::lcm(lcm, g);
            if (o_.picard_index % lcm != 0) return;
        }
        const Int t = o_.picard_index / lcm;
        if (!torsion_allowed(o_.torsion_filter, t)) return;

        std::vector<BlockData> blocks;
        std::vector<GroupElem> weights;
        for (std::size_t i = 0; i < shape_.sizes.size(); ++i) {
            const auto& sol = options_[i][choice_[i]];
            blocks.push_back({sol.l});
            for (Int w : sol.w) weights.push_back({{w}, {}});
        }
        for (std::size_t i = 0; i < blocks.size(); ++i)
            for (std::size_t j = i + 1; j < blocks.size(); ++j)
                if (t % checked::gcd(blocks[i].ell(), blocks[j].ell()) != 0) return;
        std::vector<GroupElem> free_weights;
        for (Int u : us_) free_weights.push_back({{u}, {}});
        const RingData free_datum =
            RingData::make(std::move(blocks), shape_.m, AbGroup::rank_one({}), std::move(weights), std::move(free_weights));

        for (const AbGroup& kt : abelian_groups_of_order(t)) {
            for (auto& g : torsion_gradings(free_datum, kt)) {
                counter_.add();
                RingData data = free_datum;
                data.grading = std::move(g);
                if (!validate(data).ok) continue;
                if (!check_bounds(data, o_.dimension, o_.picard_index, o_.bounds)) continue;
                found_.insert(canonical_form(data, o_.canonical));
            }
        }
    }

    const ClassifyOptions& o_;
    const Shape& shape_;
    const SearchBounds& b_;
    Int gamma_;
    const std::vector<std::vector<std::size_t>>& supports_;
    Counter& counter_;

    std::vector<std::vector<BlockSolution>> options_;
    std::vector<Int> u_values_;
    std::vector<std::size_t> choice_;
    std::vector<Int> us_;
    DataSet found_;
};

DataSet toric_search(const ClassifyOptions& o, Counter& counter)
{
    DataSet found;
    const Int mu = o.picard_index;
    const std::vector<Int> divs = divisors(mu);
    const std::size_t count = static_cast<std::size_t>(o.dimension) + 1;
    std::vector<Int> us;
    std::function<void(std::size_t)> rec = [&](std::size_t lo) {
        if (us.size() == count) {
            counter.add();
            Int lcm = 1;
            for (Int u : us) lcm = checked::lcm(lcm, u);
            const Int t = mu / lcm;
            if (!torsion_allowed(o.torsion_filter, t)) return;
            std::vector<GroupElem> free_weights;
            for (Int u : us) free_weights.push_back({{u}, {}});
            const RingData free_datum = RingData::toric(AbGroup::rank_one({}), free_weights);
            for (const AbGroup& kt : abelian_groups_of_order(t))
                for (auto& g : torsion_gradings(free_datum, kt)) {
                    counter.add();
                    RingData data = free_datum;
                    data.grading = std::move(g);
                    if (validate(data).ok) found.insert(canonical_form(data, o.canonical));
                }
            return;
        }
        for (std::size_t i = lo; i < divs.size(); ++i) {
            us.push_back(divs[i]);
            rec(i);
            us.pop_back();
        }
    };
    rec(0);
    return found;
}

ClassifiedVariety attach(const RingData& data)
{
    return {data, compute_all(data), case_of(data), data.moduli_count};
}

} // namespace

std::string to_string(TorsionFilter f)
{
    switch (f) {
    case TorsionFilter::Any: return "any";
    case TorsionFilter::NontrivialOnly: return "nontrivial";
    case TorsionFilter::TrivialOnly: return "trivial";
    }
    throw std::invalid_argument("invalid torsion filter");
}

TorsionFilter torsion_filter_from_string(const std::string& s)
{
    if (s == "any") return TorsionFilter::Any;
    if (s == "nontrivial") return TorsionFilter::NontrivialOnly;
    if (s == "trivial") return TorsionFilter::TrivialOnly;
    throw std::invalid_argument("torsion filter must be any, nontrivial or trivial");
}

void ClassifyOptions::check() const
{
    if (dimension < 1) throw std::invalid_argument("dimension must be at least 1");
    if (picard_index < 1) throw std::invalid_argument("Picard index must be at least 1");
    if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
}

std::vector<AbGroup> abelian_groups_of_order(Int t)
{
    if (t < 1) throw std::invalid_argument("group order must be positive");
    // invariant factors q_1 | q_2 | ... | q_k with product t, each q_i > 1
    std::vector<AbGroup> out;
    std::vector<Int> cur;
    std::function<void(Int, Int)> rec = [&](Int rest, Int last) {
        if (rest == 1) {
            out.push_back(AbGroup::make(0, cur));
            return;
        }
        for (Int q : divisors(rest)) {
            if (q < 2 || (last > 0 && q % last != 0)) continue;
            const Int rem = rest / q; // later factors are multiples of q
            cur.push_back(q);
            rec(rem, q);
            cur.pop_back();
        }
    };
    rec(t, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<AbGroup> enumerate_torsion_groups(Int mu)
{
    if (mu < 1) throw std::invalid_argument("Picard index must be positive");
    std::vector<AbGroup> out;
    for (Int t : divisors(mu)) {
        auto groups = abelian_groups_of_order(t);
        out.insert(out.end(), groups.begin(), groups.end());
    }
    return out;
}

std::vector<std::vector<BlockSolution>> free_solutions(Int gamma, const std::vector<std::size_t>& block_sizes,
                                                       const SearchBounds& bounds, int r)
{
    std::map<std::size_t, std::vector<BlockSolution>> cache;
    std::vector<std::vector<BlockSolution>> out;
    for (std::size_t n : block_sizes) {
        if (n == 0) throw std::invalid_argument("empty block");
        auto it = cache.find(n);
        if (it == cache.end()) it = cache.emplace(n, block_solutions(gamma, n, bounds, r)).first;
        out.push_back(it->second);
    }
    return out;
}

std::vector<Grading> torsion_gradings(const RingData& free_datum, const AbGroup& k_t)
{
    if (k_t.free_rank != 0) throw std::invalid_argument("torsion group must be finite");
    const AbGroup k = AbGroup::rank_one(k_t.torsion);
    const std::vector<GroupElem> elems = k_t.torsion_elements();
    const std::vector<GroupElem> free_degs = free_datum.degrees();
    const std::size_t n = free_datum.n();
    const std::size_t total = free_degs.size();
    const bool homogeneous = free_datum.r >= 2;

    std::vector<std::size_t> block_of(n), pos_of(n);
    for (std::size_t i = 0, flat = 0; i < free_datum.blocks.size(); ++i)
        for (std::size_t j = 0; j < free_datum.blocks[i].size(); ++j, ++flat) {
            block_of[flat] = i;
            pos_of[flat] = j;
        }

    std::vector<Grading> out;
    std::vector<GroupElem> degs(total);
    GroupElem delta;
    std::function<void(std::size_t, const GroupElem&)> rec = [&](std::size_t idx, const GroupElem& acc) {
        if (idx == total) {
            if (almost_free(k, degs)) {
                std::vector<GroupElem> ws(degs.begin(), degs.begin() + static_cast<std::ptrdiff_t>(n));
                std::vector<GroupElem> us(degs.begin() + static_cast<std::ptrdiff_t>(n), degs.end());
                out.push_back(Grading{k, std::move(ws), std::move(us)});
            }
            return;
        }
        for (const auto& e : elems) {
            degs[idx] = GroupElem{free_degs[idx].free, e.tors};
            if (idx >= n || !homogeneous) {
                rec(idx + 1, acc);
                continue;
            }
            const std::size_t i = block_of[idx];
            const BlockData& block = free_datum.blocks[i];
            const GroupElem next = k_t.add(acc, k_t.scale(block.exponents[pos_of[idx]], e));
            if (pos_of[idx] + 1 < block.size()) {
                rec(idx + 1, next);
                continue;
            }
            if (i == 0) {
                delta = next;
            } else if (next != delta) {
                continue;
            }
            rec(idx + 1, k_t.zero());
        }
    };
    rec(0, k_t.zero());
    return out;
}

ClassifyResult classify(const ClassifyOptions& o)
{
    o.check();
    Counter counter(o.candidate_limit);
    ClassifyResult result;

    std::vector<CaseTag> tags = {CaseTag::II};
    if (!o.separated_only) tags.insert(tags.end(), {CaseTag::III, CaseTag::IV, CaseTag::V});

    std::vector<SearchBounds> bounds;
    for (CaseTag tag : tags) bounds.push_back(search_bounds(o.dimension, o.picard_index, tag, o.bounds));
    std::vector<Shape> shapes;
    std::vector<std::size_t> shape_bounds;
    for (std::size_t bi = 0; bi < bounds.size(); ++bi)
        for (auto& s : shapes_for(bounds[bi], o.dimension)) {
            shapes.push_back(std::move(s));
            shape_bounds.push_back(bi);
        }
    std::vector<std::vector<std::vector<std::size_t>>> supports;
    for (const auto& s : shapes) supports.push_back(support_indices(s));

    const Int mu_sq = checked::mul(o.picard_index, o.picard_index);
    std::vector<Partition> parts;
    std::vector<std::size_t> part_shape;
    for (std::size_t si = 0; si < shapes.size(); ++si) {
        const SearchBounds& b = bounds[shape_bounds[si]];
        const Int limit = b.gamma_limit(shapes[si].r);
        for (Int gamma = 1; gamma <= limit; ++gamma) {
            // case II: gcd_{j != i} gamma / l_j divides mu with l_j | mu, so gamma | mu^2
            if (b.case_tag == CaseTag::II && mu_sq % gamma != 0) continue;
            parts.push_back({&shapes[si], &b, gamma});
            part_shape.push_back(si);
        }
    }

    std::vector<DataSet> found(parts.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (!stop.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= parts.size()) return;
            try {
                found[i] = PartitionSearch(o, parts[i], supports[part_shape[i]], counter).run();
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                stop = true;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned j = 1; j < o.jobs; ++j) pool.emplace_back(worker);
        worker();
    }
    if (error) std::rethrow_exception(error);

    DataSet merged;
    for (auto& f : found) merged.merge(f);
    for (const auto& d : merged) result.varieties.push_back(attach(d));

    if (o.include_toric) {
        for (const auto& d : toric_search(o, counter)) result.toric.push_back(attach(d));
        result.warnings.push_back("toric classes are identified up to graded isomorphism of the polynomial Cox ring; "
                                  "their count is an upper estimate");
    }
    result.candidates = counter.value();
    return result;
}

ClassifyResult classify_separated(int d, Int mu, const ClassifyOptions& base)
{
    ClassifyOptions o = base;
    o.dimension = d;
    o.picard_index = mu;
    o.separated_only = true;
    o.require_fano = false;
    return classify(o);
}

TypeCount count_types(int d, Int mu, const ClassifyOptions& base)
{
    ClassifyOptions o = base;
    o.dimension = d;
    o.picard_index = mu;
    const ClassifyResult res = classify(o);
    return {res.varieties.size(), res.toric.size()};
}

} // namespace coxfano
