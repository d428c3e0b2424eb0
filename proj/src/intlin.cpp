#include "coxfano/intlin.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <sstream>
#include <utility>

namespace coxfano {

namespace {

Int floor_div(Int a, Int b)
{
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

void swap_rows(IntMatrix& a, std::size_t i, std::size_t k)
{
    if (i == k) return;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(i, j), a(k, j));
}

// row_i += q * row_k
void add_row(IntMatrix& a, std::size_t i, std::size_t k, Int q)
{
    if (q == 0) return;
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = checked::add(a(i, j), checked::mul(q, a(k, j)));
}

void negate_row(IntMatrix& a, std::size_t i)
{
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = checked::neg(a(i, j));
}

Int element_order(const AbGroup& g, const GroupElem& x)
{
    Int order = 1;
    for (std::size_t i = 0; i < g.torsion.size(); ++i) {
        const Int t = g.torsion[i];
        order = checked::lcm(order, t / std::gcd(t, x.tors[i]));
    }
    return order;
}

GroupElem unit_elem(const AbGroup& g, std::size_t coord)
{
    GroupElem e = g.zero();
    if (coord < g.free_rank)
        e.free[coord] = 1;
    else
        e.tors[coord - g.free_rank] = 1;
    return g.reduce(std::move(e));
}

using BigMatrix = std::vector<std::vector<mpz_class>>;

BigMatrix big_identity(std::size_t n)
{
    BigMatrix a(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
    return a;
}

void big_add_row(BigMatrix& a, std::size_t i, std::size_t k, const mpz_class& q)
{
    if (q == 0) return;
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] += q * a[k][j];
}

void big_add_col(BigMatrix& a, std::size_t j, std::size_t k, const mpz_class& q)
{
    if (q == 0) return;
    for (auto& row : a) row[j] += q * row[k];
}

// Nearest integer to num / den (den > 0), ties rounded down.
mpz_class round_div(const mpz_class& num, const mpz_class& den)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const mpz_class r = num - q * den;
    if (2 * r > den) q += 1;
    return q;
}

mpz_class nearest_quotient(const mpz_class& a, const mpz_class& b)
{
    return b < 0 ? round_div(-a, mpz_class(-b)) : round_div(a, b);
}

mpz_class row_dot(const std::vector<mpz_class>& x, const std::vector<mpz_class>& y)
{
    mpz_class s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

std::vector<mpz_class> column(const BigMatrix& a, std::size_t j)
{
    std::vector<mpz_class> c;
    for (const auto& row : a) c.push_back(row[j]);
    return c;
}

// Moves that keep U M V = D:
//  - rows of U past the rank annihilate M and may be added to any row;
//    likewise columns of V past the rank may be added to any column;
//  - for i > j below the rank, with r = d_i / d_j:
//      v_j += c v_i together with u_i -= c r u_j, and
//      u_j += c u_i together with v_i -= c r v_j.
// Each move takes the c minimizing the squared norm of the two touched
// vectors; the pass repeats until no move helps.
void shrink_transforms(const std::vector<mpz_class>& diag, BigMatrix& u, BigMatrix& v)
{
    const std::size_t rows = u.size();
    const std::size_t cols = v.size();
    std::size_t rank = 0;
    for (std::size_t i = 0; i < diag.size(); ++i)
        if (diag[i] != 0) rank = i + 1;

    for (int round = 0; round < 500; ++round) {
        bool moved = false;
        for (std::size_t i = rank; i < cols; ++i) {
            const auto vi = column(v, i);
            const mpz_class n = row_dot(vi, vi);
            for (std::size_t j = 0; j < cols; ++j) {
                if (i == j) continue;
                const mpz_class c = round_div(-row_dot(column(v, j), vi), n);
                if (c != 0) {
                    big_add_col(v, j, i, c);
                    moved = true;
                }
            }
        }
        for (std::size_t i = rank; i < rows; ++i) {
            const mpz_class n = row_dot(u[i], u[i]);
            for (std::size_t j = 0; j < rows; ++j) {
                if (i == j) continue;
                const mpz_class c = round_div(-row_dot(u[j], u[i]), n);
                if (c != 0) {
                    big_add_row(u, j, i, c);
                    moved = true;
                }
            }
        }
        for (std::size_t j = 0; j < rank; ++j)
            for (std::size_t i = j + 1; i < rank; ++i) {
                const mpz_class r = diag[i] / diag[j];
                {
                    const auto vi = column(v, i), vj = column(v, j);
                    const mpz_class den = row_dot(vi, vi) + r * r * row_dot(u[j], u[j]);
                    const mpz_class c = round_div(r * row_dot(u[i], u[j]) - row_dot(vj, vi), den);
                    if (c != 0) {
                        big_add_col(v, j, i, c);
                        big_add_row(u, i, j, -c * r);
                        moved = true;
                    }
                }
                {
                    const auto vi = column(v, i), vj = column(v, j);
                    const mpz_class den = row_dot(u[i], u[i]) + r * r * row_dot(vj, vj);
                    const mpz_class c = round_div(r * row_dot(vi, vj) - row_dot(u[j], u[i]), den);
                    if (c != 0) {
                        big_add_row(u, j, i, c);
                        big_add_col(v, i, j, -c * r);
                        moved = true;
                    }
                }
            }
        if (!moved) break;
    }
}

IntMatrix to_int_matrix(const BigMatrix& a)
{
    IntMatrix out(a.size(), a.empty() ? 0 : a[0].size());
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) {
            if (!a[i][j].fits_slong_p()) throw OverflowError("Smith transform entry exceeds 64 bits");
            out(i, j) = a[i][j].get_si();
        }
    return out;
}

} // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size())
{
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols)
{
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<Int> IntMatrix::row(std::size_t i) const
{
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const
{
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch in product");
    IntMatrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) = checked::add(p(i, j), checked::mul(a, o(k, j)));
        }
    return p;
}

std::string IntMatrix::to_string() const
{
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        out << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) out << (j ? ", " : "") << (*this)(i, j);
        out << ']';
    }
    out << ']';
    return out.str();
}

Int determinant(const IntMatrix& m)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            swap_rows(a, k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = checked::sub(checked::mul(a(i, j), a(k, k)), checked::mul(a(i, k), a(k, j))) / prev;
        prev = a(k, k);
    }
    return checked::mul(sign, a(n - 1, n - 1));
}

SmithForm smith_normal_form(const IntMatrix& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    BigMatrix a(rows, std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = static_cast<long>(m(i, j));
    BigMatrix u = big_identity(rows);
    BigMatrix v = big_identity(cols);
    const std::size_t k = std::min(rows, cols);

    for (std::size_t t = 0; t < k; ++t) {
        bool done = false;
        while (!done) {
            // pivot: smallest nonzero magnitude in the trailing block, first in row-major order
            std::size_t pi = rows, pj = cols;
            mpz_class best = 0;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    const mpz_class x = abs(a[i][j]);
                    if (x != 0 && (best == 0 || x < best)) {
                        best = x;
                        pi = i;
                        pj = j;
                    }
                }
            if (best == 0) break;
            std::swap(a[t], a[pi]);
            std::swap(u[t], u[pi]);
            for (auto& row : a) std::swap(row[t], row[pj]);
            for (auto& row : v) std::swap(row[t], row[pj]);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                const mpz_class q = nearest_quotient(a[i][t], a[t][t]);
                big_add_row(a, i, t, -q);
                big_add_row(u, i, t, -q);
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                const mpz_class q = nearest_quotient(a[t][j], a[t][t]);
                big_add_col(a, j, t, -q);
                big_add_col(v, j, t, -q);
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            // the pivot must divide the rest of the trailing block
            done = true;
            for (std::size_t i = t + 1; i < rows && done; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        big_add_row(a, t, i, 1);
                        big_add_row(u, t, i, 1);
                        done = false;
                        break;
                    }
        }
        if (a[t][t] < 0) {
            for (auto& x : a[t]) x = -x;
            for (auto& x : u[t]) x = -x;
        }
    }

    std::vector<mpz_class> diag;
    for (std::size_t t = 0; t < k; ++t) diag.push_back(a[t][t]);
    shrink_transforms(diag, u, v);

    SmithForm out{to_int_matrix(u), to_int_matrix(a), to_int_matrix(v), {}};
    for (std::size_t d = 0; d < k; ++d) out.diag.push_back(out.D(d, d));
    return out;
}

IntMatrix hermite_normal_form(const IntMatrix& m)
{
    IntMatrix a = m;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::size_t p = 0;
    for (std::size_t c = 0; c < cols && p < rows; ++c) {
        for (;;) {
            std::size_t best_row = rows;
            Int best = 0;
            for (std::size_t i = p; i < rows; ++i) {
                const Int x = checked::abs(a(i, c));
                if (x != 0 && (best == 0 || x < best)) {
                    best = x;
                    best_row = i;
                }
            }
            if (best == 0) break;
            swap_rows(a, p, best_row);
            bool clean = true;
            for (std::size_t i = p + 1; i < rows; ++i) {
                if (a(i, c) == 0) continue;
                add_row(a, i, p, checked::neg(a(i, c) / a(p, c)));
                if (a(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (a(p, c) == 0) continue;
        if (a(p, c) < 0) negate_row(a, p);
        for (std::size_t i = 0; i < p; ++i) add_row(a, i, p, checked::neg(floor_div(a(i, c), a(p, c))));
        ++p;
    }
    IntMatrix h(p, cols);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < cols; ++j) h(i, j) = a(i, j);
    return h;
}

AbGroup AbGroup::make(std::size_t free_rank, std::vector<Int> torsion)
{
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        if (torsion[i] < 2) throw std::invalid_argument("invariant factors must be >= 2");
        if (i > 0 && torsion[i] % torsion[i - 1] != 0)
            throw std::invalid_argument("invariant factors must form a divisibility chain");
    }
    return AbGroup{free_rank, std::move(torsion)};
}

Int AbGroup::torsion_order() const
{
    Int o = 1;
    for (Int t : torsion) o = checked::mul(o, t);
    return o;
}

GroupElem AbGroup::zero() const
{
    return GroupElem{std::vector<Int>(free_rank, 0), std::vector<Int>(torsion.size(), 0)};
}

GroupElem AbGroup::elem(std::vector<Int> free, std::vector<Int> tors) const
{
    if (free.size() != free_rank || tors.size() != torsion.size())
        throw GroupMismatch("element shape does not match " + to_string());
    return reduce(GroupElem{std::move(free), std::move(tors)});
}

GroupElem AbGroup::reduce(GroupElem g) const
{
    if (g.free.size() != free_rank || g.tors.size() != torsion.size())
        throw GroupMismatch("element shape does not match " + to_string());
    for (std::size_t i = 0; i < torsion.size(); ++i) g.tors[i] = checked::mod(g.tors[i], torsion[i]);
    return g;
}

bool AbGroup::owns(const GroupElem& g) const
{
    if (g.free.size() != free_rank || g.tors.size() != torsion.size()) return false;
    for (std::size_t i = 0; i < torsion.size(); ++i)
        if (g.tors[i] < 0 || g.tors[i] >= torsion[i]) return false;
    return true;
}

void AbGroup::require(const GroupElem& g) const
{
    if (!owns(g)) throw GroupMismatch("element does not belong to " + to_string());
}

GroupElem AbGroup::add(const GroupElem& a, const GroupElem& b) const
{
    require(a);
    require(b);
    GroupElem r = a;
    for (std::size_t i = 0; i < free_rank; ++i) r.free[i] = checked::add(r.free[i], b.free[i]);
    for (std::size_t i = 0; i < torsion.size(); ++i) r.tors[i] = (r.tors[i] + b.tors[i]) % torsion[i];
    return r;
}

GroupElem AbGroup::neg(const GroupElem& a) const
{
    return scale(-1, a);
}

GroupElem AbGroup::sub(const GroupElem& a, const GroupElem& b) const
{
    return add(a, neg(b));
}

GroupElem AbGroup::scale(Int k, const GroupElem& a) const
{
    require(a);
    GroupElem r = a;
    for (auto& x : r.free) x = checked::mul(k, x);
    for (std::size_t i = 0; i < torsion.size(); ++i)
        r.tors[i] = checked::mod(checked::mul(checked::mod(k, torsion[i]), r.tors[i]), torsion[i]);
    return r;
}

std::vector<GroupElem> AbGroup::torsion_elements() const
{
    std::vector<GroupElem> out;
    GroupElem cur = zero();
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == torsion.size()) {
            out.push_back(cur);
            return;
        }
        for (Int v = 0; v < torsion[i]; ++v) {
            cur.tors[i] = v;
            rec(i + 1);
        }
        cur.tors[i] = 0;
    };
    rec(0);
    return out;
}

std::string AbGroup::to_string() const
{
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < free_rank; ++i) parts.emplace_back("Z");
    for (Int t : torsion) parts.push_back("Z/" + std::to_string(t));
    if (parts.empty()) return "0";
    std::string s = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
    return s;
}

std::vector<Int> lift(const GroupElem& g)
{
    std::vector<Int> v = g.free;
    v.insert(v.end(), g.tors.begin(), g.tors.end());
    return v;
}

AbGroup cokernel(const IntMatrix& m)
{
    const SmithForm snf = smith_normal_form(m);
    AbGroup g;
    std::size_t nonzero = 0;
    for (Int d : snf.diag) {
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) g.torsion.push_back(d);
    }
    g.free_rank = m.rows() - nonzero;
    return g;
}

Subgroup span(const AbGroup& ambient, std::span<const GroupElem> gens)
{
    const std::size_t n = ambient.coords();
    std::vector<std::vector<Int>> rows;
    for (const auto& g : gens) {
        ambient.require(g);
        rows.push_back(lift(g));
    }
    for (std::size_t i = 0; i < ambient.torsion.size(); ++i) {
        std::vector<Int> rel(n, 0);
        rel[ambient.free_rank + i] = ambient.torsion[i];
        rows.push_back(std::move(rel));
    }
    Subgroup h;
    h.ambient_ = ambient;
    h.gens_.assign(gens.begin(), gens.end());
    h.basis_ = hermite_normal_form(IntMatrix::from_rows(rows, n));
    return h;
}

bool Subgroup::contains(const GroupElem& g) const
{
    ambient_.require(g);
    std::vector<Int> x = lift(g);
    std::size_t col = 0;
    for (std::size_t k = 0; k < basis_.rows(); ++k) {
        std::size_t p = 0;
        while (basis_(k, p) == 0) ++p;
        for (; col < p; ++col)
            if (x[col] != 0) return false;
        const Int pivot = basis_(k, p);
        if (x[p] % pivot != 0) return false;
        const Int q = x[p] / pivot;
        for (std::size_t j = p; j < x.size(); ++j) x[j] = checked::sub(x[j], checked::mul(q, basis_(k, j)));
        col = p + 1;
    }
    for (; col < x.size(); ++col)
        if (x[col] != 0) return false;
    return true;
}

Quotient quotient(const AbGroup& ambient, const Subgroup& h)
{
    if (!(h.ambient() == ambient)) throw GroupMismatch("subgroup of a different group");
    const std::size_t n = ambient.coords();
    const IntMatrix& b = h.basis();
    // columns = lattice basis vectors
    const IntMatrix cols = b.transpose();
    Quotient q;
    q.ambient_ = ambient;
    q.row_kind_.assign(n, 0);
    if (cols.cols() == 0) {
        q.U_ = IntMatrix::identity(n);
        q.group_ = AbGroup{n, {}};
        return q;
    }
    const SmithForm snf = smith_normal_form(cols);
    q.U_ = snf.U;
    for (std::size_t i = 0; i < snf.diag.size(); ++i) q.row_kind_[i] = snf.diag[i];
    for (Int kind : q.row_kind_) {
        if (kind == 0)
            ++q.group_.free_rank;
        else if (kind > 1)
            q.group_.torsion.push_back(kind);
    }
    return q;
}

GroupElem Quotient::project(const GroupElem& g) const
{
    ambient_.require(g);
    const std::vector<Int> x = lift(g);
    GroupElem out = group_.zero();
    std::size_t fi = 0, ti = 0;
    for (std::size_t i = 0; i < row_kind_.size(); ++i) {
        if (row_kind_[i] == 1) continue;
        Int y = 0;
        for (std::size_t j = 0; j < x.size(); ++j) y = checked::add(y, checked::mul(U_(i, j), x[j]));
        if (row_kind_[i] == 0)
            out.free[fi++] = y;
        else
            out.tors[ti++] = checked::mod(y, row_kind_[i]);
    }
    return out;
}

std::optional<Int> order_in_quotient(const AbGroup& ambient, const Subgroup& h, const GroupElem& g)
{
    const Quotient q = quotient(ambient, h);
    const GroupElem p = q.project(g);
    for (Int f : p.free)
        if (f != 0) return std::nullopt;
    return element_order(q.group(), p);
}

bool generates(const AbGroup& ambient, std::span<const GroupElem> gens)
{
    return quotient(ambient, span(ambient, gens)).group().is_trivial();
}

std::optional<Int> intersection_index(const AbGroup& ambient, std::span<const Subgroup> subgroups)
{
    std::vector<Quotient> qs;
    std::vector<Int> moduli;
    for (const auto& h : subgroups) {
        qs.push_back(quotient(ambient, h));
        if (!qs.back().group().is_finite()) return std::nullopt;
        for (Int t : qs.back().group().torsion) moduli.push_back(t);
    }
    if (moduli.empty()) return 1;

    const std::size_t c = moduli.size();
    const std::size_t n = ambient.coords();
    IntMatrix a(c, n + c);
    for (std::size_t j = 0; j < n; ++j) {
        const GroupElem e = unit_elem(ambient, j);
        std::size_t row = 0;
        for (const auto& q : qs)
            for (Int x : q.project(e).tors) a(row++, j) = x;
    }
    Int product = 1;
    for (std::size_t l = 0; l < c; ++l) {
        a(l, n + l) = moduli[l];
        product = checked::mul(product, moduli[l]);
    }
    // |image| = |prod| / |prod / image|
    return product / cokernel(a).torsion_order();
}

GroupElem GroupAutomorphism::apply(const AbGroup& g, const GroupElem& x) const
{
    g.require(x);
    GroupElem r = g.zero();
    for (std::size_t i = 0; i < images.size(); ++i)
        if (x.tors[i] != 0) r = g.add(r, g.scale(x.tors[i], images[i]));
    return r;
}

std::vector<GroupAutomorphism> torsion_automorphisms(const AbGroup& g, Int order_limit, std::size_t count_limit)
{
    if (g.free_rank != 0) throw std::invalid_argument("torsion_automorphisms needs a finite group");
    if (g.torsion_order() > order_limit)
        throw LimitExceeded("group order " + std::to_string(g.torsion_order()) + " exceeds automorphism limit");

    const std::vector<GroupElem> elems = g.torsion_elements();
    const std::size_t q = g.torsion.size();
    std::vector<std::vector<GroupElem>> candidates(q);
    for (std::size_t i = 0; i < q; ++i)
        for (const auto& x : elems)
            if (element_order(g, x) == g.torsion[i]) candidates[i].push_back(x);

    std::vector<GroupAutomorphism> out;
    std::vector<GroupElem> chosen;
    std::function<void(std::size_t, Int)> rec = [&](std::size_t i, Int expected) {
        if (i == q) {
            if (out.size() >= count_limit) throw LimitExceeded("automorphism count exceeds limit");
            out.push_back(GroupAutomorphism{chosen});
            return;
        }
        const Int next = checked::mul(expected, g.torsion[i]);
        for (const auto& x : candidates[i]) {
            chosen.push_back(x);
            // images of e_1..e_i must span a subgroup of order t_1 * ... * t_i
            const Int spanned = g.torsion_order() / quotient(g, span(g, chosen)).group().torsion_order();
            if (spanned == next) rec(i + 1, next);
            chosen.pop_back();
        }
    };
    rec(0, 1);
    return out;
}

} // namespace coxfano
