#pragma once

// Exact integer linear algebra and finitely generated abelian groups.
//
// A group K = Z^s + Z/t_1 + ... + Z/t_q is stored by its invariant-factor
// chain t_1 | t_2 | ... | t_q (each t_i >= 2).  Elements carry s free
// coordinates followed by q residues.  Subgroups are represented by the
// lattice they lift to in Z^(s+q), i.e. the span of the lifted generators
// together with the torsion relations t_i * e_(s+i).

#include "coxfano/checked.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coxfano {

class GroupMismatch : public std::invalid_argument {
public:
    explicit GroupMismatch(const std::string& what) : std::invalid_argument(what) {}
};

class LimitExceeded : public std::runtime_error {
public:
    explicit LimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Int> row(std::size_t i) const;
    IntMatrix transpose() const;

    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix&) const = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

/// Exact determinant (Bareiss fraction-free elimination).
Int determinant(const IntMatrix& m);

struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    std::vector<Int> diag; // min(rows, cols) entries, d_1 | d_2 | ..., zeros last
};

/// U * M * V = D with U, V unimodular.  Deterministic for equal input.
SmithForm smith_normal_form(const IntMatrix& m);

/// Row-style Hermite normal form: nonzero rows only, positive pivots, entries
/// above each pivot reduced into [0, pivot).  Spans the row lattice of m.
IntMatrix hermite_normal_form(const IntMatrix& m);

struct GroupElem {
    std::vector<Int> free;
    std::vector<Int> tors;

    auto operator<=>(const GroupElem&) const = default;
};

struct AbGroup {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;

    /// Validates the invariant-factor chain.
    static AbGroup make(std::size_t free_rank, std::vector<Int> torsion);
    /// Z + K^t, the class-group shape used by every ring datum.
    static AbGroup rank_one(std::vector<Int> torsion) { return make(1, std::move(torsion)); }

    std::size_t coords() const { return free_rank + torsion.size(); }
    Int torsion_order() const;
    bool is_finite() const { return free_rank == 0; }
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    AbGroup torsion_part() const { return AbGroup{0, torsion}; }

    GroupElem zero() const;
    GroupElem elem(std::vector<Int> free, std::vector<Int> tors) const;
    GroupElem reduce(GroupElem g) const;
    bool owns(const GroupElem& g) const; // shape matches and residues reduced
    void require(const GroupElem& g) const;

    GroupElem add(const GroupElem& a, const GroupElem& b) const;
    GroupElem sub(const GroupElem& a, const GroupElem& b) const;
    GroupElem neg(const GroupElem& a) const;
    GroupElem scale(Int k, const GroupElem& a) const;

    /// All elements of the torsion part, residues in lexicographic order.
    std::vector<GroupElem> torsion_elements() const;

    std::string to_string() const;

    auto operator<=>(const AbGroup&) const = default;
};

/// The lift of g to Z^(s+q).
std::vector<Int> lift(const GroupElem& g);

/// Z^rows / column span of m, in invariant-factor form.
AbGroup cokernel(const IntMatrix& m);

class Subgroup {
public:
    const AbGroup& ambient() const { return ambient_; }
    const std::vector<GroupElem>& gens() const { return gens_; }
    /// Canonical Hermite basis of the lifted lattice (includes torsion relations).
    const IntMatrix& basis() const { return basis_; }

    bool contains(const GroupElem& g) const;

    bool operator==(const Subgroup& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

private:
    friend Subgroup span(const AbGroup& ambient, std::span<const GroupElem> gens);
    AbGroup ambient_;
    std::vector<GroupElem> gens_;
    IntMatrix basis_;
};

Subgroup span(const AbGroup& ambient, std::span<const GroupElem> gens);
inline Subgroup span(const AbGroup& ambient, const std::vector<GroupElem>& gens)
{
    return span(ambient, std::span<const GroupElem>(gens));
}

/// ambient / H together with the projection onto it.
class Quotient {
public:
    const AbGroup& group() const { return group_; }
    GroupElem project(const GroupElem& g) const;

private:
    friend Quotient quotient(const AbGroup& ambient, const Subgroup& h);
    AbGroup ambient_;
    AbGroup group_;
    IntMatrix U_;
    // Per row of U: 0 = free coordinate, 1 = dropped, > 1 = torsion modulus.
    std::vector<Int> row_kind_;
};

Quotient quotient(const AbGroup& ambient, const Subgroup& h);

/// Least k >= 1 with k*g in H; nullopt when no such k exists.
std::optional<Int> order_in_quotient(const AbGroup& ambient, const Subgroup& h, const GroupElem& g);

bool generates(const AbGroup& ambient, std::span<const GroupElem> gens);
inline bool generates(const AbGroup& ambient, const std::vector<GroupElem>& gens)
{
    return generates(ambient, std::span<const GroupElem>(gens));
}

/// [ambient : H_1 ∩ ... ∩ H_k]; nullopt when infinite.  Computed as the order
/// of the image of the diagonal map ambient -> prod ambient/H_i.
std::optional<Int> intersection_index(const AbGroup& ambient, std::span<const Subgroup> subgroups);

/// An automorphism of a finite group, given by the images of the standard
/// generators e_1, ..., e_q.
struct GroupAutomorphism {
    std::vector<GroupElem> images;

    GroupElem apply(const AbGroup& g, const GroupElem& x) const;
    bool operator==(const GroupAutomorphism&) const = default;
};

/// Every automorphism of a finite group.  Fails when |G| exceeds `order_limit`
/// or the automorphism count exceeds `count_limit`.
std::vector<GroupAutomorphism> torsion_automorphisms(const AbGroup& g,
                                                     Int order_limit = 64,
                                                     std::size_t count_limit = 1'000'000);

} // namespace coxfano
