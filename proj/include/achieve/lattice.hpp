#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "achieve/errors.hpp"

namespace achieve {

using Int = std::int64_t;

inline constexpr int kMaxDim = 4;

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);

/// Nonnegative gcd; gcd(0, 0) = 0.
Int gcd_int(Int a, Int b);

/// Floor division (rounds toward -inf), exact for any divisor != 0.
Int floor_div(Int a, Int b);

/// A point of Z^n, 1 <= n <= 4. Coordinates beyond dim() are kept zero so
/// that comparisons and hashing can look at the whole array.
class Vec {
public:
    Vec() = default;
    Vec(std::initializer_list<Int> coords);
    static Vec zero(int dim);
    static Vec unit(int dim, int axis);
    static Vec from(std::span<const Int> coords);

    int dim() const noexcept { return dim_; }
    Int operator[](int i) const noexcept { return c_[static_cast<std::size_t>(i)]; }
    Int& operator[](int i) noexcept { return c_[static_cast<std::size_t>(i)]; }

    Vec operator+(const Vec& o) const;
    Vec operator-(const Vec& o) const;
    Vec operator-() const;
    Vec scaled(Int s) const;

    bool is_zero() const noexcept;
    Int sup_norm() const noexcept;
    /// gcd of the coordinates (0 for the zero vector).
    Int content() const noexcept;
    /// The representative of {v, -v} whose first nonzero coordinate is positive.
    Vec pair_rep() const;

    bool operator==(const Vec& o) const noexcept { return dim_ == o.dim_ && c_ == o.c_; }
    bool operator!=(const Vec& o) const noexcept { return !(*this == o); }
    /// Lexicographic order on coordinates (dims must match where compared).
    bool operator<(const Vec& o) const noexcept { return c_ < o.c_; }

    std::string str() const;

private:
    std::array<Int, kMaxDim> c_{};
    int dim_ = 0;
};

struct VecHash {
    std::size_t operator()(const Vec& v) const noexcept;
};

/// true iff v != 0 and its coordinates are coprime.
bool is_primitive(const Vec& v);

/// A finite symmetric subset of Z^n containing 0, stored sorted.
class SymmetricSet {
public:
    SymmetricSet() = default;
    /// Negation-closure of the input plus 0, deduplicated and sorted.
    /// Throws MixedDimension if the vectors disagree on dimension; an empty
    /// input yields {0} in the explicitly supplied dimension.
    static SymmetricSet closure(std::span<const Vec> vectors, int dim);

    int dim() const noexcept { return dim_; }
    const std::vector<Vec>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool contains(const Vec& v) const;
    /// Canonical representatives of the +- pairs of the nonzero members, sorted.
    std::vector<Vec> pair_reps() const;
    Int max_sup_norm() const;

    bool operator==(const SymmetricSet& o) const { return dim_ == o.dim_ && members_ == o.members_; }
    bool operator!=(const SymmetricSet& o) const { return !(*this == o); }
    bool operator<(const SymmetricSet& o) const { return members_ < o.members_; }

    std::string str() const;

private:
    int dim_ = 0;
    std::vector<Vec> members_; // sorted lexicographically, closed under negation, contains 0
};

inline SymmetricSet normalize_symmetric(std::span<const Vec> vectors, int dim) {
    return SymmetricSet::closure(vectors, dim);
}

/// A subgroup of Z^n held as its canonical column-style Hermite normal form:
/// pivot rows strictly increase column by column, pivots are positive, and in
/// each pivot row the entries of earlier columns are reduced modulo the pivot.
/// Two generating sets of the same subgroup produce the identical basis.
class Subgroup {
public:
    Subgroup() = default;
    static Subgroup from_generators(std::span<const Vec> generators, int dim);

    int dim() const noexcept { return dim_; }
    int rank() const noexcept { return static_cast<int>(basis_.size()); }
    const std::vector<Vec>& basis() const noexcept { return basis_; }
    const std::vector<int>& pivot_rows() const noexcept { return pivot_rows_; }

    /// Membership by back-substitution against the HNF.
    bool contains(const Vec& v) const;
    /// rank == n and all pivots are 1.
    bool is_full_lattice() const;

    bool operator==(const Subgroup& o) const { return dim_ == o.dim_ && basis_ == o.basis_; }

private:
    int dim_ = 0;
    std::vector<Vec> basis_;      // HNF columns
    std::vector<int> pivot_rows_; // pivot row per column
};

inline Subgroup hermite_basis(std::span<const Vec> generators, int dim) {
    return Subgroup::from_generators(generators, dim);
}

bool generates_full_lattice(const SymmetricSet& s);
bool generates_full_lattice(const Subgroup& s);

/// true iff the subgroup contains a primitive vector. Equivalent to the gcd
/// of all basis entries being 1: unimodular coordinate changes preserve the
/// coordinate gcd of every vector, and in Smith coordinates the first
/// invariant factor realizes the minimum.
bool subgroup_has_primitive(const Subgroup& s);

struct SmithInvariants {
    std::vector<Int> factors; // d_1 | d_2 | ... | d_r, positive
    int free_rank = 0;        // n - r copies of Z in the quotient
    bool cyclic = false;      // quotient generated by one element (Z counts as one)
    std::string quotient;     // human-readable decomposition of Z^n / L
};

/// Invariant factors of the basis matrix and the decomposition of Z^n / L.
SmithInvariants smith_invariants(const Subgroup& s);

/// 2x2 integer matrix, column major semantics: columns are the images of e1, e2.
struct Mat2 {
    std::array<std::array<Int, 2>, 2> m{}; // m[row][col]

    static Mat2 identity();
    static Mat2 from_columns(const Vec& u, const Vec& v);
    Int det() const;
    Vec apply(const Vec& v) const;
    /// Exact integer inverse; requires |det| = 1.
    Mat2 inverse() const;
    SymmetricSet apply(const SymmetricSet& s) const;
};

/// Matrix M with M e1 = u, M e2 = v; throws NotABasis unless det = +-1.
Mat2 unimodular_to_basis(const Vec& u, const Vec& v);

} // namespace achieve
