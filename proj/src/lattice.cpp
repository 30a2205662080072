#include "achieve/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace achieve {

Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw Error(ErrorCode::Overflow, "integer overflow in addition");
    }
    return r;
}

Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) {
        throw Error(ErrorCode::Overflow, "integer overflow in subtraction");
    }
    return r;
}

Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw Error(ErrorCode::Overflow, "integer overflow in multiplication");
    }
    return r;
}

Int gcd_int(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Vec::Vec(std::initializer_list<Int> coords) {
    if (coords.size() < 1 || coords.size() > kMaxDim) {
        throw Error(ErrorCode::UnsupportedDimension, "vector dimension must be between 1 and 4");
    }
    dim_ = static_cast<int>(coords.size());
    std::size_t i = 0;
    for (Int x : coords) c_[i++] = x;
}

Vec Vec::zero(int dim) {
    if (dim < 1 || dim > kMaxDim) {
        throw Error(ErrorCode::UnsupportedDimension, "vector dimension must be between 1 and 4");
    }
    Vec v;
    v.dim_ = dim;
    return v;
}

Vec Vec::unit(int dim, int axis) {
    Vec v = zero(dim);
    v.c_[static_cast<std::size_t>(axis)] = 1;
    return v;
}

Vec Vec::from(std::span<const Int> coords) {
    if (coords.size() < 1 || coords.size() > kMaxDim) {
        throw Error(ErrorCode::UnsupportedDimension, "vector dimension must be between 1 and 4");
    }
    Vec v;
    v.dim_ = static_cast<int>(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) v.c_[i] = coords[i];
    return v;
}

Vec Vec::operator+(const Vec& o) const {
    if (dim_ != o.dim_) throw Error(ErrorCode::DimensionMismatch, "vector dimensions differ");
    Vec r = *this;
    for (int i = 0; i < dim_; ++i) r.c_[static_cast<std::size_t>(i)] = checked_add(c_[static_cast<std::size_t>(i)], o.c_[static_cast<std::size_t>(i)]);
    return r;
}

Vec Vec::operator-(const Vec& o) const {
    if (dim_ != o.dim_) throw Error(ErrorCode::DimensionMismatch, "vector dimensions differ");
    Vec r = *this;
    for (int i = 0; i < dim_; ++i) r.c_[static_cast<std::size_t>(i)] = checked_sub(c_[static_cast<std::size_t>(i)], o.c_[static_cast<std::size_t>(i)]);
    return r;
}

Vec Vec::operator-() const {
    Vec r = *this;
    for (int i = 0; i < dim_; ++i) r.c_[static_cast<std::size_t>(i)] = checked_sub(0, c_[static_cast<std::size_t>(i)]);
    return r;
}

Vec Vec::scaled(Int s) const {
    Vec r = *this;
    for (int i = 0; i < dim_; ++i) r.c_[static_cast<std::size_t>(i)] = checked_mul(c_[static_cast<std::size_t>(i)], s);
    return r;
}

bool Vec::is_zero() const noexcept {
    for (int i = 0; i < dim_; ++i) {
        if (c_[static_cast<std::size_t>(i)] != 0) return false;
    }
    return true;
}

Int Vec::sup_norm() const noexcept {
    Int m = 0;
    for (int i = 0; i < dim_; ++i) {
        Int a = c_[static_cast<std::size_t>(i)];
        if (a < 0) a = -a;
        if (a > m) m = a;
    }
    return m;
}

Int Vec::content() const noexcept {
    Int g = 0;
    for (int i = 0; i < dim_; ++i) g = gcd_int(g, c_[static_cast<std::size_t>(i)]);
    return g;
}

Vec Vec::pair_rep() const {
    for (int i = 0; i < dim_; ++i) {
        Int a = c_[static_cast<std::size_t>(i)];
        if (a > 0) return *this;
        if (a < 0) return -*this;
    }
    return *this;
}

std::string Vec::str() const {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < dim_; ++i) {
        if (i) os << ',';
        os << c_[static_cast<std::size_t>(i)];
    }
    os << ')';
    return os.str();
}

std::size_t VecHash::operator()(const Vec& v) const noexcept {
    std::size_t h = static_cast<std::size_t>(v.dim());
    for (int i = 0; i < v.dim(); ++i) {
        h ^= static_cast<std::size_t>(v[i]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

bool is_primitive(const Vec& v) {
    return !v.is_zero() && v.content() == 1;
}

SymmetricSet SymmetricSet::closure(std::span<const Vec> vectors, int dim) {
    if (dim < 1 || dim > kMaxDim) {
        throw Error(ErrorCode::UnsupportedDimension, "set dimension must be between 1 and 4");
    }
    for (const Vec& v : vectors) {
        if (v.dim() != dim) throw Error(ErrorCode::MixedDimension, "vectors of mixed dimension");
    }
    SymmetricSet s;
    s.dim_ = dim;
    s.members_.reserve(2 * vectors.size() + 1);
    s.members_.push_back(Vec::zero(dim));
    for (const Vec& v : vectors) {
        s.members_.push_back(v);
        s.members_.push_back(-v);
    }
    std::sort(s.members_.begin(), s.members_.end());
    s.members_.erase(std::unique(s.members_.begin(), s.members_.end()), s.members_.end());
    return s;
}

bool SymmetricSet::contains(const Vec& v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
}

std::vector<Vec> SymmetricSet::pair_reps() const {
    std::vector<Vec> reps;
    for (const Vec& v : members_) {
        if (v.is_zero()) continue;
        Vec r = v.pair_rep();
        if (r == v) reps.push_back(r);
    }
    std::sort(reps.begin(), reps.end());
    return reps;
}

Int SymmetricSet::max_sup_norm() const {
    Int m = 0;
    for (const Vec& v : members_) m = std::max(m, v.sup_norm());
    return m;
}

std::string SymmetricSet::str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) s += ",";
        s += members_[i].str();
    }
    s += "}";
    return s;
}

namespace {

// Column gcd step: combine columns a and b so that a's entry in `row` becomes
// gcd(a[row], b[row]) and b's entry becomes zero. Unimodular on the column span.
void gcd_columns(Vec& a, Vec& b, int row) {
    while (b[row] != 0) {
        Int q = floor_div(a[row], b[row]);
        if (q != 0) {
            a = a - b.scaled(q);
        }
        std::swap(a, b);
    }
}

} // namespace

Subgroup Subgroup::from_generators(std::span<const Vec> generators, int dim) {
    if (dim < 1 || dim > kMaxDim) {
        throw Error(ErrorCode::UnsupportedDimension, "subgroup dimension must be between 1 and 4");
    }
    for (const Vec& v : generators) {
        if (v.dim() != dim) throw Error(ErrorCode::MixedDimension, "generators of mixed dimension");
    }
    std::vector<Vec> cols(generators.begin(), generators.end());
    cols.erase(std::remove_if(cols.begin(), cols.end(), [](const Vec& v) { return v.is_zero(); }), cols.end());

    Subgroup s;
    s.dim_ = dim;
    std::size_t r = 0; // number of pivot columns fixed so far
    for (int row = 0; row < dim; ++row) {
        // Find a column at or after r with a nonzero entry in this row.
        std::size_t piv = r;
        while (piv < cols.size() && cols[piv][row] == 0) ++piv;
        if (piv == cols.size()) continue;
        std::swap(cols[r], cols[piv]);
        // Zero this row in every later column, accumulating the gcd in cols[r].
        for (std::size_t j = r + 1; j < cols.size(); ++j) {
            if (cols[j][row] != 0) gcd_columns(cols[r], cols[j], row);
        }
        if (cols[r][row] < 0) cols[r] = -cols[r];
        // Reduce earlier columns in this row modulo the pivot.
        for (std::size_t j = 0; j < r; ++j) {
            Int q = floor_div(cols[j][row], cols[r][row]);
            if (q != 0) cols[j] = cols[j] - cols[r].scaled(q);
        }
        s.pivot_rows_.push_back(row);
        ++r;
    }
    cols.resize(r);
    s.basis_ = std::move(cols);
    return s;
}

bool Subgroup::contains(const Vec& v) const {
    if (v.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "vector dimension differs from subgroup");
    Vec w = v;
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        int row = pivot_rows_[j];
        Int p = basis_[j][row];
        if (w[row] % p != 0) return false;
        Int c = w[row] / p;
        if (c != 0) w = w - basis_[j].scaled(c);
    }
    return w.is_zero();
}

bool Subgroup::is_full_lattice() const {
    if (rank() != dim_) return false;
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        if (basis_[j][pivot_rows_[j]] != 1) return false;
    }
    return true;
}

bool generates_full_lattice(const SymmetricSet& s) {
    return Subgroup::from_generators(s.members(), s.dim()).is_full_lattice();
}

bool generates_full_lattice(const Subgroup& s) {
    return s.is_full_lattice();
}

bool subgroup_has_primitive(const Subgroup& s) {
    if (s.rank() == 0) return false;
    Int g = 0;
    for (const Vec& col : s.basis()) g = gcd_int(g, col.content());
    return g == 1;
}

namespace {

// Smith normal form of a small integer matrix (row/column elimination with
// divisibility fixups). Returns the positive diagonal entries.
std::vector<Int> smith_diagonal(std::vector<std::array<Int, kMaxDim>> m, int rows, int cols) {
    std::vector<Int> diag;
    int t = 0;
    while (t < rows && t < cols) {
        // Find a nonzero pivot at or after (t, t).
        int pr = -1, pc = -1;
        for (int i = t; i < rows && pr < 0; ++i) {
            for (int j = t; j < cols; ++j) {
                if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0) {
                    pr = i;
                    pc = j;
                    break;
                }
            }
        }
        if (pr < 0) break;
        std::swap(m[static_cast<std::size_t>(t)], m[static_cast<std::size_t>(pr)]);
        for (int i = 0; i < rows; ++i) std::swap(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)], m[static_cast<std::size_t>(i)][static_cast<std::size_t>(pc)]);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            // Clear column t.
            for (int i = t + 1; i < rows; ++i) {
                while (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] != 0) {
                    Int q = floor_div(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)], m[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)]);
                    for (int j = t; j < cols; ++j) {
                        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = checked_sub(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], checked_mul(q, m[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)]));
                    }
                    if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] != 0) std::swap(m[static_cast<std::size_t>(t)], m[static_cast<std::size_t>(i)]);
                }
            }
            // Clear row t.
            for (int j = t + 1; j < cols; ++j) {
                while (m[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] != 0) {
                    Int q = floor_div(m[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)], m[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)]);
                    for (int i = t; i < rows; ++i) {
                        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = checked_sub(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], checked_mul(q, m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]));
                    }
                    if (m[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] != 0) {
                        for (int i = 0; i < rows; ++i) std::swap(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)], m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
                        dirty = true; // column t may be dirty again
                    }
                }
            }
        }
        diag.push_back(m[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] < 0 ? -m[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] : m[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)]);
        ++t;
    }
    // Enforce the divisibility chain d1 | d2 | ... by gcd/lcm swaps.
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            if (diag[j] % diag[i] != 0) {
                Int g = gcd_int(diag[i], diag[j]);
                Int l = diag[i] / g * diag[j];
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    return diag;
}

} // namespace

SmithInvariants smith_invariants(const Subgroup& s) {
    SmithInvariants out;
    int n = s.dim();
    int r = s.rank();
    std::vector<std::array<Int, kMaxDim>> m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < r; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s.basis()[static_cast<std::size_t>(j)][i];
    }
    out.factors = smith_diagonal(std::move(m), n, r);
    out.free_rank = n - static_cast<int>(out.factors.size());

    int nontrivial = out.free_rank; // each Z summand counts as one generator
    for (Int d : out.factors) {
        if (d != 1) ++nontrivial;
    }
    out.cyclic = nontrivial <= 1;

    std::string q;
    auto append = [&q](const std::string& part) {
        if (!q.empty()) q += " + ";
        q += part;
    };
    for (int i = 0; i < out.free_rank; ++i) append("Z");
    for (Int d : out.factors) {
        if (d != 1) append("Z/" + std::to_string(d));
    }
    out.quotient = q.empty() ? "0" : q;
    return out;
}

Mat2 Mat2::identity() {
    Mat2 r;
    r.m[0][0] = 1;
    r.m[1][1] = 1;
    return r;
}

Mat2 Mat2::from_columns(const Vec& u, const Vec& v) {
    if (u.dim() != 2 || v.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "Mat2 columns must be 2-dimensional");
    Mat2 r;
    r.m[0][0] = u[0];
    r.m[1][0] = u[1];
    r.m[0][1] = v[0];
    r.m[1][1] = v[1];
    return r;
}

Int Mat2::det() const {
    return checked_sub(checked_mul(m[0][0], m[1][1]), checked_mul(m[0][1], m[1][0]));
}

Vec Mat2::apply(const Vec& v) const {
    if (v.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "Mat2 applies to 2-dimensional vectors");
    return Vec{checked_add(checked_mul(m[0][0], v[0]), checked_mul(m[0][1], v[1])),
               checked_add(checked_mul(m[1][0], v[0]), checked_mul(m[1][1], v[1]))};
}

Mat2 Mat2::inverse() const {
    Int d = det();
    if (d != 1 && d != -1) throw Error(ErrorCode::NotABasis, "matrix is not unimodular");
    Mat2 r;
    r.m[0][0] = m[1][1] * d;
    r.m[0][1] = -m[0][1] * d;
    r.m[1][0] = -m[1][0] * d;
    r.m[1][1] = m[0][0] * d;
    return r;
}

SymmetricSet Mat2::apply(const SymmetricSet& s) const {
    std::vector<Vec> imgs;
    imgs.reserve(s.size());
    for (const Vec& v : s.members()) imgs.push_back(apply(v));
    return SymmetricSet::closure(imgs, 2);
}

Mat2 unimodular_to_basis(const Vec& u, const Vec& v) {
    Mat2 m = Mat2::from_columns(u, v);
    Int d = m.det();
    if (d != 1 && d != -1) {
        throw Error(ErrorCode::NotABasis, "vectors do not form a basis of Z^2 (det " + std::to_string(d) + ")");
    }
    return m;
}

} // namespace achieve
