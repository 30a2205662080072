#include "achieve/grid.hpp"

#include <algorithm>
#include <array>

namespace achieve {

namespace {

std::vector<Vec> make_all_steps(int dim) {
    std::vector<Vec> steps;
    Vec d = Vec::zero(dim);
    for (int i = 0; i < dim; ++i) d[i] = -1;
    while (true) {
        if (!d.is_zero()) steps.push_back(d);
        int i = dim - 1;
        while (i >= 0 && d[i] == 1) {
            d[i] = -1;
            --i;
        }
        if (i < 0) break;
        d[i] += 1;
    }
    std::sort(steps.begin(), steps.end());
    return steps;
}

std::vector<Vec> make_positive_steps(int dim) {
    std::vector<Vec> pos;
    for (const Vec& d : make_all_steps(dim)) {
        if (d.pair_rep() == d) pos.push_back(d);
    }
    return pos;
}

} // namespace

const std::vector<Vec>& all_steps(int dim) {
    static const std::array<std::vector<Vec>, kMaxDim + 1> tables = [] {
        std::array<std::vector<Vec>, kMaxDim + 1> t;
        for (int n = 1; n <= kMaxDim; ++n) t[static_cast<std::size_t>(n)] = make_all_steps(n);
        return t;
    }();
    if (dim < 1 || dim > kMaxDim) throw Error(ErrorCode::UnsupportedDimension, "step dimension out of range");
    return tables[static_cast<std::size_t>(dim)];
}

const std::vector<Vec>& positive_steps(int dim) {
    static const std::array<std::vector<Vec>, kMaxDim + 1> tables = [] {
        std::array<std::vector<Vec>, kMaxDim + 1> t;
        for (int n = 1; n <= kMaxDim; ++n) t[static_cast<std::size_t>(n)] = make_positive_steps(n);
        return t;
    }();
    if (dim < 1 || dim > kMaxDim) throw Error(ErrorCode::UnsupportedDimension, "step dimension out of range");
    return tables[static_cast<std::size_t>(dim)];
}

bool is_valid_step(const Vec& d) {
    if (d.is_zero()) return false;
    for (int i = 0; i < d.dim(); ++i) {
        if (d[i] < -1 || d[i] > 1) return false;
    }
    return true;
}

std::size_t pow_size(int base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
    return r;
}

Vec wrap_step(const Vec& u, const Vec& d, int k, Vec* v_out) {
    Vec v = u;
    Vec w = Vec::zero(u.dim());
    for (int i = 0; i < u.dim(); ++i) {
        Int x = u[i] + d[i];
        if (x < 0) {
            v[i] = x + k;
            w[i] = -1;
        } else if (x >= k) {
            v[i] = x - k;
            w[i] = 1;
        } else {
            v[i] = x;
        }
    }
    if (v_out) *v_out = v;
    return w;
}

} // namespace achieve
