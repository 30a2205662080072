#include "achieve/nset.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "achieve/grid.hpp"

namespace achieve {

int max_resolution(int dim) {
    switch (dim) {
        case 1: return 729;
        case 2: return 32;
        case 3: return 12;
        case 4: return 6;
        default: throw Error(ErrorCode::UnsupportedDimension, "dimension must be between 1 and 4");
    }
}

DiscreteNSet::DiscreteNSet(int dim, int k) : DiscreteNSet(dim, k, std::vector<Vec>(pow_size(k, dim), Vec::zero(dim))) {}

DiscreteNSet::DiscreteNSet(int dim, int k, std::vector<Vec> shifts) : dim_(dim), k_(k), shifts_(std::move(shifts)) {
    if (dim < 1 || dim > kMaxDim) throw Error(ErrorCode::UnsupportedDimension, "dimension must be between 1 and 4");
    if (k < 3) throw Error(ErrorCode::InvalidInput, "resolution k must be at least 3");
    if (k > max_resolution(dim)) {
        throw Error(ErrorCode::ResolutionCap,
                    "resolution " + std::to_string(k) + " exceeds cap " + std::to_string(max_resolution(dim)) + " for n=" + std::to_string(dim));
    }
    if (shifts_.size() != pow_size(k, dim)) {
        throw Error(ErrorCode::InvalidInput, "translate map must cover all k^n cells");
    }
    for (const Vec& v : shifts_) {
        if (v.dim() != dim_) throw Error(ErrorCode::MixedDimension, "translate vector dimension differs from cell grid");
    }
}

std::size_t DiscreteNSet::cell_index(const Vec& cell) const {
    std::size_t idx = 0;
    for (int i = 0; i < dim_; ++i) {
        Int c = cell[i];
        if (c < 0 || c >= k_) throw Error(ErrorCode::InvalidInput, "cell coordinate out of range");
        idx = idx * static_cast<std::size_t>(k_) + static_cast<std::size_t>(c);
    }
    return idx;
}

Vec DiscreteNSet::cell_at(std::size_t index) const {
    Vec cell = Vec::zero(dim_);
    for (int i = dim_ - 1; i >= 0; --i) {
        cell[i] = static_cast<Int>(index % static_cast<std::size_t>(k_));
        index /= static_cast<std::size_t>(k_);
    }
    return cell;
}

SymmetricSet achieved_set(const DiscreteNSet& K) {
    const int n = K.dim();
    const int k = K.k();
    std::vector<Vec> values;
    values.reserve(K.cell_count() * positive_steps(n).size());
    for (std::size_t ui = 0; ui < K.cell_count(); ++ui) {
        Vec u = K.cell_at(ui);
        for (const Vec& d : positive_steps(n)) {
            Vec v;
            Vec w = wrap_step(u, d, k, &v);
            values.push_back(K.shift(ui) - K.shift(v) + w);
        }
    }
    return SymmetricSet::closure(values, n);
}

DiscreteNSet refine(const DiscreteNSet& K, int factor) {
    if (factor < 2) throw Error(ErrorCode::InvalidInput, "refinement factor must be at least 2");
    const int n = K.dim();
    Int k2 = checked_mul(K.k(), factor);
    if (k2 > max_resolution(n)) {
        throw Error(ErrorCode::ResolutionCap, "refined resolution " + std::to_string(k2) + " exceeds cap for n=" + std::to_string(n));
    }
    const int kk = static_cast<int>(k2);
    std::vector<Vec> shifts(pow_size(kk, n), Vec::zero(n));
    DiscreteNSet out(n, kk, std::move(shifts));
    std::vector<Vec> f(out.cell_count(), Vec::zero(n));
    for (std::size_t ci = 0; ci < out.cell_count(); ++ci) {
        Vec cell = out.cell_at(ci);
        Vec coarse = Vec::zero(n);
        for (int i = 0; i < n; ++i) coarse[i] = cell[i] / factor;
        f[ci] = K.shift(K.cell_index(coarse));
    }
    return DiscreteNSet(n, kk, std::move(f));
}

DiscreteNSet translate_cell(const DiscreteNSet& K, const Vec& cell, const Vec& x) {
    std::vector<Vec> f = K.shifts();
    std::size_t i = K.cell_index(cell);
    f[i] = f[i] + x;
    return DiscreteNSet(K.dim(), K.k(), std::move(f));
}

DiscreteNSet augment(const DiscreteNSet& K, const Vec& x) {
    if (x.dim() != K.dim()) throw Error(ErrorCode::DimensionMismatch, "augment vector dimension differs from set");
    DiscreteNSet fine = refine(K, 3);
    Vec central = Vec::zero(K.dim());
    for (int i = 0; i < K.dim(); ++i) central[i] = 1; // central subcell of cell (0,...,0)
    return translate_cell(fine, central, x);
}

namespace {

Int ceil_div(Int a, Int b) {
    return floor_div(a + b - 1, b);
}

std::vector<Vec> canonical_class(std::vector<Vec> s) {
    std::sort(s.begin(), s.end());
    Vec base = s.front();
    for (Vec& v : s) v = v - base;
    return s;
}

// S(p) for p = t/(2k): the unique candidate g per cube, by exact integer bounds.
std::vector<Vec> stratum_set(const DiscreteNSet& K, const Vec& t) {
    const int n = K.dim();
    const Int k = K.k();
    std::set<Vec> gs;
    for (std::size_t ui = 0; ui < K.cell_count(); ++ui) {
        Vec u = K.cell_at(ui);
        const Vec& f = K.shift(ui);
        Vec g = Vec::zero(n);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            Int num = 2 * u[i] + 2 * k * f[i] - t[i]; // 2k * lower bound for g_i
            Int gi = ceil_div(num, 2 * k);
            if (2 * k * gi > num + 2) ok = false;
            g[i] = gi;
        }
        if (ok) gs.insert(g);
    }
    return {gs.begin(), gs.end()};
}

} // namespace

AchievedIdeal achieved_ideal(const DiscreteNSet& K) {
    const int n = K.dim();
    const Int k = K.k();
    if (n > 3) throw Error(ErrorCode::BudgetExceeded, "achieved_ideal supports n <= 3");
    std::size_t points = pow_size(static_cast<int>(2 * k), n);
    if (n == 3 && points * K.cell_count() > 50'000'000ull) {
        throw Error(ErrorCode::BudgetExceeded, "achieved_ideal grid too large for n=3 at k=" + std::to_string(k));
    }

    // One representative per relatively-open stratum of the 1/k grid complex:
    // each coordinate is either on a grid hyperplane (even t_i) or at a cell
    // midpoint (odd t_i), so p = t/(2k) with t in {0..2k-1}^n covers them all.
    std::set<std::vector<Vec>> classes;
    Vec t = Vec::zero(n);
    while (true) {
        std::vector<Vec> s = stratum_set(K, t);
        if (!s.empty()) {
            // Close downward: every nonempty subset of S(p) belongs to the ideal.
            std::size_t m = s.size();
            for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
                std::vector<Vec> sub;
                for (std::size_t b = 0; b < m; ++b) {
                    if (mask & (std::size_t{1} << b)) sub.push_back(s[b]);
                }
                classes.insert(canonical_class(std::move(sub)));
            }
        }
        int i = n - 1;
        while (i >= 0 && t[i] == 2 * k - 1) {
            t[i] = 0;
            --i;
        }
        if (i < 0) break;
        t[i] += 1;
    }

    AchievedIdeal out;
    out.classes.assign(classes.begin(), classes.end());
    std::sort(out.classes.begin(), out.classes.end(), [](const std::vector<Vec>& a, const std::vector<Vec>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    out.ranks.reserve(out.classes.size());
    for (const auto& c : out.classes) out.ranks.push_back(static_cast<int>(c.size()) - 1);

    for (std::size_t i = 0; i < out.classes.size(); ++i) {
        for (std::size_t j = 0; j < out.classes.size(); ++j) {
            if (i == j || out.classes[i].size() >= out.classes[j].size()) continue;
            const auto& small = out.classes[i];
            const auto& big = out.classes[j];
            bool leq = false;
            for (const Vec& b : big) {
                // Try aligning min(small) (= 0 after canonicalization) onto b.
                bool all = true;
                for (const Vec& sv : small) {
                    if (!std::binary_search(big.begin(), big.end(), sv + b)) {
                        all = false;
                        break;
                    }
                }
                if (all) {
                    leq = true;
                    break;
                }
            }
            if (leq) out.order.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return out;
}

std::string render_svg(const DiscreteNSet& K, const RenderOptions& opts) {
    if (K.dim() != 2) throw Error(ErrorCode::UnsupportedDimension, "render_svg requires n = 2");
    const int k = K.k();
    const Int P = opts.cell_px;
    const Int M = opts.margin_px;

    // Square u sits at cell units (u + k*f(u)); the fundamental domain is [0,k)^2.
    Int min_x = 0, min_y = 0, max_x = k, max_y = k;
    for (std::size_t ci = 0; ci < K.cell_count(); ++ci) {
        Vec u = K.cell_at(ci);
        const Vec& f = K.shift(ci);
        Int x = u[0] + static_cast<Int>(k) * f[0];
        Int y = u[1] + static_cast<Int>(k) * f[1];
        min_x = std::min(min_x, x);
        min_y = std::min(min_y, y);
        max_x = std::max(max_x, x + 1);
        max_y = std::max(max_y, y + 1);
    }
    Int width = (max_x - min_x) * P + 2 * M;
    Int height = (max_y - min_y) * P + 2 * M;
    auto px = [&](Int x) { return M + (x - min_x) * P; };
    auto py = [&](Int y) { return M + (max_y - y - 1) * P; }; // flip: lattice y up, SVG y down

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";

    std::size_t total = K.cell_count();
    for (std::size_t ci = 0; ci < total; ++ci) {
        Vec u = K.cell_at(ci);
        const Vec& f = K.shift(ci);
        Int x = u[0] + static_cast<Int>(k) * f[0];
        Int y = u[1] + static_cast<Int>(k) * f[1];
        Int hue = static_cast<Int>(ci) * 360 / static_cast<Int>(total);
        svg << "<rect x=\"" << px(x) << "\" y=\"" << py(y) << "\" width=\"" << P << "\" height=\"" << P
            << "\" fill=\"hsl(" << hue << ",65%,62%)\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
    }

    // Fundamental-domain grid [0,1]^2 drawn at its k x k subdivision.
    for (int i = 0; i <= k; ++i) {
        Int w = (i == 0 || i == k) ? 2 : 1;
        svg << "<line x1=\"" << px(i) << "\" y1=\"" << py(k - 1) << "\" x2=\"" << px(i) << "\" y2=\"" << py(-1)
            << "\" stroke=\"#555555\" stroke-width=\"" << w << "\" stroke-dasharray=\"4 3\"/>\n";
        svg << "<line x1=\"" << px(0) << "\" y1=\"" << py(i - 1) << "\" x2=\"" << px(k) << "\" y2=\"" << py(i - 1)
            << "\" stroke=\"#555555\" stroke-width=\"" << w << "\" stroke-dasharray=\"4 3\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace achieve
