#include "achieve/assignment.hpp"

#include <algorithm>
#include <queue>

namespace achieve {

TorusGraph::TorusGraph(int dim, int k) : dim_(dim), k_(k) {
    if (dim < 1 || dim > kMaxDim) throw Error(ErrorCode::UnsupportedDimension, "graph dimension must be between 1 and 4");
    if (k < 3) throw Error(ErrorCode::InvalidInput, "graph resolution k must be at least 3");
    if (k > max_resolution(dim)) {
        throw Error(ErrorCode::ResolutionCap, "graph resolution exceeds cap for n=" + std::to_string(dim));
    }
    vcount_ = pow_size(k, dim);
}

std::size_t TorusGraph::vertex_index(const Vec& v) const {
    std::size_t idx = 0;
    for (int i = 0; i < dim_; ++i) {
        Int c = v[i];
        if (c < 0 || c >= k_) throw Error(ErrorCode::InvalidInput, "vertex coordinate out of range");
        idx = idx * static_cast<std::size_t>(k_) + static_cast<std::size_t>(c);
    }
    return idx;
}

Vec TorusGraph::vertex_at(std::size_t index) const {
    Vec v = Vec::zero(dim_);
    for (int i = dim_ - 1; i >= 0; --i) {
        v[i] = static_cast<Int>(index % static_cast<std::size_t>(k_));
        index /= static_cast<std::size_t>(k_);
    }
    return v;
}

bool is_loop(const TorusGraph& g, const GridPath& p) {
    Vec total = Vec::zero(g.dim());
    for (const Vec& d : p.steps) {
        if (!is_valid_step(d)) throw Error(ErrorCode::InvalidStep, "path step is not a grid step");
        total = total + d;
    }
    for (int i = 0; i < g.dim(); ++i) {
        if (total[i] % g.k() != 0) return false;
    }
    return true;
}

Vec winding_vector(const TorusGraph& g, const GridPath& p) {
    Vec total = Vec::zero(g.dim());
    for (const Vec& d : p.steps) {
        if (!is_valid_step(d)) throw Error(ErrorCode::InvalidStep, "path step is not a grid step");
        total = total + d;
    }
    Vec w = Vec::zero(g.dim());
    for (int i = 0; i < g.dim(); ++i) {
        if (total[i] % g.k() != 0) throw Error(ErrorCode::NotALoop, "path does not return to its start");
        w[i] = total[i] / g.k();
    }
    return w;
}

EdgeAssignment::EdgeAssignment(const TorusGraph& g)
    : graph_(g), values_(g.vertex_count() * positive_steps(g.dim()).size(), Vec::zero(g.dim())) {}

std::size_t EdgeAssignment::slot(const Vec& u, const Vec& d, bool* flip) const {
    if (!is_valid_step(d)) throw Error(ErrorCode::InvalidStep, "not a grid step");
    const auto& pos = positive_steps(graph_.dim());
    Vec key = d.pair_rep();
    Vec base = u;
    *flip = false;
    if (key != d) {
        wrap_step(u, d, graph_.k(), &base); // store at the other endpoint
        *flip = true;
    }
    auto it = std::lower_bound(pos.begin(), pos.end(), key);
    std::size_t di = static_cast<std::size_t>(it - pos.begin());
    return graph_.vertex_index(base) * pos.size() + di;
}

Vec EdgeAssignment::value(const Vec& u, const Vec& d) const {
    bool flip;
    std::size_t s = slot(u, d, &flip);
    return flip ? -values_[s] : values_[s];
}

void EdgeAssignment::set_value(const Vec& u, const Vec& d, const Vec& val) {
    bool flip;
    std::size_t s = slot(u, d, &flip);
    values_[s] = flip ? -val : val;
}

EdgeAssignment EdgeAssignment::operator+(const EdgeAssignment& o) const {
    if (!(graph_ == o.graph_)) throw Error(ErrorCode::DimensionMismatch, "assignments live on different graphs");
    EdgeAssignment r(graph_);
    for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] = values_[i] + o.values_[i];
    return r;
}

EdgeAssignment EdgeAssignment::operator-(const EdgeAssignment& o) const {
    if (!(graph_ == o.graph_)) throw Error(ErrorCode::DimensionMismatch, "assignments live on different graphs");
    EdgeAssignment r(graph_);
    for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] = values_[i] - o.values_[i];
    return r;
}

bool EdgeAssignment::operator==(const EdgeAssignment& o) const {
    return graph_ == o.graph_ && values_ == o.values_;
}

Vec evaluate(const EdgeAssignment& chi, const GridPath& p) {
    const TorusGraph& g = chi.graph();
    Vec sum = Vec::zero(g.dim());
    Vec u = p.start;
    g.vertex_index(u); // validates range
    for (const Vec& d : p.steps) {
        sum = sum + chi.value(u, d);
        wrap_step(u, d, g.k(), &u);
    }
    return sum;
}

namespace {

// All 3-element subsets of the 2^n cell corners {0,1}^n.
std::vector<std::array<Vec, 3>> corner_triples(int dim) {
    std::vector<Vec> corners;
    for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
        Vec c = Vec::zero(dim);
        for (int i = 0; i < dim; ++i) c[i] = (mask >> i) & 1;
        corners.push_back(c);
    }
    std::sort(corners.begin(), corners.end());
    std::vector<std::array<Vec, 3>> triples;
    for (std::size_t a = 0; a < corners.size(); ++a) {
        for (std::size_t b = a + 1; b < corners.size(); ++b) {
            for (std::size_t c = a + 1; c < corners.size(); ++c) {
                if (c <= b) continue;
                triples.push_back({corners[a], corners[b], corners[c]});
            }
        }
    }
    return triples;
}

Vec axis_loop_value(const EdgeAssignment& chi, int axis) {
    const TorusGraph& g = chi.graph();
    GridPath p{Vec::zero(g.dim()), std::vector<Vec>(static_cast<std::size_t>(g.k()), Vec::unit(g.dim(), axis))};
    return evaluate(chi, p);
}

} // namespace

Classification classify(const EdgeAssignment& chi) {
    const TorusGraph& g = chi.graph();
    const int n = g.dim();
    const int k = g.k();
    Classification out;

    out.closed = true;
    auto triples = corner_triples(n);
    Vec u = Vec::zero(n);
    for (std::size_t ui = 0; ui < g.vertex_count() && out.closed; ++ui) {
        u = g.vertex_at(ui);
        for (const auto& tri : triples) {
            Vec v1, v2;
            wrap_step(u, tri[0], k, &v1); // tri[0] has entries in {0,1}: still a valid offset
            Vec d12 = tri[1] - tri[0];
            Vec d23 = tri[2] - tri[1];
            Vec d31 = tri[0] - tri[2];
            wrap_step(v1, d12, k, &v2);
            Vec sum = chi.value(v1, d12) + chi.value(v2, d23);
            Vec v3;
            wrap_step(v2, d23, k, &v3);
            sum = sum + chi.value(v3, d31);
            if (!sum.is_zero()) {
                out.closed = false;
                break;
            }
        }
    }
    if (!out.closed) return out;

    bool all_zero = true, all_unit = true;
    for (int i = 0; i < n; ++i) {
        Vec v = axis_loop_value(chi, i);
        if (!v.is_zero()) all_zero = false;
        if (v != Vec::unit(n, i)) all_unit = false;
    }
    out.exact = all_zero;
    out.proper = all_unit;
    return out;
}

SymmetricSet edge_values(const EdgeAssignment& chi) {
    const TorusGraph& g = chi.graph();
    std::vector<Vec> vals;
    vals.reserve(g.vertex_count() * g.oriented_steps().size());
    for (std::size_t ui = 0; ui < g.vertex_count(); ++ui) {
        Vec u = g.vertex_at(ui);
        for (const Vec& d : g.oriented_steps()) vals.push_back(chi.value(u, d));
    }
    return SymmetricSet::closure(vals, g.dim());
}

EdgeAssignment differentiate(const DiscreteNSet& K) {
    TorusGraph g(K.dim(), K.k());
    EdgeAssignment chi(g);
    for (std::size_t ui = 0; ui < g.vertex_count(); ++ui) {
        Vec u = g.vertex_at(ui);
        for (const Vec& d : g.oriented_steps()) {
            Vec v;
            Vec w = wrap_step(u, d, K.k(), &v);
            chi.set_value(u, d, K.shift(ui) - K.shift(K.cell_index(v)) + w);
        }
    }
    return chi;
}

DiscreteNSet integrate(const EdgeAssignment& chi, const Vec& base) {
    const TorusGraph& g = chi.graph();
    if (!classify(chi).proper) throw Error(ErrorCode::NotProper, "assignment is not proper");

    std::vector<Vec> f(g.vertex_count(), Vec::zero(g.dim()));
    std::vector<char> seen(g.vertex_count(), 0);
    std::size_t b = g.vertex_index(base);
    seen[b] = 1;
    std::queue<std::size_t> q;
    q.push(b);
    while (!q.empty()) {
        std::size_t ui = q.front();
        q.pop();
        Vec u = g.vertex_at(ui);
        for (const Vec& d : g.steps()) {
            Vec v;
            Vec w = wrap_step(u, d, g.k(), &v);
            std::size_t vi = g.vertex_index(v);
            if (seen[vi]) continue;
            seen[vi] = 1;
            f[vi] = f[ui] - chi.value(u, d) + w;
            q.push(vi);
        }
    }
    return DiscreteNSet(g.dim(), g.k(), std::move(f));
}

void for_each_simple_cycle(const TorusGraph& g, int max_len,
                           const std::function<void(const SimpleCycle&)>& fn,
                           std::uint64_t max_cycles) {
    if (g.dim() != 2) throw Error(ErrorCode::UnsupportedDimension, "simple_cycles supports n = 2");
    const std::size_t nv = g.vertex_count();

    // adjacency with the unique step per ordered pair
    std::vector<std::vector<std::pair<std::size_t, Vec>>> adj(nv);
    for (std::size_t ui = 0; ui < nv; ++ui) {
        Vec u = g.vertex_at(ui);
        for (const Vec& d : g.steps()) {
            Vec v;
            wrap_step(u, d, g.k(), &v);
            adj[ui].emplace_back(g.vertex_index(v), d);
        }
        std::sort(adj[ui].begin(), adj[ui].end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    std::uint64_t emitted = 0;
    std::vector<char> used(nv, 0);
    std::vector<std::size_t> path;
    std::vector<Vec> steps;

    // Each cycle is reported once: smallest vertex first, and the second
    // vertex smaller than the last to fix the direction.
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t cur) {
        for (const auto& [next, d] : adj[cur]) {
            if (next == start && path.size() >= 3) {
                if (path[1] < path.back()) {
                    if (++emitted > max_cycles) throw Error(ErrorCode::BudgetExceeded, "simple cycle budget exceeded");
                    GridPath p{g.vertex_at(start), steps};
                    p.steps.push_back(d);
                    fn(SimpleCycle{p, winding_vector(g, p)});
                    p.steps.pop_back();
                }
                continue;
            }
            if (next <= start || used[next] || path.size() >= static_cast<std::size_t>(max_len)) continue;
            used[next] = 1;
            path.push_back(next);
            steps.push_back(d);
            dfs(start, next);
            steps.pop_back();
            path.pop_back();
            used[next] = 0;
        }
    };

    for (std::size_t s = 0; s < nv; ++s) {
        used[s] = 1;
        path.assign(1, s);
        steps.clear();
        dfs(s, s);
        used[s] = 0;
    }
}

std::vector<SimpleCycle> simple_cycles(const TorusGraph& g, int max_len, std::uint64_t max_cycles) {
    std::vector<SimpleCycle> out;
    for_each_simple_cycle(g, max_len, [&](const SimpleCycle& c) { out.push_back(c); }, max_cycles);
    return out;
}

} // namespace achieve
