#include "achieve/search.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>
#include <unordered_map>

#include "achieve/grid.hpp"

namespace achieve {

namespace {

// Static problem data shared by all workers.
struct Problem {
    const SymmetricSet& A;
    SearchConfig cfg;
    int n;
    int k;
    std::size_t cells;
    // For each cell i: the wrap of the edge from cell i-1, and all other
    // earlier neighbors j < i with the wrap of the edge j -> i.
    std::vector<Vec> prev_wrap;
    std::vector<std::vector<std::pair<std::size_t, Vec>>> earlier;
    std::vector<std::size_t> edges_fixed_after; // prefix count of edges
    std::size_t total_edges = 0;
    // Exact mode: pair rep -> dense index.
    std::vector<Vec> pair_reps;

    explicit Problem(const SymmetricSet& a, const SearchConfig& c) : A(a), cfg(c), n(a.dim()), k(c.k) {
        DiscreteNSet grid(n, k); // indexing helper
        cells = grid.cell_count();
        prev_wrap.assign(cells, Vec::zero(n));
        earlier.assign(cells, {});
        edges_fixed_after.assign(cells, 0);
        for (std::size_t i = 1; i < cells; ++i) {
            Vec u = grid.cell_at(i);
            for (const Vec& d : all_steps(n)) {
                Vec v;
                Vec w = wrap_step(u, d, k, &v);
                std::size_t j = grid.cell_index(v);
                if (j >= i) continue;
                // Edge value convention: f(j) - f(i) + wrap(j -> i), and
                // wrap(j -> i) = -wrap(i -> j).
                if (j == i - 1) {
                    prev_wrap[i] = -w;
                } else {
                    earlier[i].emplace_back(j, -w);
                }
            }
            edges_fixed_after[i] = edges_fixed_after[i - 1] + earlier[i].size() + 1;
        }
        total_edges = edges_fixed_after[cells - 1];
        pair_reps = A.pair_reps();
    }

    int pair_index(const Vec& v) const {
        auto it = std::lower_bound(pair_reps.begin(), pair_reps.end(), v);
        if (it == pair_reps.end() || *it != v) return -1;
        return static_cast<int>(it - pair_reps.begin());
    }
};

struct Budget {
    std::atomic<std::uint64_t> used{0};
    std::atomic<bool> exhausted{false};
    std::uint64_t limit;

    explicit Budget(std::uint64_t l) : limit(l) {}

    // Returns false once the budget is gone. Batched to keep contention low.
    bool spend(std::uint64_t& local) {
        if (++local < 64) return !exhausted.load(std::memory_order_relaxed);
        std::uint64_t total = used.fetch_add(local, std::memory_order_relaxed) + local;
        local = 0;
        if (total > limit) {
            exhausted.store(true, std::memory_order_relaxed);
            return false;
        }
        return !exhausted.load(std::memory_order_relaxed);
    }
    void flush(std::uint64_t& local) {
        used.fetch_add(local, std::memory_order_relaxed);
        local = 0;
    }
};

// One worker's depth-first search below a fixed value of cell 1.
struct Walker {
    const Problem& p;
    Budget& budget;
    const std::atomic<std::size_t>& best_branch; // earliest branch with a witness
    std::size_t my_branch;
    std::vector<Vec> f;
    std::vector<int> realized;   // per pair index, how many edges realize it
    std::size_t unrealized = 0;
    std::uint64_t local_nodes = 0;
    bool aborted = false;        // budget or cancellation

    Walker(const Problem& prob, Budget& b, const std::atomic<std::size_t>& best, std::size_t branch)
        : p(prob), budget(b), best_branch(best), my_branch(branch), f(prob.cells, Vec::zero(prob.n)) {
        if (p.cfg.mode == SearchMode::Exact) {
            realized.assign(p.pair_reps.size(), 0);
            unrealized = p.pair_reps.size();
        }
    }

    // Track realized pairs of A (Exact mode); returns the pair index or -1.
    int note_edge(const Vec& value) {
        if (p.cfg.mode != SearchMode::Exact || value.is_zero()) return -1;
        int idx = p.pair_index(value.pair_rep());
        if (idx >= 0 && realized[static_cast<std::size_t>(idx)]++ == 0) --unrealized;
        return idx;
    }
    void unnote_edge(int idx) {
        if (idx >= 0 && --realized[static_cast<std::size_t>(idx)] == 0) ++unrealized;
    }

    bool dfs(std::size_t i) {
        if (i == p.cells) return p.cfg.mode != SearchMode::Exact || unrealized == 0;
        if (!budget.spend(local_nodes)) {
            aborted = true;
            return false;
        }
        if (best_branch.load(std::memory_order_relaxed) < my_branch) {
            aborted = true; // an earlier branch already has a witness
            return false;
        }
        const Vec base = f[i - 1] + p.prev_wrap[i];
        const auto& members = p.A.members();
        // Candidates in ascending lex order: base - a for a in A, descending.
        for (auto it = members.rbegin(); it != members.rend(); ++it) {
            Vec cand = base - *it;
            if (cand.sup_norm() > p.cfg.bound) continue;
            bool ok = true;
            for (const auto& [j, w] : p.earlier[i]) {
                if (!p.A.contains(f[j] - cand + w)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            f[i] = cand;
            int tracked[84]; // an n=4 cell has up to 3^4 - 1 = 80 earlier edges
            int ntracked = 0;
            if (p.cfg.mode == SearchMode::Exact) {
                tracked[ntracked++] = note_edge(*it);
                for (const auto& [j, w] : p.earlier[i]) tracked[ntracked++] = note_edge(f[j] - cand + w);
                if (unrealized > p.total_edges - p.edges_fixed_after[i]) {
                    while (ntracked) unnote_edge(tracked[--ntracked]);
                    continue;
                }
            }
            if (dfs(i + 1)) return true;
            while (ntracked) unnote_edge(tracked[--ntracked]);
            if (aborted) return false;
        }
        return false;
    }
};

} // namespace

bool witness_valid(const SymmetricSet& A, const DiscreteNSet& K, SearchMode mode) {
    SymmetricSet achieved = achieved_set(K);
    if (mode == SearchMode::Exact) return achieved == A;
    for (const Vec& v : achieved.members()) {
        if (!A.contains(v)) return false;
    }
    return true;
}

SearchResult find_witness(const SymmetricSet& A, const SearchConfig& cfg) {
    if (cfg.k < 3) throw Error(ErrorCode::InvalidInput, "search resolution k must be at least 3");
    if (cfg.k > max_resolution(A.dim())) {
        throw Error(ErrorCode::ResolutionCap, "search resolution exceeds cap for n=" + std::to_string(A.dim()));
    }
    if (cfg.bound < 0) throw Error(ErrorCode::InvalidInput, "bound must be nonnegative");

    Problem prob(A, cfg);
    Budget budget(cfg.node_limit);
    std::atomic<std::size_t> best_branch{SIZE_MAX};

    // Branches: the candidate values of cell 1, in ascending lex order. The
    // edge (0 -> 1) never wraps, so candidates are -a for a in A, filtered by
    // the bound (plus the earlier-neighbor constraints checked in dfs).
    std::vector<Vec> branch_values;
    const auto& members = A.members();
    for (auto it = members.rbegin(); it != members.rend(); ++it) {
        Vec cand = -*it;
        if (cand.sup_norm() <= cfg.bound) branch_values.push_back(cand);
    }

    std::vector<std::optional<DiscreteNSet>> branch_witness(branch_values.size());
    std::atomic<std::size_t> cursor{0};

    auto run_branch = [&](std::size_t b) {
        Walker w(prob, budget, best_branch, b);
        const Vec& cand = branch_values[b];
        bool ok = true;
        for (const auto& [j, wv] : prob.earlier[1]) {
            if (!A.contains(w.f[j] - cand + wv)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            w.f[1] = cand;
            int tracked[84];
            int ntracked = 0;
            if (cfg.mode == SearchMode::Exact) {
                tracked[ntracked++] = w.note_edge(-cand); // value of the edge 0 -> 1 is -f(1)
                for (const auto& [j, wv] : prob.earlier[1]) tracked[ntracked++] = w.note_edge(w.f[j] - cand + wv);
            }
            bool prune = cfg.mode == SearchMode::Exact && w.unrealized > prob.total_edges - prob.edges_fixed_after[1];
            if (!prune && w.dfs(2)) {
                std::vector<Vec> shifts = w.f;
                branch_witness[b] = DiscreteNSet(prob.n, prob.k, std::move(shifts));
                // Record the earliest successful branch.
                std::size_t cur = best_branch.load();
                while (b < cur && !best_branch.compare_exchange_weak(cur, b)) {
                }
            }
            while (ntracked) w.unnote_edge(tracked[--ntracked]);
        }
        budget.flush(w.local_nodes);
    };

    if (prob.cells < 2) throw Error(ErrorCode::InvalidInput, "grid too small");

    int threads = std::max(1, cfg.thread_count);
    if (threads == 1) {
        for (std::size_t b = 0; b < branch_values.size(); ++b) {
            run_branch(b);
            if (branch_witness[b]) break; // sequential order is already lex-first
            if (budget.exhausted.load()) break;
        }
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                while (true) {
                    std::size_t b = cursor.fetch_add(1);
                    if (b >= branch_values.size()) return;
                    if (best_branch.load() < b) continue;
                    if (budget.exhausted.load()) return;
                    run_branch(b);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    SearchResult result;
    result.nodes = budget.used.load();
    result.node_limit_hit = budget.exhausted.load();
    for (std::size_t b = 0; b < branch_values.size(); ++b) {
        if (branch_witness[b]) {
            result.witness = std::move(branch_witness[b]);
            break;
        }
    }
    if (result.witness && !witness_valid(A, *result.witness, cfg.mode)) {
        throw Error(ErrorCode::ConstructionInvariantViolated, "search produced a witness that fails re-verification");
    }
    return result;
}

Verdict decide(const SymmetricSet& A, const DecideOptions& opts) {
    Verdict v;
    v.k_max = opts.k_max;
    v.bound = opts.bound;

    NecessaryReport report = necessary_report(A);
    if (report.status == NecessaryReport::Status::NotAchievable) {
        v.kind = Verdict::Kind::RefutedNecessary;
        v.reason = report.failed_condition;
        return v;
    }

    if (A.dim() == 2) {
        try {
            if (auto cert = obstruction_search(A, opts.obstruction_max_pairs)) {
                v.kind = Verdict::Kind::RefutedObstruction;
                v.certificate = std::move(cert);
                return v;
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::BudgetExceeded) throw; // budget: fall through to search
        }
    }

    std::uint64_t nodes = 0;
    bool limit_hit = false;
    for (int k = 3; k <= opts.k_max; ++k) {
        std::uint64_t remaining = UINT64_MAX;
        if (opts.node_limit != UINT64_MAX) {
            if (nodes >= opts.node_limit) {
                limit_hit = true;
                break;
            }
            remaining = opts.node_limit - nodes;
        }
        SearchConfig cfg;
        cfg.k = k;
        cfg.bound = opts.bound;
        cfg.mode = opts.mode;
        cfg.node_limit = remaining;
        cfg.thread_count = opts.thread_count;
        SearchResult r = find_witness(A, cfg);
        nodes += r.nodes;
        limit_hit |= r.node_limit_hit;
        if (r.witness) {
            v.kind = Verdict::Kind::Achieved;
            v.witness = std::move(r.witness);
            v.witness_k = k;
            v.nodes = nodes;
            return v;
        }
        if (limit_hit) break;
    }
    v.kind = Verdict::Kind::Unknown;
    v.node_limit_hit = limit_hit;
    v.nodes = nodes;
    return v;
}

CatalogResult catalog(int n, int k, Int bound, std::uint64_t node_limit) {
    bool supported = (n == 1 && k >= 3 && k <= 5 && bound <= 8) || (n == 2 && k == 3 && bound <= 1);
    if (!supported) {
        throw Error(ErrorCode::BudgetExceeded, "unsupported catalog profile (use n=1 k<=5, or n=2 k=3 bound=1)");
    }

    DiscreteNSet grid(n, k);
    const std::size_t cells = grid.cell_count();

    // Earlier-neighbor edges per cell, with wraps (as in the witness search).
    std::vector<std::vector<std::pair<std::size_t, Vec>>> earlier(cells);
    for (std::size_t i = 1; i < cells; ++i) {
        Vec u = grid.cell_at(i);
        for (const Vec& d : all_steps(n)) {
            Vec vv;
            Vec w = wrap_step(u, d, k, &vv);
            std::size_t j = grid.cell_index(vv);
            if (j < i) earlier[i].emplace_back(j, -w);
        }
    }

    // Edge values have sup norm <= 2*bound + 1; index their +- classes into a
    // 64-bit presence mask.
    const Int vmax = 2 * bound + 1;
    const Int width = 2 * vmax + 1;
    std::size_t table_size = pow_size(static_cast<int>(width), n);
    std::vector<int> class_of(table_size, -1);
    std::vector<Vec> class_rep;
    {
        Vec v = Vec::zero(n);
        for (int i = 0; i < n; ++i) v[i] = -vmax;
        while (true) {
            if (!v.is_zero() && v.pair_rep() == v) {
                std::size_t key = 0;
                for (int i = 0; i < n; ++i) key = key * static_cast<std::size_t>(width) + static_cast<std::size_t>(v[i] + vmax);
                class_of[key] = static_cast<int>(class_rep.size());
                class_rep.push_back(v);
            }
            int i = n - 1;
            while (i >= 0 && v[i] == vmax) {
                v[i] = -vmax;
                --i;
            }
            if (i < 0) break;
            v[i] += 1;
        }
    }
    if (class_rep.size() > 64) {
        throw Error(ErrorCode::BudgetExceeded, "catalog value domain exceeds the 64-class mask");
    }
    auto class_index = [&](const Vec& value) {
        Vec r = value.pair_rep();
        std::size_t key = 0;
        for (int i = 0; i < n; ++i) key = key * static_cast<std::size_t>(width) + static_cast<std::size_t>(r[i] + vmax);
        return class_of[key];
    };

    // Candidate values per cell: the full box, ascending.
    std::vector<Vec> box;
    {
        Vec v = Vec::zero(n);
        for (int i = 0; i < n; ++i) v[i] = -bound;
        while (true) {
            box.push_back(v);
            int i = n - 1;
            while (i >= 0 && v[i] == bound) {
                v[i] = -bound;
                --i;
            }
            if (i < 0) break;
            v[i] += 1;
        }
    }

    std::vector<Vec> f(cells, Vec::zero(n));
    std::vector<std::uint64_t> mask_at(cells + 1, 0);
    std::unordered_map<std::uint64_t, std::size_t> seen; // mask -> entry index
    CatalogResult out;
    std::uint64_t nodes = 0;
    bool limited = false;

    std::vector<std::size_t> pos(cells, 0);
    std::size_t depth = 1;
    while (depth >= 1) {
        if (depth == cells) {
            ++out.admitted;
            std::uint64_t m = mask_at[depth];
            auto [it, fresh] = seen.emplace(m, out.entries.size());
            if (fresh) {
                std::vector<Vec> vals;
                for (std::size_t c = 0; c < class_rep.size(); ++c) {
                    if (m & (std::uint64_t{1} << c)) vals.push_back(class_rep[c]);
                }
                out.entries.push_back(CatalogEntry{SymmetricSet::closure(vals, n), DiscreteNSet(n, k, f)});
            }
            --depth;
            continue;
        }
        if (pos[depth] == box.size()) {
            pos[depth] = 0;
            --depth;
            continue;
        }
        if (++nodes > node_limit) {
            limited = true;
            break;
        }
        f[depth] = box[pos[depth]++];
        std::uint64_t m = mask_at[depth];
        bool overflow = false;
        for (const auto& [j, w] : earlier[depth]) {
            int ci = class_index(f[j] - f[depth] + w);
            if (ci >= 0) {
                m |= std::uint64_t{1} << ci;
            } else if (!(f[j] - f[depth] + w).is_zero()) {
                overflow = true; // cannot happen within the declared bound
            }
        }
        if (overflow) throw Error(ErrorCode::ConstructionInvariantViolated, "catalog edge value outside the class table");
        mask_at[depth + 1] = m;
        ++depth;
    }

    out.nodes = nodes;
    out.partial = limited;
    std::sort(out.entries.begin(), out.entries.end(), [](const CatalogEntry& a, const CatalogEntry& b) { return a.set < b.set; });
    return out;
}

} // namespace achieve
