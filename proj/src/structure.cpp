#include "achieve/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace achieve {

CharacteristicGraph characteristic_graph(const SymmetricSet& A) {
    CharacteristicGraph g;
    g.vertices = A.pair_reps();
    int m = static_cast<int>(g.vertices.size());
    g.adj.assign(static_cast<std::size_t>(m), {});
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const Vec& a = g.vertices[static_cast<std::size_t>(i)];
            const Vec& b = g.vertices[static_cast<std::size_t>(j)];
            if (A.contains(a + b) || A.contains(a - b)) {
                g.edges.emplace_back(i, j);
                g.adj[static_cast<std::size_t>(i)].push_back(j);
                g.adj[static_cast<std::size_t>(j)].push_back(i);
            }
        }
    }
    return g;
}

std::vector<SymmetricSet> components(const CharacteristicGraph& g, const SymmetricSet& A) {
    int m = static_cast<int>(g.vertices.size());
    std::vector<int> comp(static_cast<std::size_t>(m), -1);
    int count = 0;
    for (int s = 0; s < m; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        std::vector<int> stack{s};
        comp[static_cast<std::size_t>(s)] = count;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.adj[static_cast<std::size_t>(v)]) {
                if (comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = count;
                    stack.push_back(w);
                }
            }
        }
        ++count;
    }
    std::vector<std::vector<Vec>> groups(static_cast<std::size_t>(count));
    for (int v = 0; v < m; ++v) groups[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(g.vertices[static_cast<std::size_t>(v)]);
    std::vector<SymmetricSet> out;
    out.reserve(groups.size());
    for (const auto& grp : groups) out.push_back(SymmetricSet::closure(grp, A.dim()));
    return out;
}

NecessaryReport necessary_report(const SymmetricSet& A) {
    NecessaryReport r;
    const int n = A.dim();
    r.generates = generates_full_lattice(A);

    CharacteristicGraph g = characteristic_graph(A);
    r.component_sets = components(g, A);
    bool some_component_generates = false;
    for (const SymmetricSet& b : r.component_sets) {
        bool gen = generates_full_lattice(b);
        r.component_generates.push_back(gen);
        some_component_generates |= gen;
    }

    if (n == 1) {
        Int gcd = 0;
        for (const Vec& v : A.members()) gcd = gcd_int(gcd, v[0]);
        r.gcd_n1 = gcd;
        if (gcd == 1) {
            r.status = NecessaryReport::Status::Achievable;
        } else {
            r.status = NecessaryReport::Status::NotAchievable;
            r.failed_condition = "n=1 characterization: gcd of A is " + std::to_string(gcd) + ", not 1";
        }
        return r;
    }

    if (!r.generates) {
        r.status = NecessaryReport::Status::NotAchievable;
        r.failed_condition = "A does not generate Z^" + std::to_string(n);
        return r;
    }
    if (!some_component_generates) {
        r.status = NecessaryReport::Status::NotAchievable;
        r.failed_condition = "no characteristic-graph component generates Z^" + std::to_string(n);
        return r;
    }
    r.status = NecessaryReport::Status::Inconclusive;
    return r;
}

namespace {

bool delta_condition_holds(const Subgroup& span, DecompositionMode mode) {
    if (mode == DecompositionMode::Theorem53) return !subgroup_has_primitive(span);
    return !smith_invariants(span).cyclic;
}

std::string mode_name(DecompositionMode mode) {
    return mode == DecompositionMode::Theorem53 ? "no primitive element in <Delta>" : "Z^n/<Delta> not cyclic";
}

} // namespace

Decomposition validate_decomposition(const SymmetricSet& A,
                                     const std::vector<std::vector<Vec>>& s_list,
                                     DecompositionMode mode) {
    const int n = A.dim();
    CharacteristicGraph g = characteristic_graph(A);
    std::map<Vec, int> vertex_index;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) vertex_index[g.vertices[i]] = static_cast<int>(i);

    std::vector<std::string> violations;
    std::vector<std::vector<int>> pieces; // vertex indices per piece
    for (std::size_t p = 0; p < s_list.size(); ++p) {
        std::vector<int> idx;
        bool ok = true;
        for (const Vec& v : s_list[p]) {
            auto it = vertex_index.find(v.pair_rep());
            if (it == vertex_index.end()) {
                violations.push_back("S_" + std::to_string(p + 1) + " contains " + v.str() + " outside A \\ {0}");
                ok = false;
                break;
            }
            idx.push_back(it->second);
        }
        if (!ok) continue;
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        if (idx.empty()) violations.push_back("S_" + std::to_string(p + 1) + " is empty");
        pieces.push_back(std::move(idx));
    }
    if (!violations.empty()) throw InvalidDecompositionError(std::move(violations));

    const int m = static_cast<int>(g.vertices.size());
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(m), std::vector<char>(static_cast<std::size_t>(m), 0));
    for (auto [i, j] : g.edges) {
        adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
        adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 1;
    }

    // Disjointness and pairwise non-adjacency of the pieces.
    std::vector<int> owner(static_cast<std::size_t>(m), -1);
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        for (int v : pieces[p]) {
            if (owner[static_cast<std::size_t>(v)] >= 0) {
                violations.push_back("S_" + std::to_string(owner[static_cast<std::size_t>(v)] + 1) + " and S_" + std::to_string(p + 1) +
                                     " both contain " + g.vertices[static_cast<std::size_t>(v)].str());
            }
            owner[static_cast<std::size_t>(v)] = static_cast<int>(p);
        }
    }
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        for (std::size_t q = p + 1; q < pieces.size(); ++q) {
            for (int v : pieces[p]) {
                for (int w : pieces[q]) {
                    if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]) {
                        violations.push_back("S_" + std::to_string(p + 1) + " and S_" + std::to_string(q + 1) + " contain adjacent elements " +
                                             g.vertices[static_cast<std::size_t>(v)].str() + ", " + g.vertices[static_cast<std::size_t>(w)].str());
                    }
                }
            }
        }
    }

    // Boundaries, their span condition, and the cover of A \ {0}.
    Decomposition out;
    out.mode = mode;
    std::vector<char> covered(static_cast<std::size_t>(m), 0);
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        std::vector<char> in_s(static_cast<std::size_t>(m), 0);
        for (int v : pieces[p]) in_s[static_cast<std::size_t>(v)] = 1;
        std::vector<int> delta;
        for (int v : pieces[p]) {
            covered[static_cast<std::size_t>(v)] = 1;
            for (int w = 0; w < m; ++w) {
                if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] && !in_s[static_cast<std::size_t>(w)]) delta.push_back(w);
            }
        }
        std::sort(delta.begin(), delta.end());
        delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
        Piece piece;
        for (int v : pieces[p]) piece.S.push_back(g.vertices[static_cast<std::size_t>(v)]);
        for (int w : delta) {
            covered[static_cast<std::size_t>(w)] = 1;
            piece.Delta.push_back(g.vertices[static_cast<std::size_t>(w)]);
        }
        Subgroup span = Subgroup::from_generators(piece.Delta, n);
        if (!delta_condition_holds(span, mode)) {
            violations.push_back("Delta_" + std::to_string(p + 1) + " violates: " + mode_name(mode));
        }
        out.pieces.push_back(std::move(piece));
    }
    for (int v = 0; v < m; ++v) {
        if (!covered[static_cast<std::size_t>(v)]) {
            violations.push_back("element " + g.vertices[static_cast<std::size_t>(v)].str() + " is covered by no S_i or Delta_i");
        }
    }
    if (!violations.empty()) throw InvalidDecompositionError(std::move(violations));
    return out;
}

namespace {

struct PairSearch {
    const SymmetricSet& A;
    DecompositionMode mode;
    int m = 0;
    std::vector<Vec> reps;
    std::vector<std::vector<char>> adj;
    std::vector<int> assign;                  // 0 = unassigned, 1..t = piece
    std::map<std::uint32_t, Subgroup> memo;   // subgroup by pair-index mask
    std::optional<Decomposition> found;

    const Subgroup& span_of(std::uint32_t mask) {
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        std::vector<Vec> gens;
        for (int i = 0; i < m; ++i) {
            if (mask & (1u << i)) gens.push_back(reps[static_cast<std::size_t>(i)]);
        }
        return memo.emplace(mask, Subgroup::from_generators(gens, A.dim())).first->second;
    }

    bool leaf_check() {
        int t = *std::max_element(assign.begin(), assign.end());
        if (t == 0) return false;
        std::vector<std::uint32_t> s_mask(static_cast<std::size_t>(t), 0);
        for (int i = 0; i < m; ++i) {
            if (assign[static_cast<std::size_t>(i)] > 0) s_mask[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)] - 1)] |= (1u << i);
        }
        std::vector<std::uint32_t> d_mask(static_cast<std::size_t>(t), 0);
        std::uint32_t covered = 0, all_delta = 0;
        for (int p = 0; p < t; ++p) {
            std::uint32_t dm = 0;
            for (int i = 0; i < m; ++i) {
                if (!(s_mask[static_cast<std::size_t>(p)] & (1u << i))) continue;
                for (int j = 0; j < m; ++j) {
                    if (adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] && !(s_mask[static_cast<std::size_t>(p)] & (1u << j))) dm |= (1u << j);
                }
            }
            d_mask[static_cast<std::size_t>(p)] = dm;
            covered |= s_mask[static_cast<std::size_t>(p)] | dm;
            all_delta |= dm;
        }
        if (covered != (m == 32 ? ~0u : ((1u << m) - 1))) return false;
        for (int p = 0; p < t; ++p) {
            if (!delta_condition_holds(span_of(d_mask[static_cast<std::size_t>(p)]), mode)) return false;
        }
        // Refutation: no conclusion branch of the theorem can generate Z^n.
        for (int p = 0; p < t; ++p) {
            if (span_of(s_mask[static_cast<std::size_t>(p)] | d_mask[static_cast<std::size_t>(p)]).is_full_lattice()) return false;
        }
        if (span_of(all_delta).is_full_lattice()) return false;

        Decomposition cert;
        cert.mode = mode;
        for (int p = 0; p < t; ++p) {
            Piece piece;
            for (int i = 0; i < m; ++i) {
                if (s_mask[static_cast<std::size_t>(p)] & (1u << i)) piece.S.push_back(reps[static_cast<std::size_t>(i)]);
                if (d_mask[static_cast<std::size_t>(p)] & (1u << i)) piece.Delta.push_back(reps[static_cast<std::size_t>(i)]);
            }
            cert.pieces.push_back(std::move(piece));
        }
        found = std::move(cert);
        return true;
    }

    // Restricted-growth enumeration: pair i may join pieces 1..max_used+1 or
    // stay unassigned; cross-piece adjacency is pruned as pairs are placed.
    bool dfs(int i, int max_used) {
        if (i == m) return leaf_check();
        for (int label = 0; label <= std::min(max_used + 1, m); ++label) {
            if (label > 0) {
                bool clash = false;
                for (int j = 0; j < i && !clash; ++j) {
                    int lj = assign[static_cast<std::size_t>(j)];
                    clash = lj > 0 && lj != label && adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                }
                if (clash) continue;
            }
            assign[static_cast<std::size_t>(i)] = label;
            if (dfs(i + 1, std::max(max_used, label))) return true;
        }
        assign[static_cast<std::size_t>(i)] = 0;
        return false;
    }
};

std::optional<Decomposition> run_pair_search(const SymmetricSet& A, DecompositionMode mode, int max_pairs) {
    if (mode == DecompositionMode::Theorem53 && A.dim() != 2) {
        throw Error(ErrorCode::UnsupportedDimension, "obstruction_search requires n = 2");
    }
    if (mode == DecompositionMode::Conjecture54 && A.dim() < 2) {
        throw Error(ErrorCode::UnsupportedDimension, "conjecture54_search requires n >= 2");
    }
    PairSearch s{A, mode, 0, {}, {}, {}, {}, {}};
    s.reps = A.pair_reps();
    s.m = static_cast<int>(s.reps.size());
    if (s.m == 0) return std::nullopt;
    if (s.m > max_pairs) {
        throw Error(ErrorCode::BudgetExceeded, "pair count " + std::to_string(s.m) + " exceeds search budget " + std::to_string(max_pairs));
    }
    CharacteristicGraph g = characteristic_graph(A);
    s.adj.assign(static_cast<std::size_t>(s.m), std::vector<char>(static_cast<std::size_t>(s.m), 0));
    for (auto [i, j] : g.edges) {
        s.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
        s.adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 1;
    }
    s.assign.assign(static_cast<std::size_t>(s.m), 0);
    s.dfs(0, 0);
    return s.found;
}

} // namespace

std::optional<Decomposition> obstruction_search(const SymmetricSet& A, int max_pairs) {
    return run_pair_search(A, DecompositionMode::Theorem53, max_pairs);
}

std::optional<Decomposition> conjecture54_search(const SymmetricSet& A, int max_pairs) {
    return run_pair_search(A, DecompositionMode::Conjecture54, max_pairs);
}

} // namespace achieve
