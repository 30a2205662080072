#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "achieve/lattice.hpp"
#include "achieve/nset.hpp"
#include "achieve/structure.hpp"

namespace achieve {

enum class SearchMode { Subset, Exact };

struct SearchConfig {
    int k = 3;
    Int bound = 2;               // max sup-norm of any translate f(v)
    SearchMode mode = SearchMode::Exact;
    std::uint64_t node_limit = UINT64_MAX;
    int thread_count = 1;
};

struct SearchResult {
    std::optional<DiscreteNSet> witness;
    bool node_limit_hit = false;
    std::uint64_t nodes = 0;
};

/// Depth-first search for an exactly k-discrete witness of A: cells are
/// assigned in lexicographic order with f(0)=0 pinned, every edge between
/// assigned cells must carry a value in A, and Exact mode additionally
/// requires every pair of A to be realized. Returns the lexicographically
/// first witness (independent of thread_count), or nothing once the bounded
/// space is exhausted. A bounded "no" is never a refutation.
SearchResult find_witness(const SymmetricSet& A, const SearchConfig& cfg);

/// All edge values of K lie in A (Subset) resp. realize A exactly (Exact).
bool witness_valid(const SymmetricSet& A, const DiscreteNSet& K, SearchMode mode);

struct Verdict {
    enum class Kind { Achieved, RefutedNecessary, RefutedObstruction, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<DiscreteNSet> witness;       // Achieved
    int witness_k = 0;
    std::optional<Decomposition> certificate;  // RefutedObstruction
    std::string reason;                        // RefutedNecessary
    // Explored frontier, reported with Unknown.
    int k_max = 0;
    Int bound = 0;
    bool node_limit_hit = false;
    std::uint64_t nodes = 0;
};

struct DecideOptions {
    int k_max = 4;
    Int bound = 2;
    SearchMode mode = SearchMode::Exact;
    std::uint64_t node_limit = UINT64_MAX;
    int thread_count = 1;
    int obstruction_max_pairs = 10;
};

/// necessary_report first, then the Theorem 5.3 obstruction search (n = 2),
/// then witness search for k = 3..k_max. Unknown reports the explored frontier.
Verdict decide(const SymmetricSet& A, const DecideOptions& opts);

struct CatalogEntry {
    SymmetricSet set;
    DiscreteNSet witness;
};

struct CatalogResult {
    std::vector<CatalogEntry> entries;
    bool partial = false;
    std::uint64_t admitted = 0; // completed translate maps enumerated
    std::uint64_t nodes = 0;
};

/// Enumerate every f with f(0)=0 and |f| <= bound, collecting the distinct
/// achieved sets with one (lexicographically first) witness each.
/// Supported profiles: n=1 with k <= 5, and n=2 with k=3, bound=1.
CatalogResult catalog(int n, int k, Int bound, std::uint64_t node_limit = UINT64_MAX);

} // namespace achieve
