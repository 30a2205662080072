#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "achieve/lattice.hpp"

namespace achieve {

/// The characteristic graph G(A): one vertex per +-pair of A \ {0},
/// vertices i,j joined iff a_i + a_j or a_i - a_j lies in A. Independent of
/// the choice of pair representatives because A is symmetric.
struct CharacteristicGraph {
    std::vector<Vec> vertices;             // canonical pair representatives, sorted
    std::vector<std::pair<int, int>> edges; // i < j
    std::vector<std::vector<int>> adj;
};

CharacteristicGraph characteristic_graph(const SymmetricSet& A);

/// For each connected component, the symmetric set {0} u (+- pairs of its vertices).
std::vector<SymmetricSet> components(const CharacteristicGraph& g, const SymmetricSet& A);

struct NecessaryReport {
    enum class Status { Achievable, NotAchievable, Inconclusive };
    Status status = Status::Inconclusive;
    std::string failed_condition;    // set when NotAchievable
    bool generates = false;          // <A> = Z^n
    std::vector<SymmetricSet> component_sets;
    std::vector<bool> component_generates;
    std::optional<Int> gcd_n1;       // n = 1 only
};

/// Fast necessary conditions: generation of Z^n, the Theorem 4.2 corollary
/// (some component must generate), and the full n = 1 characterization.
NecessaryReport necessary_report(const SymmetricSet& A);

enum class DecompositionMode { Theorem53, Conjecture54 };

struct Piece {
    std::vector<Vec> S;     // pair representatives, sorted
    std::vector<Vec> Delta; // pair representatives, sorted
};

struct Decomposition {
    DecompositionMode mode = DecompositionMode::Theorem53;
    std::vector<Piece> pieces;
};

/// Computes each Delta_i from G(A) and checks the hypotheses: the pieces
/// cover A \ {0} together with their boundaries, the S_i are disjoint,
/// nonempty and pairwise non-adjacent, and each <Delta_i> contains no
/// primitive vector (Theorem53) resp. has non-cyclic quotient (Conjecture54).
/// Throws InvalidDecompositionError listing the violated conditions.
Decomposition validate_decomposition(const SymmetricSet& A,
                                     const std::vector<std::vector<Vec>>& s_list,
                                     DecompositionMode mode = DecompositionMode::Theorem53);

/// Search over assignments of pairs to pieces (or to none) for a valid
/// decomposition that refutes achievability: every conclusion branch of the
/// theorem would have to generate Z^2 but none can, i.e. <S_i u Delta_i> != Z^2
/// for all i and <u Delta_i> != Z^2. Returns the first certificate in the
/// canonical enumeration order, or nothing.
std::optional<Decomposition> obstruction_search(const SymmetricSet& A, int max_pairs = 10);

/// Same search with the Conjecture 5.4 boundary condition (non-cyclic
/// quotient). The result is conjectural evidence only and never upgrades a
/// verdict on its own.
std::optional<Decomposition> conjecture54_search(const SymmetricSet& A, int max_pairs = 10);

} // namespace achieve
