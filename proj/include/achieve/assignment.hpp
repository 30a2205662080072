#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "achieve/grid.hpp"
#include "achieve/lattice.hpp"
#include "achieve/nset.hpp"

namespace achieve {

/// The torus grid graph G_{n,k}: vertices (Z/k)^n, edges between vertices at
/// toroidal sup-distance 1 (diagonals included). k >= 3 so that each pair of
/// adjacent vertices is joined by a single edge with a well-defined wrap.
class TorusGraph {
public:
    TorusGraph(int dim, int k);

    int dim() const noexcept { return dim_; }
    int k() const noexcept { return k_; }
    std::size_t vertex_count() const noexcept { return vcount_; }

    std::size_t vertex_index(const Vec& v) const;
    Vec vertex_at(std::size_t index) const;

    const std::vector<Vec>& steps() const { return all_steps(dim_); }
    const std::vector<Vec>& oriented_steps() const { return positive_steps(dim_); }

    bool operator==(const TorusGraph& o) const noexcept { return dim_ == o.dim_ && k_ == o.k_; }

private:
    int dim_;
    int k_;
    std::size_t vcount_;
};

/// A walk on G_{n,k}: a start vertex plus a sequence of steps in {-1,0,1}^n.
struct GridPath {
    Vec start;
    std::vector<Vec> steps;
};

/// Whether the path returns to its start (modulo k).
bool is_loop(const TorusGraph& g, const GridPath& p);

/// The homotopy class of a loop: lift the walk to Z^n step by step and divide
/// the net displacement by k. Throws NotALoop.
Vec winding_vector(const TorusGraph& g, const GridPath& p);

/// A Z^n-valued function on oriented edges with value(u,d) = -value(u+d, -d);
/// extends additively to paths (a discrete one-form).
class EdgeAssignment {
public:
    explicit EdgeAssignment(const TorusGraph& g);

    const TorusGraph& graph() const noexcept { return graph_; }
    Vec value(const Vec& u, const Vec& d) const;
    void set_value(const Vec& u, const Vec& d, const Vec& val);

    EdgeAssignment operator+(const EdgeAssignment& o) const;
    EdgeAssignment operator-(const EdgeAssignment& o) const;
    bool operator==(const EdgeAssignment& o) const;

private:
    std::size_t slot(const Vec& u, const Vec& d, bool* flip) const;
    TorusGraph graph_;
    std::vector<Vec> values_; // canonical orientation only
};

/// Sum of edge values along the path; additive under concatenation and
/// negated under reversal. Throws InvalidStep.
Vec evaluate(const EdgeAssignment& chi, const GridPath& p);

struct Classification {
    bool closed = false; // zero on every triangle of every unit cell
    bool exact = false;  // closed and zero on the n axis loops
    bool proper = false; // closed and axis loop i evaluates to e_i
};

/// Closedness is decided on unit-cell triangles only: the 2^n corners of a
/// cell are mutually adjacent, and contractible loops decompose into such
/// triangles. Together with the axis loop values this determines every loop.
Classification classify(const EdgeAssignment& chi);

/// {0} and the +- values over all edges, as a SymmetricSet.
SymmetricSet edge_values(const EdgeAssignment& chi);

/// The proper assignment of a discrete N-set:
/// value(u,d) = f(u) - f(v') + w with v' = (u+d) mod k, w = (u+d-v')/k.
EdgeAssignment differentiate(const DiscreteNSet& K);

/// Reconstruct the translate map from a proper assignment by walking a
/// spanning tree from base with f(base) = 0; tree edges solve
/// f(v') = f(u) - value(u,d) + w. Throws NotProper.
DiscreteNSet integrate(const EdgeAssignment& chi, const Vec& base);

struct SimpleCycle {
    GridPath path;
    Vec winding;
};

/// Enumerate every vertex-simple cycle of length 3..max_len once up to
/// rotation and reflection (least vertex first, lesser neighbor second).
/// Deterministic order; throws BudgetExceeded past max_cycles.
void for_each_simple_cycle(const TorusGraph& g, int max_len,
                           const std::function<void(const SimpleCycle&)>& fn,
                           std::uint64_t max_cycles = 10'000'000);

std::vector<SimpleCycle> simple_cycles(const TorusGraph& g, int max_len,
                                       std::uint64_t max_cycles = 10'000'000);

} // namespace achieve
