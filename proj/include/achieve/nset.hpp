#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "achieve/lattice.hpp"

namespace achieve {

/// Largest supported grid resolution per dimension; keeps cell and edge
/// tables enumerable in memory.
int max_resolution(int dim);

/// An exactly k-discrete N-set, stored as the translate map
/// f : (Z/k)^n -> Z^n. Cell u occupies the cube u/k + f(u) + [0, 1/k]^n;
/// one cube per residue class makes the union an N-set automatically.
class DiscreteNSet {
public:
    DiscreteNSet() = default;
    /// The trivial tiling (f == 0).
    DiscreteNSet(int dim, int k);
    DiscreteNSet(int dim, int k, std::vector<Vec> shifts);

    int dim() const noexcept { return dim_; }
    int k() const noexcept { return k_; }
    std::size_t cell_count() const noexcept { return shifts_.size(); }

    /// Cells are indexed lexicographically, last coordinate fastest.
    std::size_t cell_index(const Vec& cell) const;
    Vec cell_at(std::size_t index) const;
    const Vec& shift(std::size_t index) const { return shifts_[index]; }
    const Vec& shift(const Vec& cell) const { return shifts_[cell_index(cell)]; }
    const std::vector<Vec>& shifts() const noexcept { return shifts_; }

    bool operator==(const DiscreteNSet& o) const {
        return dim_ == o.dim_ && k_ == o.k_ && shifts_ == o.shifts_;
    }

private:
    int dim_ = 0;
    int k_ = 0;
    std::vector<Vec> shifts_;
};

/// A(K) = (K - K) n Z^n: {0} and +-(f(u) - f(v') + w) over all grid edges,
/// where v' = (u + d) mod k and w = (u + d - v') / k is the wrap vector.
SymmetricSet achieved_set(const DiscreteNSet& K);

/// Subdivide every cube into factor^n subcubes; the represented point set
/// and the achieved set are unchanged. factor >= 2; throws ResolutionCap.
DiscreteNSet refine(const DiscreteNSet& K, int factor);

/// f'(cell) = f(cell) + x, all other cells unchanged.
DiscreteNSet translate_cell(const DiscreteNSet& K, const Vec& cell, const Vec& x);

/// Refine by 3, then move the central subcube of cell (0,...,0) by x.
/// Adds exactly {+-x} to the achieved set.
DiscreteNSet augment(const DiscreteNSet& K, const Vec& x);

/// The poset of translation classes of S(p) = {g : p + g in K}, closed
/// downward under translated inclusion. Classes are canonicalized by
/// subtracting their lexicographic minimum and sorted by (size, elements).
struct AchievedIdeal {
    std::vector<std::vector<Vec>> classes;
    std::vector<int> ranks;                  // |S| - 1 per class
    std::vector<std::pair<int, int>> order;  // (i, j) with class i < class j, i != j
};

AchievedIdeal achieved_ideal(const DiscreteNSet& K);

struct RenderOptions {
    int cell_px = 40;   // pixels per 1/k cell
    int margin_px = 20;
};

/// Deterministic SVG of a planar discrete N-set: the k^2 translated squares
/// colored by residue class, with the fundamental-domain grid overlaid.
std::string render_svg(const DiscreteNSet& K, const RenderOptions& opts = {});

} // namespace achieve
