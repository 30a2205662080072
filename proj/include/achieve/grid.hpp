#pragma once

#include <cstddef>
#include <vector>

#include "achieve/lattice.hpp"

namespace achieve {

/// All nonzero step vectors in {-1,0,1}^dim, sorted lexicographically.
const std::vector<Vec>& all_steps(int dim);

/// The lexicographically positive half of all_steps (first nonzero coord +1);
/// these index the canonical oriented edges of the torus grid.
const std::vector<Vec>& positive_steps(int dim);

bool is_valid_step(const Vec& d);

std::size_t pow_size(int base, int exp);

/// Torus step: v = (u + d) mod k, returns the wrap vector w = (u + d - v)/k.
/// u must have entries in [0, k).
Vec wrap_step(const Vec& u, const Vec& d, int k, Vec* v_out);

} // namespace achieve
