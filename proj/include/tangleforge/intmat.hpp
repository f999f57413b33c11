#pragma once

#include <cstdint>
#include <vector>

namespace tf {

using IntMat = std::vector<std::vector<long long>>;

// Rank over Q of an integer matrix.
int int_rank(IntMat m);

// Invariant factors d1 | d2 | ... (all >= 1) of the matrix viewed as a
// presentation of a finitely generated abelian group; zeros are dropped.
std::vector<long long> smith_invariant_factors(IntMat m);

}  // namespace tf
