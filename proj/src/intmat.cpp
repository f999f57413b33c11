#include "tangleforge/intmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace tf {

namespace {

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in matrix reduction");
    return r;
}

long long checked_sub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in matrix reduction");
    return r;
}

// Diagonalize m in place starting at (t, t); returns the diagonal entries.
// Classic Smith reduction with a smallest-pivot strategy to keep entries small.
std::vector<long long> diagonalize(IntMat& m) {
    std::vector<long long> diag;
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    size_t t = 0;
    while (t < rows && t < cols) {
        // Find the nonzero entry of smallest absolute value in the submatrix.
        size_t pr = t, pc = t;
        long long best = 0;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (best == 0 || std::llabs(m[i][j]) < best)) {
                    best = std::llabs(m[i][j]);
                    pr = i;
                    pc = j;
                }
        if (best == 0) break;
        std::swap(m[t], m[pr]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pc]);

        bool dirty = false;
        for (size_t i = t + 1; i < rows; ++i) {
            if (m[i][t] == 0) continue;
            long long q = m[i][t] / m[t][t];
            for (size_t j = t; j < cols; ++j)
                m[i][j] = checked_sub(m[i][j], checked_mul(q, m[t][j]));
            if (m[i][t] != 0) dirty = true;
        }
        for (size_t j = t + 1; j < cols; ++j) {
            if (m[t][j] == 0) continue;
            long long q = m[t][j] / m[t][t];
            for (size_t i = t; i < rows; ++i)
                m[i][j] = checked_sub(m[i][j], checked_mul(q, m[i][t]));
            if (m[t][j] != 0) dirty = true;
        }
        if (dirty) continue;  // remainders left; pick a smaller pivot again
        diag.push_back(std::llabs(m[t][t]));
        ++t;
    }
    return diag;
}

}  // namespace

int int_rank(IntMat m) {
    return static_cast<int>(diagonalize(m).size());
}

std::vector<long long> smith_invariant_factors(IntMat m) {
    std::vector<long long> d = diagonalize(m);
    // Enforce the divisibility chain d1 | d2 | ... via pairwise gcd/lcm.
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i + 1; j < d.size(); ++j) {
            long long g = std::gcd(d[i], d[j]);
            if (g == 0) continue;
            long long l = checked_mul(d[i] / g, d[j]);
            d[i] = g;
            d[j] = l;
        }
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace tf
