#pragma once

// Independent oracles, deliberately coded apart from the library paths they
// check: a direct condition-by-condition Gauss-reduced test, brute-force
// enumeration over all bounded matrices, and cofactor determinants.

#include "ellkit/morphism.hpp"

#include <cstdlib>
#include <numeric>
#include <vector>

namespace oracle {

using ellkit::Int;

// recursive cofactor determinant (the library uses Bareiss)
inline Int det_cofactor(const std::vector<Int>& m, std::size_t n) {
    if (n == 1) return m[0];
    Int acc = 0;
    std::vector<Int> minor((n - 1) * (n - 1));
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t t = 0;
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) minor[t++] = m[i * n + c];
        Int term = m[j] * det_cofactor(minor, n - 1);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

// max |det| over all r x r column submatrices, by cofactor expansion
inline Int max_minor_abs_sq(const std::vector<Int>& mat, std::size_t r, std::size_t g) {
    std::vector<std::size_t> cols(r);
    for (std::size_t i = 0; i < r; ++i) cols[i] = i;
    Int best = 0;
    while (true) {
        std::vector<Int> sub(r * r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) sub[i * r + j] = mat[i * g + cols[j]];
        Int d = det_cofactor(sub, r);
        if (d * d > best) best = d * d;
        std::size_t k = r;
        bool advanced = false;
        while (k > 0) {
            --k;
            if (cols[k] + (r - k) < g) {
                ++cols[k];
                for (std::size_t j = k + 1; j < r; ++j) cols[j] = cols[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return best;
}

// Direct reading of the three Gauss-reduced conditions over Z with the
// positive-pivot convention: some injection row -> column exhibits a*I_r with
// a > 0, the height equals a, and the entries have gcd 1.
inline bool is_gauss_reduced_z(const std::vector<long>& m, std::size_t r, std::size_t g) {
    long H = 0;
    for (long v : m) H = std::max(H, std::labs(v));
    if (H == 0) return false;
    long gcd_all = 0;
    for (long v : m) gcd_all = std::gcd(gcd_all, std::labs(v));
    if (gcd_all != 1) return false;

    // candidate pivot columns per row: unique nonzero equal to +H
    std::vector<std::vector<std::size_t>> cand(r);
    for (std::size_t c = 0; c < g; ++c) {
        std::size_t nz = 0, row = 0;
        for (std::size_t i = 0; i < r; ++i)
            if (m[i * g + c] != 0) {
                ++nz;
                row = i;
            }
        if (nz == 1 && m[row * g + c] == H) cand[row].push_back(c);
    }
    // columns are exclusive to one row, so nonempty per row suffices
    for (std::size_t i = 0; i < r; ++i)
        if (cand[i].empty()) return false;
    return true;
}

// brute-force count over every matrix with entries in [-M, M]
inline long enumerate_count_bruteforce(std::size_t g, std::size_t r, long M) {
    std::size_t cells = r * g;
    std::vector<long> m(cells, -M);
    long count = 0;
    while (true) {
        if (is_gauss_reduced_z(m, r, g)) ++count;
        std::size_t t = 0;
        while (t < cells && m[t] == M) {
            m[t] = -M;
            ++t;
        }
        if (t == cells) break;
        ++m[t];
    }
    return count;
}

inline std::vector<std::vector<long>> enumerate_bruteforce(std::size_t g, std::size_t r, long M) {
    std::size_t cells = r * g;
    std::vector<long> m(cells, -M);
    std::vector<std::vector<long>> out;
    while (true) {
        if (is_gauss_reduced_z(m, r, g)) out.push_back(m);
        std::size_t t = 0;
        while (t < cells && m[t] == M) {
            m[t] = -M;
            ++t;
        }
        if (t == cells) break;
        ++m[t];
    }
    return out;
}

}  // namespace oracle
