#pragma once

#include "foxcoh/word.hpp"

#include <string>
#include <vector>

namespace foxcoh {

struct DeltaReport {
    long long dimension = 0;          // dim of H^1(F(s);F_2) / (alpha - 1) H^1
    std::vector<size_t> coset_basis;  // indices of dual basis vectors spanning the quotient
    std::vector<std::vector<int>> alpha_matrix; // induced matrix on F_2^s
};

// The quotient H^1(F(s);F_2)/(alpha-1)H^1(F(s);F_2) for an endomorphism
// alpha of F(s) given by generator images: abelianize mod 2 and compute
// the cokernel of alpha - 1.
inline DeltaReport delta_invariant(size_t s, const std::vector<Word>& images) {
    if (images.size() != s) throw error("delta invariant needs one image word per generator");
    DeltaReport rep;
    rep.alpha_matrix.assign(s, std::vector<int>(s, 0));
    for (size_t i = 0; i < s; ++i)
        for (const Run& r : images[i].runs()) {
            if (r.gen < 0 || static_cast<size_t>(r.gen) >= s)
                throw error("image word uses an undeclared generator");
            rep.alpha_matrix[i][static_cast<size_t>(r.gen)] ^= static_cast<int>(r.exp & 1);
        }

    // alpha - 1 over F_2, column reduction
    std::vector<std::vector<int>> m = rep.alpha_matrix;
    for (size_t i = 0; i < s; ++i) m[i][i] ^= 1;
    size_t rank = 0;
    std::vector<bool> pivot_row(s, false);
    for (size_t col = 0; col < s && rank < s; ++col) {
        size_t prow = s;
        for (size_t row = 0; row < s; ++row)
            if (!pivot_row[row] && m[row][col]) {
                prow = row;
                break;
            }
        if (prow == s) continue;
        pivot_row[prow] = true;
        ++rank;
        for (size_t row = 0; row < s; ++row)
            if (row != prow && m[row][col])
                for (size_t c = 0; c < s; ++c) m[row][c] ^= m[prow][c];
    }
    rep.dimension = static_cast<long long>(s - rank);
    for (size_t row = 0; row < s; ++row)
        if (!pivot_row[row]) rep.coset_basis.push_back(row);
    return rep;
}

} // namespace foxcoh
