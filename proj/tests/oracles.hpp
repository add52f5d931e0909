#pragma once

// Test-only oracles, independent of the library's computation paths.

#include "foxcoh/family.hpp"
#include "foxcoh/group_ring.hpp"
#include "foxcoh/smith.hpp"

#include <functional>
#include <random>
#include <vector>

namespace oracles {

using namespace foxcoh;

// Invariant factors via determinantal divisors: d_k = gcd of all k x k
// minors, factor_k = d_k / d_{k-1}. Exponential; for small matrices only.
inline std::vector<Int> snf_factors_brute(const IMat& m) {
    size_t r = std::min(m.rows, m.cols);
    std::vector<Int> dets{1};
    for (size_t k = 1; k <= r; ++k) {
        // all k-subsets of rows and cols
        std::vector<size_t> rs(k), cs(k);
        for (size_t i = 0; i < k; ++i) rs[i] = i;
        Int g = 0;
        auto minor_det = [&](const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
            // Laplace expansion
            std::vector<std::vector<Int>> a(k, std::vector<Int>(k));
            for (size_t i = 0; i < k; ++i)
                for (size_t j = 0; j < k; ++j) a[i][j] = m.at(rows[i], cols[j]);
            std::function<Int(std::vector<std::vector<Int>>&)> det = [&](std::vector<std::vector<Int>>& b) -> Int {
                size_t n = b.size();
                if (n == 1) return b[0][0];
                Int s = 0;
                for (size_t j = 0; j < n; ++j) {
                    if (b[0][j] == 0) continue;
                    std::vector<std::vector<Int>> sub(n - 1, std::vector<Int>(n - 1));
                    for (size_t i = 1; i < n; ++i) {
                        size_t cc = 0;
                        for (size_t c = 0; c < n; ++c)
                            if (c != j) sub[i - 1][cc++] = b[i][c];
                    }
                    Int term = b[0][j] * det(sub);
                    s += (j % 2 == 0) ? term : -term;
                }
                return s;
            };
            return det(a);
        };
        std::function<void(size_t, size_t)> loop_cols = [&](size_t idx, size_t start) {
            if (idx == k) {
                g = gcd(g, abs(minor_det(rs, cs)));
                return;
            }
            for (size_t c = start; c < m.cols; ++c) {
                cs[idx] = c;
                loop_cols(idx + 1, c + 1);
            }
        };
        std::function<void(size_t, size_t)> loop_rows = [&](size_t idx, size_t start) {
            if (idx == k) {
                loop_cols(0, 0);
                return;
            }
            for (size_t rr = start; rr < m.rows; ++rr) {
                rs[idx] = rr;
                loop_rows(idx + 1, rr + 1);
            }
        };
        loop_rows(0, 0);
        dets.push_back(g);
    }
    std::vector<Int> factors;
    for (size_t k = 1; k <= r; ++k) {
        if (dets[k] == 0) break;
        factors.push_back(dets[k] / dets[k - 1]);
    }
    return factors;
}

// Exact integer determinant (Bareiss), for unimodularity checks.
inline Int determinant(const IMat& m) {
    if (m.rows != m.cols) throw std::logic_error("determinant of non-square matrix");
    size_t n = m.rows;
    if (n == 0) return 1;
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);
    Int sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// Recursive letter-at-a-time Fox derivative, the independent oracle for
// the run-based implementation.
inline RingElt fox_recursive(const Letters& w, int gen) {
    if (w.empty()) return RingElt::zero();
    int c = w.front();
    Letters rest(w.begin() + 1, w.end());
    RingElt head;
    if (letter_gen(c) == gen) {
        if (!letter_neg(c))
            head = RingElt::one();
        else
            head = RingElt::of(Word::gen(gen, -1), -1);
    }
    RingElt tail = fox_recursive(rest, gen);
    RingElt shifted;
    Word prefix = Word::gen(letter_gen(c), letter_neg(c) ? -1 : 1);
    for (const auto& [g, k] : tail.terms) shifted.add_term(prefix * g, k);
    return head + shifted;
}

inline Word random_word(std::mt19937_64& rng, size_t ngens, int len) {
    Word w;
    for (int i = 0; i < len; ++i)
        w.append_run(static_cast<int>(rng() % ngens), (rng() & 1) ? 1 : -1);
    return w;
}

inline RingElt random_ring_elt(std::mt19937_64& rng, const FamilyContext& ctx, int terms, int len) {
    RingElt e;
    for (int i = 0; i < terms; ++i)
        e.add_term(ctx.rs.reduce(random_word(rng, ctx.pres.rank(), static_cast<int>(rng() % len))),
                   static_cast<long long>(rng() % 9) - 4);
    return e;
}

inline IMat random_matrix(std::mt19937_64& rng, size_t rows, size_t cols, long long bound) {
    IMat m(rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            m.at(i, j) = static_cast<long long>(rng() % (2 * bound + 1)) - bound;
    return m;
}

} // namespace oracles
