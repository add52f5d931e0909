#pragma once

#include "foxcoh/bigint.hpp"

#include <optional>
#include <vector>

namespace foxcoh {

// Dense integer matrix with exact entries.
struct IMat {
    size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IMat() = default;
    IMat(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}

    static IMat identity(size_t n) {
        IMat m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    Int& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Int& at(size_t i, size_t j) const { return a[i * cols + j]; }

    IMat transposed() const {
        IMat t(cols, rows);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend bool operator==(const IMat& x, const IMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    friend IMat operator*(const IMat& x, const IMat& y) {
        IMat r(x.rows, y.cols);
        for (size_t i = 0; i < x.rows; ++i)
            for (size_t k = 0; k < x.cols; ++k) {
                const Int& c = x.at(i, k);
                if (c == 0) continue;
                for (size_t j = 0; j < y.cols; ++j) r.at(i, j) += c * y.at(k, j);
            }
        return r;
    }
};

struct SmithResult {
    IMat d, u, v; // u * input * v = d, with u, v unimodular
    size_t rank = 0;
    std::vector<Int> factors; // nonzero diagonal entries, d_i | d_{i+1}
};

// Smith normal form by pivoting on a least nonzero entry and gcd-clearing
// its row and column; the divisibility fix folds offending entries into the
// pivot row before continuing.
inline SmithResult smith_normal_form(IMat m) {
    SmithResult res;
    const size_t R = m.rows, C = m.cols;
    IMat u = IMat::identity(R), v = IMat::identity(C);

    auto row_swap = [&](size_t i, size_t j) {
        for (size_t k = 0; k < C; ++k) std::swap(m.at(i, k), m.at(j, k));
        for (size_t k = 0; k < R; ++k) std::swap(u.at(i, k), u.at(j, k));
    };
    auto col_swap = [&](size_t i, size_t j) {
        for (size_t k = 0; k < R; ++k) std::swap(m.at(k, i), m.at(k, j));
        for (size_t k = 0; k < C; ++k) std::swap(v.at(k, i), v.at(k, j));
    };
    auto row_add = [&](size_t dst, size_t src, const Int& q) { // row_dst += q * row_src
        if (q == 0) return;
        for (size_t k = 0; k < C; ++k) m.at(dst, k) += q * m.at(src, k);
        for (size_t k = 0; k < R; ++k) u.at(dst, k) += q * u.at(src, k);
    };
    auto col_add = [&](size_t dst, size_t src, const Int& q) {
        if (q == 0) return;
        for (size_t k = 0; k < R; ++k) m.at(k, dst) += q * m.at(k, src);
        for (size_t k = 0; k < C; ++k) v.at(k, dst) += q * v.at(k, src);
    };
    auto row_negate = [&](size_t i) {
        for (size_t k = 0; k < C; ++k) m.at(i, k) = -m.at(i, k);
        for (size_t k = 0; k < R; ++k) u.at(i, k) = -u.at(i, k);
    };

    size_t t = 0;
    while (t < R && t < C) {
        // least |entry| in the trailing submatrix as pivot
        size_t pi = t, pj = t;
        Int best = 0;
        for (size_t i = t; i < R && best != 1; ++i)
            for (size_t j = t; j < C; ++j) {
                if (m.at(i, j) == 0) continue;
                Int mag = abs(m.at(i, j));
                if (best == 0 || mag < best) {
                    best = mag;
                    pi = i;
                    pj = j;
                    if (best == 1) break;
                }
            }
        if (best == 0) break;
        if (pi != t) row_swap(t, pi);
        if (pj != t) col_swap(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < R; ++i) {
                if (m.at(i, t) == 0) continue;
                Int q = m.at(i, t) / m.at(t, t);
                row_add(i, t, -q);
                if (m.at(i, t) != 0) { // remainder becomes the new, smaller pivot
                    row_swap(t, i);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < C; ++j) {
                if (m.at(t, j) == 0) continue;
                Int q = m.at(t, j) / m.at(t, t);
                col_add(j, t, -q);
                if (m.at(t, j) != 0) {
                    col_swap(t, j);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility: pivot must divide the trailing submatrix
                for (size_t i = t + 1; i < R && clean; ++i)
                    for (size_t j = t + 1; j < C && clean; ++j)
                        if (m.at(i, j) % m.at(t, t) != 0) {
                            row_add(t, i, 1);
                            clean = false;
                        }
            }
        }
        if (m.at(t, t) < 0) row_negate(t);
        ++t;
    }

    res.rank = t;
    for (size_t i = 0; i < t; ++i) res.factors.push_back(m.at(i, i));
    res.d = std::move(m);
    res.u = std::move(u);
    res.v = std::move(v);
    return res;
}

// Any integer solution of M x = b, if one exists.
inline std::optional<std::vector<Int>> solve_integer(const IMat& m, const std::vector<Int>& b,
                                                     const SmithResult* pre = nullptr) {
    SmithResult local;
    const SmithResult& s = pre ? *pre : (local = smith_normal_form(m));
    std::vector<Int> ub(m.rows, 0);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t k = 0; k < m.rows; ++k) ub[i] += s.u.at(i, k) * b[k];
    std::vector<Int> y(m.cols, 0);
    for (size_t i = 0; i < m.rows; ++i) {
        Int di = (i < m.cols) ? s.d.at(i, i) : Int(0);
        if (di == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % di != 0) return std::nullopt;
            y[i] = ub[i] / di;
        }
    }
    std::vector<Int> x(m.cols, 0);
    for (size_t i = 0; i < m.cols; ++i)
        for (size_t k = 0; k < m.cols; ++k) x[i] += s.v.at(i, k) * y[k];
    return x;
}

// Basis (as rows) of the integer kernel {x : M x = 0}.
inline std::vector<std::vector<Int>> kernel_basis(const IMat& m, const SmithResult* pre = nullptr) {
    SmithResult local;
    const SmithResult& s = pre ? *pre : (local = smith_normal_form(m));
    std::vector<std::vector<Int>> basis;
    for (size_t j = s.rank; j < m.cols; ++j) {
        std::vector<Int> col(m.cols);
        for (size_t i = 0; i < m.cols; ++i) col[i] = s.v.at(i, j);
        basis.push_back(std::move(col));
    }
    return basis;
}

// Does b lie in the lattice spanned by the rows of M?
inline bool in_row_lattice(const IMat& m, const std::vector<Int>& b, const SmithResult* pre_t = nullptr) {
    return solve_integer(m.transposed(), b, pre_t).has_value();
}

} // namespace foxcoh
