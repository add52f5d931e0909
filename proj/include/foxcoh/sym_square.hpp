#pragma once

#include "foxcoh/abelian.hpp"
#include "foxcoh/cohomology.hpp"
#include "foxcoh/dual_module.hpp"

#include <string>
#include <vector>

namespace foxcoh {

// Truncated presentation of the coinvariants of the symmetric square of
// the dual module of Z*_m. The group is the direct limit of stage groups
// S_n = Z^J/(a_z - a_{m-z}) along a_z -> m sum_{j<m} a^j a_{z/m}, so the
// truncation keeps two consecutive stages as separate generator copies
// with the transition instantiated inside the window:
//   generators  a_z (stage n), a'_z (stage n+1),  dexp(z) <= level
//   relations   a_z - a_{m-z},  a'_z - a'_{m-z},
//               a_z - m sum_{j<m} a'_{j + z/m}   (when z/m stays in range).
// Identifying the two copies instead (reading the limit presentation over
// a single copy of E) manufactures 2-torsion for odd m out of the
// self-referential z = 0 relation; the staged form is the one whose
// torsion-freeness the limit argument actually proves.
inline AbPresentation sym_square_truncation(long long m, long long level) {
    if (m < 1) throw error("sym-square truncation needs m >= 1");
    if (level < 1) throw error("truncation level must be >= 1");
    long long span = llpow(m, level + 1); // generators per stage
    size_t total = 2 * static_cast<size_t>(span);
    AbPresentation pres;
    for (long long k = 0; k < span; ++k)
        pres.labels.push_back("a[" + std::to_string(k) + "/m^" + std::to_string(level) + "]");
    for (long long k = 0; k < span; ++k)
        pres.labels.push_back("a'[" + std::to_string(k) + "/m^" + std::to_string(level) + "]");

    std::vector<std::vector<Int>> rows;
    auto push_row = [&](std::vector<Int> row) {
        for (const Int& v : row)
            if (v != 0) {
                rows.push_back(std::move(row));
                return;
            }
    };

    // a_z - a_{m-z} on both stages
    for (long long stage = 0; stage < 2; ++stage)
        for (long long k = 0; k < span; ++k) {
            long long k2 = (span - k) % span;
            std::vector<Int> row(total, 0);
            row[static_cast<size_t>(stage * span + k)] += 1;
            row[static_cast<size_t>(stage * span + k2)] -= 1;
            push_row(std::move(row));
        }
    // a_z - m (a'^0 + ... + a'^{m-1}) a'_{z/m}, for z/m still in the window
    for (long long k = 0; k < span; ++k) {
        if (k % m != 0) continue;
        std::vector<Int> row(total, 0);
        row[static_cast<size_t>(k)] += 1;
        long long base = k / m; // index of a_{z/m}
        for (long long j = 0; j < m; ++j) {
            long long idx = (base + j * (span / m)) % span;
            row[static_cast<size_t>(span + idx)] -= m;
        }
        push_row(std::move(row));
    }

    pres.rel = IMat(rows.size(), total);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < total; ++j) pres.rel.at(i, j) = rows[i][j];
    return pres;
}

// Combined report for the torsion condition on Z (x)_pi Gamma_W(Pi) for
// pi = Z*_m.
struct GammaCheckReport {
    long long m = 0, level = 0;
    long long beta = -1;
    bool truncation_torsion_free = false;
    std::vector<Int> factors;
    std::string status; // "torsion-free" / "inconclusive"
    std::string note;
};

inline GammaCheckReport gamma_w_coinvariants_check(long long m, long long level) {
    if (m < 1) throw error("gamma check needs m >= 1");
    GammaCheckReport rep;
    rep.m = m;
    rep.level = level;
    rep.beta = beta2(builtin_bs(m));
    auto [tf, inv] = torsion_free_check(sym_square_truncation(m, level));
    rep.truncation_torsion_free = tf;
    rep.factors = inv.all_factors;
    for (size_t i = 0; i < inv.free_rank; ++i) rep.factors.push_back(0);
    if (m == 1) {
        // Z*_1 = Z^2: the dual module is Z, its Whitehead quadratic functor
        // is Z and the coinvariants are torsion-free outright.
        rep.status = "torsion-free";
        rep.note = "m = 1: coinvariants are Z";
    } else if (rep.beta == 0 && tf) {
        rep.status = "torsion-free";
        rep.note = "proved at truncation level " + std::to_string(level);
    } else if (rep.beta > 0) {
        rep.status = "inconclusive";
        rep.note = "beta = " + std::to_string(rep.beta) +
                   " > 0: the symmetric-square bound does not determine the answer; "
                   "whether this holds for all m is open";
    } else {
        rep.status = "torsion found";
        rep.note = "truncated presentation has torsion";
    }
    return rep;
}

} // namespace foxcoh
