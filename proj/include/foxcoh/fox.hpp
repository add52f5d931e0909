#pragma once

#include "foxcoh/family.hpp"
#include "foxcoh/group_ring.hpp"

#include <vector>

namespace foxcoh {

// Fox derivative in the free group ring: d1/dx = 0, dx/dx = 1,
// d(x^-1)/dx = -x^-1 and d(uv)/dx = du/dx + u dv/dx. The input word must
// be freely reduced; no relator reduction is applied.
inline RingElt fox_derivative(const Word& w, int gen, long long expand_budget = 1 << 20) {
    RingElt out;
    Word prefix;
    for (const Run& run : w.runs()) {
        if (run.gen == gen) {
            long long n = run.exp < 0 ? -run.exp : run.exp;
            if (n > expand_budget) throw budget_error("fox derivative support too large");
            if (run.exp > 0)
                for (long long i = 0; i < n; ++i) out.add_term(prefix * Word::gen(gen, i), 1);
            else
                for (long long i = 1; i <= n; ++i) out.add_term(prefix * Word::gen(gen, -i), -1);
        }
        prefix.append_run(run.gen, run.exp);
    }
    return out;
}

inline RingElt fox_derivative(const Presentation& p, const Word& w, const std::string& gen) {
    int g = p.gen_index(gen);
    if (g < 0) throw error("fox derivative with respect to undeclared generator '" + gen + "'");
    return fox_derivative(w, g);
}

// The Fox-Lyndon complex P_2 -> P_1 -> P_0 = Gamma with bases {p_r^2},
// {p_x^1}, {1}: d p_r^2 = sum_x r_x p_x^1 with r_x = dr/dx, d p_x^1 = x-1.
struct Resolution {
    size_t ngens = 0, nrel = 0;
    std::vector<std::vector<RingElt>> d2;      // [relator][gen], reduced in the group
    std::vector<std::vector<RingElt>> d2_free; // same entries in the free group ring
};

inline Resolution build_resolution(const FamilyContext& ctx) {
    const Presentation& p = ctx.pres;
    Resolution res;
    res.ngens = p.rank();
    res.nrel = p.relators.size();
    res.d2.resize(res.nrel);
    res.d2_free.resize(res.nrel);
    for (size_t r = 0; r < res.nrel; ++r) {
        res.d2[r].resize(res.ngens);
        res.d2_free[r].resize(res.ngens);
        for (size_t x = 0; x < res.ngens; ++x) {
            RingElt d = fox_derivative(p.relators[r], static_cast<int>(x));
            res.d2_free[r][x] = d;
            res.d2[r][x] = normalized(d, ctx.rs);
        }
    }
    // d1 (d p_r^2) = sum_x r_x (x - 1) = r - 1 = 0 in Z[pi]
    for (size_t r = 0; r < res.nrel; ++r) {
        RingElt s;
        for (size_t x = 0; x < res.ngens; ++x) {
            RingElt xm1 = RingElt::of(Word::gen(static_cast<int>(x))) - RingElt::one();
            s += gr_mul(res.d2[r][x], xm1, ctx.rs);
        }
        if (!s.is_zero()) throw error("resolution boundary does not square to zero (normal form bug)");
    }
    return res;
}

// w-twisted dual complex, indexed as in the length-2 duality: 1* in dual
// degree 2, q_x^1 in degree 1, q_r^0 in degree 0.
//   d 1* = sum_x (xbar - 1) q_x^1,  d q_x^1 = sum_r rbar_x q_r^0.
struct DualComplex {
    std::vector<RingElt> d_top;              // [gen]: coefficient of q_x^1
    std::vector<std::vector<RingElt>> d_mid; // [gen][relator]: rbar_x
};

inline DualComplex dualize_resolution(const Resolution& res, const FamilyContext& ctx) {
    const OrientationChar& w = ctx.pres.w;
    DualComplex dc;
    dc.d_top.resize(res.ngens);
    dc.d_mid.assign(res.ngens, std::vector<RingElt>(res.nrel));
    for (size_t x = 0; x < res.ngens; ++x) {
        RingElt xg = RingElt::of(ctx.rs.reduce(Word::gen(static_cast<int>(x))));
        dc.d_top[x] = involute(xg, w, ctx.rs) - RingElt::one();
        for (size_t r = 0; r < res.nrel; ++r) dc.d_mid[x][r] = involute(res.d2[r][x], w, ctx.rs);
    }
    for (size_t r = 0; r < res.nrel; ++r) {
        RingElt s;
        for (size_t x = 0; x < res.ngens; ++x) s += gr_mul(dc.d_top[x], dc.d_mid[x][r], ctx.rs);
        if (!s.is_zero()) throw error("dual boundary does not square to zero (normal form bug)");
    }
    return dc;
}

} // namespace foxcoh
