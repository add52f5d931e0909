#pragma once

#include "foxcoh/smith.hpp"
#include "foxcoh/tensor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace foxcoh {

// Degree-0 and degree-1 components of a diagonal approximation
// j: Qbar -> P (x) Qbar:
//   j0(q_r^0) = 1 (x) q_r^0
//   j1(q_x^1) = 1 (x) q_x^1
//             + sum_{r,k,y} e_{rxk} (d r_{xk}/dy . p_y^1 (x) r_{xk} q_r^0),
// where rbar_x = sum_k e_{rxk} r_{xk} is read off the stored dual entries
// and the inner derivative is a free-group Fox derivative of the normal
// form of r_{xk}.
struct DiagonalMaps {
    std::vector<TensorElt> j0; // per relator
    std::vector<TensorElt> j1; // per generator
};

struct DiagonalData {
    FamilyContext ctx;
    Resolution res;
    DualComplex dual;
    DiagonalMaps maps;
};

inline TensorElt j1_image(const DiagonalData& dd, const std::vector<RingElt>& coeffs) {
    TensorElt out;
    out.degree = 1;
    for (size_t x = 0; x < dd.res.ngens; ++x) out += diag_act(coeffs[x], dd.maps.j1[x], dd.ctx.rs);
    return out;
}

// j1(d 1*) = sum_x (xbar - 1) . j1(q_x^1), the degree-1 target that a
// degree-2 candidate must hit.
inline TensorElt j1_of_top_boundary(const DiagonalData& dd) { return j1_image(dd, dd.dual.d_top); }

inline DiagonalData build_diagonal(const FamilyContext& ctx) {
    DiagonalData dd{ctx, build_resolution(ctx), {}, {}};
    dd.dual = dualize_resolution(dd.res, ctx);
    const RewritingSystem& rs = ctx.rs;

    dd.maps.j0.resize(dd.res.nrel);
    for (size_t r = 0; r < dd.res.nrel; ++r) {
        dd.maps.j0[r].degree = 0;
        dd.maps.j0[r].add(0, 0, static_cast<int>(r), Word(), Word(), 1);
    }
    dd.maps.j1.resize(dd.res.ngens);
    for (size_t x = 0; x < dd.res.ngens; ++x) {
        TensorElt& jx = dd.maps.j1[x];
        jx.degree = 1;
        jx.add(0, 0, static_cast<int>(x), Word(), Word(), 1);
        for (size_t r = 0; r < dd.res.nrel; ++r)
            for (const auto& [u, e] : dd.dual.d_mid[x][r].terms) {
                // differentiate a representative spelled on the side of x
                Word urep = rs.reduce_preferring(u, static_cast<int>(x));
                if (!(rs.reduce(urep) == u)) throw error("representative respelling is inconsistent");
                for (size_t y = 0; y < dd.res.ngens; ++y)
                    for (const auto& [v, cv] : fox_derivative(urep, static_cast<int>(y)).terms)
                        jx.add(1, static_cast<int>(y), static_cast<int>(r), rs.reduce(v), u, e * cv);
            }
    }

    // chain condition through degree 1: d j1(q_x^1) = j0(d q_x^1)
    for (size_t x = 0; x < dd.res.ngens; ++x) {
        TensorElt lhs = tensor_boundary(dd.maps.j1[x], dd.res, dd.dual, ctx);
        TensorElt rhs;
        rhs.degree = 0;
        for (size_t r = 0; r < dd.res.nrel; ++r) rhs += diag_act(dd.dual.d_mid[x][r], dd.maps.j0[r], rs);
        if (!(lhs == rhs)) throw error("diagonal j1 fails the chain condition (internal bug)");
    }
    return dd;
}

// The candidate shape suggested by the evidence in the source families:
//   1 (x) 1* - sum_x xbar (p_x^1 (x) q_x^1) - sum_r u_r (p_r^2 (x) q_r^0),
// with u_r the inverse of a segment of r.
inline TensorElt ansatz_candidate(const DiagonalData& dd, const std::vector<Word>& u) {
    const RewritingSystem& rs = dd.ctx.rs;
    const OrientationChar& w = dd.ctx.pres.w;
    TensorElt cand;
    cand.degree = 2;
    cand.add(0, 0, 0, Word(), Word(), 1);
    for (size_t x = 0; x < dd.res.ngens; ++x) {
        Word xbar = rs.reduce(Word::gen(static_cast<int>(x), -1));
        Int sign = w(Word::gen(static_cast<int>(x))) == 1 ? 1 : -1;
        cand.add(1, static_cast<int>(x), static_cast<int>(x), xbar, xbar, -sign);
    }
    for (size_t r = 0; r < dd.res.nrel; ++r) {
        Word ur = rs.reduce(u[r]);
        cand.add(2, static_cast<int>(r), static_cast<int>(r), ur, ur, -1);
    }
    return cand;
}

// The worked values from the four source families (prefix-inverse u_r).
inline TensorElt builtin_j2(const DiagonalData& dd) {
    const Presentation& p = dd.ctx.pres;
    std::vector<Word> u;
    switch (dd.ctx.family) {
        case Family::Free: break; // no relators
        case Family::FreeByZ:
            // u_r = (t x)^-1 = x^-1 t^-1 for the relator t x t^-1 x^-1
            for (size_t r = 0; r < p.relators.size(); ++r)
                u.push_back(Word::gen(static_cast<int>(r) + 1, -1) * Word::gen(0, -1));
            break;
        case Family::TorusKnot: u.push_back(Word::gen(0, -dd.ctx.p1)); break; // a^-m
        case Family::Surface:
            if (dd.ctx.p1 == 1)
                u.push_back((Word::gen(0) * Word::gen(1)).inverse()); // b^-1 a^-1
            else
                u.push_back(detail::commutator(0, 1).inverse()); // b a b^-1 a^-1
            break;
        case Family::Bs:
            u.push_back((Word::gen(1) * Word::gen(0)).inverse()); // a^-1 t^-1
            break;
        case Family::User: throw error("no built-in degree-2 candidate for user presentations");
    }
    return ansatz_candidate(dd, u);
}

struct VerifyReport {
    bool pass = false;
    TensorElt defect; // boundary(candidate) - j1(d 1*)
};

// A degree-2 candidate extends j to a chain map through degree 2 exactly
// when its total boundary equals j1(d 1*); the defect is the difference.
inline VerifyReport verify_j2(const DiagonalData& dd, const TensorElt& candidate) {
    if (candidate.degree != 2) throw error("candidate must have total degree 2");
    VerifyReport rep;
    rep.defect = tensor_boundary(candidate, dd.res, dd.dual, dd.ctx) - j1_of_top_boundary(dd);
    rep.pass = rep.defect.is_zero();
    return rep;
}

struct SearchReport {
    std::optional<TensorElt> candidate;
    std::string how;           // "ansatz" or "linear system"
    size_t residual_rank = 0;  // rank of the unsolved system when absent
    size_t unknowns = 0;
};

// All contiguous segments of the relators, inverted; prefixes first so the
// worked family values are found immediately.
inline std::vector<std::vector<Word>> segment_inverses(const Presentation& p) {
    std::vector<std::vector<Word>> out;
    for (const Word& r : p.relators) {
        std::vector<Word> segs;
        Letters ls = expand(r);
        for (size_t len = 0; len <= ls.size(); ++len) {
            for (size_t start = 0; start + len <= ls.size(); ++start) {
                if (start != 0 && len == 0) continue;
                Letters seg(ls.begin() + static_cast<long>(start), ls.begin() + static_cast<long>(start + len));
                segs.push_back(contract(seg).inverse());
            }
        }
        // prefixes (start == 0) were emitted first for each length
        out.push_back(std::move(segs));
    }
    return out;
}

// Finds a degree-2 extension: first the segment-inverse ansatz, then an
// exact integer linear solve with diagonal coefficients drawn from the
// dictionary.
inline SearchReport search_j2(const DiagonalData& dd, const std::vector<Word>& dictionary,
                              const Int& coeff_bound, bool seed_ansatz = true) {
    SearchReport rep;
    TensorElt target = j1_of_top_boundary(dd);

    // ansatz phase
    if (seed_ansatz) {
        std::vector<std::vector<Word>> segs = segment_inverses(dd.ctx.pres);
        std::vector<size_t> idx(segs.size(), 0);
        size_t combos = 1;
        for (const auto& s : segs) combos *= s.size();
        if (dd.res.nrel == 0) combos = 1;
        if (combos <= 20000) {
            for (size_t c = 0; c < combos; ++c) {
                size_t rem = c;
                std::vector<Word> u(segs.size());
                for (size_t r = 0; r < segs.size(); ++r) {
                    u[r] = segs[r][rem % segs[r].size()];
                    rem /= segs[r].size();
                }
                TensorElt cand = ansatz_candidate(dd, u);
                if ((tensor_boundary(cand, dd.res, dd.dual, dd.ctx) - target).is_zero()) {
                    rep.candidate = std::move(cand);
                    rep.how = "ansatz";
                    return rep;
                }
            }
        }
    }

    // linear phase: unknown coefficient per (degree-2 basis pair, dictionary word)
    struct Unknown {
        int pdeg, pidx, qidx;
        Word g;
    };
    std::vector<Unknown> unknowns;
    auto add_unknowns = [&](int pdeg, int pidx, int qidx) {
        for (const Word& g : dictionary) unknowns.push_back({pdeg, pidx, qidx, dd.ctx.rs.reduce(g)});
    };
    add_unknowns(0, 0, 0);
    for (size_t x = 0; x < dd.res.ngens; ++x)
        for (size_t y = 0; y < dd.res.ngens; ++y) add_unknowns(1, static_cast<int>(x), static_cast<int>(y));
    for (size_t r = 0; r < dd.res.nrel; ++r)
        for (size_t s = 0; s < dd.res.nrel; ++s) add_unknowns(2, static_cast<int>(r), static_cast<int>(s));
    rep.unknowns = unknowns.size();
    if (unknowns.empty()) return rep;

    // column per unknown: boundary of the single diagonal term
    std::map<std::pair<TensorElt::Key, TensorElt::Pair>, size_t> rowindex;
    std::vector<std::map<size_t, Int>> cols(unknowns.size());
    auto row_of = [&](const TensorElt::Key& k, const TensorElt::Pair& gh) {
        auto [it, fresh] = rowindex.emplace(std::make_pair(k, gh), rowindex.size());
        return it->second;
    };
    for (size_t uidx = 0; uidx < unknowns.size(); ++uidx) {
        const Unknown& un = unknowns[uidx];
        TensorElt single;
        single.degree = 2;
        single.add(un.pdeg, un.pidx, un.qidx, un.g, un.g, 1);
        TensorElt b = tensor_boundary(single, dd.res, dd.dual, dd.ctx);
        for (const auto& [k, comp] : b.comps)
            for (const auto& [gh, c] : comp) cols[uidx][row_of(k, gh)] = c;
    }
    std::vector<Int> rhs_dense;
    for (const auto& [k, comp] : target.comps)
        for (const auto& [gh, c] : comp) {
            size_t r = row_of(k, gh);
            if (r >= rhs_dense.size()) rhs_dense.resize(rowindex.size(), 0);
            rhs_dense[r] = c;
        }
    size_t nrows = rowindex.size();
    rhs_dense.resize(nrows, 0);
    IMat A(nrows, unknowns.size());
    for (size_t j = 0; j < unknowns.size(); ++j)
        for (const auto& [r, c] : cols[j]) A.at(r, j) = c;
    SmithResult snf = smith_normal_form(A);
    auto sol = solve_integer(A, rhs_dense, &snf);
    rep.residual_rank = snf.rank;
    if (!sol) return rep;
    TensorElt cand;
    cand.degree = 2;
    for (size_t j = 0; j < unknowns.size(); ++j) {
        const Int& c = (*sol)[j];
        if (c == 0) continue;
        if (coeff_bound > 0 && abs(c) > coeff_bound) return rep; // outside requested bound
        cand.add(unknowns[j].pdeg, unknowns[j].pidx, unknowns[j].qidx, unknowns[j].g, unknowns[j].g, c);
    }
    if (!(tensor_boundary(cand, dd.res, dd.dual, dd.ctx) - target).is_zero())
        throw error("solver produced a non-solution (internal bug)");
    rep.candidate = std::move(cand);
    rep.how = "linear system";
    return rep;
}

} // namespace foxcoh
