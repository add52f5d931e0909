#pragma once

#include "foxcoh/fox.hpp"

#include <map>
#include <tuple>

namespace foxcoh {

// Element of the total complex (P (x) Qbar)_n with the diagonal left
// action. A component is indexed by a basis pair (p-degree, p-index,
// q-index); its value is a Z-combination of pairs (g,h) standing for
// g.e_p (x) h.f_q, both words in normal form.
//
// p-index: 0 in degree 0, generator in degree 1, relator in degree 2.
// q-index: relator in dual degree 0, generator in degree 1, 0 in degree 2.
struct TensorElt {
    using Key = std::tuple<int, int, int>; // (p_deg, p_idx, q_idx)
    using Pair = std::pair<Word, Word>;

    int degree = 0;
    std::map<Key, std::map<Pair, Int>> comps;

    bool is_zero() const { return comps.empty(); }

    void add(int pdeg, int pidx, int qidx, const Word& g, const Word& h, const Int& c) {
        if (c == 0) return;
        auto& comp = comps[{pdeg, pidx, qidx}];
        auto [it, fresh] = comp.emplace(Pair{g, h}, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) comp.erase(it);
        }
        if (comp.empty()) comps.erase({pdeg, pidx, qidx});
    }

    TensorElt& operator+=(const TensorElt& o) {
        for (const auto& [k, comp] : o.comps)
            for (const auto& [gh, c] : comp) add(std::get<0>(k), std::get<1>(k), std::get<2>(k), gh.first, gh.second, c);
        return *this;
    }

    TensorElt& operator-=(const TensorElt& o) {
        for (const auto& [k, comp] : o.comps)
            for (const auto& [gh, c] : comp) add(std::get<0>(k), std::get<1>(k), std::get<2>(k), gh.first, gh.second, -c);
        return *this;
    }

    friend TensorElt operator+(TensorElt a, const TensorElt& b) { return a += b; }
    friend TensorElt operator-(TensorElt a, const TensorElt& b) { return a -= b; }

    friend bool operator==(const TensorElt& a, const TensorElt& b) {
        return a.degree == b.degree && a.comps == b.comps;
    }

    size_t term_count() const {
        size_t n = 0;
        for (const auto& [k, comp] : comps) n += comp.size();
        return n;
    }
};

// gamma . (g e (x) h f) = sum over terms k of (kg e (x) kh f).
inline TensorElt diag_act(const RingElt& gamma, const TensorElt& e, const RewritingSystem& rs) {
    TensorElt out;
    out.degree = e.degree;
    for (const auto& [key, comp] : e.comps)
        for (const auto& [gh, c] : comp)
            for (const auto& [k, ck] : gamma.terms)
                out.add(std::get<0>(key), std::get<1>(key), std::get<2>(key), rs.reduce(k * gh.first),
                        rs.reduce(k * gh.second), c * ck);
    return out;
}

// Total differential with the Koszul convention
//   d(p (x) q) = dp (x) q + (-1)^{deg p} p (x) dq.
inline TensorElt tensor_boundary(const TensorElt& e, const Resolution& res, const DualComplex& dual,
                                 const FamilyContext& ctx) {
    if (e.degree < 1) throw error("tensor boundary needs degree >= 1");
    const RewritingSystem& rs = ctx.rs;
    TensorElt out;
    out.degree = e.degree - 1;
    for (const auto& [key, comp] : e.comps) {
        auto [pdeg, pidx, qidx] = key;
        int qdeg = e.degree - pdeg;
        int sign = (pdeg % 2 == 0) ? 1 : -1;
        for (const auto& [gh, c] : comp) {
            const Word &g = gh.first, &h = gh.second;
            // left factor
            if (pdeg == 1) {
                // d p_x^1 = (x - 1) . 1
                out.add(0, 0, qidx, rs.reduce(g * Word::gen(pidx)), h, c);
                out.add(0, 0, qidx, g, h, -c);
            } else if (pdeg == 2) {
                // d p_r^2 = sum_x r_x p_x^1
                for (size_t x = 0; x < res.ngens; ++x)
                    for (const auto& [k, ck] : res.d2[static_cast<size_t>(pidx)][x].terms)
                        out.add(1, static_cast<int>(x), qidx, rs.reduce(g * k), h, c * ck);
            }
            // right factor
            if (qdeg == 2) {
                // d 1* = sum_x (xbar - 1) q_x^1
                for (size_t x = 0; x < res.ngens; ++x)
                    for (const auto& [k, ck] : dual.d_top[x].terms)
                        out.add(pdeg, pidx, static_cast<int>(x), g, rs.reduce(h * k), Int(sign) * c * ck);
            } else if (qdeg == 1) {
                // d q_x^1 = sum_r rbar_x q_r^0
                for (size_t r = 0; r < res.nrel; ++r)
                    for (const auto& [k, ck] : dual.d_mid[static_cast<size_t>(qidx)][r].terms)
                        out.add(pdeg, pidx, static_cast<int>(r), g, rs.reduce(h * k), Int(sign) * c * ck);
            }
        }
    }
    return out;
}

} // namespace foxcoh
