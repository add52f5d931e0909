#pragma once

#include "foxcoh/presentation.hpp"
#include "foxcoh/rewrite.hpp"

#include <map>

namespace foxcoh {

// Finitely supported integer combination of group elements. Keys are words
// in normal form (for whichever ring is in play: the free group ring keeps
// freely reduced words, Z[pi] keeps the rewriting system's normal forms).
// No zero coefficients are stored, so equality is structural.
struct RingElt {
    std::map<Word, Int> terms;

    static RingElt zero() { return {}; }

    static RingElt of(Word g, Int c = 1) {
        RingElt e;
        if (c != 0) e.terms.emplace(std::move(g), std::move(c));
        return e;
    }

    static RingElt one() { return of(Word()); }

    bool is_zero() const { return terms.empty(); }

    Int coeff(const Word& g) const {
        auto it = terms.find(g);
        return it == terms.end() ? Int(0) : it->second;
    }

    void add_term(const Word& g, const Int& c) {
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(g, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    RingElt& operator+=(const RingElt& o) {
        for (const auto& [g, c] : o.terms) add_term(g, c);
        return *this;
    }

    RingElt& operator-=(const RingElt& o) {
        for (const auto& [g, c] : o.terms) add_term(g, -c);
        return *this;
    }

    friend RingElt operator+(RingElt a, const RingElt& b) { return a += b; }
    friend RingElt operator-(RingElt a, const RingElt& b) { return a -= b; }

    friend RingElt operator-(const RingElt& a) {
        RingElt r;
        for (const auto& [g, c] : a.terms) r.terms.emplace(g, -c);
        return r;
    }

    friend RingElt operator*(const Int& c, const RingElt& a) {
        RingElt r;
        if (c != 0)
            for (const auto& [g, k] : a.terms) r.terms.emplace(g, c * k);
        return r;
    }

    friend bool operator==(const RingElt& a, const RingElt& b) { return a.terms == b.terms; }
};

// Re-normalizes every key (collects terms that become equal in the group).
inline RingElt normalized(const RingElt& x, const RewritingSystem& rs) {
    RingElt r;
    for (const auto& [g, c] : x.terms) r.add_term(rs.reduce(g), c);
    return r;
}

inline RingElt gr_mul(const RingElt& x, const RingElt& y, const RewritingSystem& rs) {
    RingElt r;
    for (const auto& [g, c] : x.terms)
        for (const auto& [h, d] : y.terms) r.add_term(rs.reduce(g * h), c * d);
    return r;
}

// Term-by-term g -> w(g) g^-1 (the w-twisted involution, an
// anti-automorphism of Z[pi]).
inline RingElt involute(const RingElt& x, const OrientationChar& w, const RewritingSystem& rs) {
    RingElt r;
    for (const auto& [g, c] : x.terms) r.add_term(rs.reduce(g.inverse()), w(g) == 1 ? c : -c);
    return r;
}

// w-twisted augmentation: sum of w(g)-signed coefficients.
inline Int augment(const RingElt& x, const OrientationChar& w) {
    Int s = 0;
    for (const auto& [g, c] : x.terms) s += w(g) == 1 ? c : -c;
    return s;
}

} // namespace foxcoh
