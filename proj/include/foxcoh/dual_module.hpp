#pragma once

#include "foxcoh/fox.hpp"
#include "foxcoh/group_ring.hpp"

#include <compare>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace foxcoh {

// m-adic index x = k/m^n in [0, m) with n >= 1 minimal; basis labels a_x of
// the free abelian group E = D/(a^m - 1) underlying the solvable dual
// module.
struct MAdic {
    long long n = 1; // denominator exponent
    long long k = 0; // 0 <= k < m^{n+1}

    friend auto operator<=>(const MAdic&, const MAdic&) = default;
};

inline long long llpow(long long b, long long e) {
    long long r = 1;
    for (long long i = 0; i < e; ++i) r = checked_mul(r, b);
    return r;
}

inline MAdic madic_canonical(long long m, long long n, long long k) {
    long long span = llpow(m, n + 1);
    k %= span;
    if (k < 0) k += span;
    while (n > 1 && k % m == 0) {
        k /= m;
        --n;
    }
    return {n, k};
}

// E-element: finitely supported integer combination of basis indices.
struct EElt {
    std::map<MAdic, Int> c;

    bool zero() const { return c.empty(); }

    void add(const MAdic& x, const Int& v) {
        if (v == 0) return;
        auto [it, fresh] = c.emplace(x, v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0) c.erase(it);
        }
    }

    friend bool operator==(const EElt&, const EElt&) = default;
};

// Canonical values of the conjugate dual module, by family:
//   ZeroDual  - free groups (degree-2 dual module vanishes)
//   ZDual     - surface groups and other PD2 cases, module = Z
//   HDual     - torus knots: combinations of reduced words of Z/m * Z/n
//               whose leading block is not maximal
//   BsDual    - Z*_m: minimal-level form t^N e with e in E
struct ZeroDual {
    friend bool operator==(const ZeroDual&, const ZeroDual&) { return true; }
};
struct ZDual {
    Int v;
    friend bool operator==(const ZDual&, const ZDual&) = default;
};
struct HDual {
    std::map<Word, Int> v;
    friend bool operator==(const HDual&, const HDual&) = default;
};
struct BsDual {
    long long level = 0;
    EElt e;
    friend bool operator==(const BsDual&, const BsDual&) = default;
};

using DualElt = std::variant<ZeroDual, ZDual, HDual, BsDual>;

inline bool dual_is_zero(const DualElt& d) {
    if (std::holds_alternative<ZeroDual>(d)) return true;
    if (auto* z = std::get_if<ZDual>(&d)) return z->v == 0;
    if (auto* h = std::get_if<HDual>(&d)) return h->v.empty();
    return std::get<BsDual>(d).e.zero();
}

// Canonical-form arithmetic for the dual module of one built-in family.
class ModuleReducer {
  public:
    Family family = Family::Free;
    long long m = 0, n = 0;
    OrientationChar w;

    explicit ModuleReducer(const FamilyContext& ctx) : family(ctx.family), w(ctx.pres.w) {
        switch (ctx.family) {
            case Family::Free: break;
            case Family::Surface: break; // dual module is Z
            case Family::FreeByZ:
                if (ctx.p1 != 1) throw error("freeByZ(X) with |X| > 1 has no implemented dual-module reducer");
                break;
            case Family::TorusKnot:
                m = ctx.p1;
                n = ctx.p2;
                break;
            case Family::Bs:
                m = ctx.p1;
                if (m < 1) throw error("dual-module reducer for bs(m) needs m >= 1");
                break;
            case Family::User: throw error("user presentations have no implemented dual-module reducer");
        }
    }

    DualElt zero() const {
        switch (family) {
            case Family::Free: return ZeroDual{};
            case Family::Surface:
            case Family::FreeByZ: return ZDual{0};
            case Family::TorusKnot: return HDual{};
            default: return BsDual{};
        }
    }

    // class of 1 in Gamma / (relator-derivative ideal)
    DualElt unit() const { return reduce(RingElt::one()); }

    DualElt reduce(const RingElt& gamma) const {
        switch (family) {
            case Family::Free: return ZeroDual{};
            case Family::Surface:
            case Family::FreeByZ: return ZDual{augment(gamma, OrientationChar::trivial(w.sign.size()))};
            case Family::TorusKnot: {
                HDual out;
                for (const auto& [g, c] : gamma.terms) h_add_reduced(out, h_word(g), c);
                return out;
            }
            default: {
                BsDual out;
                for (const auto& [g, c] : gamma.terms) bs_accumulate(out, g, c);
                bs_canonicalize(out);
                return out;
            }
        }
    }

    DualElt add(DualElt a, const DualElt& b) const {
        if (auto* z = std::get_if<ZDual>(&a)) {
            z->v += std::get<ZDual>(b).v;
            return a;
        }
        if (auto* h = std::get_if<HDual>(&a)) {
            for (const auto& [u, c] : std::get<HDual>(b).v) h_add_reduced(*h, u, c);
            return a;
        }
        if (auto* p = std::get_if<BsDual>(&a)) {
            BsDual q = std::get<BsDual>(b);
            long long lvl = std::max(p->level, q.level);
            EElt ea = bs_raised(*p, lvl), eb = bs_raised(q, lvl);
            for (const auto& [x, c] : eb.c) ea.add(x, c);
            BsDual out{lvl, std::move(ea)};
            bs_canonicalize(out);
            return out;
        }
        return a; // ZeroDual
    }

    DualElt scale(const Int& c, const DualElt& d) const {
        if (c == 0) return zero();
        DualElt out = d;
        if (auto* z = std::get_if<ZDual>(&out)) z->v *= c;
        if (auto* h = std::get_if<HDual>(&out))
            for (auto& [u, v] : h->v) v *= c;
        if (auto* p = std::get_if<BsDual>(&out))
            for (auto& [x, v] : p->e.c) v *= c;
        return out;
    }

    // Left pi-action g . d = w(g) d gbar^-1-side, i.e. right multiplication
    // by g^-1 in the dual module, with the w sign.
    DualElt act(const Word& g, const DualElt& d) const {
        int sign = w(g);
        switch (family) {
            case Family::Free: return ZeroDual{};
            case Family::Surface:
            case Family::FreeByZ: {
                ZDual z = std::get<ZDual>(d);
                if (sign == -1) z.v = -z.v;
                return z;
            }
            case Family::TorusKnot: {
                HDual out;
                Word ginv = g.inverse();
                for (const auto& [u, c] : std::get<HDual>(d).v)
                    h_add_reduced(out, h_word(u * ginv), sign == 1 ? c : -c);
                return out;
            }
            default: {
                BsDual out = std::get<BsDual>(d);
                if (sign == -1)
                    for (auto& [x, v] : out.e.c) v = -v;
                // fold the letters of g from the right: (g1 g2).d = g1.(g2.d)
                Letters ls = expand(g);
                for (auto it = ls.rbegin(); it != ls.rend(); ++it) bs_act_letter(*it, out);
                bs_canonicalize(out);
                return out;
            }
        }
    }

    // A representative in Gamma of the canonical value.
    RingElt lift(const DualElt& d) const {
        RingElt out;
        if (auto* z = std::get_if<ZDual>(&d)) {
            if (z->v != 0) out.add_term(Word(), z->v);
        } else if (auto* h = std::get_if<HDual>(&d)) {
            for (const auto& [u, c] : h->v) out.add_term(u, c);
        } else if (auto* p = std::get_if<BsDual>(&d)) {
            for (const auto& [x, c] : p->e.c) out.add_term(bs_lift_word(p->level, x), c);
        }
        return out;
    }

    // --- torus knot internals -------------------------------------------

    // Image of a word of G in H = Z/m * Z/n (the central quotient), as an
    // alternating word with a-blocks in (0,m) and b-blocks in (0,n).
    Word h_word(const Word& g) const {
        std::vector<Run> st;
        for (const Run& run : g.runs()) {
            long long mod = run.gen == 0 ? m : n;
            long long combined = run.exp;
            if (!st.empty() && st.back().gen == run.gen) {
                combined = checked_add(st.back().exp, run.exp);
                st.pop_back();
            }
            long long i = combined % mod;
            if (i < 0) i += mod;
            if (i != 0) st.push_back({run.gen, i});
        }
        Word out;
        for (const Run& r : st) out.append_run(r.gen, r.exp);
        return out;
    }

    // Adds c.[u] with the leading-block relations applied: a word whose
    // first block is a^{m-1} (resp. b^{n-1}) expands to minus the sum of
    // the lower powers.
    void h_add_reduced(HDual& acc, const Word& u, const Int& c) const {
        if (c == 0) return;
        if (u.empty()) {
            h_raw_add(acc, u, c);
            return;
        }
        const Run& first = u.runs().front();
        long long mod = first.gen == 0 ? m : n;
        if (first.exp != mod - 1) {
            h_raw_add(acc, u, c);
            return;
        }
        Word tail;
        for (size_t i = 1; i < u.runs().size(); ++i) tail.append_run(u.runs()[i].gen, u.runs()[i].exp);
        for (long long i = 0; i <= mod - 2; ++i) {
            Word term = Word::gen(first.gen, i) * tail;
            h_add_reduced(acc, term, -c);
        }
    }

    void h_raw_add(HDual& acc, const Word& u, const Int& c) const {
        auto [it, fresh] = acc.v.emplace(u, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) acc.v.erase(it);
        }
    }

    // Reduced H-words of length <= len whose leading block is not maximal.
    std::vector<Word> h_basis_window(long long len) const {
        std::vector<Word> out;
        std::vector<Word> frontier{Word()};
        out.push_back(Word());
        while (!frontier.empty()) {
            std::vector<Word> next;
            for (const Word& u : frontier) {
                for (int gen : {0, 1}) {
                    if (!u.empty() && u.runs().back().gen == gen) continue;
                    long long mod = gen == 0 ? m : n;
                    for (long long e = 1; e < mod; ++e) {
                        Word v = u * Word::gen(gen, e);
                        if (v.length() > len) continue;
                        const Run& first = v.runs().front();
                        if (first.exp == (first.gen == 0 ? m : n) - 1) continue;
                        out.push_back(v);
                        next.push_back(v);
                    }
                }
            }
            frontier = std::move(next);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // --- solvable (Z*_m) internals --------------------------------------

    MAdic bs_basis_index(long long level, long long j) const {
        // index of a^j acting at level `level`: j / m^level mod m
        if (m == 1) return {1, 0};
        if (level == 0) {
            long long r = j % m;
            if (r < 0) r += m;
            return {1, r * m};
        }
        return madic_canonical(m, level, j);
    }

    EElt e_mul_basis(const EElt& e, const MAdic& x) const {
        EElt out;
        for (const auto& [y, c] : e.c) {
            long long nn = std::max(x.n, y.n);
            long long kx = checked_mul(x.k, llpow(m, nn - x.n));
            long long ky = checked_mul(y.k, llpow(m, nn - y.n));
            out.add(madic_canonical(m, nn, checked_add(kx, ky)), c);
        }
        return out;
    }

    // psi(a_y) = mu_m a_{y/m} = sum_{i<m} a_{i + y/m}; the level-raising map.
    EElt bs_psi(const EElt& e) const {
        if (m == 1) return e;
        EElt out;
        for (const auto& [y, c] : e.c) {
            // y/m has index (n+1, k)
            long long nn = y.n + 1;
            long long span = llpow(m, nn + 1);
            for (long long i = 0; i < m; ++i)
                out.add(madic_canonical(m, nn, checked_add(y.k, checked_mul(i, span / m))), c);
        }
        return out;
    }

    // preimage under psi if one exists
    std::optional<EElt> bs_psi_inverse(const EElt& e) const {
        if (m == 1) return e;
        EElt cand;
        for (const auto& [x, c] : e.c) {
            // integer part 0 <=> k < m^n
            if (x.k < llpow(m, x.n)) {
                // m*x: (n-1, k) recanonicalized
                if (x.n == 1)
                    cand.add(madic_canonical(m, 1, checked_mul(x.k, m)), c);
                else
                    cand.add(madic_canonical(m, x.n - 1, x.k), c);
            }
        }
        if (bs_psi(cand) == e) return cand;
        return std::nullopt;
    }

    void bs_canonicalize(BsDual& d) const {
        if (d.e.zero()) {
            d.level = 0;
            return;
        }
        while (d.level > 0) {
            auto pre = bs_psi_inverse(d.e);
            if (!pre) break;
            d.e = std::move(*pre);
            --d.level;
        }
    }

    EElt bs_raised(const BsDual& d, long long level) const {
        EElt e = d.e;
        for (long long l = d.level; l < level; ++l) e = bs_psi(e);
        return e;
    }

    void bs_act_letter(int code, BsDual& d) const {
        int gen = letter_gen(code);
        bool neg = letter_neg(code);
        if (gen == 1) { // t
            if (!neg) {
                ++d.level;
            } else if (d.level > 0) {
                --d.level;
            } else {
                d.e = bs_psi(d.e); // t^-1 e = mu_m sigma'(e) at level 0
            }
        } else { // a^{+-1} multiplies by a basis index at the current level
            d.e = e_mul_basis(d.e, bs_basis_index(d.level, neg ? -1 : 1));
        }
    }

    // accumulate the class of c.g into the minimal-level form
    void bs_accumulate(BsDual& acc, const Word& g, const Int& c) const {
        // write g = t^-p a^k t^q via the solvable normal form machinery
        RewritingSystem rs = RewritingSystem::bs_solvable(m);
        Word nf = rs.reduce(g);
        long long p = 0, q = 0, k = 0;
        for (const Run& r : nf.runs()) {
            if (r.gen == 1 && r.exp < 0)
                p = -r.exp;
            else if (r.gen == 1)
                q = r.exp;
            else
                k = r.exp;
        }
        // t^-p a^k t^q = a_{k/m^p} t^s (s = q-p), and a_x t^{+-1} shifts the
        // index by m^{-+1}, so the base index is always k/m^q.
        long long s = q - p;
        BsDual term;
        if (s >= 0) {
            term.level = s;
            term.e.add(bs_basis_index(q, k), c);
        } else {
            term.level = 0;
            term.e.add(bs_basis_index(q, k), c);
            for (long long i = 0; i < -s; ++i) term.e = bs_psi(term.e);
        }
        BsDual sum = std::get<BsDual>(add(DualElt(acc), DualElt(term)));
        acc = std::move(sum);
    }

    Word bs_lift_word(long long level, const MAdic& x) const {
        // t^level a_x with a_x = t^-n a^k t^n
        Word w;
        if (m == 1) {
            w.append_run(1, level);
            return w;
        }
        w.append_run(1, level - x.n);
        w.append_run(0, x.k);
        w.append_run(1, x.n);
        return w;
    }

    // Window basis for truncated models: levels and denominator exponents
    // bounded by `level`.
    std::vector<BsDual> bs_basis_window(long long level) const {
        std::vector<BsDual> out;
        if (m == 1) {
            BsDual d;
            d.e.add({1, 0}, 1);
            out.push_back(d);
            return out;
        }
        for (long long N = 0; N <= level; ++N)
            for (long long nn = 1; nn <= level; ++nn) {
                long long span = llpow(m, nn + 1);
                for (long long k = 0; k < span; ++k) {
                    if (nn > 1 && k % m == 0) continue; // not canonical
                    BsDual d;
                    d.level = N;
                    d.e.add({nn, k}, 1);
                    out.push_back(d);
                }
            }
        return out;
    }
};

// The canonical-form reducer for the dual module of a built-in family.
inline ModuleReducer dual_module_reducer(const FamilyContext& ctx) { return ModuleReducer(ctx); }

} // namespace foxcoh
