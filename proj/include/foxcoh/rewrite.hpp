#pragma once

#include "foxcoh/presentation.hpp"
#include "foxcoh/word.hpp"

#include <deque>
#include <optional>
#include <vector>

namespace foxcoh {

// Length-then-lex decreasing rewrite rule on freely reduced letter strings.
struct Rule {
    Letters lhs, rhs;
};

// Free-reduction rules g g^-1 -> 1, g^-1 g -> 1 for every generator. They
// take part in critical-pair analysis like any other rule.
inline std::vector<Rule> free_rules(size_t ngens) {
    std::vector<Rule> rs;
    for (size_t g = 0; g < ngens; ++g) {
        int pos = letter_code(static_cast<int>(g), false);
        int neg = letter_code(static_cast<int>(g), true);
        rs.push_back({{pos, neg}, {}});
        rs.push_back({{neg, pos}, {}});
    }
    return rs;
}

namespace detail {

inline bool match_at(const Letters& s, size_t pos, const Letters& pat) {
    if (pat.empty() || pos + pat.size() > s.size()) return false;
    for (size_t i = 0; i < pat.size(); ++i)
        if (s[pos + i] != pat[i]) return false;
    return true;
}

// Leftmost, lowest-index rewriting until irreducible.
inline Letters reduce_letters(Letters s, const std::vector<Rule>& rules, long long budget) {
    long long steps = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t pos = 0; pos < s.size() && !changed; ++pos) {
            for (const Rule& r : rules) {
                if (!match_at(s, pos, r.lhs)) continue;
                if (++steps > budget) throw budget_error("rewriting step budget exceeded");
                Letters next;
                next.reserve(s.size());
                next.insert(next.end(), s.begin(), s.begin() + static_cast<long>(pos));
                next.insert(next.end(), r.rhs.begin(), r.rhs.end());
                next.insert(next.end(), s.begin() + static_cast<long>(pos + r.lhs.size()), s.end());
                s = free_reduce(next);
                changed = true;
                break;
            }
        }
    }
    return s;
}

} // namespace detail

// Normal forms for a finitely presented group: a list of shortlex rules
// (with free reduction implicit), or one of the dedicated canonical-form
// reducers presented through the same interface. Shortlex completion
// diverges for the torus-knot and higher-genus surface presentations, so
// those families use the central-extension and amalgam normal forms.
class RewritingSystem {
  public:
    enum class Kind { FreeOnly, Rules, BsSolvable, TorusCentral, SurfaceAmalgam };

    Kind kind = Kind::FreeOnly;
    std::vector<Rule> rules; // user rules; free reduction is implicit
    bool confluent = false;
    size_t ngens = 0;
    long long budget = 2'000'000;

    long long bs_m = 0;
    int bs_variant = 0;
    long long tk_m = 0, tk_n = 0;
    Word am_u, am_v; // amalgam generator on each side, u =_G v
    int am_split = 0; // generators < am_split are side A

    static RewritingSystem free_only(size_t ngens) {
        RewritingSystem rs;
        rs.kind = Kind::FreeOnly;
        rs.ngens = ngens;
        rs.confluent = true;
        return rs;
    }

    static RewritingSystem from_rules(size_t ngens, std::vector<Rule> rules, bool confluent) {
        RewritingSystem rs;
        rs.kind = Kind::Rules;
        rs.ngens = ngens;
        rs.rules = std::move(rules);
        rs.confluent = confluent;
        return rs;
    }

    // BS(1,m) = <a,t | t a t^-1 = a^m> with gen 0 = a, gen 1 = t and normal
    // forms t^-p a^k t^q (p,q >= 0; m does not divide k when p,q > 0).
    static RewritingSystem bs_solvable(long long m, int variant = 0) {
        RewritingSystem rs;
        rs.kind = Kind::BsSolvable;
        rs.ngens = 2;
        rs.confluent = true;
        rs.bs_m = m;
        rs.bs_variant = variant;
        return rs;
    }

    // <a,b | a^m = b^n> with z = a^m central. Normal form: alternating
    // syllables a^i (0<i<m), b^j (0<j<n) followed by z^e written a^{me}.
    static RewritingSystem torus_central(long long m, long long n) {
        RewritingSystem rs;
        rs.kind = Kind::TorusCentral;
        rs.ngens = 2;
        rs.confluent = true;
        rs.tk_m = m;
        rs.tk_n = n;
        return rs;
    }

    // Amalgam F(A) *_{u=v} F(B): normal form r_1...r_k c^e with r_i
    // nontrivial shortlex-minimal coset representatives, alternating sides,
    // and the trailing amalgamated power written as u^e on side A.
    static RewritingSystem surface_amalgam(size_t ngens, int split, Word u, Word v) {
        RewritingSystem rs;
        rs.kind = Kind::SurfaceAmalgam;
        rs.ngens = ngens;
        rs.confluent = true;
        rs.am_split = split;
        rs.am_u = std::move(u);
        rs.am_v = std::move(v);
        return rs;
    }

    Word reduce(const Word& w) const {
        switch (kind) {
            case Kind::FreeOnly: return w; // RLE words are freely reduced already
            case Kind::Rules: return contract(detail::reduce_letters(expand(w), rules, budget));
            case Kind::BsSolvable: return bs_variant == 0 ? bs_fold(w) : bs_split(w);
            case Kind::TorusCentral: return tk_fold(w, false);
            case Kind::SurfaceAmalgam: return am_fold(w, false);
        }
        return w;
    }

    // A representative word equal to w in the group, spelled on the side
    // of `gen` when the canonical form leaves the side ambiguous (pure
    // central or amalgamated powers). Identical to reduce() except for
    // that spelling; used to pick the words that get Fox-differentiated.
    Word reduce_preferring(const Word& w, int gen) const {
        switch (kind) {
            case Kind::TorusCentral: return tk_fold(w, gen == 1);
            case Kind::SurfaceAmalgam: return am_fold(w, am_side_b(gen));
            default: return reduce(w);
        }
    }

    bool irreducible(const Word& w) const { return reduce(w) == w; }

  private:
    struct BsTriple {
        long long p = 0, q = 0;
        Int k = 0;
    };

    static Int ipow(long long base, long long e) {
        Int r = 1, b = base;
        for (long long i = 0; i < e; ++i) r *= b;
        return r;
    }

    BsTriple bs_strip(BsTriple t) const {
        if (t.k == 0) {
            long long s = t.q - t.p;
            return s >= 0 ? BsTriple{0, s, 0} : BsTriple{-s, 0, 0};
        }
        while (t.p > 0 && t.q > 0 && t.k % bs_m == 0) {
            t.k /= bs_m;
            --t.p;
            --t.q;
        }
        return t;
    }

    BsTriple bs_mul_run(BsTriple t, const Run& r) const {
        if (r.gen == 1) { // t
            if (r.exp > 0) {
                t.q = checked_add(t.q, r.exp);
            } else {
                long long d = -r.exp;
                long long s = std::min(t.q, d);
                t.q -= s;
                d -= s;
                if (d > 0) {
                    t.p = checked_add(t.p, d);
                    t.k *= ipow(bs_m, d);
                }
            }
        } else { // a
            t.k += Int(r.exp) * ipow(bs_m, t.q);
        }
        return t;
    }

    Word bs_word(BsTriple t) const {
        t = bs_strip(t);
        Word w;
        if (t.p > 0) w.append_run(1, -t.p);
        if (t.k != 0) {
            w.append_run(0, to_ll_checked(t.k));
        }
        if (t.q > 0) w.append_run(1, t.q);
        return w;
    }

    Word bs_fold(const Word& w) const {
        BsTriple t;
        for (const Run& r : w.runs()) t = bs_mul_run(t, r);
        return bs_word(t);
    }

    // Same normal form computed by splitting in halves; used to
    // cross-check that the fold order does not matter.
    BsTriple bs_compose(BsTriple x, BsTriple y) const {
        long long s = x.q - y.p;
        BsTriple t;
        if (s >= 0) {
            t.p = x.p;
            t.k = x.k + y.k * ipow(bs_m, s);
            t.q = checked_add(s, y.q);
        } else {
            t.p = checked_add(x.p, -s);
            t.k = x.k * ipow(bs_m, -s) + y.k;
            t.q = y.q;
        }
        return bs_strip(t);
    }

    BsTriple bs_split_runs(const std::vector<Run>& runs, size_t lo, size_t hi) const {
        if (lo == hi) return {};
        if (hi - lo == 1) return bs_strip(bs_mul_run(BsTriple{}, runs[lo]));
        size_t mid = lo + (hi - lo) / 2;
        return bs_compose(bs_split_runs(runs, lo, mid), bs_split_runs(runs, mid, hi));
    }

    Word bs_split(const Word& w) const { return bs_word(bs_split_runs(w.runs(), 0, w.runs().size())); }

    // --- torus knot (central extension) ---

    static long long euclid_mod(long long v, long long mod) {
        long long r = v % mod;
        return r < 0 ? r + mod : r;
    }

    Word tk_fold(const Word& w, bool empty_side_b) const {
        struct Syl {
            int gen;
            long long exp;
        };
        std::vector<Syl> st;
        Int e = 0; // central z = a^m = b^n
        for (const Run& run : w.runs()) {
            long long mod = run.gen == 0 ? tk_m : tk_n;
            long long combined = run.exp;
            if (!st.empty() && st.back().gen == run.gen) {
                combined = checked_add(st.back().exp, run.exp);
                st.pop_back();
            }
            long long i = euclid_mod(combined, mod);
            e += Int(combined - i) / mod;
            if (i != 0) st.push_back({run.gen, i});
        }
        Word out;
        for (const Syl& s : st) out.append_run(s.gen, s.exp);
        if (e != 0) {
            long long ll = to_ll_checked(e);
            // spell z^e on the side of the last syllable so that pure
            // negative powers keep their natural spelling
            bool b_side = st.empty() ? empty_side_b : st.back().gen == 1;
            if (b_side)
                out.append_run(1, checked_mul(tk_n, ll));
            else
                out.append_run(0, checked_mul(tk_m, ll));
        }
        return out;
    }

    // --- surface group (amalgam of free groups over <u> = <v>) ---

    bool am_side_b(int gen) const { return gen >= am_split; }

    // Shortlex-minimal representative of the coset w<c>: returns (rep, e)
    // with w = rep * c^e in the free group of one side.
    std::pair<Word, long long> am_decompose(const Word& w, const Word& c) const {
        long long range = 2 * w.length() / c.length() + 1;
        Word best = w;
        long long best_j = 0;
        for (long long j = -range; j <= range; ++j) {
            Word cand = w * c.pow(-j);
            if (cand.compare(best) < 0) {
                best = cand;
                best_j = j;
            }
        }
        return {best, best_j};
    }

    Word am_fold(const Word& w, bool empty_side_b) const {
        std::vector<Word> syls;
        long long e = 0;
        auto side_of = [&](const Word& s) { return am_side_b(s.runs().front().gen); };
        for (const Run& run : w.runs()) {
            long long nlet = run.exp < 0 ? -run.exp : run.exp;
            if (nlet > (1 << 20)) throw budget_error("word too long to normalize");
            Word letter = Word::gen(run.gen, run.exp < 0 ? -1 : 1);
            for (long long it = 0; it < nlet; ++it) {
                bool sb = am_side_b(run.gen);
                const Word& c = sb ? am_v : am_u;
                Word tail = c.pow(e) * letter;
                if (!syls.empty() && side_of(syls.back()) == sb) {
                    tail = syls.back() * tail;
                    syls.pop_back();
                }
                auto [rep, de] = am_decompose(tail, c);
                if (!rep.empty()) syls.push_back(rep);
                e = de;
            }
        }
        Word out;
        for (const Word& s : syls) out *= s;
        // the trailing amalgamated power follows the side of the last syllable
        bool b_side = syls.empty() ? empty_side_b : side_of(syls.back());
        out *= (b_side ? am_v : am_u).pow(e);
        return out;
    }
};

inline Word normal_form(const Word& w, const RewritingSystem& rs) { return rs.reduce(w); }

// --- critical pairs and completion ---------------------------------------

struct CriticalPairFailure {
    Letters peak, left_nf, right_nf;
};

namespace detail {

// Enumerates critical peaks of rules i and j (suffix/prefix overlaps of
// lhs_i with lhs_j, and lhs_j inside lhs_i) and checks joinability.
template <typename Fail>
bool critical_pairs_join(const std::vector<Rule>& rules, size_t i, size_t j, long long budget, Fail&& on_fail) {
    const Letters &li = rules[i].lhs, &lj = rules[j].lhs;
    bool ok = true;
    auto check = [&](const Letters& peak, const Letters& via_i, const Letters& via_j) {
        Letters a = reduce_letters(free_reduce(via_i), rules, budget);
        Letters b = reduce_letters(free_reduce(via_j), rules, budget);
        if (a != b) {
            ok = false;
            on_fail(CriticalPairFailure{peak, a, b});
        }
    };
    // overlap: proper suffix of li = proper prefix of lj
    for (size_t ov = 1; ov < std::min(li.size(), lj.size()); ++ov) {
        bool match = true;
        for (size_t k = 0; k < ov && match; ++k)
            if (li[li.size() - ov + k] != lj[k]) match = false;
        if (!match) continue;
        Letters peak(li.begin(), li.end());
        peak.insert(peak.end(), lj.begin() + static_cast<long>(ov), lj.end());
        Letters via_i(rules[i].rhs);
        via_i.insert(via_i.end(), lj.begin() + static_cast<long>(ov), lj.end());
        Letters via_j(li.begin(), li.end() - static_cast<long>(ov));
        via_j.insert(via_j.end(), rules[j].rhs.begin(), rules[j].rhs.end());
        check(peak, via_i, via_j);
    }
    // containment: lj inside li
    if (i != j && lj.size() < li.size()) {
        for (size_t pos = 0; pos + lj.size() <= li.size(); ++pos) {
            if (!match_at(li, pos, lj)) continue;
            Letters via_j(li.begin(), li.begin() + static_cast<long>(pos));
            via_j.insert(via_j.end(), rules[j].rhs.begin(), rules[j].rhs.end());
            via_j.insert(via_j.end(), li.begin() + static_cast<long>(pos + lj.size()), li.end());
            check(li, rules[i].rhs, via_j);
        }
    }
    return ok;
}

} // namespace detail

// Verifies local confluence of `rules` plus free reduction by resolving
// every critical pair. Rules are length-decreasing, so this gives
// confluence.
inline bool check_confluence(size_t ngens, const std::vector<Rule>& user_rules,
                             std::optional<CriticalPairFailure>* failure = nullptr,
                             long long budget = 1'000'000) {
    std::vector<Rule> rules = free_rules(ngens);
    rules.insert(rules.end(), user_rules.begin(), user_rules.end());
    bool ok = true;
    for (size_t i = 0; i < rules.size(); ++i)
        for (size_t j = 0; j < rules.size(); ++j)
            ok &= detail::critical_pairs_join(rules, i, j, budget, [&](CriticalPairFailure f) {
                if (failure && !failure->has_value()) *failure = std::move(f);
            });
    return ok;
}

struct KnuthBendixOptions {
    size_t max_rules = 512;
    size_t max_lhs_len = 48;
    long long max_steps = 5'000'000;
    long long reduce_budget = 500'000;
};

struct KnuthBendixResult {
    bool completed = false;
    std::vector<Rule> rules; // active user rules (free rules excluded)
    std::string message;
};

// Bounded Knuth-Bendix completion over the shortlex order. Seeds one rule
// r -> 1 per relator. Best effort: failure is reported, never silently
// accepted.
inline KnuthBendixResult knuth_bendix(const Presentation& p, KnuthBendixOptions opt = {}) {
    std::vector<Rule> rules = free_rules(p.rank());
    const size_t nfree = rules.size();
    std::vector<bool> active(rules.size(), true);
    std::deque<std::pair<size_t, size_t>> pending;

    auto enqueue_with_all = [&](size_t idx) {
        for (size_t i = 0; i < rules.size(); ++i) {
            if (!active[i]) continue;
            pending.emplace_back(i, idx);
            if (i != idx) pending.emplace_back(idx, i);
        }
    };

    long long steps = 0;
    std::string failure;

    auto add_equation = [&](Letters a, Letters b) -> bool {
        a = detail::reduce_letters(free_reduce(a), rules, opt.reduce_budget);
        b = detail::reduce_letters(free_reduce(b), rules, opt.reduce_budget);
        if (a == b) return true;
        if (shortlex(a, b) < 0) std::swap(a, b);
        if (a.size() > opt.max_lhs_len) {
            failure = "rule length cap exceeded";
            return false;
        }
        rules.push_back({std::move(a), std::move(b)});
        active.push_back(true);
        size_t idx = rules.size() - 1;
        // retire rules whose lhs the new rule now reduces
        for (size_t i = nfree; i + 1 < rules.size(); ++i) {
            if (!active[i]) continue;
            for (size_t pos = 0; pos + rules[idx].lhs.size() <= rules[i].lhs.size(); ++pos)
                if (detail::match_at(rules[i].lhs, pos, rules[idx].lhs)) {
                    active[i] = false;
                    pending.emplace_back(i, i); // re-derive its content
                    break;
                }
        }
        enqueue_with_all(idx);
        if (static_cast<size_t>(std::count(active.begin(), active.end(), true)) > opt.max_rules) {
            failure = "rule count cap exceeded";
            return false;
        }
        return true;
    };

    for (const Word& r : p.relators)
        if (!add_equation(expand(r), {})) return {false, {}, failure};

    while (!pending.empty()) {
        if (++steps > opt.max_steps) return {false, {}, "completion step cap exceeded"};
        auto [i, j] = pending.front();
        pending.pop_front();
        if (i >= rules.size() || j >= rules.size()) continue;
        if (i == j && !active[i]) {
            // retired rule: its equation must still hold
            if (!add_equation(rules[i].lhs, rules[i].rhs)) return {false, {}, failure};
            continue;
        }
        if (!active[i] || !active[j]) continue;
        std::vector<CriticalPairFailure> unresolved;
        detail::critical_pairs_join(rules, i, j, opt.reduce_budget,
                                    [&](CriticalPairFailure f) { unresolved.push_back(std::move(f)); });
        for (CriticalPairFailure& f : unresolved)
            if (!add_equation(f.left_nf, f.right_nf)) return {false, {}, failure};
    }

    KnuthBendixResult res;
    res.completed = true;
    for (size_t i = nfree; i < rules.size(); ++i)
        if (active[i]) res.rules.push_back(rules[i]);
    res.message = "completed with " + std::to_string(res.rules.size()) + " rules";
    return res;
}

} // namespace foxcoh
