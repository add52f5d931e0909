#pragma once

#include "foxcoh/bigint.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace foxcoh {

// A run of a single generator: gen^exp with exp != 0.
struct Run {
    int gen = 0;
    long long exp = 0;

    friend bool operator==(const Run&, const Run&) = default;
};

// Freely reduced word in run-length encoding. Adjacent runs always have
// distinct generators, so cancellation is just run merging at seams.
// The empty word is the group identity.
class Word {
  public:
    Word() = default;

    static Word gen(int g, long long e = 1) {
        Word w;
        if (e != 0) w.runs_.push_back({g, e});
        return w;
    }

    static Word from_letters(const std::vector<std::pair<int, int>>& letters) {
        Word w;
        for (auto [g, s] : letters) w.append_run(g, s);
        return w;
    }

    bool empty() const { return runs_.empty(); }
    const std::vector<Run>& runs() const { return runs_; }

    long long length() const {
        long long n = 0;
        for (const Run& r : runs_) n = checked_add(n, r.exp < 0 ? -r.exp : r.exp);
        return n;
    }

    // Appends gen^exp, merging and cancelling at the seam.
    void append_run(int g, long long e) {
        if (e == 0) return;
        if (!runs_.empty() && runs_.back().gen == g) {
            runs_.back().exp = checked_add(runs_.back().exp, e);
            if (runs_.back().exp == 0) runs_.pop_back();
            return;
        }
        runs_.push_back({g, e});
    }

    Word& operator*=(const Word& o) {
        for (const Run& r : o.runs_) append_run(r.gen, r.exp);
        return *this;
    }

    friend Word operator*(Word a, const Word& b) {
        a *= b;
        return a;
    }

    Word inverse() const {
        Word w;
        w.runs_.reserve(runs_.size());
        for (auto it = runs_.rbegin(); it != runs_.rend(); ++it)
            w.runs_.push_back({it->gen, -it->exp});
        return w;
    }

    Word pow(long long k) const {
        if (k < 0) return inverse().pow(-k);
        Word r, base = *this;
        while (k > 0) {
            if (k & 1) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    // Rank of the expanded letter (gen, sign): g < g^-1 < h < h^-1 for g < h.
    static int letter_rank(int gen, bool neg) { return 2 * gen + (neg ? 1 : 0); }

    // Shortlex: total letter count first, then left-to-right letter ranks.
    std::strong_ordering compare(const Word& o) const {
        long long la = length(), lb = o.length();
        if (la != lb) return la <=> lb;
        size_t i = 0, j = 0;
        long long ci = 0, cj = 0; // letters consumed in current runs
        while (i < runs_.size() && j < o.runs_.size()) {
            const Run &a = runs_[i], &b = o.runs_[j];
            int ra = letter_rank(a.gen, a.exp < 0), rb = letter_rank(b.gen, b.exp < 0);
            if (ra != rb) return ra <=> rb;
            long long na = (a.exp < 0 ? -a.exp : a.exp) - ci;
            long long nb = (b.exp < 0 ? -b.exp : b.exp) - cj;
            long long step = std::min(na, nb);
            ci += step;
            cj += step;
            if (ci == (a.exp < 0 ? -a.exp : a.exp)) ++i, ci = 0;
            if (cj == (b.exp < 0 ? -b.exp : b.exp)) ++j, cj = 0;
        }
        return std::strong_ordering::equal;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.runs_ == b.runs_; }
    friend bool operator<(const Word& a, const Word& b) { return a.compare(b) < 0; }

  private:
    std::vector<Run> runs_;
};

// Expanded letter codes for the rewriting machinery: 2*gen for gen^{+1},
// 2*gen+1 for gen^{-1}. Shortlex on codes matches Word::compare.
using Letters = std::vector<int>;

inline int letter_code(int gen, bool neg) { return 2 * gen + (neg ? 1 : 0); }
inline int letter_gen(int code) { return code / 2; }
inline bool letter_neg(int code) { return code & 1; }
inline int letter_inv(int code) { return code ^ 1; }

inline Letters expand(const Word& w, long long limit = 1 << 20) {
    if (w.length() > limit) throw budget_error("word too long to expand");
    Letters out;
    out.reserve(static_cast<size_t>(w.length()));
    for (const Run& r : w.runs()) {
        long long n = r.exp < 0 ? -r.exp : r.exp;
        int c = letter_code(r.gen, r.exp < 0);
        for (long long i = 0; i < n; ++i) out.push_back(c);
    }
    return out;
}

inline Word contract(const Letters& ls) {
    Word w;
    for (int c : ls) w.append_run(letter_gen(c), letter_neg(c) ? -1 : 1);
    return w;
}

// Free reduction of a letter string (stack cancellation).
inline Letters free_reduce(const Letters& ls) {
    Letters out;
    for (int c : ls) {
        if (!out.empty() && out.back() == letter_inv(c))
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

inline std::strong_ordering shortlex(const Letters& a, const Letters& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] <=> b[i];
    return std::strong_ordering::equal;
}

} // namespace foxcoh
