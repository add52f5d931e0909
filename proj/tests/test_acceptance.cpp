// Acceptance suite: one criterion per test case, each printing a single
// pass/fail line with its measured runtime.

#include "foxcoh/coinv.hpp"
#include "foxcoh/delta.hpp"
#include "foxcoh/diagonal.hpp"
#include "foxcoh/orbits.hpp"
#include "foxcoh/sym_square.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdio>
#include <set>

using namespace foxcoh;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int criterion, const char* what, bool pass, double secs, double budget) {
    std::printf("criterion %d (%s): %s  [%.2fs, budget %.0fs]\n", criterion, what,
                pass && secs <= budget ? "PASS" : "FAIL", secs, budget);
}

std::vector<Word> subword_product_dictionary(const FamilyContext& ctx, size_t cap) {
    std::set<Word> base;
    base.insert(Word());
    for (const Word& r : ctx.pres.relators) {
        Letters ls = expand(r);
        for (size_t len = 1; len <= ls.size(); ++len)
            for (size_t start = 0; start + len <= ls.size(); ++start) {
                Letters seg(ls.begin() + static_cast<long>(start), ls.begin() + static_cast<long>(start + len));
                Word w = contract(seg);
                base.insert(ctx.rs.reduce(w));
                base.insert(ctx.rs.reduce(w.inverse()));
            }
    }
    std::set<Word> dict = base;
    for (const Word& u : base)
        for (const Word& v : base) dict.insert(ctx.rs.reduce(u * v));
    std::vector<Word> out(dict.begin(), dict.end());
    if (out.size() > cap) out.resize(cap);
    return out;
}

} // namespace

TEST_CASE("criterion 1: worked degree-2 diagonal candidates verify exactly") {
    bool all = true;
    double worst = 0;
    for (const FamilyContext& ctx :
         {builtin_free_by_z(1), builtin_free_by_z(2), builtin_torus_knot(2, 3), builtin_torus_knot(3, 4),
          builtin_surface(2), builtin_bs(2), builtin_bs(3)}) {
        Timer t;
        DiagonalData dd = build_diagonal(ctx);
        VerifyReport rep = verify_j2(dd, builtin_j2(dd));
        double secs = t.seconds();
        worst = std::max(worst, secs);
        INFO(ctx.name());
        CHECK(rep.pass);
        CHECK(rep.defect.is_zero());
        CHECK(secs < 5.0);
        all = all && rep.pass && rep.defect.is_zero() && secs < 5.0;
    }
    report(1, "worked candidate regression", all, worst, 5);
}

TEST_CASE("criterion 2: cup relation") {
    Timer t;
    bool all = true;
    {
        DiagonalData dd = build_diagonal(builtin_surface(2));
        CupCheckReport rep = check_cup_relation(dd, builtin_j2(dd), 1);
        all = all && rep.all_hold && rep.exact_model;
        CHECK(rep.all_hold);
        CHECK(rep.exact_model);
    }
    {
        DiagonalData dd = build_diagonal(builtin_torus_knot(2, 3));
        CupCheckReport rep = check_cup_relation(dd, builtin_j2(dd), 3);
        all = all && rep.all_hold && rep.exact_model;
        CHECK(rep.all_hold);
        CHECK(rep.exact_model);
    }
    {
        DiagonalData dd = build_diagonal(builtin_bs(2));
        for (long long level : {2, 3}) {
            CupCheckReport rep = check_cup_relation(dd, builtin_j2(dd), level);
            INFO("truncation " << level);
            all = all && rep.all_hold;
            CHECK(rep.all_hold);
        }
    }
    double secs = t.seconds();
    CHECK(secs < 60.0);
    report(2, "cup relation", all, secs, 60);
}

TEST_CASE("criterion 3: symmetric-square truncations are torsion-free") {
    Timer t;
    bool all = true;
    for (long long m : {1, 2, 3, 4})
        for (long long level : {1, 2, 3}) {
            auto [tf, inv] = torsion_free_check(sym_square_truncation(m, level));
            INFO("m=" << m << " level=" << level);
            for (const Int& d : inv.all_factors) CHECK((d == 0 || d == 1));
            CHECK(tf);
            all = all && tf;
        }
    double secs = t.seconds();
    CHECK(secs < 60.0);
    report(3, "torsion-free truncations", all, secs, 60);
}

TEST_CASE("criterion 4: mod-2 Betti numbers of the solvable family") {
    Timer t;
    bool all = true;
    for (long long m : {2, 4, 6}) {
        long long beta = beta2(builtin_bs(m));
        CHECK(beta == 0);
        all = all && beta == 0;
        // 2^beta bound: a single orbit, matching the uniqueness statement
        CHECK((1LL << beta) == 1);
    }
    for (long long m : {3, 5}) {
        long long beta = beta2(builtin_bs(m));
        CHECK(beta == 1);
        all = all && beta == 1;
        CHECK((1LL << beta) == 2);
    }
    double secs = t.seconds();
    CHECK(secs < 5.0);
    report(4, "beta_2 values", all, secs, 5);
}

TEST_CASE("criterion 5: two orbits of k-invariants") {
    Timer t;
    OrbitReport a = pd2_orbit_reps(true, false);
    OrbitReport b = pd2_orbit_reps(false, true);
    bool ok = a.count == 2 && b.count == 2 && a.representatives == std::vector<long long>{0, 1} &&
              b.representatives == std::vector<long long>{0, 1};
    CHECK(a.count == 2);
    CHECK(b.count == 2);
    double secs = t.seconds();
    CHECK(secs < 1.0);
    report(5, "orbit count", ok, secs, 1);
}

TEST_CASE("criterion 6: property suites") {
    Timer t;
    bool all = true;
    std::mt19937_64 rng(20260810);

    std::vector<FamilyContext> families{builtin_free(2), builtin_free_by_z(2), builtin_torus_knot(2, 3),
                                        builtin_surface(2), builtin_bs(2)};

    // Fox fundamental identity: 1000 random words per family
    for (const FamilyContext& ctx : families) {
        RewritingSystem free_rs = RewritingSystem::free_only(ctx.pres.rank());
        for (int i = 0; i < 1000; ++i) {
            Word w = oracles::random_word(rng, ctx.pres.rank(), static_cast<int>(rng() % 9));
            RingElt sum;
            for (size_t x = 0; x < ctx.pres.rank(); ++x) {
                RingElt xm1 = RingElt::of(Word::gen(static_cast<int>(x))) - RingElt::one();
                sum += gr_mul(fox_derivative(w, static_cast<int>(x)), xm1, free_rs);
            }
            bool ok = sum == RingElt::of(w) - RingElt::one();
            all = all && ok;
            if (!ok) CHECK(ok);
        }
    }

    // boundary squared is zero on all built complexes
    for (const FamilyContext& ctx : families) {
        Resolution res = build_resolution(ctx);
        DualComplex dual = dualize_resolution(res, ctx);
        for (size_t r = 0; r < res.nrel; ++r) {
            RingElt s0;
            for (size_t x = 0; x < res.ngens; ++x) {
                RingElt xm1 = RingElt::of(Word::gen(static_cast<int>(x))) - RingElt::one();
                s0 += gr_mul(res.d2[r][x], xm1, ctx.rs);
            }
            bool ok = s0.is_zero();
            all = all && ok;
            CHECK(ok);
            RingElt s1;
            for (size_t x = 0; x < res.ngens; ++x) s1 += gr_mul(dual.d_top[x], dual.d_mid[x][r], ctx.rs);
            ok = s1.is_zero();
            all = all && ok;
            CHECK(ok);
        }
    }

    // involution anti-automorphism: 1000 random pairs
    {
        FamilyContext ctx = builtin_bs(2);
        OrientationChar w = OrientationChar::trivial(2);
        for (int i = 0; i < 1000; ++i) {
            RingElt x = oracles::random_ring_elt(rng, ctx, 3, 6);
            RingElt y = oracles::random_ring_elt(rng, ctx, 3, 6);
            bool ok = involute(gr_mul(x, y, ctx.rs), w, ctx.rs) ==
                      gr_mul(involute(y, w, ctx.rs), involute(x, w, ctx.rs), ctx.rs);
            all = all && ok;
            if (!ok) CHECK(ok);
        }
    }

    // normal-form soundness under random relator insertion
    for (const FamilyContext& ctx : families) {
        if (ctx.pres.relators.empty()) continue;
        for (int i = 0; i < 250; ++i) {
            Word u = oracles::random_word(rng, ctx.pres.rank(), static_cast<int>(rng() % 10));
            Word v = oracles::random_word(rng, ctx.pres.rank(), static_cast<int>(rng() % 10));
            const Word& r = ctx.pres.relators[rng() % ctx.pres.relators.size()];
            bool ok = ctx.rs.reduce(u * r * v) == ctx.rs.reduce(u * v);
            all = all && ok;
            if (!ok) CHECK(ok);
        }
    }

    // Smith form vs the brute-force oracle
    for (int trial = 0; trial < 150; ++trial) {
        size_t rr = 1 + rng() % 4, cc = 1 + rng() % 4;
        IMat m = oracles::random_matrix(rng, rr, cc, 10);
        SmithResult s = smith_normal_form(m);
        bool ok = (s.u * m * s.v == s.d) && abs(oracles::determinant(s.u)) == 1 &&
                  abs(oracles::determinant(s.v)) == 1;
        std::vector<Int> expect = oracles::snf_factors_brute(m);
        ok = ok && s.factors.size() == expect.size();
        for (size_t i = 0; ok && i < expect.size(); ++i) ok = s.factors[i] == expect[i];
        all = all && ok;
        if (!ok) CHECK(ok);
    }

    CHECK(all);
    double secs = t.seconds();
    CHECK(secs < 120.0);
    report(6, "property suites", all, secs, 120);
}

TEST_CASE("criterion 7: dictionary search finds a valid candidate") {
    Timer t;
    FamilyContext ctx = builtin_bs(2);
    DiagonalData dd = build_diagonal(ctx);
    std::vector<Word> dict = subword_product_dictionary(ctx, 200);
    CHECK(dict.size() <= 200);
    SearchReport rep = search_j2(dd, dict, 8);
    bool ok = rep.candidate.has_value();
    REQUIRE(rep.candidate.has_value());
    ok = ok && verify_j2(dd, *rep.candidate).pass;
    CHECK(verify_j2(dd, *rep.candidate).pass);
    double secs = t.seconds();
    CHECK(secs < 300.0);
    report(7, "candidate search", ok, secs, 300);
}
