#include "foxcoh/group_ring.hpp"

#include "foxcoh/family.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace foxcoh;

TEST_CASE("worked products") {
    FamilyContext bs2 = builtin_bs(2);
    // t . a = a^2 t
    RingElt p = gr_mul(RingElt::of(Word::gen(1)), RingElt::of(Word::gen(0)), bs2.rs);
    CHECK(p == RingElt::of(bs2.rs.reduce(Word::gen(0, 2) * Word::gen(1))));
    // (1 + a) . 0 = 0
    RingElt mu = RingElt::one() + RingElt::of(Word::gen(0));
    CHECK(gr_mul(mu, RingElt::zero(), bs2.rs).is_zero());
    // mu_2 . a = a + a^2
    RingElt mua = gr_mul(mu, RingElt::of(Word::gen(0)), bs2.rs);
    CHECK(mua == RingElt::of(Word::gen(0)) + RingElt::of(Word::gen(0, 2)));
}

TEST_CASE("ring axioms on random elements") {
    std::mt19937_64 rng(31);
    for (const FamilyContext& ctx : {builtin_free(2), builtin_bs(2), builtin_torus_knot(2, 3), builtin_surface(2)}) {
        for (int i = 0; i < 60; ++i) {
            RingElt x = oracles::random_ring_elt(rng, ctx, 3, 5);
            RingElt y = oracles::random_ring_elt(rng, ctx, 3, 5);
            RingElt z = oracles::random_ring_elt(rng, ctx, 3, 5);
            CHECK(gr_mul(gr_mul(x, y, ctx.rs), z, ctx.rs) == gr_mul(x, gr_mul(y, z, ctx.rs), ctx.rs));
            CHECK(gr_mul(x, y + z, ctx.rs) == gr_mul(x, y, ctx.rs) + gr_mul(x, z, ctx.rs));
        }
    }
}

TEST_CASE("involution is a w-twisted anti-automorphism") {
    std::mt19937_64 rng(77);
    FamilyContext ctx = builtin_bs(2);
    const OrientationChar w = OrientationChar::trivial(2);
    for (int i = 0; i < 1000; ++i) {
        RingElt x = oracles::random_ring_elt(rng, ctx, 3, 6);
        RingElt y = oracles::random_ring_elt(rng, ctx, 3, 6);
        CHECK(involute(gr_mul(x, y, ctx.rs), w, ctx.rs) ==
              gr_mul(involute(y, w, ctx.rs), involute(x, w, ctx.rs), ctx.rs));
        CHECK(involute(involute(x, w, ctx.rs), w, ctx.rs) == x);
    }
}

TEST_CASE("involution worked values") {
    FamilyContext f2 = builtin_free(2); // gens x1, x2
    OrientationChar w = OrientationChar::trivial(2);
    // a -> a^-1 under trivial w
    CHECK(involute(RingElt::of(Word::gen(0)), w, f2.rs) == RingElt::of(Word::gen(0, -1)));

    // 1 - t x t^-1 -> 1 - t x^-1 t^-1 in the free group ring on {t, x}
    Word txT = Word::gen(0) * Word::gen(1) * Word::gen(0, -1);
    RingElt e = RingElt::one() - RingElt::of(txT);
    Word txiT = Word::gen(0) * Word::gen(1, -1) * Word::gen(0, -1);
    CHECK(involute(e, w, f2.rs) == RingElt::one() - RingElt::of(txiT));

    // with w(t) = -1: t -> -t^-1
    OrientationChar wt{{1, -1}}; // gen 1 is t-like
    CHECK(involute(RingElt::of(Word::gen(1)), wt, f2.rs) == RingElt::of(Word::gen(1, -1), -1));
}

TEST_CASE("twisted augmentation") {
    FamilyContext bs3 = builtin_bs(3);
    OrientationChar triv = OrientationChar::trivial(2);
    RingElt mu3 = RingElt::one() + RingElt::of(Word::gen(0)) + RingElt::of(Word::gen(0, 2));
    CHECK(augment(mu3, triv) == 3);
    CHECK(augment(RingElt::of(Word::gen(0)) - RingElt::one(), triv) == 0);
    OrientationChar wt{{1, -1}}; // w(t) = -1
    CHECK(augment(RingElt::of(Word::gen(1)) - RingElt::one(), wt) == -2);
}

TEST_CASE("augmentation is multiplicative for trivial w") {
    std::mt19937_64 rng(123);
    FamilyContext ctx = builtin_torus_knot(2, 3);
    OrientationChar w = OrientationChar::trivial(2);
    for (int i = 0; i < 200; ++i) {
        RingElt x = oracles::random_ring_elt(rng, ctx, 3, 5);
        RingElt y = oracles::random_ring_elt(rng, ctx, 3, 5);
        CHECK(augment(gr_mul(x, y, ctx.rs), w) == augment(x, w) * augment(y, w));
    }
}
