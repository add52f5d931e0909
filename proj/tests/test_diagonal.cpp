#include "foxcoh/diagonal.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace foxcoh;

namespace {
TensorElt random_deg2(std::mt19937_64& rng, const DiagonalData& dd) {
    TensorElt t;
    t.degree = 2;
    auto word = [&] { return dd.ctx.rs.reduce(oracles::random_word(rng, dd.res.ngens, static_cast<int>(rng() % 5))); };
    for (int i = 0; i < 4; ++i) {
        int pick = static_cast<int>(rng() % 3);
        long long c = static_cast<long long>(rng() % 5) - 2;
        if (pick == 0) t.add(0, 0, 0, word(), word(), c);
        if (pick == 1 && dd.res.ngens > 0)
            t.add(1, static_cast<int>(rng() % dd.res.ngens), static_cast<int>(rng() % dd.res.ngens), word(), word(), c);
        if (pick == 2 && dd.res.nrel > 0)
            t.add(2, static_cast<int>(rng() % dd.res.nrel), static_cast<int>(rng() % dd.res.nrel), word(), word(), c);
    }
    return t;
}
} // namespace

TEST_CASE("boundary of simple tensors") {
    FamilyContext ctx = builtin_bs(2);
    DiagonalData dd = build_diagonal(ctx);

    // d(1 (x) 1*) = 1 (x) d1*
    TensorElt top;
    top.degree = 2;
    top.add(0, 0, 0, Word(), Word(), 1);
    TensorElt b = tensor_boundary(top, dd.res, dd.dual, ctx);
    TensorElt expect;
    expect.degree = 1;
    for (size_t x = 0; x < dd.res.ngens; ++x)
        for (const auto& [k, c] : dd.dual.d_top[x].terms) expect.add(0, 0, static_cast<int>(x), Word(), k, c);
    CHECK(b == expect);

    // d(p_x^1 (x) q_r^0) = (x - 1) (x) q_r^0
    TensorElt mid;
    mid.degree = 1;
    mid.add(1, 0, 0, Word(), Word(), 1);
    TensorElt mb = tensor_boundary(mid, dd.res, dd.dual, ctx);
    TensorElt mexp;
    mexp.degree = 0;
    mexp.add(0, 0, 0, Word::gen(0), Word(), 1);
    mexp.add(0, 0, 0, Word(), Word(), -1);
    CHECK(mb == mexp);

    CHECK_THROWS_AS(tensor_boundary(mexp, dd.res, dd.dual, ctx), error); // degree 0
}

TEST_CASE("boundary squares to zero") {
    std::mt19937_64 rng(17);
    for (const FamilyContext& ctx : {builtin_bs(2), builtin_torus_knot(2, 3), builtin_surface(2), builtin_free_by_z(2)}) {
        DiagonalData dd = build_diagonal(ctx);
        TensorElt cand = builtin_j2(dd);
        CHECK(tensor_boundary(tensor_boundary(cand, dd.res, dd.dual, ctx), dd.res, dd.dual, ctx).is_zero());
        for (int i = 0; i < 20; ++i) {
            TensorElt t = random_deg2(rng, dd);
            CHECK(tensor_boundary(tensor_boundary(t, dd.res, dd.dual, ctx), dd.res, dd.dual, ctx).is_zero());
        }
    }
}

TEST_CASE("built-in degree-2 candidates verify with zero defect") {
    for (const FamilyContext& ctx :
         {builtin_free(2), builtin_free_by_z(1), builtin_free_by_z(2), builtin_torus_knot(2, 3),
          builtin_torus_knot(3, 4), builtin_torus_knot(2, 5), builtin_surface(1), builtin_surface(2),
          builtin_surface(3), builtin_bs(2), builtin_bs(3), builtin_bs(6), builtin_bs(-2)}) {
        DiagonalData dd = build_diagonal(ctx);
        VerifyReport rep = verify_j2(dd, builtin_j2(dd));
        INFO(ctx.name());
        CHECK(rep.pass);
        CHECK(rep.defect.is_zero());
    }
}

TEST_CASE("worked degree-0 and degree-1 values") {
    FamilyContext ctx = builtin_bs(2);
    DiagonalData dd = build_diagonal(ctx);
    // j0(q_r^0) = 1 (x) q_r^0 always
    TensorElt j0;
    j0.degree = 0;
    j0.add(0, 0, 0, Word(), Word(), 1);
    CHECK(dd.maps.j0[0] == j0);
    // j1(q_t^1): rbar_t = 1 - a^-2 contributes the correction
    // (a^-1 + a^-2) p_a^1 (x) a^-2 q_r^0
    TensorElt jt;
    jt.degree = 1;
    jt.add(0, 0, 1, Word(), Word(), 1);
    jt.add(1, 0, 0, Word::gen(0, -1), Word::gen(0, -2), 1);
    jt.add(1, 0, 0, Word::gen(0, -2), Word::gen(0, -2), 1);
    CHECK(dd.maps.j1[1] == jt);
}

TEST_CASE("the zero candidate fails with the full target as defect") {
    FamilyContext ctx = builtin_bs(2);
    DiagonalData dd = build_diagonal(ctx);
    TensorElt zero;
    zero.degree = 2;
    VerifyReport rep = verify_j2(dd, zero);
    CHECK_FALSE(rep.pass);
    TensorElt target = j1_of_top_boundary(dd);
    CHECK((rep.defect + target).is_zero()); // defect = -j1(d 1*)
    CHECK_FALSE(target.is_zero());
}

TEST_CASE("degree mismatch is rejected") {
    FamilyContext ctx = builtin_bs(2);
    DiagonalData dd = build_diagonal(ctx);
    TensorElt wrong;
    wrong.degree = 1;
    CHECK_THROWS_AS(verify_j2(dd, wrong), error);
}

TEST_CASE("two valid candidates differ by a cycle") {
    FamilyContext ctx = builtin_bs(2);
    DiagonalData dd = build_diagonal(ctx);
    TensorElt c1 = builtin_j2(dd);
    // produce a second valid candidate by adding the boundary of a
    // degree-3 element
    TensorElt deg3;
    deg3.degree = 3;
    deg3.add(2, 0, 0, ctx.rs.reduce(Word::gen(0)), Word(), 1); // p_r^2 (x) q_a^1 term
    TensorElt c2 = c1 + tensor_boundary(deg3, dd.res, dd.dual, ctx);
    CHECK(verify_j2(dd, c2).pass);
    CHECK(!(c1 == c2));
    CHECK(tensor_boundary(c1 - c2, dd.res, dd.dual, ctx).is_zero());
}

TEST_CASE("search finds candidates") {
    // free groups: the relator-free shape works immediately
    {
        FamilyContext ctx = builtin_free(2);
        DiagonalData dd = build_diagonal(ctx);
        SearchReport rep = search_j2(dd, {}, 0);
        REQUIRE(rep.candidate.has_value());
        CHECK(rep.how == "ansatz");
        CHECK(verify_j2(dd, *rep.candidate).pass);
    }
    // the exact linear solver alone (ansatz disabled) over the subword
    // dictionary also finds a valid candidate
    {
        FamilyContext ctx = builtin_bs(2);
        DiagonalData dd = build_diagonal(ctx);
        std::set<Word> dict;
        dict.insert(Word());
        Letters ls = expand(ctx.pres.relators[0]);
        for (size_t len = 1; len <= ls.size(); ++len)
            for (size_t start = 0; start + len <= ls.size(); ++start) {
                Letters seg(ls.begin() + static_cast<long>(start), ls.begin() + static_cast<long>(start + len));
                dict.insert(ctx.rs.reduce(contract(seg)));
                dict.insert(ctx.rs.reduce(contract(seg).inverse()));
            }
        SearchReport rep = search_j2(dd, {dict.begin(), dict.end()}, 0, /*seed_ansatz=*/false);
        REQUIRE(rep.candidate.has_value());
        CHECK(rep.how == "linear system");
        CHECK(verify_j2(dd, *rep.candidate).pass);
    }
    // a dictionary that cannot express any solution: none, with the
    // residual system reported
    {
        FamilyContext ctx = builtin_bs(2);
        DiagonalData dd = build_diagonal(ctx);
        SearchReport rep = search_j2(dd, {Word()}, 0, /*seed_ansatz=*/false);
        CHECK_FALSE(rep.candidate.has_value());
        CHECK(rep.unknowns > 0);
    }
    // empty dictionary: none
    {
        FamilyContext ctx = builtin_bs(2);
        DiagonalData dd = build_diagonal(ctx);
        SearchReport rep = search_j2(dd, {}, 0, /*seed_ansatz=*/false);
        CHECK_FALSE(rep.candidate.has_value());
    }
}
