#pragma once

#include "foxcoh/presentation.hpp"
#include "foxcoh/rewrite.hpp"

#include <string>
#include <vector>

namespace foxcoh {

enum class Family { Free, FreeByZ, TorusKnot, Surface, Bs, User };

struct FamilyContext {
    Family family = Family::User;
    long long p1 = 0, p2 = 0; // rank / (m,n) / genus / m
    Presentation pres;
    RewritingSystem rs;
    bool aspherical = true; // user presentations are taken on faith and flagged

    std::string name() const {
        switch (family) {
            case Family::Free: return "free(" + std::to_string(p1) + ")";
            case Family::FreeByZ: return "freeByZ(" + std::to_string(p1) + ")";
            case Family::TorusKnot:
                return "torusKnot(" + std::to_string(p1) + "," + std::to_string(p2) + ")";
            case Family::Surface: return "surface(" + std::to_string(p1) + ")";
            case Family::Bs: return "bs(" + std::to_string(p1) + ")";
            case Family::User: return "user";
        }
        return "?";
    }
};

namespace detail {

inline Word commutator(int x, int y) {
    return Word::gen(x) * Word::gen(y) * Word::gen(x, -1) * Word::gen(y, -1);
}

// Fixed battery run at construction: relators normalize to 1, reduction is
// idempotent, and inserting a relator does not change a normal form.
inline void self_check(const FamilyContext& ctx) {
    const RewritingSystem& rs = ctx.rs;
    std::vector<Word> probes;
    probes.push_back(Word());
    for (size_t g = 0; g < ctx.pres.rank(); ++g) {
        probes.push_back(Word::gen(static_cast<int>(g)));
        probes.push_back(Word::gen(static_cast<int>(g), -2));
    }
    for (const Word& r : ctx.pres.relators) {
        if (!rs.reduce(r).empty()) throw error(ctx.name() + ": relator does not reduce to 1");
        for (const Word& u : probes)
            for (const Word& v : probes) {
                Word with = rs.reduce(u * r * v);
                Word without = rs.reduce(u * v);
                if (!(with == without)) throw error(ctx.name() + ": normal form not relator-invariant");
                if (!(rs.reduce(with) == with)) throw error(ctx.name() + ": reduction not idempotent");
            }
    }
}

inline void verify_confluent_rules(FamilyContext& ctx) {
    std::optional<CriticalPairFailure> fail;
    if (!check_confluence(ctx.pres.rank(), ctx.rs.rules, &fail))
        throw error(ctx.name() + ": rule system is not confluent");
    ctx.rs.confluent = true;
}

} // namespace detail

// Built-in families with hand-verified normal forms. The rewriting system
// is checked at construction: rule systems by resolving all critical
// pairs, dedicated reducers by the fixed relator battery.
inline FamilyContext builtin_free(long long rank) {
    if (rank < 0) throw error("free(r) needs r >= 0");
    FamilyContext ctx;
    ctx.family = Family::Free;
    ctx.p1 = rank;
    for (long long i = 0; i < rank; ++i) ctx.pres.gens.push_back("x" + std::to_string(i + 1));
    ctx.pres.w = OrientationChar::trivial(ctx.pres.gens.size());
    ctx.rs = RewritingSystem::free_only(ctx.pres.rank());
    return ctx;
}

// F(X) x Z = <t, x_1..x_k | t x_i t^-1 x_i^-1>. Gen 0 is t, so the
// commutation rules x t^s -> t^s x are shortlex-decreasing.
inline FamilyContext builtin_free_by_z(long long rank) {
    if (rank < 1) throw error("freeByZ(X) needs |X| >= 1");
    FamilyContext ctx;
    ctx.family = Family::FreeByZ;
    ctx.p1 = rank;
    ctx.pres.gens.push_back("t");
    for (long long i = 0; i < rank; ++i) ctx.pres.gens.push_back("x" + std::to_string(i + 1));
    ctx.pres.w = OrientationChar::trivial(ctx.pres.gens.size());
    std::vector<Rule> rules;
    for (long long i = 1; i <= rank; ++i) {
        int x = static_cast<int>(i);
        ctx.pres.relators.push_back(detail::commutator(0, x));
        for (bool xn : {false, true})
            for (bool tn : {false, true})
                rules.push_back({{letter_code(x, xn), letter_code(0, tn)},
                                 {letter_code(0, tn), letter_code(x, xn)}});
    }
    ctx.rs = RewritingSystem::from_rules(ctx.pres.rank(), rules, false);
    detail::verify_confluent_rules(ctx);
    detail::self_check(ctx);
    return ctx;
}

inline FamilyContext builtin_torus_knot(long long m, long long n) {
    if (m < 2 || n < 2) throw error("torusKnot(m,n) needs m,n >= 2");
    FamilyContext ctx;
    ctx.family = Family::TorusKnot;
    ctx.p1 = m;
    ctx.p2 = n;
    ctx.pres.gens = {"a", "b"};
    ctx.pres.w = OrientationChar::trivial(2);
    ctx.pres.relators = {Word::gen(0, m) * Word::gen(1, -n)};
    ctx.rs = RewritingSystem::torus_central(m, n);
    detail::self_check(ctx);
    return ctx;
}

inline FamilyContext builtin_surface(long long genus) {
    if (genus < 1) throw error("surface(g) needs g >= 1");
    FamilyContext ctx;
    ctx.family = Family::Surface;
    ctx.p1 = genus;
    static const char* names = "abcdefghijklmnopqrstuvwxyz";
    if (genus > 13) throw error("surface(g) supports g <= 13");
    for (long long i = 0; i < 2 * genus; ++i) ctx.pres.gens.push_back(std::string(1, names[i]));
    ctx.pres.w = OrientationChar::trivial(ctx.pres.gens.size());
    Word r;
    for (long long i = 0; i < genus; ++i) r *= detail::commutator(static_cast<int>(2 * i), static_cast<int>(2 * i + 1));
    ctx.pres.relators = {r};
    if (genus == 1) {
        // Z^2: push b past a
        std::vector<Rule> rules;
        for (bool bn : {false, true})
            for (bool an : {false, true})
                rules.push_back({{letter_code(1, bn), letter_code(0, an)},
                                 {letter_code(0, an), letter_code(1, bn)}});
        ctx.rs = RewritingSystem::from_rules(2, rules, false);
        detail::verify_confluent_rules(ctx);
    } else {
        // F(a,b) *_{u=v} F(rest), u = [a,b], v = ([c,d]...[y,z])^-1
        Word u = detail::commutator(0, 1);
        Word vinv;
        for (long long i = 1; i < genus; ++i)
            vinv *= detail::commutator(static_cast<int>(2 * i), static_cast<int>(2 * i + 1));
        ctx.rs = RewritingSystem::surface_amalgam(ctx.pres.rank(), 2, u, vinv.inverse());
    }
    detail::self_check(ctx);
    return ctx;
}

// Z*_m = BS(1,m) = <a,t | t a t^-1 a^-m>.
inline FamilyContext builtin_bs(long long m, int variant = 0) {
    if (m == 0) throw error("bs(m) needs m != 0");
    FamilyContext ctx;
    ctx.family = Family::Bs;
    ctx.p1 = m;
    ctx.pres.gens = {"a", "t"};
    ctx.pres.w = OrientationChar::trivial(2);
    ctx.pres.relators = {Word::gen(1) * Word::gen(0) * Word::gen(1, -1) * Word::gen(0, -m)};
    ctx.rs = RewritingSystem::bs_solvable(m, variant);
    detail::self_check(ctx);
    return ctx;
}

inline FamilyContext builtin_family(const std::string& id, long long p1, long long p2 = 0) {
    if (id == "free") return builtin_free(p1);
    if (id == "freeByZ") return builtin_free_by_z(p1);
    if (id == "torusKnot") return builtin_torus_knot(p1, p2);
    if (id == "surface") return builtin_surface(p1);
    if (id == "bs") return builtin_bs(p1);
    throw error("unknown family '" + id + "'");
}

// User presentation: bounded Knuth-Bendix attempt; failure is reported,
// never silently accepted.
inline FamilyContext from_presentation(Presentation p, KnuthBendixOptions opt = {}) {
    FamilyContext ctx;
    ctx.family = Family::User;
    ctx.pres = std::move(p);
    ctx.aspherical = false;
    if (ctx.pres.relators.empty()) {
        ctx.rs = RewritingSystem::free_only(ctx.pres.rank());
        ctx.aspherical = true;
        return ctx;
    }
    KnuthBendixResult kb = knuth_bendix(ctx.pres, opt);
    if (!kb.completed)
        throw error("Knuth-Bendix completion failed for user presentation: " + kb.message);
    ctx.rs = RewritingSystem::from_rules(ctx.pres.rank(), kb.rules, false);
    detail::verify_confluent_rules(ctx);
    detail::self_check(ctx);
    return ctx;
}

} // namespace foxcoh
