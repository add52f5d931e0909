#pragma once

#include "foxcoh/abelian.hpp"
#include "foxcoh/fox.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace foxcoh {

// Coefficients for group cohomology: Z or Z/k, with pi acting through a
// +-1 character (trivial or a supplied twist).
struct Coefficients {
    long long modulus = 0; // 0 = integral

    static Coefficients integers() { return {0}; }
    static Coefficients mod(long long k) { return {k}; }

    std::string str() const { return modulus == 0 ? "Z" : "Z/" + std::to_string(modulus); }
};

struct CohomologyResult {
    int degree = 0;
    std::string coeffs;
    std::vector<Int> factors; // cyclic orders > 1 (0 denotes a Z summand)
    size_t rank = 0;          // free rank (0 for finite coefficients)
    size_t ngens = 0;         // generators of the computed presentation
    long long beta = -1;      // F_2-dimension when coefficients are Z/2

    std::vector<Int> torsion() const {
        std::vector<Int> t;
        for (const Int& d : factors)
            if (d > 1) t.push_back(d);
        return t;
    }
};

namespace detail {

// Integral cohomology of the length-2 cochain complex
//   A -> A^X -> A^R  (A = Z)
// obtained by applying the twisted augmentation to the Fox matrices.
struct IntegralCohomology {
    // invariant factors (>1) and free rank per degree 0..2
    std::vector<Int> tor[3];
    size_t rank[3] = {0, 0, 0};
    size_t ngens[3] = {0, 0, 0};
};

inline IntegralCohomology integral_cohomology(const Resolution& res, const OrientationChar& twist) {
    const size_t X = res.ngens, R = res.nrel;
    // d0 : Z -> Z^X, x-component u(x) - 1
    IMat d0(X, 1);
    for (size_t x = 0; x < X; ++x)
        d0.at(x, 0) = twist(Word::gen(static_cast<int>(x))) - 1;
    // d1 : Z^X -> Z^R, (r,x) entry eps_u(r_x)
    IMat d1(R, X);
    for (size_t r = 0; r < R; ++r)
        for (size_t x = 0; x < X; ++x) d1.at(r, x) = augment(res.d2[r][x], twist);

    IntegralCohomology out;

    // H^0 = ker d0
    {
        bool injective = false;
        for (size_t x = 0; x < X; ++x)
            if (d0.at(x, 0) != 0) injective = true;
        out.rank[0] = injective ? 0 : 1;
        out.ngens[0] = 1;
    }

    // H^1 = ker d1 / im d0
    {
        SmithResult s1 = smith_normal_form(d1);
        std::vector<std::vector<Int>> ker = kernel_basis(d1, &s1);
        size_t k = ker.size();
        out.ngens[1] = k;
        // express the image generator in kernel coordinates
        IMat kmat(X, k);
        for (size_t j = 0; j < k; ++j)
            for (size_t i = 0; i < X; ++i) kmat.at(i, j) = ker[j][i];
        std::vector<Int> gen(X);
        bool nonzero = false;
        for (size_t x = 0; x < X; ++x) {
            gen[x] = d0.at(x, 0);
            if (gen[x] != 0) nonzero = true;
        }
        IMat relmat(nonzero ? 1 : 0, k);
        if (nonzero) {
            auto coords = solve_integer(kmat, gen);
            if (!coords) throw error("image of d0 not contained in kernel of d1");
            for (size_t j = 0; j < k; ++j) relmat.at(0, j) = (*coords)[j];
        }
        AbInvariants inv = invariants(AbPresentation{relmat, {}});
        out.tor[1] = inv.torsion;
        out.rank[1] = inv.free_rank;
    }

    // H^2 = Z^R / im d1: presentation matrix has the columns of d1 as rows
    {
        AbInvariants inv = invariants(AbPresentation{d1.transposed(), {}});
        out.tor[2] = inv.torsion;
        out.rank[2] = inv.free_rank;
        out.ngens[2] = R;
    }
    return out;
}

} // namespace detail

// Cohomology of pi with finite-coefficient modules, all through one
// integer SNF pipeline; Z/k answers come from the integral answer by
// tensor and Tor at the end.
inline CohomologyResult cohomology_finite_coeffs(const FamilyContext& ctx, int degree,
                                                 Coefficients coeffs,
                                                 const OrientationChar* twist = nullptr) {
    if (degree < 0 || degree > 2) throw error("cohomology degree must be 0, 1 or 2");
    OrientationChar u = twist ? *twist : OrientationChar::trivial(ctx.pres.rank());
    Resolution res = build_resolution(ctx);
    detail::IntegralCohomology H = detail::integral_cohomology(res, u);

    CohomologyResult out;
    out.degree = degree;
    out.coeffs = coeffs.str();
    out.ngens = H.ngens[degree];

    if (coeffs.modulus == 0) {
        out.factors = H.tor[degree];
        for (size_t i = 0; i < H.rank[degree]; ++i) out.factors.push_back(0);
        out.rank = H.rank[degree];
        return out;
    }

    // H^n(Z/k) = H^n(Z) (x) Z/k  (+)  Tor(H^{n+1}(Z), Z/k)
    long long k = coeffs.modulus;
    std::vector<Int> cyc;
    for (const Int& d : H.tor[degree]) {
        Int g = gcd(d, Int(k));
        if (g > 1) cyc.push_back(g);
    }
    for (size_t i = 0; i < H.rank[degree]; ++i) cyc.push_back(k);
    if (degree + 1 <= 2)
        for (const Int& d : H.tor[degree + 1]) {
            Int g = gcd(d, Int(k));
            if (g > 1) cyc.push_back(g);
        }
    out.factors = cyc;
    out.rank = 0;
    if (k == 2) out.beta = static_cast<long long>(cyc.size());
    return out;
}

// beta_2(pi; F_2), the mod-2 dimension of H^2.
inline long long beta2(const FamilyContext& ctx) {
    return cohomology_finite_coeffs(ctx, 2, Coefficients::mod(2)).beta;
}

} // namespace foxcoh
