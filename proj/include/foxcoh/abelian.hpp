#pragma once

#include "foxcoh/smith.hpp"

#include <string>
#include <vector>

namespace foxcoh {

// Finitely generated abelian group presented by an integer relation matrix
// (rows = relations, columns = generators).
struct AbPresentation {
    IMat rel;
    std::vector<std::string> labels; // one per generator (column)

    size_t ngens() const { return rel.cols; }
};

struct AbInvariants {
    std::vector<Int> torsion; // invariant factors > 1
    size_t free_rank = 0;
    std::vector<Int> all_factors; // every nonzero SNF diagonal entry (incl. 1s)

    bool torsion_free() const { return torsion.empty(); }
};

inline AbInvariants invariants(const AbPresentation& p) {
    SmithResult s = smith_normal_form(p.rel);
    AbInvariants inv;
    inv.all_factors = s.factors;
    inv.free_rank = p.ngens() - s.rank;
    for (const Int& d : s.factors)
        if (d > 1) inv.torsion.push_back(d);
    return inv;
}

// True iff every invariant factor of the presented group is 0 or 1.
inline std::pair<bool, AbInvariants> torsion_free_check(const AbPresentation& p) {
    AbInvariants inv = invariants(p);
    return {inv.torsion_free(), inv};
}

} // namespace foxcoh
