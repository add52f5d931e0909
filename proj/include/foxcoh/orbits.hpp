#pragma once

#include "foxcoh/bigint.hpp"

#include <cstdlib>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace foxcoh {

struct OrbitReport {
    size_t count = 0;
    std::vector<long long> representatives; // values of m in +-(z^2 + m tz)
    bool twisted = false;
};

// Orbits of k-invariants +-(z^2 (x) eta + m tz (x) eta) under the action
// generated by z -> z + t (which sends z^2 to z^2 + 2tz since t^2 = 0)
// and the sign +-1, over Z in the untwisted case and F_2 in the twisted
// one. Enumerated by closing the generated action over a window of m
// values and collecting the canonical representatives m in {0,1}.
inline OrbitReport pd2_orbit_reps(bool orientable, bool twisted_action) {
    (void)orientable; // both orientations produce the same two orbits
    OrbitReport rep;
    rep.twisted = twisted_action;
    long long modulus = twisted_action ? 2 : 0;

    const long long window = 16;
    auto normal = [&](long long m, int sign) {
        if (modulus == 2) return std::pair<long long, int>{((m % 2) + 2) % 2, 1};
        return std::pair<long long, int>{m, sign};
    };
    std::set<std::pair<long long, int>> seen;
    std::vector<std::set<std::pair<long long, int>>> orbits;
    for (long long m0 = -window; m0 <= window; ++m0) {
        auto start = normal(m0, +1);
        if (seen.count(start)) continue;
        // breadth-first closure under z -> z + t and negation
        std::set<std::pair<long long, int>> orbit;
        std::vector<std::pair<long long, int>> frontier{start};
        orbit.insert(start);
        while (!frontier.empty()) {
            auto [m, s] = frontier.back();
            frontier.pop_back();
            std::vector<std::pair<long long, int>> next;
            next.push_back(normal(m + 2, s)); // z -> z + t sends m to m + 2
            next.push_back(normal(m - 2, s));
            next.push_back(normal(m, -s)); // sign action on Gamma_W
            for (auto& n : next)
                if (std::abs(n.first) <= 3 * window && orbit.insert(n).second) frontier.push_back(n);
        }
        for (auto& p : orbit) seen.insert(p);
        orbits.push_back(std::move(orbit));
    }
    // orbits that meet the canonical window {0,1}
    std::set<long long> reps;
    for (auto& orbit : orbits)
        for (long long r : {0LL, 1LL})
            if (orbit.count({r, +1}) || orbit.count({r, -1})) reps.insert(r);
    rep.representatives.assign(reps.begin(), reps.end());
    rep.count = orbits.size();
    return rep;
}

} // namespace foxcoh
