#pragma once

#include "foxcoh/abelian.hpp"
#include "foxcoh/diagonal.hpp"
#include "foxcoh/dual_module.hpp"

#include <optional>
#include <string>
#include <vector>

namespace foxcoh {

// Degree-2 cochain with values in the dual module, given by its value on
// each p_r^2 (automatically a cocycle: the resolution stops in degree 2).
struct Cocycle {
    std::vector<DualElt> vals; // per relator
};

// A class in the coinvariants of Dbar (x) Dbar, retaining its pair
// decomposition (needed for the factor-swap involution) alongside the
// collapsed image in D (x)_G Dbar = Dbar / sum_x r_x . Dbar. The first
// factor is kept as an explicit Gamma-lift of its D-class so that the
// collapse goes through the structural group elements rather than a
// re-canonicalized representative.
struct CoinvClass {
    struct PairTerm {
        RingElt a; // lift in Gamma of the first factor's D-class
        DualElt b;
        Int coeff;
    };
    std::vector<PairTerm> pairs;
    DualElt collapsed;                 // exact families
    std::vector<Int> coords;           // windowed family (bs)
};

// Finite model of Z^w (x)_G (Dbar (x) Dbar). Realized through the
// right-exact presentation D (x)_G Dbar = Dbar / sum_x r_x . Dbar:
// exactly for the surface and torus-knot families, and on a truncated
// window with instantiated relations for Z*_m.
class CoinvModel {
  public:
    CoinvModel(const DiagonalData& dd, long long truncation)
        : dd_(&dd), red_(dd.ctx), truncation_(truncation) {
        if (truncation < 1) throw error("coinvariants model needs truncation >= 1");
        if (dd.res.nrel != 1) throw error("coinvariants model needs a single-relator family");
        if (dd.ctx.family == Family::Bs) {
            window_ = red_.bs_basis_window(truncation);
            build_bs_relations();
        }
    }

    const ModuleReducer& reducer() const { return red_; }
    const DiagonalData& data() const { return *dd_; }
    long long truncation() const { return truncation_; }
    bool exact() const { return dd_->ctx.family != Family::Bs; }

    // Presentation of the model: generators are the window basis (or the
    // exact canonical basis description), relations the instantiated
    // action relations.
    AbPresentation presentation() const {
        AbPresentation p;
        if (dd_->ctx.family == Family::Bs) {
            p.rel = rel_;
            for (const BsDual& b : window_) p.labels.push_back(bs_label(b));
        } else if (dd_->ctx.family == Family::TorusKnot) {
            auto words = red_.h_basis_window(truncation_);
            std::vector<std::string> labels;
            for (const Word& u : words)
                if (!trailing_reducible(u)) labels.push_back(dd_->ctx.pres.word_str(u));
            p.rel = IMat(0, labels.size());
            p.labels = std::move(labels);
        } else {
            p.rel = IMat(0, 1);
            p.labels = {"1"};
        }
        if (p.labels.empty()) throw error("truncation too small: model has no generators");
        return p;
    }

    CoinvClass zero() const {
        CoinvClass c;
        c.collapsed = red_.zero();
        if (dd_->ctx.family == Family::Bs) c.coords.assign(window_.size(), 0);
        return c;
    }

    CoinvClass project(std::vector<CoinvClass::PairTerm> pairs) const {
        CoinvClass c = zero();
        c.pairs = std::move(pairs);
        collapse(c);
        return c;
    }

    // Swaps the tensor factors: the Dbar-value of the first factor is its
    // stored class, the second factor is re-lifted to Gamma.
    CoinvClass tau(const CoinvClass& c) const {
        std::vector<CoinvClass::PairTerm> swapped;
        swapped.reserve(c.pairs.size());
        for (const auto& t : c.pairs) swapped.push_back({lift_as_d(t.b), as_dbar(t.a), t.coeff});
        return project(std::move(swapped));
    }

    CoinvClass neg(const CoinvClass& c) const {
        std::vector<CoinvClass::PairTerm> p = c.pairs;
        for (auto& t : p) t.coeff = -t.coeff;
        return project(std::move(p));
    }

    bool equal(const CoinvClass& x, const CoinvClass& y) const {
        if (dd_->ctx.family == Family::Bs) {
            std::vector<Int> diff(window_.size());
            for (size_t i = 0; i < window_.size(); ++i) diff[i] = x.coords[i] - y.coords[i];
            bool nonzero = false;
            for (const Int& v : diff)
                if (v != 0) nonzero = true;
            if (!nonzero) return true;
            return in_row_lattice(rel_, diff, &relT_);
        }
        DualElt d = red_.add(x.collapsed, red_.scale(-1, y.collapsed));
        if (dd_->ctx.family == Family::TorusKnot) return dual_is_zero(trailing_eliminate(std::get<HDual>(d)));
        return dual_is_zero(d);
    }

    bool is_zero(const CoinvClass& c) const { return equal(c, zero()); }

    std::string describe(const CoinvClass& c) const {
        if (dd_->ctx.family == Family::Bs) {
            std::string s = "[";
            for (size_t i = 0; i < c.coords.size(); ++i) {
                if (c.coords[i] == 0) continue;
                if (s.size() > 1) s += " ";
                s += c.coords[i].str() + "*" + bs_label(window_[i]);
            }
            return s + "]";
        }
        if (dd_->ctx.family == Family::TorusKnot) {
            HDual h = trailing_eliminate(std::get<HDual>(c.collapsed));
            std::string s = "[";
            for (const auto& [u, v] : h.v) {
                if (s.size() > 1) s += " ";
                s += v.str() + "*(" + dd_->ctx.pres.word_str(u) + ")";
            }
            return s + "]";
        }
        return "[" + std::get<ZDual>(c.collapsed).v.str() + "]";
    }

    // Representative in Gamma of the D-class of a Dbar-value. The solvable
    // family's canonical forms live in the conjugate presentation, so the
    // representative is the involuted lift.
    RingElt lift_as_d(const DualElt& d) const {
        RingElt l = red_.lift(d);
        if (dd_->ctx.family == Family::Bs) return involute(l, dd_->ctx.pres.w, dd_->ctx.rs);
        return l;
    }

    // Stored Dbar-value of the D-class represented by a Gamma-lift.
    DualElt as_dbar(const RingElt& gamma) const {
        if (dd_->ctx.family == Family::Bs)
            return red_.reduce(involute(gamma, dd_->ctx.pres.w, dd_->ctx.rs));
        return red_.reduce(gamma);
    }

  private:
    const DiagonalData* dd_;
    ModuleReducer red_;
    long long truncation_ = 0;
    std::vector<BsDual> window_;
    IMat rel_;
    SmithResult relT_;

    static std::string bs_label(const BsDual& b) {
        const auto& [x, c] = *b.e.c.begin();
        return "t^" + std::to_string(b.level) + ".a[" + std::to_string(x.k) + "/m^" +
               std::to_string(x.n) + "]";
    }

    void collapse(CoinvClass& c) const {
        DualElt acc = red_.zero();
        for (const auto& t : c.pairs) {
            for (const auto& [g, cg] : t.a.terms)
                acc = red_.add(acc, red_.scale(t.coeff * cg, red_.act(g, t.b)));
        }
        c.collapsed = acc;
        if (dd_->ctx.family == Family::Bs) c.coords = bs_coords(std::get<BsDual>(acc));
    }

    std::vector<Int> bs_coords(const BsDual& d) const {
        std::vector<Int> coords(window_.size(), 0);
        for (const auto& [x, v] : d.e.c) {
            bool found = false;
            for (size_t i = 0; i < window_.size(); ++i) {
                const BsDual& b = window_[i];
                if (b.level == d.level && b.e.c.begin()->first == x) {
                    coords[i] = v;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw escape_error("value escapes truncation window: level " + std::to_string(d.level) +
                                   ", index " + std::to_string(x.k) + "/m^" + std::to_string(x.n));
        }
        return coords;
    }

    // relation rows: r_x . delta for every window basis element whose
    // image stays inside the window
    void build_bs_relations() {
        std::vector<std::vector<Int>> rows;
        for (size_t x = 0; x < dd_->res.ngens; ++x) {
            const RingElt& rx = dd_->res.d2[0][x];
            for (const BsDual& delta : window_) {
                DualElt img = red_.zero();
                for (const auto& [g, c] : rx.terms) img = red_.add(img, red_.scale(c, red_.act(g, DualElt(delta))));
                try {
                    rows.push_back(bs_coords(std::get<BsDual>(img)));
                } catch (const escape_error&) {
                    // relation leaves the window: omitted entirely
                }
            }
        }
        rel_ = IMat(rows.size(), window_.size());
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < window_.size(); ++j) rel_.at(i, j) = rows[i][j];
        relT_ = smith_normal_form(rel_.transposed());
    }

    bool trailing_reducible(const Word& u) const {
        if (u.empty()) return false;
        const Run& last = u.runs().back();
        return last.exp == (last.gen == 0 ? red_.m : red_.n) - 1;
    }

    // Quotient by sum_x r_x . Dbar for the torus knot: eliminate maximal
    // trailing blocks (exact, no truncation).
    HDual trailing_eliminate(HDual h) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = h.v.begin(); it != h.v.end(); ++it) {
                if (!trailing_reducible(it->first)) continue;
                Word u = it->first;
                Int c = it->second;
                h.v.erase(it);
                const Run last = u.runs().back();
                Word head;
                for (size_t i = 0; i + 1 < u.runs().size(); ++i) head.append_run(u.runs()[i].gen, u.runs()[i].exp);
                for (long long l = 0; l <= last.exp - 1; ++l) {
                    Word term = head * Word::gen(last.gen, l);
                    auto [jt, fresh] = h.v.emplace(term, -c);
                    if (!fresh) {
                        jt->second += -c;
                        if (jt->second == 0) h.v.erase(jt);
                    }
                }
                changed = true;
                break;
            }
        }
        return h;
    }
};

// h: H^2(G; Dbar) -> D (x)_G Dbar. With the canonical epimorphism eta
// sending q_r^0 to [1], the class of xi is [1] (x) xi(p_r^2).
inline CoinvClass h_map(const CoinvModel& model, const Cocycle& xi) {
    return model.project({{RingElt::one(), xi.vals[0], 1}});
}

// Chain-level cup product with the identity: evaluates (xi (x) eta) on the
// (2,0)-component of a verified degree-2 diagonal candidate. The first
// factor's D-class of g . xi(p_r^2) has Gamma-lift lift(xi) g^-1.
inline CoinvClass cup_with_identity(const CoinvModel& model, const Cocycle& xi, const TensorElt& j2) {
    const ModuleReducer& red = model.reducer();
    const RewritingSystem& rs = model.data().ctx.rs;
    std::vector<CoinvClass::PairTerm> pairs;
    for (const auto& [key, comp] : j2.comps) {
        auto [pdeg, pidx, qidx] = key;
        if (pdeg != 2) continue;
        for (const auto& [gh, c] : comp) {
            RingElt ginv = RingElt::of(rs.reduce(gh.first.inverse()));
            RingElt lift = gr_mul(model.lift_as_d(xi.vals[static_cast<size_t>(pidx)]), ginv, rs);
            pairs.push_back({std::move(lift), red.act(gh.second, red.unit()), c});
        }
    }
    return model.project(std::move(pairs));
}

struct CupCheckEntry {
    std::string cocycle;
    bool holds = false;
    std::string lhs, rhs;
};

struct CupCheckReport {
    bool all_hold = false;
    bool exact_model = false;
    long long truncation = 0;
    std::vector<CupCheckEntry> entries;
};

// Spanning cocycles supported on single truncated basis values of the
// dual module.
inline std::vector<Cocycle> spanning_cocycles(const DiagonalData& dd, const ModuleReducer& red,
                                              long long truncation) {
    std::vector<Cocycle> out;
    switch (dd.ctx.family) {
        case Family::Surface:
        case Family::FreeByZ: out.push_back({{ZDual{1}}}); break;
        case Family::TorusKnot:
            for (const Word& u : red.h_basis_window(truncation)) {
                HDual h;
                h.v.emplace(u, 1);
                out.push_back({{h}});
            }
            break;
        case Family::Bs:
            for (const BsDual& b : red.bs_basis_window(truncation - 1)) out.push_back({{b}});
            break;
        default: throw error("no spanning cocycles for this family");
    }
    return out;
}

// Checks [xi] u id = -theta(tau([xi])) for every spanning cocycle, as an
// equality of e-images inside one shared coinvariants model.
inline CupCheckReport check_cup_relation(const DiagonalData& dd, const std::vector<Cocycle>& spanning,
                                         const TensorElt& j2, long long truncation) {
    CoinvModel model(dd, truncation);
    CupCheckReport rep;
    rep.exact_model = model.exact();
    rep.truncation = truncation;
    rep.all_hold = true;
    if (spanning.empty()) throw error("truncation too small: no spanning cocycles");
    int idx = 0;
    for (const Cocycle& xi : spanning) {
        CoinvClass lhs = cup_with_identity(model, xi, j2);
        CoinvClass rhs = model.neg(model.tau(h_map(model, xi)));
        CupCheckEntry e;
        e.cocycle = "xi_" + std::to_string(idx++);
        e.holds = model.equal(lhs, rhs);
        e.lhs = model.describe(lhs);
        e.rhs = model.describe(rhs);
        rep.all_hold = rep.all_hold && e.holds;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

inline CupCheckReport check_cup_relation(const DiagonalData& dd, const TensorElt& j2, long long truncation) {
    CoinvModel model(dd, truncation);
    return check_cup_relation(dd, spanning_cocycles(dd, model.reducer(), truncation), j2, truncation);
}

} // namespace foxcoh
