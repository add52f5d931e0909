#pragma once

#include "foxcoh/coinv.hpp"
#include "foxcoh/diagonal.hpp"

#include <json.hpp>

#include <string>

namespace foxcoh {

using ordered_json = nlohmann::ordered_json;

inline long long json_int(const Int& v) {
    // coefficients in emitted reports are small; refuse silently lossy output
    try {
        return v.convert_to<long long>();
    } catch (const std::exception&) {
        throw error("coefficient too large for JSON output");
    }
}

inline ordered_json to_json(const Presentation& p, const RingElt& e) {
    ordered_json terms = ordered_json::array();
    for (const auto& [g, c] : e.terms)
        terms.push_back({{"elt", p.word_str(g)}, {"coeff", json_int(c)}});
    return terms;
}

inline ordered_json to_json(const Presentation& p, const Resolution& res) {
    ordered_json d2 = ordered_json::array();
    for (size_t r = 0; r < res.nrel; ++r) {
        ordered_json row;
        row["relator"] = "p2:" + p.word_str(p.relators[r]);
        ordered_json cols = ordered_json::object();
        for (size_t x = 0; x < res.ngens; ++x) cols["p1:" + p.gens[x]] = to_json(p, res.d2[r][x]);
        row["entries"] = cols;
        d2.push_back(row);
    }
    ordered_json j;
    j["ranks"] = {1, res.ngens, res.nrel};
    j["d2"] = d2;
    ordered_json d1 = ordered_json::object();
    for (size_t x = 0; x < res.ngens; ++x) d1["p1:" + p.gens[x]] = p.gens[x] + " - 1";
    j["d1"] = d1;
    return j;
}

inline ordered_json to_json(const Presentation& p, const DualComplex& dual, size_t ngens, size_t nrel) {
    ordered_json j;
    ordered_json top = ordered_json::object();
    for (size_t x = 0; x < ngens; ++x) top["q1:" + p.gens[x]] = to_json(p, dual.d_top[x]);
    j["d_top"] = top;
    ordered_json mid = ordered_json::array();
    for (size_t x = 0; x < ngens; ++x) {
        ordered_json row;
        row["gen"] = "q1:" + p.gens[x];
        ordered_json cols = ordered_json::object();
        for (size_t r = 0; r < nrel; ++r) cols["q0:" + std::to_string(r)] = to_json(p, dual.d_mid[x][r]);
        row["entries"] = cols;
        mid.push_back(row);
    }
    j["d_mid"] = mid;
    return j;
}

// Candidate schema: degree plus a list of {p_deg, p_idx, q_idx, coeff}
// with a diagonal ring-element coefficient.
inline ordered_json candidate_to_json(const Presentation& p, const TensorElt& t) {
    ordered_json terms = ordered_json::array();
    for (const auto& [key, comp] : t.comps) {
        auto [pdeg, pidx, qidx] = key;
        // group the diagonal pairs into one ring element; emit general
        // pairs individually otherwise
        ordered_json diag = ordered_json::array();
        ordered_json general = ordered_json::array();
        for (const auto& [gh, c] : comp) {
            if (gh.first == gh.second)
                diag.push_back({{"elt", p.word_str(gh.first)}, {"coeff", json_int(c)}});
            else
                general.push_back({{"g", p.word_str(gh.first)},
                                   {"h", p.word_str(gh.second)},
                                   {"coeff", json_int(c)}});
        }
        ordered_json term;
        term["p_deg"] = pdeg;
        term["p_idx"] = pidx;
        term["q_idx"] = qidx;
        if (!diag.empty()) term["coeff"] = diag;
        if (!general.empty()) term["pairs"] = general;
        terms.push_back(term);
    }
    ordered_json j;
    j["degree"] = t.degree;
    j["terms"] = terms;
    return j;
}

inline TensorElt candidate_from_json(const Presentation& p, const RewritingSystem& rs, const ordered_json& j) {
    TensorElt t;
    t.degree = j.at("degree").get<int>();
    for (const auto& term : j.at("terms")) {
        int pdeg = term.at("p_deg").get<int>();
        int pidx = term.at("p_idx").get<int>();
        int qidx = term.at("q_idx").get<int>();
        if (term.contains("coeff"))
            for (const auto& item : term.at("coeff")) {
                Word g = rs.reduce(p.parse_word(item.at("elt").get<std::string>()));
                t.add(pdeg, pidx, qidx, g, g, Int(item.at("coeff").get<long long>()));
            }
        if (term.contains("pairs"))
            for (const auto& item : term.at("pairs")) {
                Word g = rs.reduce(p.parse_word(item.at("g").get<std::string>()));
                Word h = rs.reduce(p.parse_word(item.at("h").get<std::string>()));
                t.add(pdeg, pidx, qidx, g, h, Int(item.at("coeff").get<long long>()));
            }
    }
    return t;
}

inline ordered_json to_json(const AbPresentation& p) {
    ordered_json j;
    j["labels"] = p.labels;
    ordered_json rows = ordered_json::array();
    for (size_t i = 0; i < p.rel.rows; ++i) {
        ordered_json row = ordered_json::array();
        for (size_t c = 0; c < p.rel.cols; ++c) row.push_back(json_int(p.rel.at(i, c)));
        rows.push_back(row);
    }
    j["relations"] = rows;
    return j;
}

} // namespace foxcoh
