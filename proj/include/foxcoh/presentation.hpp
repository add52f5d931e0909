#pragma once

#include "foxcoh/word.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace foxcoh {

// Orientation character w: gens -> {+1,-1}, extended multiplicatively.
// Only exponent parity matters on a run.
struct OrientationChar {
    std::vector<int> sign; // indexed by generator, entries +1 or -1

    static OrientationChar trivial(size_t ngens) { return {std::vector<int>(ngens, 1)}; }

    bool is_trivial() const {
        for (int s : sign)
            if (s != 1) return false;
        return true;
    }

    int operator()(const Word& w) const {
        int s = 1;
        for (const Run& r : w.runs())
            if (sign.at(static_cast<size_t>(r.gen)) == -1 && (r.exp & 1)) s = -s;
        return s;
    }
};

struct Presentation {
    std::vector<std::string> gens;
    std::vector<Word> relators; // freely reduced, nonempty
    OrientationChar w;

    size_t rank() const { return gens.size(); }

    int gen_index(const std::string& name) const {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i] == name) return static_cast<int>(i);
        return -1;
    }

    // Tokens `g` or `g^-1`, one per expanded letter.
    std::string word_str(const Word& word) const {
        if (word.empty()) return "1";
        std::string out;
        for (int c : expand(word)) {
            if (!out.empty()) out += ' ';
            out += gens.at(static_cast<size_t>(letter_gen(c)));
            if (letter_neg(c)) out += "^-1";
        }
        return out;
    }

    // Accepts `g`, `g^-1` and the sugar `g^k`; `1` denotes the empty word.
    Word parse_word(const std::string& text, int line = 0) const {
        Word w;
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            if (tok == "1") continue;
            std::string name = tok;
            long long e = 1;
            if (auto caret = tok.find('^'); caret != std::string::npos) {
                name = tok.substr(0, caret);
                std::string es = tok.substr(caret + 1);
                try {
                    size_t pos = 0;
                    e = std::stoll(es, &pos);
                    if (pos != es.size()) throw std::invalid_argument(es);
                } catch (const std::exception&) {
                    throw parse_error("bad exponent in token '" + tok + "'", line);
                }
            }
            int g = gen_index(name);
            if (g < 0) throw parse_error("undeclared generator '" + name + "'", line);
            w.append_run(g, e);
        }
        return w;
    }
};

// Presentation file: one directive per line.
//   gens <sym> <sym> ...
//   rel <word>            (repeatable)
//   w <sym>:<+|-> ...
//   # comment
inline Presentation parse_presentation(const std::string& text) {
    Presentation p;
    bool have_gens = false;
    std::vector<std::pair<int, std::string>> rel_lines;
    std::map<std::string, int> wmap;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        std::istringstream ls(line);
        std::string directive;
        if (!(ls >> directive)) continue;
        if (directive == "gens") {
            if (have_gens) throw parse_error("duplicate gens directive", lineno);
            std::string sym;
            while (ls >> sym) {
                if (p.gen_index(sym) >= 0) throw parse_error("duplicate generator '" + sym + "'", lineno);
                p.gens.push_back(sym);
            }
            if (p.gens.empty()) throw parse_error("gens directive lists no generators", lineno);
            have_gens = true;
        } else if (directive == "rel") {
            std::string rest;
            std::getline(ls, rest);
            rel_lines.emplace_back(lineno, rest);
        } else if (directive == "w") {
            std::string item;
            while (ls >> item) {
                auto colon = item.find(':');
                if (colon == std::string::npos || colon + 1 >= item.size())
                    throw parse_error("expected <sym>:<+|-> in w directive", lineno);
                std::string sym = item.substr(0, colon);
                char sgn = item[colon + 1];
                if ((sgn != '+' && sgn != '-') || colon + 2 != item.size())
                    throw parse_error("expected <sym>:<+|-> in w directive", lineno);
                wmap[sym] = sgn == '+' ? 1 : -1;
            }
        } else {
            throw parse_error("unknown directive '" + directive + "'", lineno);
        }
    }
    if (!have_gens) throw parse_error("missing gens directive");

    p.w = OrientationChar::trivial(p.gens.size());
    for (const auto& [sym, s] : wmap) {
        int g = p.gen_index(sym);
        if (g < 0) throw parse_error("undeclared generator '" + sym + "' in w directive");
        p.w.sign[static_cast<size_t>(g)] = s;
    }

    for (const auto& [line, restext] : rel_lines) {
        Word r = p.parse_word(restext, line);
        if (r.empty()) throw parse_error("trivial relator", line);
        p.relators.push_back(r);
    }

    for (const Word& r : p.relators)
        if (p.w(r) != 1) throw parse_error("orientation character does not vanish on relator '" + p.word_str(r) + "'");

    return p;
}

} // namespace foxcoh
