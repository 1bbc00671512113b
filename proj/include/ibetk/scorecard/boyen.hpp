#pragma once

#include <fstream>

#include "ibetk/scorecard/costs.hpp"

namespace ibetk {

// Concrete per-phase benchmark units at the 80-bit level. The cells are the
// calibration data (the underlying unit base was never published); a fitted
// price vector rides along so the table can show which cells it reproduces
// and which it cannot.
struct BoyenTable {
    std::string family; // ss | mnt
    std::vector<std::string> schemes;
    std::map<std::string, std::vector<Rat>> phase_cells; // extract/encrypt/decrypt
    std::map<std::string, Rat> fit; // exp_g1, exp_gt, pairing, div_gt
    std::vector<std::string> notes;

    std::vector<Rat> sums() const {
        std::vector<Rat> out(schemes.size(), 0);
        for (const auto& [phase, cells] : phase_cells)
            for (std::size_t i = 0; i < cells.size(); ++i) out[i] += cells[i];
        return out;
    }
};

inline BoyenTable load_boyen_table(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error("boyen table: cannot open " + path);
    BoyenTable t;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.notes.push_back(line.substr(1));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "family") {
            t.family = value;
        } else if (key == "schemes") {
            std::istringstream is(value);
            std::string s;
            while (is >> s) t.schemes.push_back(s);
        } else if (key.rfind("fit_", 0) == 0) {
            t.fit[key.substr(4)] = rat_parse(value);
        } else {
            std::istringstream is(value);
            std::string cell;
            std::vector<Rat> cells;
            while (is >> cell) cells.push_back(rat_parse(cell));
            t.phase_cells[key] = cells;
        }
    }
    if (t.schemes.empty() || t.phase_cells.empty()) throw error("boyen table: incomplete " + path);
    for (const auto& [phase, cells] : t.phase_cells)
        if (cells.size() != t.schemes.size()) throw error("boyen table: ragged " + phase);
    return t;
}

// Symbolic per-phase rows in the concrete-unit vocabulary, for the fitted
// price cross-check.
inline std::map<std::string, CostExpr> boyen_symbolic(const std::string& scheme) {
    std::map<std::string, CostExpr> rows;
    if (scheme == "bb1") {
        rows["extract"].add("exp_g1", 2);
        rows["encrypt"].add("exp_g1", 3).add("exp_gt", 1);
        rows["decrypt"].add("pairing", 2).add("div_gt", 1);
    } else if (scheme == "bb2") {
        rows["extract"].add("exp_g1", 1);
        rows["encrypt"].add("exp_g1", 3).add("exp_gt", 1);
        rows["decrypt"].add("pairing", 1).add("div_gt", 1).add("exp_g1", 1);
    } else if (scheme == "ours") {
        rows["extract"].add("exp_g1", 1);
        rows["encrypt"].add("exp_g1", 1).add("exp_gt", 2).add("mul_gt", 1);
        rows["decrypt"].add("pairing", 1).add("div_gt", 1).add("exp_g1", 1);
    } else {
        throw error("boyen table: unknown scheme " + scheme);
    }
    return rows;
}

// Price a symbolic row with the fitted unit vector; Zq work and group
// multiplications price at zero there.
inline Rat boyen_predict(const BoyenTable& t, const CostExpr& expr) {
    Rat total = 0;
    for (const auto& term : expr.terms) {
        Rat unit = 0;
        auto it = t.fit.find(term.op);
        if (it != t.fit.end()) unit = it->second;
        total += term.count * unit;
    }
    return total;
}

struct BoyenCheck {
    std::string scheme, phase;
    Rat cell, predicted;
    bool consistent;
};

inline std::vector<BoyenCheck> boyen_fit_checks(const BoyenTable& t) {
    std::vector<BoyenCheck> out;
    for (std::size_t s = 0; s < t.schemes.size(); ++s) {
        auto rows = boyen_symbolic(t.schemes[s]);
        for (const auto& [phase, expr] : rows) {
            BoyenCheck c;
            c.scheme = t.schemes[s];
            c.phase = phase;
            c.cell = t.phase_cells.at(phase)[s];
            c.predicted = boyen_predict(t, expr);
            c.consistent = (c.cell == c.predicted);
            out.push_back(c);
        }
    }
    return out;
}

} // namespace ibetk
