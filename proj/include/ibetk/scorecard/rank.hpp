#pragma once

#include <fstream>
#include <sstream>

#include "ibetk/scorecard/costs.hpp"

namespace ibetk {

// Criteria-by-scheme integer rank matrix with column aggregation. Tied sums
// share the better (smaller) class and ranking stays dense.
struct RankMatrix {
    std::vector<std::string> row_names;
    std::vector<std::string> col_names;
    std::vector<std::vector<int>> cells; // rows x cols

    static RankMatrix load_csv(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw error("rank matrix: cannot open " + path);
        RankMatrix m;
        std::string line;
        bool header = true;
        while (std::getline(f, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::vector<std::string> fields;
            std::istringstream is(line);
            std::string field;
            while (std::getline(is, field, ',')) {
                if (!field.empty() && field.back() == '\r') field.pop_back();
                fields.push_back(field);
            }
            if (header) {
                m.col_names.assign(fields.begin() + 1, fields.end());
                header = false;
                continue;
            }
            m.row_names.push_back(fields[0]);
            std::vector<int> row;
            for (std::size_t i = 1; i < fields.size(); ++i) row.push_back(std::stoi(fields[i]));
            if (row.size() != m.col_names.size()) throw error("rank matrix: ragged row in " + path);
            m.cells.push_back(std::move(row));
        }
        if (m.cells.empty()) throw error("rank matrix: empty " + path);
        return m;
    }

    std::vector<int> row(std::string_view name) const {
        for (std::size_t i = 0; i < row_names.size(); ++i)
            if (row_names[i] == name) return cells[i];
        throw error("rank matrix: missing row " + std::string(name));
    }
};

inline std::vector<int> column_sums(const RankMatrix& m) {
    std::vector<int> sums(m.col_names.size(), 0);
    for (const auto& row : m.cells) {
        if (row.size() != sums.size()) throw error("rank_aggregate: incomplete matrix");
        for (std::size_t c = 0; c < row.size(); ++c) sums[c] += row[c];
    }
    return sums;
}

// Dense ascending classes over a sum vector: equal sums share a class and
// the next distinct sum takes the next index.
inline std::vector<int> dense_classes(const std::vector<int>& sums) {
    std::vector<int> uniq = sums;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::vector<int> classes;
    for (int s : sums) {
        auto it = std::lower_bound(uniq.begin(), uniq.end(), s);
        classes.push_back(static_cast<int>(it - uniq.begin()) + 1);
    }
    return classes;
}

struct Aggregation {
    std::vector<int> sums;
    std::vector<int> classes;
};

inline Aggregation rank_aggregate(const RankMatrix& m) {
    Aggregation out;
    out.sums = column_sums(m);
    out.classes = dense_classes(out.sums);
    return out;
}

// Property-oriented rows built from the per-phase complexity ranks:
// multi-recipient wants a small Encrypt, threshold sharing a small Extract,
// hierarchy re-ranks Extract + Encrypt together.
inline RankMatrix property_rank(const RankMatrix& complexity) {
    RankMatrix out;
    out.col_names = complexity.col_names;
    out.row_names = {"M-r enc", "Th s sh", "Hi id"};
    std::vector<int> encrypt = complexity.row("Encrypt");
    std::vector<int> extract = complexity.row("Extract");
    std::vector<int> combined(encrypt.size());
    for (std::size_t i = 0; i < encrypt.size(); ++i) combined[i] = encrypt[i] + extract[i];
    out.cells = {encrypt, extract, dense_classes(combined)};
    return out;
}

// Merge of two class rows into the final classification.
inline Aggregation merge_classes(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw error("merge_classes: size mismatch");
    Aggregation out;
    for (std::size_t i = 0; i < a.size(); ++i) out.sums.push_back(a[i] + b[i]);
    out.classes = dense_classes(out.sums);
    return out;
}

} // namespace ibetk
