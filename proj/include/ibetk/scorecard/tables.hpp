#pragma once

#include "ibetk/scorecard/boyen.hpp"
#include "ibetk/scorecard/rank.hpp"

namespace ibetk {

// Reference cells the classification tables must reproduce exactly.
namespace reference {
inline const std::vector<int> kTable1Sums = {11, 16, 14, 20, 10, 13};
inline const std::vector<int> kTable1Classes = {2, 5, 4, 6, 1, 3};
inline const std::vector<int> kTable5Sums = {10, 6, 15, 12, 13, 20};
inline const std::vector<int> kTable5Classes = {2, 1, 5, 3, 4, 6};
inline const std::vector<int> kFinalSums = {4, 6, 9, 9, 5, 9};
inline const std::vector<int> kFinalClasses = {1, 3, 4, 4, 2, 4};
inline const std::vector<int> kPropertySums = {12, 3, 9, 7, 12, 14};
inline const std::vector<int> kPropertyClasses = {4, 1, 3, 2, 4, 5};
inline const std::vector<int> kSpecificClasses = {2, 1, 4, 3, 3, 5};
inline const std::vector<int> kHiIdRow = {4, 1, 3, 2, 4, 5};
inline const char* kBoyenSsSums[] = {"432", "332", "330"};
inline const char* kBoyenMntSums[] = {"421.2", "321.2", "321"};
} // namespace reference

struct RenderedTable {
    std::string name, title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    bool has_reference = false;
    bool pass = false;
    std::vector<std::string> notes;
};

inline std::string to_text(const RenderedTable& t) {
    std::vector<std::size_t> width(t.header.size(), 0);
    auto widen = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    };
    widen(t.header);
    for (const auto& r : t.rows) widen(r);
    std::ostringstream os;
    os << "== " << t.title;
    if (t.has_reference) os << "  [" << (t.pass ? "PASS" : "FAIL") << "]";
    os << "\n";
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << row[i];
            if (i + 1 < row.size()) os << std::string(width[i] - row[i].size() + 2, ' ');
        }
        os << "\n";
    };
    emit(t.header);
    for (const auto& r : t.rows) emit(r);
    for (const auto& n : t.notes) os << "note:" << n << "\n";
    return os.str();
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    return out + "\"";
}

inline std::string to_csv(const RenderedTable& t) {
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << csv_escape(row[i]);
            if (i + 1 < row.size()) os << ",";
        }
        os << "\n";
    };
    emit(t.header);
    for (const auto& r : t.rows) emit(r);
    return os.str();
}

class TableEngine {
  public:
    explicit TableEngine(std::string data_dir) : dir_(std::move(data_dir)) {}

    RenderedTable security_table() const {
        RankMatrix m = RankMatrix::load_csv(dir_ + "/table1_security.csv");
        return aggregate_table("table1", "security classification", m, reference::kTable1Sums,
                               reference::kTable1Classes);
    }

    RenderedTable complexity_table() const {
        RankMatrix m = RankMatrix::load_csv(dir_ + "/table5_complexity.csv");
        return aggregate_table("table5", "complexity classification", m, reference::kTable5Sums,
                               reference::kTable5Classes);
    }

    RenderedTable final_table() const {
        auto sec = rank_aggregate(RankMatrix::load_csv(dir_ + "/table1_security.csv"));
        auto cplx = rank_aggregate(RankMatrix::load_csv(dir_ + "/table5_complexity.csv"));
        auto merged = merge_classes(sec.classes, cplx.classes);
        RenderedTable t;
        t.name = "final";
        t.title = "final classification (security + complexity classes)";
        t.header = {"row", "bf", "sk", "bb1", "bb2", "waters", "gentry"};
        t.rows.push_back(int_row("security class", sec.classes));
        t.rows.push_back(int_row("complexity class", cplx.classes));
        t.rows.push_back(int_row("Sum", merged.sums));
        t.rows.push_back(int_row("Class", merged.classes));
        t.has_reference = true;
        t.pass = merged.sums == reference::kFinalSums && merged.classes == reference::kFinalClasses;
        return t;
    }

    RenderedTable properties_table() const {
        RankMatrix cplx = RankMatrix::load_csv(dir_ + "/table5_complexity.csv");
        RankMatrix prop = property_rank(cplx);
        auto agg = rank_aggregate(prop);
        auto final_sec = rank_aggregate(RankMatrix::load_csv(dir_ + "/table1_security.csv"));
        auto final_cplx = rank_aggregate(cplx);
        auto cls1 = merge_classes(final_sec.classes, final_cplx.classes);
        auto clsfi = merge_classes(cls1.classes, agg.classes);
        RenderedTable t;
        t.name = "properties";
        t.title = "property-oriented classification";
        t.header = {"row", "bf", "sk", "bb1", "bb2", "waters", "gentry"};
        for (std::size_t i = 0; i < prop.row_names.size(); ++i)
            t.rows.push_back(int_row(prop.row_names[i], prop.cells[i]));
        t.rows.push_back(int_row("Sum", agg.sums));
        t.rows.push_back(int_row("Class2", agg.classes));
        t.rows.push_back(int_row("ClassFi", clsfi.classes));
        t.has_reference = true;
        t.pass = agg.sums == reference::kPropertySums &&
                 agg.classes == reference::kPropertyClasses &&
                 prop.row("Hi id") == reference::kHiIdRow &&
                 clsfi.classes == reference::kSpecificClasses;
        return t;
    }

    RenderedTable boyen_table(const std::string& family) const {
        BoyenTable b = load_boyen_table(dir_ + "/boyen_" + family + ".kv");
        RenderedTable t;
        t.name = "boyen-" + family;
        t.title = "concrete units @ 80-bit, " + family + " curve family";
        t.header = {"phase"};
        for (const auto& s : b.schemes) t.header.push_back(s);
        for (const auto& phase : {"extract", "encrypt", "decrypt"}) {
            std::vector<std::string> row = {phase};
            for (const Rat& c : b.phase_cells.at(phase)) row.push_back(rat_str(c));
            t.rows.push_back(row);
        }
        std::vector<std::string> sumrow = {"Sum"};
        auto sums = b.sums();
        for (const Rat& s : sums) sumrow.push_back(rat_str(s));
        t.rows.push_back(sumrow);
        t.has_reference = true;
        t.pass = true;
        const char** want = family == "ss" ? reference::kBoyenSsSums : reference::kBoyenMntSums;
        for (std::size_t i = 0; i < sums.size(); ++i)
            t.pass = t.pass && sums[i] == rat_parse(want[i]);
        for (const auto& check : boyen_fit_checks(b))
            if (!check.consistent)
                t.notes.push_back(" fitted units predict " + rat_str(check.predicted) + " for " +
                                  check.scheme + "/" + check.phase + ", cell keeps " +
                                  rat_str(check.cell));
        return t;
    }

    RenderedTable compare_table(const std::string& which) const {
        std::ifstream f(dir_ + "/" + which + "_compare.csv");
        if (!f) throw error("table: cannot open " + which + "_compare.csv");
        RenderedTable t;
        t.name = which + "-compare";
        t.title = which == "hibe" ? "hierarchical scheme comparison" : "forward-secure comparison";
        std::string line;
        bool header = true;
        while (std::getline(f, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::vector<std::string> fields;
            std::istringstream is(line);
            std::string field;
            while (std::getline(is, field, ',')) fields.push_back(field);
            if (header) {
                t.header = fields;
                header = false;
            } else {
                t.rows.push_back(fields);
            }
        }
        return t;
    }

  private:
    static std::vector<std::string> int_row(const std::string& name, const std::vector<int>& vals) {
        std::vector<std::string> row = {name};
        for (int v : vals) row.push_back(std::to_string(v));
        return row;
    }

    RenderedTable aggregate_table(const std::string& name, const std::string& title,
                                  const RankMatrix& m, const std::vector<int>& want_sums,
                                  const std::vector<int>& want_classes) const {
        auto agg = rank_aggregate(m);
        RenderedTable t;
        t.name = name;
        t.title = title;
        t.header = {"criterion"};
        for (const auto& c : m.col_names) t.header.push_back(c);
        for (std::size_t i = 0; i < m.row_names.size(); ++i)
            t.rows.push_back(int_row(m.row_names[i], m.cells[i]));
        t.rows.push_back(int_row("Sum", agg.sums));
        t.rows.push_back(int_row("Class", agg.classes));
        t.has_reference = true;
        t.pass = agg.sums == want_sums && agg.classes == want_classes;
        return t;
    }

    std::string dir_;
};

} // namespace ibetk
