#pragma once

#include "ibetk/novel/ibe.hpp"
#include "ibetk/schemes/registry.hpp"
#include "ibetk/scorecard/costs.hpp"

namespace ibetk {

// Structural counters must match the symbolic rows exactly; the remaining
// counters (plain multiplications, squarings, curve adds) are compared with
// documented slack since the model prices them inside composite units.
inline const std::vector<Op>& structural_ops() {
    static const std::vector<Op> ops = {Op::Exp,        Op::Inv,      Op::InvK,    Op::DivK,
                                        Op::ExpK,       Op::ScalarMul, Op::MapToPoint,
                                        Op::MillerLoop, Op::FinalExp, Op::Pairing, Op::RatioPairing};
    return ops;
}

inline const std::vector<Op>& slack_ops() {
    static const std::vector<Op> ops = {Op::Mul, Op::Sq, Op::MulK, Op::SqK, Op::EcAdd, Op::EcDbl};
    return ops;
}

// Expansion of a symbolic term into the structural counters it implies. A
// pairing carries its Miller pass, final exponentiation and the one
// extension inversion that folds numerator and denominator.
inline std::map<Op, std::uint64_t> term_structural(const std::string& op) {
    if (op == "mul_sca" || op == "exp_g1") return {{Op::ScalarMul, 1}};
    if (op == "maptopoint") return {{Op::MapToPoint, 1}, {Op::Exp, 1}, {Op::ScalarMul, 1}};
    if (op == "pair")
        return {{Op::Pairing, 1}, {Op::MillerLoop, 1}, {Op::FinalExp, 1}, {Op::InvK, 1}, {Op::Inv, 1}};
    if (op == "ratio_pair")
        return {{Op::RatioPairing, 1}, {Op::Pairing, 2}, {Op::MillerLoop, 2},
                {Op::FinalExp, 1},     {Op::InvK, 1},    {Op::Inv, 1}};
    if (op == "exp_gt") return {{Op::ExpK, 1}};
    if (op == "exp_zq") return {{Op::Exp, 1}};
    if (op == "inv_zq") return {{Op::Inv, 1}};
    if (op == "inv_gt") return {{Op::InvK, 1}, {Op::Inv, 1}};
    if (op == "div_gt") return {{Op::DivK, 1}, {Op::InvK, 1}, {Op::Inv, 1}};
    if (op == "mul_zq" || op == "mul_gt" || op == "sq" || op == "mulk" || op == "sqk" ||
        op == "ecadd" || op == "ecdbl" || op == "mul")
        return {}; // slack-class
    throw error("op profile: unknown term " + op);
}

struct ProfileRow {
    std::string scheme, phase;
    CostExpr expr;               // all terms, augmentations included
    std::vector<std::string> augmented; // terms added beyond the source row
};

// "scheme.phase = term[:count] [aug:term[:count]] ..." key-value lines.
inline std::map<std::string, ProfileRow> load_op_profiles(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error("op profiles: cannot open " + path);
    std::map<std::string, ProfileRow> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        auto dot = key.find('.');
        ProfileRow row;
        row.scheme = key.substr(0, dot);
        row.phase = key.substr(dot + 1);
        std::istringstream terms(line.substr(eq + 1));
        std::string term;
        while (terms >> term) {
            bool aug = term.rfind("aug:", 0) == 0;
            if (aug) term = term.substr(4);
            Rat count = 1;
            auto colon = term.find(':');
            if (colon != std::string::npos) {
                count = Rat(term.substr(colon + 1));
                term = term.substr(0, colon);
            }
            row.expr.add(term, count);
            if (aug) row.augmented.push_back(term);
        }
        rows[key] = row;
    }
    return rows;
}

inline std::map<Op, std::uint64_t> expected_structural(const CostExpr& expr) {
    std::map<Op, std::uint64_t> out;
    for (const auto& t : expr.terms) {
        auto part = term_structural(t.op);
        std::uint64_t count = static_cast<std::uint64_t>(t.count.get_num().get_ui());
        for (const auto& [op, c] : part) out[op] += c * count;
    }
    return out;
}

struct VerifyReport {
    std::string scheme, phase;
    bool match = true;
    std::vector<std::string> mismatches; // "counter expected=… actual=…"
    std::vector<std::string> slack;      // informational actuals
    std::vector<std::string> augmented;  // augmentation notes from the row
};

// Exact comparison on the structural counters; mismatch is reported, never
// thrown.
inline VerifyReport opcount_verify(const ProfileRow& row, const LedgerSnapshot& diff) {
    VerifyReport rep;
    rep.scheme = row.scheme;
    rep.phase = row.phase;
    rep.augmented = row.augmented;
    auto expected = expected_structural(row.expr);
    for (Op op : structural_ops()) {
        std::uint64_t want = expected.count(op) ? expected[op] : 0;
        std::uint64_t got = diff[op];
        if (want != got) {
            rep.match = false;
            rep.mismatches.push_back(std::string(op_name(op)) + " expected=" + std::to_string(want) +
                                     " actual=" + std::to_string(got));
        }
    }
    for (Op op : slack_ops())
        if (diff[op] != 0)
            rep.slack.push_back(std::string(op_name(op)) + "=" + std::to_string(diff[op]));
    return rep;
}

// Instrumented run of one scheme's four phases under a fixed seed.
inline std::map<std::string, LedgerSnapshot> run_phase_diffs(const Profile& pr, SchemeId id,
                                                             unsigned n_bits, std::uint64_t seed) {
    SchemeContext ctx{pr, n_bits, 4};
    Drbg rng(seed);
    std::map<std::string, LedgerSnapshot> out;
    auto s0 = pr.ledger().snapshot();
    auto [params, msk] = scheme_setup(id, ctx, rng);
    out["setup"] = pr.ledger().snapshot().diff(s0);
    Identity who = Identity::of("bench-user");
    auto s1 = pr.ledger().snapshot();
    UserKey key = scheme_extract(id, ctx, params, msk, who, rng);
    out["extract"] = pr.ledger().snapshot().diff(s1);
    Message m;
    if (scheme_message_is_group(id)) {
        LedgerPause pause(pr.ledger());
        m = Message::of_gt(pair_points(pr, pr.sample_subgroup_point(rng), pr.generator()));
    } else {
        LedgerPause pause(pr.ledger());
        m = Message::of_bits(rng.bytes(n_bits / 8));
    }
    auto s2 = pr.ledger().snapshot();
    Ciphertext ct = scheme_encrypt(id, ctx, params, who, m, rng);
    out["encrypt"] = pr.ledger().snapshot().diff(s2);
    auto s3 = pr.ledger().snapshot();
    auto back = scheme_decrypt(id, ctx, params, key, ct);
    out["decrypt"] = pr.ledger().snapshot().diff(s3);
    if (!back) throw error("opcount run: decryption failed");
    return out;
}

// Every scheme x phase under the default profile rows.
inline std::vector<VerifyReport> verify_all(const Profile& pr,
                                            const std::map<std::string, ProfileRow>& rows,
                                            std::uint64_t seed = 20240901) {
    std::vector<VerifyReport> reports;
    std::vector<SchemeId> ids = benchmark_schemes();
    ids.push_back(SchemeId::OurIbe);
    for (SchemeId id : ids) {
        auto diffs = run_phase_diffs(pr, id, 128, seed + static_cast<std::uint64_t>(id));
        for (const auto& phase : {"setup", "extract", "encrypt", "decrypt"}) {
            auto it = rows.find(std::string(scheme_name(id)) + "." + phase);
            if (it == rows.end()) throw error("op profiles: missing row for " +
                                              std::string(scheme_name(id)) + "." + phase);
            reports.push_back(opcount_verify(it->second, diffs.at(phase)));
        }
    }
    return reports;
}

} // namespace ibetk
