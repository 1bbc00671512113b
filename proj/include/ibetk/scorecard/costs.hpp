#pragma once

#include <gmpxx.h>

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "ibetk/hash.hpp"

namespace ibetk {

using Rat = mpq_class;

inline Rat rat_pow(unsigned base, unsigned e) {
    Rat r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

// Closed-form operation prices in base-multiplication units, everything
// expressed over O((log n)^2) like the source model. Mul and Sq are tracked
// apart but priced equally.
struct UnitCosts {
    unsigned n = 80;   // security bits (scalar/exponent length)
    unsigned i = 1, j = 0; // embedding degree k = 2^i * 3^j
    Rat mu = 1, sq = 1;

    unsigned k() const {
        unsigned p3 = 1;
        for (unsigned t = 0; t < j; ++t) p3 *= 3;
        return (1u << i) * p3;
    }

    Rat mulk() const { return rat_pow(3, i) * rat_pow(5, j) * mu; }
    Rat sqk() const { return mulk(); } // Sq_k ~ Mu_k
    Rat ecadd() const { return 12 * mu + 2 * sq; }
    Rat ecdbl() const { return 7 * mu + 5 * sq; }

    // right-to-left binary exponentiation, (3/2)lg e multiplications
    Rat exp_units(unsigned bits) const { return Rat(3, 2) * bits * mu; }
    Rat exp_units() const { return exp_units(n); }

    // NAF scalar multiplication: (n-1) doublings + (n-1)/3 additions
    Rat scalar_mul() const { return Rat(n - 1) * ecdbl() + Rat(n - 1, 3) * ecadd(); }

    // one Miller doubling iteration: 4Mu_k + 2Sq_k + (6k+7)Mu + 7Sq
    Rat miller_iteration() const {
        return 4 * mulk() + 2 * sqk() + Rat(6 * k() + 7) * mu + 7 * sq;
    }
    Rat miller() const { return Rat(n) * miller_iteration(); }
    Rat pairing() const { return miller() + exp_units(); }

    // shared-loop quotient of two pairings, per iteration
    // 2(4Mu+6Sq) + 2(3Mu+1Sq) + 4(3k Mu) + 4Mu_k + 2Sq_k, plus one final
    // exponentiation
    Rat ratio_pairing() const {
        Rat iter = Rat(28 + 12 * k()) * mu + 6 * mulk();
        return Rat(n) * iter + exp_units();
    }

    // 1 square + 1 cube root + 1 scalar multiplication; the cube-root term
    // is O(lg lg n), negligible at this granularity
    Rat maptopoint() const { return sq + scalar_mul(); }

    // Inversion carries two prices the source never reconciles: the
    // bit-complexity bound (one extra log-factor over a multiplication) and
    // the extension-field ratio-trick approximation 4Mu_k. Evaluation uses
    // the former; both stay visible.
    Rat inv_units_cubic() const { return Rat(n) * mu; }
    Rat inv_units_ratio_trick() const { return 4 * mulk(); }
};

// Symbolic cost expression: a multiset of (operation, count, annotation).
struct CostTerm {
    std::string op; // mul, sq, inv, exp, mul_sca, ecadd, ecdbl, pair, ratio_pair,
                    // mulk, sqk, maptopoint, exp_gt, ...
    Rat count = 1;
    std::string annot; // G1 | GT | Zq | pairing | ratio-pairing | maptopoint
};

struct CostExpr {
    std::vector<CostTerm> terms;

    CostExpr& add(std::string op, Rat count = 1, std::string annot = "") {
        terms.push_back({std::move(op), std::move(count), std::move(annot)});
        return *this;
    }

    CostExpr merged(const CostExpr& other) const {
        CostExpr out = *this;
        out.terms.insert(out.terms.end(), other.terms.begin(), other.terms.end());
        return out;
    }
};

// Linear evaluation with exact rational arithmetic; unknown terms throw.
inline Rat cost_eval(const CostExpr& expr, const UnitCosts& c) {
    Rat total = 0;
    for (const auto& t : expr.terms) {
        Rat unit;
        if (t.op == "mul" || t.op == "mul_zq") unit = c.mu;
        else if (t.op == "sq") unit = c.sq;
        else if (t.op == "inv" || t.op == "inv_zq") unit = c.inv_units_cubic();
        else if (t.op == "exp" || t.op == "exp_zq" || t.op == "exp_gt" || t.op == "exp_g1_ff")
            unit = c.exp_units();
        else if (t.op == "mulk" || t.op == "mul_gt") unit = c.mulk();
        else if (t.op == "sqk") unit = c.sqk();
        else if (t.op == "invk" || t.op == "inv_gt" || t.op == "div_gt")
            unit = c.inv_units_ratio_trick();
        else if (t.op == "ecadd") unit = c.ecadd();
        else if (t.op == "ecdbl") unit = c.ecdbl();
        else if (t.op == "mul_sca" || t.op == "exp_g1") unit = c.scalar_mul();
        else if (t.op == "pair") unit = c.pairing();
        else if (t.op == "ratio_pair") unit = c.ratio_pairing();
        else if (t.op == "maptopoint") unit = c.maptopoint();
        else throw error("cost_eval: unpriced term " + t.op);
        total += t.count * unit;
    }
    return total;
}

inline std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    // one decimal place when exact, fraction otherwise
    Rat tenths = r * 10;
    if (tenths.get_den() == 1) {
        std::string s = tenths.get_num().get_str();
        bool neg = !s.empty() && s[0] == '-';
        std::string digits = neg ? s.substr(1) : s;
        if (digits.size() == 1) digits = "0" + digits;
        digits.insert(digits.size() - 1, ".");
        return (neg ? "-" : "") + digits;
    }
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Exact decimal parse ("321.2" -> 1606/5).
inline Rat rat_parse(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rat(text);
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    Rat base(whole.empty() || whole == "-" ? "0" : whole);
    Rat f(frac.empty() ? "0" : frac);
    Rat den = 1;
    for (std::size_t t = 0; t < frac.size(); ++t) den *= 10;
    f /= den;
    Rat out = neg ? Rat(base - f) : Rat(base + f);
    out.canonicalize();
    return out;
}

} // namespace ibetk
