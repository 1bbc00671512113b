#pragma once

#include "ibetk/bigint.hpp"

namespace ibetk {

using Real = mpf_class; // 512-bit floats: enough headroom for p ~ 2^256

inline Real real_of(const Int& v) { return Real(v, 512); }

inline Real real_pow(Real base, Int e) {
    Real acc(1, 512);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// Adversary-resource parameters feeding the closed-form advantage bounds.
// The comparison regime is q_S, q_D < q_H < 2^n << p.
struct AdvantageInputs {
    Real eps{Real(0, 512)};
    Int q_H1, q_H2, q_H3, q_H4; // per-oracle hash queries
    Int q_H;                    // generic hash-query bound
    Int q_S;                    // private-key queries
    Int q_D;                    // decryption queries
    Int q_E;                    // encryption queries
    Int q_1;                    // H1 queries of the inversion-style scheme
    Int q_C;                    // challenge-identity queries
    Int q;                      // group-size style parameter
    unsigned n = 32;            // message bits
    Int p;                      // field size

    void check() const {
        if (p <= 2) throw error("advantage: p must exceed 2");
        if (q_H3 == 0 || q_1 + 1 == 0) throw error("advantage: zero hash-query divisor");
        if ((Int(1) << n) <= q_S) throw error("advantage: q_S reaches the message space");
        if (!(q_S < q_H && q_D < q_H)) throw error("advantage: need q_S, q_D < q_H");
        if (!(q_H < (Int(1) << n))) throw error("advantage: need q_H < 2^n");
        if (!(Int(1) << n < p)) throw error("advantage: need 2^n << p");
    }
};

enum class AdvScheme { BF, SK, BB1, BB2, Waters, Gentry };

// (1 - 2/p)^qD
inline Real decay_factor(const AdvantageInputs& in) {
    Real one(1, 512);
    Real base = one - Real(2, 512) / real_of(in.p);
    return real_pow(base, in.q_D);
}

// The published simplified forms; the full BF expression with its stray
// constant lives in adv_bf_full_form for the erratum pin only.
inline Real advantage_eval(AdvScheme s, const AdvantageInputs& in) {
    in.check();
    Real two_n = real_pow(Real(2, 512), in.n);
    switch (s) {
        case AdvScheme::BF:
            return in.eps / real_of(in.q_H3) * decay_factor(in);
        case AdvScheme::SK:
            return in.eps / real_of(in.q_1 + 1) * decay_factor(in);
        case AdvScheme::BB1: {
            Real denom = two_n - real_of(in.q_S);
            if (denom <= 0) throw error("advantage: 2^n - q_S vanishes");
            return in.eps * two_n * real_of(in.q_H) / denom;
        }
        case AdvScheme::BB2:
            return in.eps * two_n;
        case AdvScheme::Waters:
            return in.eps / (Real(32 * (in.n + 1), 512) * real_of(in.q));
        case AdvScheme::Gentry:
            return in.eps + Real(4, 512) * real_of(in.q_C) / real_of(in.p);
    }
    throw error("advantage: unknown scheme");
}

// Unsimplified BF bound as printed, including the trailing -3/6 constant
// that makes the expression go negative; kept for the documentation test.
inline Real adv_bf_full_form(const AdvantageInputs& in) {
    Real one(1, 512);
    Real lead = one / (real_of(in.q_H3 + in.q_H4) * real_of(in.q_H2));
    Real inner = (in.eps / real_of(in.q_H2)) * (one - real_of(in.q_E) / real_of(in.q_H1)) + one;
    Real bracket = inner * decay_factor(in) - one;
    return lead * bracket - Real(3, 512) / Real(6, 512);
}

inline std::vector<AdvScheme> advantage_order() {
    return {AdvScheme::Waters, AdvScheme::BF, AdvScheme::SK,
            AdvScheme::Gentry, AdvScheme::BB1, AdvScheme::BB2};
}

// Strictly increasing along Waters < BF < SK < Gentry < BB1 < BB2?
inline bool advantage_order_holds(const AdvantageInputs& in) {
    auto order = advantage_order();
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        if (!(advantage_eval(order[i], in) < advantage_eval(order[i + 1], in))) return false;
    return true;
}

// Random constraint-satisfying inputs. Ranges keep every adjacent comparison
// strict: q_1 well below q_H3, hash-query counts well below 2^n, and the
// q-parameter large enough that the Waters bound sits at the bottom.
inline AdvantageInputs sample_inputs(Drbg& rng) {
    AdvantageInputs in;
    auto pick = [&](unsigned lo_bits, unsigned hi_bits) {
        unsigned bits = lo_bits + static_cast<unsigned>(rng.next_u64() % (hi_bits - lo_bits + 1));
        return Int(1) << bits | Int(rng.next_u64() % 1000);
    };
    in.eps = Real(1, 512) / real_pow(Real(2, 512), Int(18 + rng.next_u64() % 6));
    in.q_S = pick(8, 11);
    in.q_D = pick(8, 11);
    in.q_E = pick(6, 9);
    in.q_1 = pick(8, 11);
    in.q_C = pick(8, 11);
    in.q_H1 = pick(16, 19);
    in.q_H2 = pick(16, 19);
    in.q_H3 = pick(16, 19);
    in.q_H4 = pick(16, 19);
    in.q_H = pick(16, 19);
    in.q = pick(16, 19);
    in.n = 32 + static_cast<unsigned>(rng.next_u64() % 32);
    in.p = (Int(1) << 256) + Int(rng.next_u64());
    return in;
}

} // namespace ibetk
