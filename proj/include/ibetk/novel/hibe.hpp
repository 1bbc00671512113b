#pragma once

#include "ibetk/schemes/common.hpp"

namespace ibetk {

// Constant-size-ciphertext HIBE: identities are tuples over Z_r (zero
// components allowed), ciphertexts are always three group elements, and a
// key at level j delegates to level j+1 using only its own tail.
//
// Key shape: d0 = g^((sum_{i<=j}(a_i + I_i) + sum(s_i - 1)a_i)/l) where each
// delegation step randomizes its newly added level with a fresh s and the
// older randomizations stay folded into the exponent; the correction point
// corr = g^(sum(s_i - 1)a_i) accumulates alongside so decryption can cancel
// them with one extra pairing against g^s.
struct HibeParams {
    unsigned v = 0; // maximum depth
    unsigned n_bits = 128;
    Point g, Ppub1;
    Gt x;
    std::vector<Gt> y;     // y[i] = x^{a_{i+1}}
    std::vector<Point> A;  // A[i] = g^{a_{i+1}}
};

struct HibeMaster {
    Fp l;
    std::vector<Fp> a;
};

struct HibeKey {
    std::vector<Int> ids; // identity tuple, depth = ids.size()
    Point d0;
    Point t0;                 // g^{1/l}
    std::vector<Point> tail;  // g^{a_i/l} for i = depth+1 .. v
    Point corr;               // accumulated correction, infinity when all s = 1

    unsigned depth() const { return static_cast<unsigned>(ids.size()); }
};

struct HibeCiphertext {
    unsigned depth = 0;
    Point uprime, udouble;
    Gt c;
};

struct OurHibe {
    static constexpr SchemeId id = SchemeId::OurHibe;

    static std::pair<HibeParams, HibeMaster> setup(const Profile& pr, unsigned v, unsigned n_bits,
                                                   Drbg& rng) {
        PhaseScope phase(pr.ledger(), "Setup");
        if (v < 1) throw error("hibe setup: depth bound must be at least 1");
        check_message_bits(pr, n_bits);
        Point G = pr.curve().to_affine(pr.generator());
        HibeParams params;
        params.v = v;
        params.n_bits = n_bits;
        params.g = G;
        HibeMaster msk;
        msk.l = random_zr(pr, rng);
        params.Ppub1 = pr.curve().to_affine(pr.curve().scalar_mul(msk.l.value(), G));
        params.x = pair_points(pr, G, G);
        for (unsigned i = 0; i < v; ++i) {
            Fp ai = random_zr(pr, rng);
            msk.a.push_back(ai);
            params.y.push_back(params.x.pow(ai.value()));
            params.A.push_back(pr.curve().to_affine(pr.curve().scalar_mul(ai.value(), G)));
        }
        return {std::move(params), std::move(msk)};
    }

    static std::vector<Int> reduce_ids(const Profile& pr, const std::vector<Int>& ids) {
        std::vector<Int> out;
        for (const Int& i : ids) {
            Int v = i % pr.r();
            if (v < 0) v += pr.r();
            out.push_back(v);
        }
        return out;
    }

    // Direct extraction from the master secret, with the deepest level
    // randomized by a fresh s_j.
    static HibeKey extract(const Profile& pr, const HibeParams& params, const HibeMaster& msk,
                           const std::vector<Int>& ids_in, Drbg& rng) {
        PhaseScope phase(pr.ledger(), "Extract");
        auto ids = reduce_ids(pr, ids_in);
        auto j = static_cast<unsigned>(ids.size());
        if (j < 1 || j > params.v) throw error("hibe extract: depth out of range");
        // a zero accumulated exponent (probability ~ 1/r) is repaired by
        // resampling the fresh randomness
        Fp sj = random_zr(pr, rng);
        Fp acc = Fp::raw(pr.fr().get(), 0);
        for (int attempt = 0;; ++attempt) {
            acc = Fp::raw(pr.fr().get(), 0);
            for (unsigned i = 0; i < j; ++i) {
                Fp term = (i + 1 == j) ? sj * msk.a[i] : msk.a[i];
                acc = acc + term + pr.fr_elem(ids[i]);
            }
            if (!acc.is_zero()) break;
            if (attempt > 64) throw error("hibe extract: degenerate exponent persists");
            sj = random_zr(pr, rng);
        }
        Fp linv = fp_inv(msk.l);
        HibeKey key;
        key.ids = ids;
        key.d0 = pr.curve().to_affine(pr.curve().scalar_mul((acc * linv).value(), pr.generator()));
        key.t0 = pr.curve().to_affine(pr.curve().scalar_mul(linv.value(), pr.generator()));
        for (unsigned i = j; i < params.v; ++i)
            key.tail.push_back(pr.curve().to_affine(
                pr.curve().scalar_mul((msk.a[i] * linv).value(), pr.generator())));
        Fp sm1 = sj - Fp::raw(pr.fr().get(), 1);
        key.corr = pr.curve().to_affine(pr.curve().scalar_mul(sm1.value(), params.A[j - 1]));
        return key;
    }

    // Child key from a parent key only: consume the first tail element,
    // fold a fresh randomization into the new level.
    static HibeKey derive(const Profile& pr, const HibeParams& params, const HibeKey& parent,
                          const Int& id_next, Drbg& rng) {
        PhaseScope phase(pr.ledger(), "Extract");
        unsigned j = parent.depth();
        if (j >= params.v) throw error("hibe derive: depth overflow");
        if (parent.tail.empty()) throw error("hibe derive: parent key lacks its delegation tail");
        Int idv = id_next % pr.r();
        if (idv < 0) idv += pr.r();
        HibeKey child;
        child.ids = parent.ids;
        child.ids.push_back(idv);
        Fp s = random_zr(pr, rng);
        for (int attempt = 0;; ++attempt) {
            Point rand_part = pr.curve().scalar_mul(s.value(), parent.tail.front());
            Point id_part = pr.curve().scalar_mul(idv, parent.t0);
            child.d0 = pr.curve().to_affine(
                pr.curve().add(pr.curve().add(parent.d0, rand_part), id_part));
            if (!child.d0.is_infinity()) break; // zero exponent: resample s
            if (attempt > 64) throw error("hibe derive: degenerate exponent persists");
            s = random_zr(pr, rng);
        }
        child.t0 = parent.t0;
        child.tail.assign(parent.tail.begin() + 1, parent.tail.end());
        Fp sm1 = s - Fp::raw(pr.fr().get(), 1);
        Point corr_step = pr.curve().scalar_mul(sm1.value(), params.A[j]);
        child.corr = pr.curve().to_affine(pr.curve().add(parent.corr, corr_step));
        return child;
    }

    static HibeCiphertext encrypt(const Profile& pr, const HibeParams& params,
                                  const std::vector<Int>& ids_in, const Gt& m, Drbg& rng) {
        PhaseScope phase(pr.ledger(), "Encrypt");
        auto ids = reduce_ids(pr, ids_in);
        auto j = static_cast<unsigned>(ids.size());
        if (j < 1 || j > params.v) throw error("hibe encrypt: tuple depth out of range");
        Fp s = random_zr(pr, rng);
        HibeCiphertext ct;
        ct.depth = j;
        ct.uprime = pr.curve().to_affine(pr.curve().scalar_mul(s.value(), params.Ppub1));
        ct.udouble = pr.curve().to_affine(pr.curve().scalar_mul(s.value(), params.g));
        Int idsum = 0;
        for (const Int& i : ids) idsum = (idsum + i) % pr.r();
        Gt head = params.x.pow(idsum);
        Gt acc = head.pow_seeded(m, s.value()); // m * (x^{sum I})^s
        for (unsigned i = 0; i < j; ++i) acc = acc * params.y[i].pow(s.value());
        ct.c = acc;
        return ct;
    }

    static std::optional<Gt> decrypt(const Profile& pr, const HibeKey& key,
                                     const HibeCiphertext& ct) {
        PhaseScope phase(pr.ledger(), "Decrypt");
        if (ct.depth != key.depth()) throw error("hibe decrypt: depth mismatch");
        Gt fix = tate_pairing(pr, pr.curve().to_affine(ct.udouble),
                              key.corr.is_infinity() ? ExtPoint::infinity()
                                                     : pr.distort(key.corr));
        Gt main = pair_points(pr, ct.uprime, key.d0);
        return (ct.c * fix) / main;
    }

    // e(Ppub1, d0) must match x^{sum I} * prod y_i * e(g, corr)
    static bool validate_key(const Profile& pr, const HibeParams& params, const HibeKey& key) {
        LedgerPause pause(pr.ledger());
        Gt lhs = pair_points(pr, params.Ppub1, key.d0);
        Int idsum = 0;
        for (const Int& i : key.ids) idsum = (idsum + i) % pr.r();
        Gt rhs = params.x.pow(idsum);
        for (unsigned i = 0; i < key.depth(); ++i) rhs = rhs * params.y[i];
        if (!key.corr.is_infinity()) rhs = rhs * pair_points(pr, params.g, key.corr);
        return lhs == rhs;
    }
};

} // namespace ibetk
