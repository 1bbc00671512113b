#pragma once

#include "ibetk/schemes/common.hpp"

namespace ibetk {

// Exponent-inversion IBE, full version. The pairing g = e(P1, P2) is
// published with the parameters so Encrypt never recomputes it.
struct SakaiKasahara {
    static constexpr SchemeId id = SchemeId::SK_ChenCheng;

    static std::pair<ParamsBundle, MasterSecret> setup(const SchemeContext& ctx, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Setup");
        check_message_bits(pr, ctx.n_bits);
        Point G = pr.curve().to_affine(pr.generator());
        Fp s = random_zr(pr, rng);
        Point Qpub = pr.curve().to_affine(pr.curve().scalar_mul(s.value(), G));
        Gt g = pair_points(pr, G, G);
        ParamsBundle params{id, ctx.n_bits, {}};
        params.pub.points = {{"P1", G}, {"P2", G}, {"Qpub", Qpub}, {"Ppub", Qpub}};
        params.pub.gts = {{"g", g}};
        MasterSecret msk{id, {}};
        msk.sec.scalars = {{"s", s}};
        return {std::move(params), std::move(msk)};
    }

    static Fp identity_hash(const Identity& who, const Profile& pr) {
        return FieldHash("H1", id).feed(who.raw).into(pr.fr());
    }

    static UserKey extract(const SchemeContext& ctx, const ParamsBundle&, const MasterSecret& msk,
                           const Identity& who, Drbg&) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Extract");
        Fp h = identity_hash(who, pr);
        Fp t = msk.sec.scalar("s") + h;
        if (t.is_zero()) throw error("sk extract: s + H1(id) vanishes, abort");
        Fp tinv = fp_inv(t);
        Point d = pr.curve().to_affine(pr.curve().scalar_mul(tinv.value(), pr.generator()));
        UserKey key{id, who.raw, {}};
        key.comp.points = {{"dA", d}};
        return key;
    }

    static Point identity_point(const SchemeContext& ctx, const ParamsBundle& params,
                                const Identity& who) {
        const Profile& pr = ctx.pr();
        Fp h = identity_hash(who, pr);
        Point hP = pr.curve().scalar_mul(h.value(), params.pub.point("P1"));
        return pr.curve().add(hP, params.pub.point("Ppub"));
    }

    static Ciphertext encrypt(const SchemeContext& ctx, const ParamsBundle& params,
                              const Identity& who, const Message& m, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Encrypt");
        if (m.domain != Message::Domain::Bits || m.bits.size() != ctx.n_bytes())
            throw error("sk encrypt: message must be an n-bit string");
        Bytes sigma;
        {
            LedgerPause pause(pr.ledger());
            sigma = rng.bytes(ctx.n_bytes());
        }
        Fp r = FieldHash("H3", id).feed(sigma).feed(m.bits).into_nonzero(pr.fr());
        Point QA = identity_point(ctx, params, who);
        Point U = pr.curve().to_affine(pr.curve().scalar_mul(r.value(), QA));
        Gt gr = params.pub.gt("g").pow(r.value());
        Bytes V = xor_mask(sigma, "H2", id, gt_bytes(gr));
        Bytes W = xor_mask(m.bits, "H4", id, sigma);
        Ciphertext ct{id, {}};
        ct.parts.push_back({"U", U, true}); // rQ_A depends on the identity point
        ct.parts.push_back({"V", V, false});
        ct.parts.push_back({"W", W, false});
        return ct;
    }

    static std::optional<Message> decrypt(const SchemeContext& ctx, const ParamsBundle& params,
                                          const UserKey& key, const Ciphertext& ct) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Decrypt");
        if (ct.parts.size() != 3) throw error("sk decrypt: malformed ciphertext");
        const Point& U = ct.part("U").point();
        if (U.is_infinity()) return std::nullopt;
        Gt gp = pair_points(pr, U, key.comp.point("dA"));
        Bytes sigma = xor_mask(ct.part("V").bytes(), "H2", id, gt_bytes(gp));
        Bytes m = xor_mask(ct.part("W").bytes(), "H4", id, sigma);
        Fp r = FieldHash("H3", id).feed(sigma).feed(m).into_nonzero(pr.fr());
        Point QA = identity_point(ctx, params, Identity::of_bytes(key.identity));
        Point expect = pr.curve().scalar_mul(r.value(), QA);
        if (!pr.curve().equal(expect, U)) return std::nullopt;
        return Message::of_bits(std::move(m));
    }
};

} // namespace ibetk
