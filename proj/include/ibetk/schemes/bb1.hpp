#pragma once

#include "ibetk/schemes/common.hpp"

namespace ibetk {

// Commutative-blinding IBE, full version with the t-binding scalar. The
// decryption quotient e(c0,d0)/e(c1,d1) runs as one shared-loop ratio.
struct BB1 {
    static constexpr SchemeId id = SchemeId::BB1_Full;

    static std::pair<ParamsBundle, MasterSecret> setup(const SchemeContext& ctx, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Setup");
        check_message_bits(pr, ctx.n_bits);
        Point G = pr.curve().to_affine(pr.generator());
        Fp w = random_zr(pr, rng), alpha = random_zr(pr, rng), beta = random_zr(pr, rng);
        Point Phat = pr.sample_subgroup_point(rng);
        Point P1 = pr.curve().to_affine(pr.curve().scalar_mul(alpha.value(), G));
        Point P2 = pr.curve().to_affine(pr.curve().scalar_mul(beta.value(), G));
        Gt v0 = pair_points(pr, G, Phat).pow(w.value());
        ParamsBundle params{id, ctx.n_bits, {}};
        params.pub.points = {{"P", G}, {"P1", P1}, {"P2", P2}};
        params.pub.gts = {{"v0", v0}};
        MasterSecret msk{id, {}};
        msk.sec.points = {{"Phat", Phat}};
        msk.sec.scalars = {{"w", w}, {"alpha", alpha}, {"beta", beta}};
        return {std::move(params), std::move(msk)};
    }

    static Fp identity_hash(const Identity& who, const Profile& pr) {
        return FieldHash("H1", id).feed(who.raw).into(pr.fr());
    }

    static UserKey extract(const SchemeContext& ctx, const ParamsBundle&, const MasterSecret& msk,
                           const Identity& who, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Extract");
        Fp h = identity_hash(who, pr);
        Fp r = random_zr(pr, rng);
        Fp e0 = msk.sec.scalar("w") + (msk.sec.scalar("alpha") * h + msk.sec.scalar("beta")) * r;
        Point d0 = pr.curve().to_affine(pr.curve().scalar_mul(e0.value(), msk.sec.point("Phat")));
        Point d1 = pr.curve().to_affine(pr.curve().scalar_mul(r.value(), msk.sec.point("Phat")));
        UserKey key{id, who.raw, {}};
        key.comp.points = {{"d0", d0}, {"d1", d1}};
        return key;
    }

    static Fp binding_hash(const Profile& pr, const Gt& k, const Bytes& c, const Point& c0,
                           const Point& c1) {
        return FieldHash("H3", id).feed(k).feed(c).feed_point(pr, c0).feed_point(pr, c1).into(pr.fr());
    }

    static Ciphertext encrypt(const SchemeContext& ctx, const ParamsBundle& params,
                              const Identity& who, const Message& m, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Encrypt");
        if (m.domain != Message::Domain::Bits || m.bits.size() != ctx.n_bytes())
            throw error("bb1 encrypt: message must be an n-bit string");
        Fp s = random_zr(pr, rng);
        Gt k = params.pub.gt("v0").pow(s.value());
        Bytes c = xor_mask(m.bits, "H2", id, gt_bytes(k));
        Point c0 = pr.curve().to_affine(pr.curve().scalar_mul(s.value(), params.pub.point("P")));
        Fp hs = identity_hash(who, pr) * s;
        Point c1 = pr.curve().to_affine(
            pr.curve().add(pr.curve().scalar_mul(hs.value(), params.pub.point("P1")),
                           pr.curve().scalar_mul(s.value(), params.pub.point("P2"))));
        Fp t = s + binding_hash(pr, k, c, c0, c1);
        Ciphertext ct{id, {}};
        ct.parts.push_back({"c", c, false});
        ct.parts.push_back({"c0", c0, false});
        ct.parts.push_back({"c1", c1, true});
        ct.parts.push_back({"t", t, false});
        return ct;
    }

    static std::optional<Message> decrypt(const SchemeContext& ctx, const ParamsBundle& params,
                                          const UserKey& key, const Ciphertext& ct) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Decrypt");
        if (ct.parts.size() != 4) throw error("bb1 decrypt: malformed ciphertext");
        const Bytes& c = ct.part("c").bytes();
        const Point& c0 = ct.part("c0").point();
        const Point& c1 = ct.part("c1").point();
        const Fp& t = ct.part("t").scalar();
        Gt k = ratio_points(pr, c0, key.comp.point("d0"), c1, key.comp.point("d1"));
        Fp s = t - binding_hash(pr, k, c, c0, c1);
        // full-version check: (k, c0) must equal (v0^s, sP); one REJECT signal
        bool ok = (k == params.pub.gt("v0").pow(s.value()));
        Point sP = pr.curve().scalar_mul(s.value(), params.pub.point("P"));
        ok = ok && pr.curve().equal(sP, c0);
        if (!ok) return std::nullopt;
        return Message::of_bits(xor_mask(c, "H2", id, gt_bytes(k)));
    }
};

} // namespace ibetk
