#pragma once

#include "ibetk/schemes/common.hpp"

namespace ibetk {

// Commutative-blinding IBE with an inverted extraction exponent: private
// keys are (r_ID, g^((a+ID)/(r_ID*l))) and decryption needs one pairing,
// against the two-pairing quotient of the comparable scheme.
struct OurIbe {
    static constexpr SchemeId id = SchemeId::OurIbe;

    static Fp identity_hash(const Identity& who, const Profile& pr) {
        return FieldHash("H1", id).feed(who.raw).into(pr.fr());
    }

    static std::pair<ParamsBundle, MasterSecret> setup(const SchemeContext& ctx, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Setup");
        check_message_bits(pr, ctx.n_bits);
        Point G = pr.curve().to_affine(pr.generator());
        Fp l = random_zr(pr, rng), a = random_zr(pr, rng);
        Point Ppub1 = pr.curve().to_affine(pr.curve().scalar_mul(l.value(), G));
        Gt x = pair_points(pr, G, G);
        Gt y = x.pow(a.value());
        ParamsBundle params{id, ctx.n_bits, {}};
        params.pub.points = {{"g", G}, {"Ppub1", Ppub1}};
        params.pub.gts = {{"x", x}, {"y", y}};
        MasterSecret msk{id, {}};
        msk.sec.scalars = {{"l", l}, {"a", a}};
        return {std::move(params), std::move(msk)};
    }

    static UserKey extract(const SchemeContext& ctx, const ParamsBundle&, const MasterSecret& msk,
                           const Identity& who, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Extract");
        Fp idh = identity_hash(who, pr);
        Fp num = msk.sec.scalar("a") + idh;
        if (num.is_zero()) throw error("extract: a + H1(id) vanishes, abort");
        Fp rid = random_zr(pr, rng);
        Fp denom = rid * msk.sec.scalar("l");
        Fp e0 = num * fp_inv(denom);
        Point D = pr.curve().to_affine(pr.curve().scalar_mul(e0.value(), pr.generator()));
        UserKey key{id, who.raw, {}};
        key.comp.scalars = {{"rID", rid}};
        key.comp.points = {{"D", D}};
        return key;
    }

    static Ciphertext encrypt(const SchemeContext& ctx, const ParamsBundle& params,
                              const Identity& who, const Message& m, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Encrypt");
        if (m.domain != Message::Domain::Group)
            throw error("encrypt: message must be a group element");
        Fp s = random_zr(pr, rng);
        Fp idh = identity_hash(who, pr);
        Point u = pr.curve().to_affine(pr.curve().scalar_mul(s.value(), params.pub.point("Ppub1")));
        Gt w = params.pub.gt("x").pow(idh.value()) * params.pub.gt("y");
        Gt c = w.pow_seeded(m.elem, s.value()); // m * (x^ID * y)^s in one pass
        Ciphertext ct{id, {}};
        ct.parts.push_back({"u", u, false});
        ct.parts.push_back({"c", c, false});
        return ct;
    }

    static std::optional<Message> decrypt(const SchemeContext& ctx, const ParamsBundle&,
                                          const UserKey& key, const Ciphertext& ct) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Decrypt");
        if (ct.parts.size() != 2) throw error("decrypt: malformed ciphertext");
        Point ur = pr.curve().scalar_mul(key.comp.scalar("rID").value(), ct.part("u").point());
        Gt shared = pair_points(pr, ur, key.comp.point("D"));
        return Message::of_gt(ct.part("c").gt() / shared);
    }

    // e(Ppub1^rID, D) must equal x^ID * y
    static bool validate_key(const SchemeContext& ctx, const ParamsBundle& params,
                             const UserKey& key) {
        const Profile& pr = ctx.pr();
        LedgerPause pause(pr.ledger());
        Fp idh = identity_hash(Identity::of_bytes(key.identity), pr);
        Point pr1 = pr.curve().scalar_mul(key.comp.scalar("rID").value(), params.pub.point("Ppub1"));
        Gt lhs = pair_points(pr, pr1, key.comp.point("D"));
        Gt rhs = params.pub.gt("x").pow(idh.value()) * params.pub.gt("y");
        return lhs == rhs;
    }
};

} // namespace ibetk
