#pragma once

#include "ibetk/schemes/common.hpp"

namespace ibetk {

// Exponent-inversion IBE, CPA version: no ciphertext validity check exists.
// The generator paired into v is master-secret material (the source table
// leaves it implicit).
struct BB2 {
    static constexpr SchemeId id = SchemeId::BB2_CPA;

    static std::pair<ParamsBundle, MasterSecret> setup(const SchemeContext& ctx, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Setup");
        check_message_bits(pr, ctx.n_bits);
        Point G = pr.curve().to_affine(pr.generator());
        Fp a = random_zr(pr, rng), b = random_zr(pr, rng);
        Point Phat = pr.sample_subgroup_point(rng);
        Point Pa = pr.curve().to_affine(pr.curve().scalar_mul(a.value(), G));
        Point Pb = pr.curve().to_affine(pr.curve().scalar_mul(b.value(), G));
        Gt v = pair_points(pr, G, Phat);
        ParamsBundle params{id, ctx.n_bits, {}};
        params.pub.points = {{"P", G}, {"Pa", Pa}, {"Pb", Pb}};
        params.pub.gts = {{"v", v}};
        MasterSecret msk{id, {}};
        msk.sec.points = {{"Phat", Phat}};
        msk.sec.scalars = {{"a", a}, {"b", b}};
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
        Fp denom = msk.sec.scalar("a") + h + msk.sec.scalar("b") * r;
        if (denom.is_zero()) throw error("bb2 extract: a + id + b*r vanishes, abort");
        Fp e0 = -fp_inv(denom);
        Point dhat = pr.curve().to_affine(pr.curve().scalar_mul(e0.value(), msk.sec.point("Phat")));
        UserKey key{id, who.raw, {}};
        key.comp.scalars = {{"rId", r}};
        key.comp.points = {{"dhat", dhat}};
        return key;
    }

    static Ciphertext encrypt(const SchemeContext& ctx, const ParamsBundle& params,
                              const Identity& who, const Message& m, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Encrypt");
        if (m.domain != Message::Domain::Group) throw error("bb2 encrypt: message must be a group element");
        Fp s = random_zr(pr, rng);
        Gt c0 = m.elem * params.pub.gt("v").pow(s.value());
        Fp sid = s * identity_hash(who, pr);
        Point c1 = pr.curve().to_affine(
            pr.curve().add(pr.curve().scalar_mul(s.value(), params.pub.point("Pa")),
                           pr.curve().scalar_mul(sid.value(), params.pub.point("P"))));
        Point c2 = pr.curve().to_affine(pr.curve().scalar_mul(s.value(), params.pub.point("Pb")));
        Ciphertext ct{id, {}};
        ct.parts.push_back({"c0", c0, false});
        ct.parts.push_back({"c1", c1, true});
        ct.parts.push_back({"c2", c2, false});
        return ct;
    }

    static std::optional<Message> decrypt(const SchemeContext& ctx, const ParamsBundle&,
                                          const UserKey& key, const Ciphertext& ct) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Decrypt");
        if (ct.parts.size() != 3) throw error("bb2 decrypt: malformed ciphertext");
        const Gt& c0 = ct.part("c0").gt();
        Point arg = pr.curve().add(
            ct.part("c1").point(),
            pr.curve().scalar_mul(key.comp.scalar("rId").value(), ct.part("c2").point()));
        Gt msg = c0 * pair_points(pr, arg, key.comp.point("dhat"));
        return Message::of_gt(std::move(msg));
    }
};

} // namespace ibetk
