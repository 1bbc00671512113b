#pragma once

#include "ibetk/schemes/common.hpp"

namespace ibetk {

// Exponent-inversion IBE in the standard model, full (checked) version.
// Key components use h_i - r_i*g: the minus sign is what makes the scheme's
// own decryption identities m = w*e(u,h1)*v^r1 and the y-check hold.
struct Gentry {
    static constexpr SchemeId id = SchemeId::Gentry_Full;

    static std::pair<ParamsBundle, MasterSecret> setup(const SchemeContext& ctx, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Setup");
        check_message_bits(pr, ctx.n_bits);
        Point G = pr.curve().to_affine(pr.generator());
        Fp alpha = random_zr(pr, rng);
        Point h1 = pr.sample_subgroup_point(rng);
        Point h2 = pr.sample_subgroup_point(rng);
        Point h3 = pr.sample_subgroup_point(rng);
        Point g1 = pr.curve().to_affine(pr.curve().scalar_mul(alpha.value(), G));
        ParamsBundle params{id, ctx.n_bits, {}};
        params.pub.points = {{"g", G}, {"g1", g1}, {"h1", h1}, {"h2", h2}, {"h3", h3}};
        params.pub.gts = {{"v0", pair_points(pr, G, G)},
                          {"v1", pair_points(pr, G, h1)},
                          {"v2", pair_points(pr, G, h2)},
                          {"v3", pair_points(pr, G, h3)}};
        MasterSecret msk{id, {}};
        msk.sec.scalars = {{"alpha", alpha}};
        return {std::move(params), std::move(msk)};
    }

    static Fp identity_hash(const Identity& who, const Profile& pr) {
        return FieldHash("H1", id).feed(who.raw).into(pr.fr());
    }

    static UserKey extract(const SchemeContext& ctx, const ParamsBundle& params,
                           const MasterSecret& msk, const Identity& who, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Extract");
        Fp idh = identity_hash(who, pr);
        Fp denom = msk.sec.scalar("alpha") - idh;
        if (denom.is_zero()) throw error("gentry extract: identity equals the master scalar, abort");
        Fp t = fp_inv(denom);
        UserKey key{id, who.raw, {}};
        for (int i = 1; i <= 3; ++i) {
            Fp ri = random_zr(pr, rng);
            Fp neg_tri = -(t * ri);
            // (1/(alpha - id)) * (h_i - r_i g) as one two-term pass
            Point hid = pr.curve().multi_scalar_mul(
                {t.value(), neg_tri.value()},
                {params.pub.point("h" + std::to_string(i)), params.pub.point("g")});
            key.comp.scalars.emplace_back("r" + std::to_string(i), ri);
            key.comp.points.emplace_back("h" + std::to_string(i) + "id",
                                         pr.curve().to_affine(hid));
        }
        return key;
    }

    static Fp tag_hash(const Profile& pr, const Point& u, const Gt& v, const Gt& w) {
        return FieldHash("H", id).feed_point(pr, u).feed(v).feed(w).into(pr.fr());
    }

    static Ciphertext encrypt(const SchemeContext& ctx, const ParamsBundle& params,
                              const Identity& who, const Message& m, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Encrypt");
        if (m.domain != Message::Domain::Group)
            throw error("gentry encrypt: message must be a group element");
        Fp s = random_zr(pr, rng);
        Fp idh = identity_hash(who, pr);
        Fp neg_sid = -(s * idh);
        Point u = pr.curve().to_affine(
            pr.curve().add(pr.curve().scalar_mul(s.value(), params.pub.point("g1")),
                           pr.curve().scalar_mul(neg_sid.value(), params.pub.point("g"))));
        Gt v = params.pub.gt("v0").pow(s.value());
        Gt w = m.elem * Gt(params.pub.gt("v1").pow(s.value())).inverse();
        Fp beta = tag_hash(pr, u, v, w);
        Fp sbeta = s * beta;
        Gt y = params.pub.gt("v2").pow(s.value()) * params.pub.gt("v3").pow(sbeta.value());
        Ciphertext ct{id, {}};
        // u = [s(alpha - id)]g: the identity factor is absorbed into the
        // uniform exponent, so no public part betrays the recipient
        ct.parts.push_back({"u", u, false});
        ct.parts.push_back({"v", v, false});
        ct.parts.push_back({"w", w, false});
        ct.parts.push_back({"y", y, false});
        return ct;
    }

    static std::optional<Message> decrypt(const SchemeContext& ctx, const ParamsBundle&,
                                          const UserKey& key, const Ciphertext& ct) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Decrypt");
        if (ct.parts.size() != 4) throw error("gentry decrypt: malformed ciphertext");
        const Point& u = ct.part("u").point();
        const Gt& v = ct.part("v").gt();
        const Gt& w = ct.part("w").gt();
        const Gt& y = ct.part("y").gt();
        Fp beta = tag_hash(pr, u, v, w);
        Point t1 = pr.curve().add(key.comp.point("h2id"),
                                  pr.curve().scalar_mul(beta.value(), key.comp.point("h3id")));
        Fp e2 = key.comp.scalar("r2") + key.comp.scalar("r3") * beta;
        Gt expect = pair_points(pr, u, t1) * v.pow(e2.value());
        if (!(y == expect)) return std::nullopt;
        Gt m = w * pair_points(pr, u, key.comp.point("h1id")) * v.pow(key.comp.scalar("r1").value());
        return Message::of_gt(std::move(m));
    }
};

} // namespace ibetk
