#pragma once

#include "ibetk/schemes/common.hpp"

namespace ibetk {

// Full-domain-hash IBE, full (authenticated) version, realized over the
// symmetric pairing: psi is the identity, so P1 = P2 and Ppub = Qpub.
struct BonehFranklin {
    static constexpr SchemeId id = SchemeId::BF_Galindo;

    static std::pair<ParamsBundle, MasterSecret> setup(const SchemeContext& ctx, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Setup");
        check_message_bits(pr, ctx.n_bits);
        Point G = pr.curve().to_affine(pr.generator());
        Fp s = random_zr(pr, rng);
        Point Qpub = pr.curve().to_affine(pr.curve().scalar_mul(s.value(), G));
        ParamsBundle params{id, ctx.n_bits, {}};
        params.pub.points = {{"P1", G}, {"P2", G}, {"Qpub", Qpub}, {"Ppub", Qpub}};
        MasterSecret msk{id, {}};
        msk.sec.scalars = {{"s", s}};
        return {std::move(params), std::move(msk)};
    }

    static UserKey extract(const SchemeContext& ctx, const ParamsBundle&, const MasterSecret& msk,
                           const Identity& who, Drbg&) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Extract");
        Point Qid = map_to_point(who.raw, pr);
        Point d = pr.curve().to_affine(pr.curve().scalar_mul(msk.sec.scalar("s").value(), Qid));
        UserKey key{id, who.raw, {}};
        key.comp.points = {{"dID", d}};
        return key;
    }

    static Ciphertext encrypt(const SchemeContext& ctx, const ParamsBundle& params,
                              const Identity& who, const Message& m, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Encrypt");
        if (m.domain != Message::Domain::Bits || m.bits.size() != ctx.n_bytes())
            throw error("bf encrypt: message must be an n-bit string");
        Bytes sigma;
        {
            LedgerPause pause(pr.ledger());
            sigma = rng.bytes(ctx.n_bytes());
        }
        Fp r = FieldHash("H3", id).feed(sigma).feed(m.bits).into_nonzero(pr.fr());
        Point U = pr.curve().to_affine(pr.curve().scalar_mul(r.value(), params.pub.point("P1")));
        Point Qid = map_to_point(who.raw, pr);
        Gt gid = pair_points(pr, params.pub.point("Ppub"), Qid);
        Gt gidr = gid.pow(r.value());
        Bytes V = xor_mask(sigma, "H2", id, gt_bytes(gidr));
        Bytes W = xor_mask(m.bits, "H4", id, sigma);
        Ciphertext ct{id, {}};
        ct.parts.push_back({"U", U, false});
        ct.parts.push_back({"V", V, false});
        ct.parts.push_back({"W", W, false});
        return ct;
    }

    static std::optional<Message> decrypt(const SchemeContext& ctx, const ParamsBundle& params,
                                          const UserKey& key, const Ciphertext& ct) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Decrypt");
        if (ct.parts.size() != 3) throw error("bf decrypt: malformed ciphertext");
        const Point& U = ct.part("U").point();
        const Bytes& V = ct.part("V").bytes();
        const Bytes& W = ct.part("W").bytes();
        if (U.is_infinity()) return std::nullopt;
        Gt shared = pair_points(pr, U, key.comp.point("dID"));
        Bytes sigma = xor_mask(V, "H2", id, gt_bytes(shared));
        Bytes m = xor_mask(W, "H4", id, sigma);
        Fp r = FieldHash("H3", id).feed(sigma).feed(m).into_nonzero(pr.fr());
        Point expect = pr.curve().scalar_mul(r.value(), params.pub.point("P1"));
        if (!pr.curve().equal(expect, U)) return std::nullopt;
        return Message::of_bits(std::move(m));
    }
};

} // namespace ibetk
