#pragma once

#include "ibetk/schemes/common.hpp"

namespace ibetk {

// Commutative-blinding IBE in the standard model, word-based variant: the
// identity is split into 32-bit words and u' + sum v_i*u_i is built by one
// interleaved multi-scalar pass, which is how the cost model prices it.
struct Waters {
    static constexpr SchemeId id = SchemeId::Waters_Naccache;

    static std::pair<ParamsBundle, MasterSecret> setup(const SchemeContext& ctx, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Setup");
        check_message_bits(pr, ctx.n_bits);
        Point G = pr.curve().to_affine(pr.generator());
        Fp alpha = random_zr(pr, rng);
        Point g1 = pr.curve().to_affine(pr.curve().scalar_mul(alpha.value(), G));
        Point g2 = pr.sample_subgroup_point(rng);
        Point uprime = pr.sample_subgroup_point(rng);
        ParamsBundle params{id, ctx.n_bits, {}};
        params.pub.points = {{"g", G}, {"g1", g1}, {"g2", g2}, {"uprime", uprime}};
        for (unsigned i = 0; i < ctx.waters_words; ++i)
            params.pub.points.emplace_back("u" + std::to_string(i + 1), pr.sample_subgroup_point(rng));
        params.pub.gts = {{"v", pair_points(pr, g1, g2)}};
        MasterSecret msk{id, {}};
        msk.sec.scalars = {{"alpha", alpha}};
        return {std::move(params), std::move(msk)};
    }

    static std::vector<Int> identity_words(const SchemeContext& ctx, const Identity& who) {
        Xof x("ibetk/hash");
        x.feed("H1");
        x.feed_u64(static_cast<std::uint64_t>(id));
        x.feed(who.raw);
        Bytes raw = x.squeeze(4 * ctx.waters_words);
        std::vector<Int> words(ctx.waters_words);
        for (unsigned i = 0; i < ctx.waters_words; ++i) {
            std::uint32_t w = 0;
            for (int b = 0; b < 4; ++b) w = (w << 8) | raw[4 * i + static_cast<unsigned>(b)];
            words[i] = w;
        }
        return words;
    }

    // u' + sum v_i * u_i, one ScalarMul on the ledger
    static Point identity_point(const SchemeContext& ctx, const ParamsBundle& params,
                                const Identity& who) {
        const Profile& pr = ctx.pr();
        std::vector<Int> words = identity_words(ctx, who);
        std::vector<Int> scalars = {1};
        std::vector<Point> points = {params.pub.point("uprime")};
        for (unsigned i = 0; i < ctx.waters_words; ++i) {
            scalars.push_back(words[i]);
            points.push_back(params.pub.point("u" + std::to_string(i + 1)));
        }
        return pr.curve().multi_scalar_mul(scalars, points);
    }

    static UserKey extract(const SchemeContext& ctx, const ParamsBundle& params,
                           const MasterSecret& msk, const Identity& who, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Extract");
        Fp r = random_zr(pr, rng);
        Point V = identity_point(ctx, params, who);
        Point rV = pr.curve().scalar_mul(r.value(), V);
        Point ag2 = pr.curve().scalar_mul(msk.sec.scalar("alpha").value(), params.pub.point("g2"));
        Point d1 = pr.curve().to_affine(pr.curve().add(ag2, rV));
        Point d2 = pr.curve().to_affine(pr.curve().scalar_mul(r.value(), params.pub.point("g")));
        UserKey key{id, who.raw, {}};
        key.comp.points = {{"d1", d1}, {"d2", d2}};
        return key;
    }

    static Ciphertext encrypt(const SchemeContext& ctx, const ParamsBundle& params,
                              const Identity& who, const Message& m, Drbg& rng) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Encrypt");
        if (m.domain != Message::Domain::Group)
            throw error("waters encrypt: message must be a group element");
        Fp t = random_zr(pr, rng);
        Gt c1 = params.pub.gt("v").pow(t.value()) * m.elem;
        Point c2 = pr.curve().to_affine(pr.curve().scalar_mul(t.value(), params.pub.point("g")));
        Point V = identity_point(ctx, params, who);
        Point c3 = pr.curve().to_affine(pr.curve().scalar_mul(t.value(), V));
        Ciphertext ct{id, {}};
        ct.parts.push_back({"c1", c1, false});
        ct.parts.push_back({"c2", c2, false});
        ct.parts.push_back({"c3", c3, true});
        return ct;
    }

    static std::optional<Message> decrypt(const SchemeContext& ctx, const ParamsBundle&,
                                          const UserKey& key, const Ciphertext& ct) {
        const Profile& pr = ctx.pr();
        PhaseScope phase(pr.ledger(), "Decrypt");
        if (ct.parts.size() != 3) throw error("waters decrypt: malformed ciphertext");
        Gt quotient = ratio_points(pr, key.comp.point("d2"), ct.part("c3").point(),
                                   key.comp.point("d1"), ct.part("c2").point());
        return Message::of_gt(ct.part("c1").gt() * quotient);
    }
};

} // namespace ibetk
