#pragma once

#include "ibetk/schemes/bb1.hpp"
#include "ibetk/schemes/bb2.hpp"
#include "ibetk/schemes/bf.hpp"
#include "ibetk/schemes/gentry.hpp"
#include "ibetk/schemes/sk.hpp"
#include "ibetk/schemes/waters.hpp"
#include "ibetk/novel/ibe.hpp"

namespace ibetk {

inline const std::vector<SchemeId>& benchmark_schemes() {
    static const std::vector<SchemeId> all = {SchemeId::BF_Galindo,      SchemeId::SK_ChenCheng,
                                              SchemeId::BB1_Full,        SchemeId::BB2_CPA,
                                              SchemeId::Waters_Naccache, SchemeId::Gentry_Full};
    return all;
}

inline std::optional<SchemeId> scheme_from_name(std::string_view s) {
    for (auto id : {SchemeId::BF_Galindo, SchemeId::SK_ChenCheng, SchemeId::BB1_Full,
                    SchemeId::BB2_CPA, SchemeId::Waters_Naccache, SchemeId::Gentry_Full,
                    SchemeId::OurIbe, SchemeId::OurHibe, SchemeId::FsHibe})
        if (s == scheme_name(id)) return id;
    return std::nullopt;
}

// Message domain: the hash-masked schemes take n-bit strings, the rest take
// group elements (the CLI's KEM wrapper bridges byte payloads for those).
inline bool scheme_message_is_group(SchemeId id) {
    return id == SchemeId::BB2_CPA || id == SchemeId::Waters_Naccache ||
           id == SchemeId::Gentry_Full || id == SchemeId::OurIbe || id == SchemeId::OurHibe ||
           id == SchemeId::FsHibe;
}

// CPA-only schemes have no ciphertext validity check to trip.
inline bool scheme_has_validity_check(SchemeId id) {
    return id == SchemeId::BF_Galindo || id == SchemeId::SK_ChenCheng ||
           id == SchemeId::BB1_Full || id == SchemeId::Gentry_Full;
}

inline bool scheme_is_anonymous(SchemeId id) {
    return id == SchemeId::BF_Galindo || id == SchemeId::Gentry_Full;
}

inline std::pair<ParamsBundle, MasterSecret> scheme_setup(SchemeId id, const SchemeContext& ctx,
                                                          Drbg& rng) {
    switch (id) {
        case SchemeId::BF_Galindo: return BonehFranklin::setup(ctx, rng);
        case SchemeId::SK_ChenCheng: return SakaiKasahara::setup(ctx, rng);
        case SchemeId::BB1_Full: return BB1::setup(ctx, rng);
        case SchemeId::BB2_CPA: return BB2::setup(ctx, rng);
        case SchemeId::Waters_Naccache: return Waters::setup(ctx, rng);
        case SchemeId::Gentry_Full: return Gentry::setup(ctx, rng);
        case SchemeId::OurIbe: return OurIbe::setup(ctx, rng);
        default: throw error("scheme_setup: not a four-phase scheme id");
    }
}

inline UserKey scheme_extract(SchemeId id, const SchemeContext& ctx, const ParamsBundle& params,
                              const MasterSecret& msk, const Identity& who, Drbg& rng) {
    switch (id) {
        case SchemeId::BF_Galindo: return BonehFranklin::extract(ctx, params, msk, who, rng);
        case SchemeId::SK_ChenCheng: return SakaiKasahara::extract(ctx, params, msk, who, rng);
        case SchemeId::BB1_Full: return BB1::extract(ctx, params, msk, who, rng);
        case SchemeId::BB2_CPA: return BB2::extract(ctx, params, msk, who, rng);
        case SchemeId::Waters_Naccache: return Waters::extract(ctx, params, msk, who, rng);
        case SchemeId::Gentry_Full: return Gentry::extract(ctx, params, msk, who, rng);
        case SchemeId::OurIbe: return OurIbe::extract(ctx, params, msk, who, rng);
        default: throw error("scheme_extract: not a four-phase scheme id");
    }
}

inline Ciphertext scheme_encrypt(SchemeId id, const SchemeContext& ctx, const ParamsBundle& params,
                                 const Identity& who, const Message& m, Drbg& rng) {
    switch (id) {
        case SchemeId::BF_Galindo: return BonehFranklin::encrypt(ctx, params, who, m, rng);
        case SchemeId::SK_ChenCheng: return SakaiKasahara::encrypt(ctx, params, who, m, rng);
        case SchemeId::BB1_Full: return BB1::encrypt(ctx, params, who, m, rng);
        case SchemeId::BB2_CPA: return BB2::encrypt(ctx, params, who, m, rng);
        case SchemeId::Waters_Naccache: return Waters::encrypt(ctx, params, who, m, rng);
        case SchemeId::Gentry_Full: return Gentry::encrypt(ctx, params, who, m, rng);
        case SchemeId::OurIbe: return OurIbe::encrypt(ctx, params, who, m, rng);
        default: throw error("scheme_encrypt: not a four-phase scheme id");
    }
}

inline std::optional<Message> scheme_decrypt(SchemeId id, const SchemeContext& ctx,
                                             const ParamsBundle& params, const UserKey& key,
                                             const Ciphertext& ct) {
    switch (id) {
        case SchemeId::BF_Galindo: return BonehFranklin::decrypt(ctx, params, key, ct);
        case SchemeId::SK_ChenCheng: return SakaiKasahara::decrypt(ctx, params, key, ct);
        case SchemeId::BB1_Full: return BB1::decrypt(ctx, params, key, ct);
        case SchemeId::BB2_CPA: return BB2::decrypt(ctx, params, key, ct);
        case SchemeId::Waters_Naccache: return Waters::decrypt(ctx, params, key, ct);
        case SchemeId::Gentry_Full: return Gentry::decrypt(ctx, params, key, ct);
        case SchemeId::OurIbe: return OurIbe::decrypt(ctx, params, key, ct);
        default: throw error("scheme_decrypt: not a four-phase scheme id");
    }
}

// Pairing-based key-validity oracles: each checks the scheme's key equation
// from public data plus the key itself, no master secret involved.
inline bool key_valid(SchemeId id, const SchemeContext& ctx, const ParamsBundle& params,
                      const UserKey& key) {
    const Profile& pr = ctx.pr();
    LedgerPause pause(pr.ledger());
    Identity who = Identity::of_bytes(key.identity);
    switch (id) {
        case SchemeId::BF_Galindo: {
            Point Qid = map_to_point(who.raw, pr);
            return pair_points(pr, params.pub.point("P1"), key.comp.point("dID")) ==
                   pair_points(pr, params.pub.point("Ppub"), Qid);
        }
        case SchemeId::SK_ChenCheng: {
            SchemeContext c2{pr, params.n_bits, ctx.waters_words};
            Point QA = SakaiKasahara::identity_point(c2, params, who);
            return pair_points(pr, QA, key.comp.point("dA")) == params.pub.gt("g");
        }
        case SchemeId::BB1_Full: {
            Fp h = BB1::identity_hash(who, pr);
            Point hp1 = pr.curve().scalar_mul(h.value(), params.pub.point("P1"));
            Point arg = pr.curve().add(hp1, params.pub.point("P2"));
            Gt lhs = pair_points(pr, params.pub.point("P"), key.comp.point("d0"));
            Gt rhs = params.pub.gt("v0") * pair_points(pr, arg, key.comp.point("d1"));
            return lhs == rhs;
        }
        case SchemeId::BB2_CPA: {
            Fp h = BB2::identity_hash(who, pr);
            Point hp = pr.curve().scalar_mul(h.value(), params.pub.point("P"));
            Point rb = pr.curve().scalar_mul(key.comp.scalar("rId").value(), params.pub.point("Pb"));
            Point arg = pr.curve().add(pr.curve().add(params.pub.point("Pa"), hp), rb);
            return pair_points(pr, arg, key.comp.point("dhat")) == params.pub.gt("v").inverse();
        }
        case SchemeId::Waters_Naccache: {
            SchemeContext c2{pr, params.n_bits, ctx.waters_words};
            Point V = Waters::identity_point(c2, params, who);
            Gt lhs = pair_points(pr, params.pub.point("g"), key.comp.point("d1"));
            Gt rhs = params.pub.gt("v") * pair_points(pr, V, key.comp.point("d2"));
            return lhs == rhs;
        }
        case SchemeId::Gentry_Full: {
            Fp h = Gentry::identity_hash(who, pr);
            Point hg = pr.curve().scalar_mul(h.value(), params.pub.point("g"));
            Point arg = pr.curve().add(params.pub.point("g1"), hg.negated());
            for (int i = 1; i <= 3; ++i) {
                Gt lhs = pair_points(pr, arg, key.comp.point("h" + std::to_string(i) + "id"));
                Gt rhs = params.pub.gt("v" + std::to_string(i)) *
                         params.pub.gt("v0").pow(key.comp.scalar("r" + std::to_string(i)).value()).inverse();
                if (!(lhs == rhs)) return false;
            }
            return true;
        }
        case SchemeId::OurIbe: return OurIbe::validate_key(ctx, params, key);
        default: throw error("key_valid: unsupported scheme");
    }
}

// --- wire mapping ---------------------------------------------------------

inline void elems_to_record(const Profile& pr, const NamedElems& elems, WireRecord& rec) {
    LedgerPause pause(pr.ledger());
    for (const auto& [n, v] : elems.points) rec.put(n, WireValue::of_point(pr.curve(), v));
    for (const auto& [n, v] : elems.gts) rec.put(n, WireValue::of_gt(v));
    for (const auto& [n, v] : elems.scalars) rec.put(n, WireValue::of_int(v.value()));
    for (const auto& [n, v] : elems.blobs) rec.put(n, WireValue::of_bytes(v));
}

inline NamedElems elems_from_record(const Profile& pr, const WireRecord& rec,
                                    std::string_view skip_prefix = "__") {
    LedgerPause pause(pr.ledger());
    NamedElems out;
    for (const auto& [n, v] : rec.entries) {
        if (n.rfind(skip_prefix, 0) == 0) continue;
        switch (v.type) {
            case WireValue::Type::Point: out.points.emplace_back(n, v.as_point(pr)); break;
            case WireValue::Type::Ext: out.gts.emplace_back(n, v.as_gt(pr)); break;
            case WireValue::Type::Int: out.scalars.emplace_back(n, pr.fr_elem(v.as_int())); break;
            case WireValue::Type::Bytes: out.blobs.emplace_back(n, v.as_bytes()); break;
        }
    }
    return out;
}

inline Bytes serialize_params(const Profile& pr, const ParamsBundle& p) {
    WireRecord rec;
    rec.kind = WireKind::Params;
    rec.scheme = static_cast<std::uint8_t>(p.scheme);
    rec.put("__n", WireValue::of_int(p.n_bits));
    elems_to_record(pr, p.pub, rec);
    return encode_record(rec);
}

inline ParamsBundle deserialize_params(const Profile& pr, const Bytes& data) {
    WireRecord rec = decode_record(data);
    if (rec.kind != WireKind::Params) throw error("wire: not a params record");
    ParamsBundle p{static_cast<SchemeId>(rec.scheme),
                   static_cast<unsigned>(rec.get("__n").as_int().get_ui()), {}};
    p.pub = elems_from_record(pr, rec);
    return p;
}

inline Bytes serialize_msk(const Profile& pr, const MasterSecret& m) {
    WireRecord rec;
    rec.kind = WireKind::MasterSecret;
    rec.scheme = static_cast<std::uint8_t>(m.scheme);
    elems_to_record(pr, m.sec, rec);
    return encode_record(rec);
}

inline MasterSecret deserialize_msk(const Profile& pr, const Bytes& data) {
    WireRecord rec = decode_record(data);
    if (rec.kind != WireKind::MasterSecret) throw error("wire: not a master-secret record");
    MasterSecret m{static_cast<SchemeId>(rec.scheme), {}};
    m.sec = elems_from_record(pr, rec);
    return m;
}

inline Bytes serialize_key(const Profile& pr, const UserKey& k) {
    WireRecord rec;
    rec.kind = WireKind::UserKey;
    rec.scheme = static_cast<std::uint8_t>(k.scheme);
    rec.put("__id", WireValue::of_bytes(k.identity));
    elems_to_record(pr, k.comp, rec);
    return encode_record(rec);
}

inline UserKey deserialize_key(const Profile& pr, const Bytes& data) {
    WireRecord rec = decode_record(data);
    if (rec.kind != WireKind::UserKey) throw error("wire: not a user-key record");
    UserKey k{static_cast<SchemeId>(rec.scheme), rec.get("__id").as_bytes(), {}};
    k.comp = elems_from_record(pr, rec);
    return k;
}

inline Bytes serialize_ciphertext(const Profile& pr, const Ciphertext& ct) {
    LedgerPause pause(pr.ledger());
    WireRecord rec;
    rec.kind = WireKind::Ciphertext;
    rec.scheme = static_cast<std::uint8_t>(ct.scheme);
    for (const auto& p : ct.parts) {
        std::uint8_t flags = p.identity_derived ? 1 : 0;
        if (std::holds_alternative<Point>(p.value))
            rec.put(p.name, WireValue::of_point(pr.curve(), std::get<Point>(p.value), flags));
        else if (std::holds_alternative<Gt>(p.value))
            rec.put(p.name, WireValue::of_gt(std::get<Gt>(p.value), flags));
        else if (std::holds_alternative<Bytes>(p.value))
            rec.put(p.name, WireValue::of_bytes(std::get<Bytes>(p.value), flags));
        else
            rec.put(p.name, WireValue::of_int(std::get<Fp>(p.value).value(), flags));
    }
    return encode_record(rec);
}

inline Ciphertext deserialize_ciphertext(const Profile& pr, const Bytes& data) {
    LedgerPause pause(pr.ledger());
    WireRecord rec = decode_record(data);
    if (rec.kind != WireKind::Ciphertext) throw error("wire: not a ciphertext record");
    Ciphertext ct{static_cast<SchemeId>(rec.scheme), {}};
    for (const auto& [n, v] : rec.entries) {
        CiphertextPart part;
        part.name = n;
        part.identity_derived = v.identity_derived();
        switch (v.type) {
            case WireValue::Type::Point: part.value = v.as_point(pr); break;
            case WireValue::Type::Ext: part.value = v.as_gt(pr); break;
            case WireValue::Type::Bytes: part.value = v.as_bytes(); break;
            case WireValue::Type::Int: part.value = pr.fr_elem(v.as_int()); break;
        }
        ct.parts.push_back(std::move(part));
    }
    return ct;
}

} // namespace ibetk
