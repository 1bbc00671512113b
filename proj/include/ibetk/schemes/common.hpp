#pragma once

#include <optional>
#include <variant>

#include "ibetk/serialize.hpp"

namespace ibetk {

enum class SchemeId : std::uint8_t {
    BF_Galindo = 1,
    SK_ChenCheng = 2,
    BB1_Full = 3,
    BB2_CPA = 4,
    Waters_Naccache = 5,
    Gentry_Full = 6,
    OurIbe = 7,
    OurHibe = 8,
    FsHibe = 9,
};

inline const char* scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::BF_Galindo: return "bf";
        case SchemeId::SK_ChenCheng: return "sk";
        case SchemeId::BB1_Full: return "bb1";
        case SchemeId::BB2_CPA: return "bb2";
        case SchemeId::Waters_Naccache: return "waters";
        case SchemeId::Gentry_Full: return "gentry";
        case SchemeId::OurIbe: return "ours";
        case SchemeId::OurHibe: return "hibe";
        case SchemeId::FsHibe: return "fs";
    }
    return "?";
}

struct Identity {
    Bytes raw;

    static Identity of(std::string_view s) {
        if (s.empty()) throw error("identity: empty");
        return Identity{Bytes(s.begin(), s.end())};
    }
    static Identity of_bytes(Bytes b) {
        if (b.empty()) throw error("identity: empty");
        return Identity{std::move(b)};
    }
};

// Message domain is scheme-specific: n-bit strings for the hash-masked
// schemes, group elements for the others.
struct Message {
    enum class Domain { Bits, Group };
    Domain domain = Domain::Bits;
    Bytes bits;
    Gt elem;

    static Message of_bits(Bytes b) { return Message{Domain::Bits, std::move(b), Gt()}; }
    static Message of_gt(Gt g) { return Message{Domain::Group, {}, std::move(g)}; }
};

// Named element bags backing params / master secrets / user keys.
struct NamedElems {
    std::vector<std::pair<std::string, Point>> points;
    std::vector<std::pair<std::string, Gt>> gts;
    std::vector<std::pair<std::string, Fp>> scalars; // Z_r values
    std::vector<std::pair<std::string, Bytes>> blobs;

    const Point& point(std::string_view name) const { return find(points, name); }
    const Gt& gt(std::string_view name) const { return find(gts, name); }
    const Fp& scalar(std::string_view name) const { return find(scalars, name); }
    const Bytes& blob(std::string_view name) const { return find(blobs, name); }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& [n, v] : points) out.push_back(n);
        for (const auto& [n, v] : gts) out.push_back(n);
        for (const auto& [n, v] : scalars) out.push_back(n);
        for (const auto& [n, v] : blobs) out.push_back(n);
        return out;
    }

  private:
    template <class V>
    static const V& find(const std::vector<std::pair<std::string, V>>& vec, std::string_view name) {
        for (const auto& [n, v] : vec)
            if (n == name) return v;
        throw error("missing element: " + std::string(name));
    }
};

struct ParamsBundle {
    SchemeId scheme;
    unsigned n_bits = 128;
    NamedElems pub;
};

struct MasterSecret {
    SchemeId scheme;
    NamedElems sec;
};

struct UserKey {
    SchemeId scheme;
    Bytes identity;
    NamedElems comp;
};

// Ordered, tagged ciphertext parts. identity_derived marks parts whose value
// depends on the recipient identity (the structural anonymity signal).
struct CiphertextPart {
    std::string name;
    std::variant<Point, Gt, Bytes, Fp> value;
    bool identity_derived = false;

    const Point& point() const { return std::get<Point>(value); }
    const Gt& gt() const { return std::get<Gt>(value); }
    const Bytes& bytes() const { return std::get<Bytes>(value); }
    const Fp& scalar() const { return std::get<Fp>(value); }
};

struct Ciphertext {
    SchemeId scheme;
    std::vector<CiphertextPart> parts;

    const CiphertextPart& part(std::string_view name) const {
        for (const auto& p : parts)
            if (p.name == name) return p;
        throw error("ciphertext: missing part " + std::string(name));
    }
    bool structurally_anonymous() const {
        for (const auto& p : parts)
            if (p.identity_derived) return false;
        return true;
    }
};

struct SchemeContext {
    const Profile& profile;
    unsigned n_bits = 128;
    unsigned waters_words = 4; // identity split for the word-based scheme

    const Profile& pr() const { return profile; }
    std::size_t n_bytes() const { return n_bits / 8; }
};

// Message-length admissibility: byte-aligned and bounded by what two curve
// coordinates can carry.
inline void check_message_bits(const Profile& pr, unsigned n_bits) {
    if (n_bits == 0 || n_bits % 8 != 0) throw error("setup: message bits must be a positive multiple of 8");
    if (n_bits > 2 * bit_length(pr.p())) throw error("setup: subgroup too small for message length");
}

// --- domain-separated hash suite -----------------------------------------

inline Bytes gt_bytes(const Gt& v) {
    Xof x("ibetk/gtrepr");
    x.feed(to_bytes(v.value().c0().value()));
    x.feed(to_bytes(v.value().c1().value()));
    return x.squeeze(32);
}

inline Bytes point_bytes(const Profile& pr, const Point& p) {
    LedgerPause pause(pr.ledger());
    Xof x("ibetk/ptrepr");
    if (p.is_infinity()) {
        x.feed_u64(0);
    } else {
        Point a = pr.curve().to_affine(p);
        x.feed(to_bytes(a.x().value()));
        x.feed(to_bytes(a.y().value()));
    }
    return x.squeeze(32);
}

// Hash to Z_m under a role tag ("H1", "H3", ...) and the scheme id.
class FieldHash {
  public:
    FieldHash(std::string_view role, SchemeId scheme) : x_("ibetk/hash") {
        x_.feed(role);
        x_.feed_u64(static_cast<std::uint64_t>(scheme));
    }
    FieldHash& feed(const Bytes& b) {
        x_.feed(b);
        return *this;
    }
    FieldHash& feed(const Gt& g) { return feed(gt_bytes(g)); }
    FieldHash& feed_point(const Profile& pr, const Point& p) { return feed(point_bytes(pr, p)); }

    Fp into(const FieldPtr& field) const {
        Bytes raw = x_.squeeze((bit_length(field->modulus()) + 7) / 8 + 16);
        return Fp(field, from_bytes(raw));
    }
    // nonzero variant for H3-style exponents
    Fp into_nonzero(const FieldPtr& field) const {
        Fp v = into(field);
        if (!v.is_zero()) return v;
        return Fp::raw(field.get(), 1);
    }

  private:
    Xof x_;
};

// n-bit mask derived from key material (H2/H4 roles).
inline Bytes mask_bytes(std::string_view role, SchemeId scheme, const Bytes& material,
                        std::size_t n_bytes) {
    Xof x("ibetk/mask");
    x.feed(role);
    x.feed_u64(static_cast<std::uint64_t>(scheme));
    x.feed(material);
    return x.squeeze(n_bytes);
}

inline Bytes xor_mask(const Bytes& data, std::string_view role, SchemeId scheme,
                      const Bytes& material) {
    Bytes out = data;
    xor_into(out, mask_bytes(role, scheme, material, data.size()));
    return out;
}

// Uniform scalar in Z_r (optionally nonzero), drawn from the call's rng.
inline Fp random_zr(const Profile& pr, Drbg& rng, bool nonzero = true) {
    LedgerPause pause(pr.ledger());
    Int v = nonzero ? rng.nonzero_below(pr.r()) : rng.below(pr.r());
    return pr.fr_elem(v);
}

} // namespace ibetk
