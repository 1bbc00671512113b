#pragma once

#include "ibetk/novel/fs.hpp"
#include "ibetk/schemes/registry.hpp"

namespace ibetk {

inline Bytes serialize_hibe_key(const Profile& pr, const HibeKey& key) {
    LedgerPause pause(pr.ledger());
    WireRecord rec;
    rec.kind = WireKind::UserKey;
    rec.scheme = static_cast<std::uint8_t>(SchemeId::OurHibe);
    rec.put("__depth", WireValue::of_int(key.depth()));
    for (unsigned i = 0; i < key.depth(); ++i)
        rec.put("I" + std::to_string(i + 1), WireValue::of_int(key.ids[i]));
    rec.put("d0", WireValue::of_point(pr.curve(), key.d0));
    rec.put("t0", WireValue::of_point(pr.curve(), key.t0));
    for (std::size_t i = 0; i < key.tail.size(); ++i)
        rec.put("tail" + std::to_string(i), WireValue::of_point(pr.curve(), key.tail[i]));
    rec.put("corr", WireValue::of_point(pr.curve(), key.corr));
    return encode_record(rec);
}

inline HibeKey deserialize_hibe_key(const Profile& pr, const Bytes& data) {
    LedgerPause pause(pr.ledger());
    WireRecord rec = decode_record(data);
    if (rec.kind != WireKind::UserKey || rec.scheme != static_cast<std::uint8_t>(SchemeId::OurHibe))
        throw error("wire: not a hibe key record");
    HibeKey key;
    unsigned depth = static_cast<unsigned>(rec.get("__depth").as_int().get_ui());
    for (unsigned i = 0; i < depth; ++i) key.ids.push_back(rec.get("I" + std::to_string(i + 1)).as_int());
    key.d0 = rec.get("d0").as_point(pr);
    key.t0 = rec.get("t0").as_point(pr);
    for (std::size_t i = 0; rec.has("tail" + std::to_string(i)); ++i)
        key.tail.push_back(rec.get("tail" + std::to_string(i)).as_point(pr));
    key.corr = rec.get("corr").as_point(pr);
    return key;
}

inline Bytes serialize_hibe_ct(const Profile& pr, const HibeCiphertext& ct) {
    LedgerPause pause(pr.ledger());
    WireRecord rec;
    rec.kind = WireKind::Ciphertext;
    rec.scheme = static_cast<std::uint8_t>(SchemeId::OurHibe);
    rec.put("__depth", WireValue::of_int(ct.depth));
    rec.put("uprime", WireValue::of_point(pr.curve(), ct.uprime));
    rec.put("udouble", WireValue::of_point(pr.curve(), ct.udouble));
    rec.put("c", WireValue::of_gt(ct.c));
    return encode_record(rec);
}

inline HibeCiphertext deserialize_hibe_ct(const Profile& pr, const Bytes& data) {
    LedgerPause pause(pr.ledger());
    WireRecord rec = decode_record(data);
    if (rec.kind != WireKind::Ciphertext || rec.scheme != static_cast<std::uint8_t>(SchemeId::OurHibe))
        throw error("wire: not a hibe ciphertext record");
    HibeCiphertext ct;
    ct.depth = static_cast<unsigned>(rec.get("__depth").as_int().get_ui());
    ct.uprime = rec.get("uprime").as_point(pr);
    ct.udouble = rec.get("udouble").as_point(pr);
    ct.c = rec.get("c").as_gt(pr);
    return ct;
}

// Bundle records carry the period index and every node word explicitly.
inline Bytes serialize_fs_bundle(const Profile& pr, const FsKeyBundle& b) {
    LedgerPause pause(pr.ledger());
    WireRecord rec;
    rec.kind = WireKind::FsBundle;
    rec.scheme = static_cast<std::uint8_t>(SchemeId::FsHibe);
    rec.put("__period", WireValue::of_int(b.period));
    rec.put("__ell", WireValue::of_int(b.ell));
    rec.put("__depth", WireValue::of_int(b.depth()));
    for (unsigned i = 0; i < b.depth(); ++i)
        rec.put("I" + std::to_string(i + 1), WireValue::of_int(b.ids[i]));
    rec.put("__chain", WireValue::of_bytes(b.chain));
    rec.put("t0", WireValue::of_point(pr.curve(), b.t0));
    for (const auto& [word, node] : b.nodes) {
        std::string base = "n/" + word;
        rec.put(base + "/d0", WireValue::of_point(pr.curve(), node.d0));
        rec.put(base + "/corr", WireValue::of_point(pr.curve(), node.corr));
        for (const auto& [cell, pt] : node.tail)
            rec.put(base + "/t" + std::to_string(cell.first) + "_" + std::to_string(cell.second),
                    WireValue::of_point(pr.curve(), pt));
    }
    return encode_record(rec);
}

inline FsKeyBundle deserialize_fs_bundle(const Profile& pr, const Bytes& data) {
    LedgerPause pause(pr.ledger());
    WireRecord rec = decode_record(data);
    if (rec.kind != WireKind::FsBundle) throw error("wire: not a key bundle record");
    FsKeyBundle b;
    b.period = rec.get("__period").as_int();
    b.ell = static_cast<unsigned>(rec.get("__ell").as_int().get_ui());
    unsigned depth = static_cast<unsigned>(rec.get("__depth").as_int().get_ui());
    for (unsigned i = 0; i < depth; ++i) b.ids.push_back(rec.get("I" + std::to_string(i + 1)).as_int());
    b.chain = rec.get("__chain").as_bytes();
    b.t0 = rec.get("t0").as_point(pr);
    for (const auto& [name, v] : rec.entries) {
        if (name.rfind("n/", 0) != 0) continue;
        auto second = name.find('/', 2);
        std::string word = name.substr(2, second - 2);
        std::string field = name.substr(second + 1);
        FsNodeKey& node = b.nodes[word];
        node.word = word;
        if (field == "d0") node.d0 = v.as_point(pr);
        else if (field == "corr") node.corr = v.as_point(pr);
        else if (field[0] == 't') {
            auto us = field.find('_');
            unsigned k = static_cast<unsigned>(std::stoul(field.substr(1, us - 1)));
            unsigned m = static_cast<unsigned>(std::stoul(field.substr(us + 1)));
            node.tail[{k, m}] = v.as_point(pr);
        }
    }
    return b;
}

} // namespace ibetk
