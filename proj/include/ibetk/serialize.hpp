#pragma once

#include <zlib.h>

#include "ibetk/pairing.hpp"

namespace ibetk {

// Self-describing wire value. Records store raw numbers; callers rebind them
// to field/curve contexts on load.
struct WireValue {
    enum class Type : std::uint8_t { Int = 1, Bytes = 2, Point = 3, Ext = 4 };
    Type type = Type::Int;
    std::uint8_t flags = 0; // bit 0: derived from the recipient identity
    Int i;                  // Int
    Bytes b;                // Bytes
    bool inf = false;       // Point
    Int x, y;               // Point (affine)
    Int c0, c1;             // Ext

    static WireValue of_int(Int v, std::uint8_t flags = 0) {
        WireValue w;
        w.type = Type::Int;
        w.flags = flags;
        w.i = std::move(v);
        return w;
    }
    static WireValue of_bytes(Bytes v, std::uint8_t flags = 0) {
        WireValue w;
        w.type = Type::Bytes;
        w.flags = flags;
        w.b = std::move(v);
        return w;
    }
    static WireValue of_point(const Curve& curve, const PointT<Fp>& p, std::uint8_t flags = 0) {
        WireValue w;
        w.type = Type::Point;
        w.flags = flags;
        if (p.is_infinity()) {
            w.inf = true;
        } else {
            auto a = curve.to_affine(p);
            w.x = a.x().value();
            w.y = a.y().value();
        }
        return w;
    }
    static WireValue of_ext(const Fp2& v, std::uint8_t flags = 0) {
        WireValue w;
        w.type = Type::Ext;
        w.flags = flags;
        w.c0 = v.c0().value();
        w.c1 = v.c1().value();
        return w;
    }
    static WireValue of_gt(const Gt& v, std::uint8_t flags = 0) { return of_ext(v.value(), flags); }

    bool identity_derived() const { return (flags & 1) != 0; }

    Point as_point(const Profile& pr) const {
        if (type != Type::Point) throw error("wire: not a point");
        if (inf) return Point::infinity();
        Point p = Point::affine(pr.fp_elem(x), pr.fp_elem(y));
        if (!pr.curve().on_curve(p)) throw error("wire: point not on curve");
        return p;
    }
    Fp2 as_ext(const Profile& pr) const {
        if (type != Type::Ext) throw error("wire: not an extension element");
        return pr.fp2_elem(c0, c1);
    }
    Gt as_gt(const Profile& pr) const { return Gt(as_ext(pr)); }
    const Int& as_int() const {
        if (type != Type::Int) throw error("wire: not an integer");
        return i;
    }
    const Bytes& as_bytes() const {
        if (type != Type::Bytes) throw error("wire: not a byte string");
        return b;
    }
};

// Record kinds on the wire.
enum class WireKind : std::uint8_t {
    Params = 1,
    MasterSecret = 2,
    UserKey = 3,
    Ciphertext = 4,
    FsBundle = 5,
};

struct WireRecord {
    WireKind kind = WireKind::Params;
    std::uint8_t scheme = 0;
    std::vector<std::pair<std::string, WireValue>> entries;

    void put(std::string name, WireValue v) { entries.emplace_back(std::move(name), std::move(v)); }

    const WireValue& get(std::string_view name) const {
        for (const auto& [n, v] : entries)
            if (n == name) return v;
        throw error("wire: missing entry " + std::string(name));
    }
    bool has(std::string_view name) const {
        for (const auto& [n, v] : entries)
            if (n == name) return true;
        return false;
    }
};

namespace detail {

inline void put_u16(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}
inline void put_u32(Bytes& out, std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>((v >> s) & 0xff));
}
inline void put_blob(Bytes& out, const Bytes& b) {
    put_u32(out, static_cast<std::uint32_t>(b.size()));
    out.insert(out.end(), b.begin(), b.end());
}
inline void put_str(Bytes& out, const std::string& s) {
    if (s.size() > 255) throw error("wire: name too long");
    out.push_back(static_cast<std::uint8_t>(s.size()));
    out.insert(out.end(), s.begin(), s.end());
}

class Reader {
  public:
    explicit Reader(const Bytes& data) : d_(data) {}
    std::uint8_t u8() {
        need(1);
        return d_[pos_++];
    }
    std::uint16_t u16() { return static_cast<std::uint16_t>((u8() << 8) | u8()); }
    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | u8();
        return v;
    }
    Bytes blob() {
        std::uint32_t n = u32();
        need(n);
        Bytes out(d_.begin() + static_cast<long>(pos_), d_.begin() + static_cast<long>(pos_ + n));
        pos_ += n;
        return out;
    }
    std::string str() {
        std::uint8_t n = u8();
        need(n);
        std::string out(d_.begin() + static_cast<long>(pos_), d_.begin() + static_cast<long>(pos_ + n));
        pos_ += n;
        return out;
    }
    std::size_t pos() const { return pos_; }

  private:
    void need(std::size_t n) const {
        if (pos_ + n > d_.size()) throw error("wire: truncated record");
    }
    const Bytes& d_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline constexpr std::uint16_t kWireVersion = 1;

inline Bytes encode_record(const WireRecord& rec) {
    Bytes out = {'I', 'B', 'T', 'K'};
    detail::put_u16(out, kWireVersion);
    out.push_back(static_cast<std::uint8_t>(rec.kind));
    out.push_back(rec.scheme);
    detail::put_u32(out, static_cast<std::uint32_t>(rec.entries.size()));
    for (const auto& [name, v] : rec.entries) {
        detail::put_str(out, name);
        out.push_back(static_cast<std::uint8_t>(v.type));
        out.push_back(v.flags);
        switch (v.type) {
            case WireValue::Type::Int:
                detail::put_blob(out, to_bytes(v.i));
                break;
            case WireValue::Type::Bytes:
                detail::put_blob(out, v.b);
                break;
            case WireValue::Type::Point:
                out.push_back(v.inf ? 1 : 0);
                if (!v.inf) {
                    detail::put_blob(out, to_bytes(v.x));
                    detail::put_blob(out, to_bytes(v.y));
                }
                break;
            case WireValue::Type::Ext:
                detail::put_blob(out, to_bytes(v.c0));
                detail::put_blob(out, to_bytes(v.c1));
                break;
        }
    }
    std::uint32_t crc = static_cast<std::uint32_t>(::crc32(0, out.data(), static_cast<uInt>(out.size())));
    detail::put_u32(out, crc);
    return out;
}

inline WireRecord decode_record(const Bytes& data) {
    if (data.size() < 4 + 2 + 1 + 1 + 4 + 4) throw error("wire: record too short");
    std::uint32_t want = 0;
    for (int i = 0; i < 4; ++i) want = (want << 8) | data[data.size() - 4 + static_cast<std::size_t>(i)];
    Bytes body(data.begin(), data.end() - 4);
    std::uint32_t got = static_cast<std::uint32_t>(::crc32(0, body.data(), static_cast<uInt>(body.size())));
    if (want != got) throw error("wire: checksum mismatch");
    detail::Reader r(body);
    if (r.u8() != 'I' || r.u8() != 'B' || r.u8() != 'T' || r.u8() != 'K') throw error("wire: bad magic");
    if (r.u16() != kWireVersion) throw error("wire: unsupported version");
    WireRecord rec;
    rec.kind = static_cast<WireKind>(r.u8());
    rec.scheme = r.u8();
    std::uint32_t count = r.u32();
    for (std::uint32_t i = 0; i < count; ++i) {
        std::string name = r.str();
        WireValue v;
        v.type = static_cast<WireValue::Type>(r.u8());
        v.flags = r.u8();
        switch (v.type) {
            case WireValue::Type::Int:
                v.i = from_bytes(r.blob());
                break;
            case WireValue::Type::Bytes:
                v.b = r.blob();
                break;
            case WireValue::Type::Point:
                v.inf = r.u8() != 0;
                if (!v.inf) {
                    v.x = from_bytes(r.blob());
                    v.y = from_bytes(r.blob());
                }
                break;
            case WireValue::Type::Ext:
                v.c0 = from_bytes(r.blob());
                v.c1 = from_bytes(r.blob());
                break;
            default:
                throw error("wire: unknown value type");
        }
        rec.put(std::move(name), std::move(v));
    }
    return rec;
}

// Hex armor: header/footer lines around 64-column lowercase hex.
inline std::string to_armor(const Bytes& data, const std::string& label) {
    static const char* digits = "0123456789abcdef";
    std::string out = "-----BEGIN IBETK " + label + "-----\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0xf]);
        if ((i + 1) % 32 == 0) out.push_back('\n');
    }
    if (data.size() % 32 != 0) out.push_back('\n');
    out += "-----END IBETK " + label + "-----\n";
    return out;
}

inline Bytes from_armor(const std::string& text) {
    Bytes out;
    int hi = -1;
    bool in_body = false;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("-----BEGIN", 0) == 0) {
            in_body = true;
            continue;
        }
        if (line.rfind("-----END", 0) == 0) break;
        if (!in_body) continue;
        for (char c : line) {
            int v;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
            else if (c == '\r' || c == ' ') continue;
            else throw error("armor: bad hex character");
            if (hi < 0) {
                hi = v;
            } else {
                out.push_back(static_cast<std::uint8_t>((hi << 4) | v));
                hi = -1;
            }
        }
    }
    if (hi >= 0) throw error("armor: odd hex length");
    return out;
}

} // namespace ibetk
