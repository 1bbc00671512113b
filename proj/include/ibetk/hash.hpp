#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <openssl/evp.h>

namespace ibetk {

using Bytes = std::vector<std::uint8_t>;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// SHAKE256 with explicit output length. All scheme hash functions H1..H4 are
// derived from this one XOF under distinct domain-separation tags, so a tag
// collision is the only way two hash roles can interact.
inline Bytes shake256(std::initializer_list<std::pair<const void*, std::size_t>> parts,
                      std::size_t out_len) {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw error("shake256: ctx alloc failed");
    Bytes out(out_len);
    if (EVP_DigestInit_ex(ctx, EVP_shake256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw error("shake256: init failed");
    }
    for (const auto& [ptr, len] : parts) {
        if (len != 0 && EVP_DigestUpdate(ctx, ptr, len) != 1) {
            EVP_MD_CTX_free(ctx);
            throw error("shake256: update failed");
        }
    }
    if (EVP_DigestFinalXOF(ctx, out.data(), out_len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw error("shake256: final failed");
    }
    EVP_MD_CTX_free(ctx);
    return out;
}

// Incremental front end: feed length-prefixed fields, then squeeze.
// Length prefixes keep multi-field inputs injective.
class Xof {
  public:
    explicit Xof(std::string_view tag) { feed(tag.data(), tag.size()); }

    Xof& feed(const void* data, std::size_t len) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        append_len(len);
        buf_.insert(buf_.end(), p, p + len);
        return *this;
    }
    Xof& feed(const Bytes& b) { return feed(b.data(), b.size()); }
    Xof& feed(std::string_view s) { return feed(s.data(), s.size()); }
    Xof& feed_u64(std::uint64_t v) {
        std::uint8_t b[8];
        for (int i = 7; i >= 0; --i) { b[i] = static_cast<std::uint8_t>(v & 0xff); v >>= 8; }
        return feed(b, 8);
    }

    Bytes squeeze(std::size_t out_len) const {
        return shake256({{buf_.data(), buf_.size()}}, out_len);
    }

  private:
    void append_len(std::size_t len) {
        for (int i = 7; i >= 0; --i)
            buf_.push_back(static_cast<std::uint8_t>((static_cast<std::uint64_t>(len) >> (8 * i)) & 0xff));
    }
    Bytes buf_;
};

inline void xor_into(Bytes& dst, const Bytes& mask) {
    if (dst.size() != mask.size()) throw error("xor_into: length mismatch");
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= mask[i];
}

} // namespace ibetk
