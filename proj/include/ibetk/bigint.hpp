#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "ibetk/hash.hpp"

namespace ibetk {

using Int = mpz_class;

inline std::size_t bit_length(const Int& v) { return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

inline bool bit_at(const Int& v, std::size_t i) { return mpz_tstbit(v.get_mpz_t(), i) != 0; }

inline std::size_t popcount(const Int& v) { return mpz_popcount(v.get_mpz_t()); }

inline bool probably_prime(const Int& v) { return mpz_probab_prime_p(v.get_mpz_t(), 32) != 0; }

// Big-endian byte encoding, minimal length (empty for zero).
inline Bytes to_bytes(const Int& v) {
    if (v == 0) return {};
    std::size_t n = (bit_length(v) + 7) / 8;
    Bytes out(n);
    std::size_t written = 0;
    mpz_export(out.data(), &written, 1, 1, 1, 0, v.get_mpz_t());
    out.resize(written);
    return out;
}

inline Int from_bytes(const Bytes& b) {
    Int v;
    if (!b.empty()) mpz_import(v.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
    return v;
}

inline std::string to_dec(const Int& v) { return v.get_str(10); }

inline Int from_dec(const std::string& s) {
    Int v;
    if (v.set_str(s, 10) != 0) throw error("bad decimal integer: " + s);
    return v;
}

// Deterministic byte generator: SHAKE256 over (seed, block counter). A fixed
// seed reproduces the same stream on any platform, which is what makes the
// CLI transcripts replayable.
class Drbg {
  public:
    explicit Drbg(std::uint64_t seed, std::string_view domain = "drbg") : domain_(domain), seed_(seed) {}

    void fill(std::uint8_t* out, std::size_t len) {
        while (len > 0) {
            if (pos_ == block_.size()) refill();
            std::size_t take = std::min(len, block_.size() - pos_);
            std::copy(block_.begin() + static_cast<long>(pos_), block_.begin() + static_cast<long>(pos_ + take), out);
            pos_ += take;
            out += take;
            len -= take;
        }
    }

    Bytes bytes(std::size_t len) {
        Bytes out(len);
        fill(out.data(), len);
        return out;
    }

    std::uint64_t next_u64() {
        std::uint8_t b[8];
        fill(b, 8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | b[i];
        return v;
    }

    // Uniform in [0, bound) by rejection.
    Int below(const Int& bound) {
        if (bound <= 0) throw error("Drbg::below: bound must be positive");
        std::size_t bits = bit_length(bound);
        std::size_t nbytes = (bits + 7) / 8;
        while (true) {
            Bytes raw = bytes(nbytes);
            Int v = from_bytes(raw);
            v >>= static_cast<unsigned long>(nbytes * 8 - bits);
            if (v < bound) return v;
        }
    }

    // Uniform in [1, bound).
    Int nonzero_below(const Int& bound) {
        while (true) {
            Int v = below(bound);
            if (v != 0) return v;
        }
    }

    // Deterministic child generator, for fanning out independent streams.
    Drbg fork(std::string_view label) {
        Drbg child(next_u64(), std::string(domain_) + "/" + std::string(label));
        return child;
    }

  private:
    void refill() {
        Xof x("ibetk/" + domain_);
        x.feed_u64(seed_);
        x.feed_u64(counter_++);
        block_ = x.squeeze(512);
        pos_ = 0;
    }

    std::string domain_;
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    Bytes block_;
    std::size_t pos_ = 0;
};

} // namespace ibetk
