#pragma once

#include "ibetk/field.hpp"

namespace ibetk {

// Quadratic extension F_p[u]/(u^2+u+1). Irreducible exactly when p = 2 mod 3,
// which is the curve family used throughout; u is then a primitive cube root
// of unity and doubles as the distortion-map constant.
class QuadExt {
  public:
    static std::shared_ptr<const QuadExt> create(FieldPtr base) {
        if (mpz_fdiv_ui(base->modulus().get_mpz_t(), 3) != 2)
            throw error("QuadExt: u^2+u+1 reducible, need p = 2 mod 3");
        return std::shared_ptr<const QuadExt>(new QuadExt(std::move(base)));
    }

    const FieldPtr& base() const { return base_; }
    OpLedger& ledger() const { return base_->ledger(); }
    static constexpr unsigned degree() { return 2; }

  private:
    explicit QuadExt(FieldPtr base) : base_(std::move(base)) {}
    FieldPtr base_;
};

using ExtPtr = std::shared_ptr<const QuadExt>;

// Element a0 + a1*u of F_{p^2}.
class Fp2 {
  public:
    Fp2() = default;
    Fp2(const QuadExt* ext, Fp a0, Fp a1) : ext_(ext), a0_(std::move(a0)), a1_(std::move(a1)) {}

    static Fp2 from_base(const ExtPtr& ext, const Fp& a0) {
        return Fp2(ext.get(), a0, Fp::raw(a0.field(), 0));
    }
    static Fp2 make(const QuadExt* ext, Int c0, Int c1) {
        const PrimeField* f = ext->base().get();
        return Fp2(ext, Fp(f, std::move(c0)), Fp(f, std::move(c1)));
    }
    static Fp2 make(const ExtPtr& ext, Int c0, Int c1) { return make(ext.get(), std::move(c0), std::move(c1)); }
    static Fp2 one(const ExtPtr& ext) { return make(ext, 1, 0); }
    static Fp2 zero(const ExtPtr& ext) { return make(ext, 0, 0); }
    Fp2 one_like() const { return make(ext_, 1, 0); }

    const Fp& c0() const { return a0_; }
    const Fp& c1() const { return a1_; }
    const QuadExt* ext() const { return ext_; }
    bool is_zero() const { return a0_.is_zero() && a1_.is_zero(); }
    bool is_one() const { return a0_.is_one() && a1_.is_zero(); }
    bool in_base() const { return a1_.is_zero(); }

    friend bool operator==(const Fp2& a, const Fp2& b) { return a.a0_ == b.a0_ && a.a1_ == b.a1_; }
    friend bool operator!=(const Fp2& a, const Fp2& b) { return !(a == b); }

    friend Fp2 operator+(const Fp2& a, const Fp2& b) {
        a.check_same(b);
        return Fp2(a.ext_, a.a0_ + b.a0_, a.a1_ + b.a1_);
    }
    friend Fp2 operator-(const Fp2& a, const Fp2& b) {
        a.check_same(b);
        return Fp2(a.ext_, a.a0_ - b.a0_, a.a1_ - b.a1_);
    }
    Fp2 operator-() const { return Fp2(ext_, -a0_, -a1_); }

    Fp2 doubled() const { return *this + *this; }

    // Karatsuba product reduced by u^2 = -u-1: three coefficient products.
    friend Fp2 operator*(const Fp2& a, const Fp2& b) {
        a.check_same(b);
        bool square = (a == b);
        a.ledger().tick(square ? Op::SqK : Op::MulK);
        Fp m0 = a.a0_ * b.a0_;
        Fp m1 = a.a1_ * b.a1_;
        Fp m2 = (a.a0_ + a.a1_) * (b.a0_ + b.a1_);
        Fp cross = m2 - m0 - m1;
        return Fp2(a.ext_, m0 - m1, cross - m1);
    }

    // Multiply by a base-field scalar: coefficient-wise, two base Mul.
    Fp2 scaled(const Fp& s) const { return Fp2(ext_, a0_ * s, a1_ * s); }

    // Frobenius x -> x^p; for p = 2 mod 3 it sends u to u^2 = -1-u, so the
    // conjugate costs only additions.
    Fp2 conj() const { return Fp2(ext_, a0_ - a1_, -a1_); }

    OpLedger& ledger() const { return ext_->ledger(); }

  private:
    void check_same(const Fp2& o) const {
        if (ext_ != o.ext_) throw error("Fp2: mismatched extension contexts");
    }

    const QuadExt* ext_ = nullptr;
    Fp a0_, a1_;
};

inline Fp2 ext_sq(const Fp2& a) { return a * a; }

// Norm-based inversion: a^-1 = conj(a) / N(a) with N(a) = a0^2 - a0*a1 + a1^2.
inline Fp2 ext_inv(const Fp2& a) {
    if (a.is_zero()) throw error("ext_inv: zero has no inverse");
    a.ledger().tick(Op::InvK);
    Fp n = fp_sq(a.c0()) - a.c0() * a.c1() + fp_sq(a.c1());
    Fp ninv = fp_inv(n);
    Fp2 c = a.conj();
    return Fp2(a.ext(), c.c0() * ninv, c.c1() * ninv);
}

namespace detail {

// Right-to-left square-and-multiply over Fp2 with a caller-chosen
// accumulator seed. Seeding with m fuses a message multiplication into the
// exponentiation at no extra top-level product.
inline Fp2 ext_pow_seeded(Fp2 acc, const Fp2& base_in, const Int& e) {
    if (e == 0) return acc;
    Fp2 base = base_in;
    Int k = e;
    while (true) {
        if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
        k >>= 1;
        if (k == 0) break;
        base = base * base;
    }
    return acc;
}

} // namespace detail

// Extension exponentiation is unit-priced: one ExpK tick, with the internal
// square-multiply schedule not itemized (the cost model prices Exp as a
// closed form). Base-field fp_exp stays itemized by contrast.
inline Fp2 ext_pow(const Fp2& a, const Int& e) {
    if (e < 0) throw error("ext_pow: negative exponent");
    a.ledger().tick(Op::ExpK);
    LedgerPause pause(a.ledger());
    return detail::ext_pow_seeded(a.one_like(), a, e);
}

inline Fp2 ext_div(const Fp2& a, const Fp2& b) { return a * ext_inv(b); }

} // namespace ibetk
