#pragma once

#include <memory>

#include "ibetk/bigint.hpp"
#include "ibetk/ledger.hpp"

namespace ibetk {

// Field context: prime modulus plus the ledger all arithmetic in this field
// reports to. Two contexts with equal moduli are still distinct fields;
// elements never mix across contexts.
class PrimeField {
  public:
    static std::shared_ptr<const PrimeField> create(Int p, std::shared_ptr<OpLedger> ledger) {
        if (p <= 1 || !probably_prime(p)) throw error("PrimeField: modulus is not prime");
        return std::shared_ptr<const PrimeField>(new PrimeField(std::move(p), std::move(ledger)));
    }

    const Int& modulus() const { return p_; }
    OpLedger& ledger() const { return *ledger_; }
    std::shared_ptr<OpLedger> ledger_ptr() const { return ledger_; }

  private:
    PrimeField(Int p, std::shared_ptr<OpLedger> ledger) : p_(std::move(p)), ledger_(std::move(ledger)) {}
    Int p_;
    std::shared_ptr<OpLedger> ledger_;
};

using FieldPtr = std::shared_ptr<const PrimeField>;

// Residue in [0, p). Immutable value; additions are free in the cost model,
// multiplications tick Mul (Sq when the operands are equal).
class Fp {
  public:
    Fp() = default;
    Fp(const FieldPtr& field, Int v) : f_(field.get()) { set(std::move(v)); }
    Fp(const PrimeField* field, Int v) : f_(field) { set(std::move(v)); }

    const Int& value() const { return v_; }
    const PrimeField* field() const { return f_; }
    const Int& modulus() const { return f_->modulus(); }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    friend bool operator==(const Fp& a, const Fp& b) {
        a.check_same(b);
        return a.v_ == b.v_;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    friend Fp operator+(const Fp& a, const Fp& b) {
        a.check_same(b);
        Int r = a.v_ + b.v_;
        if (r >= a.modulus()) r -= a.modulus();
        return Fp::raw(a.f_, std::move(r));
    }

    friend Fp operator-(const Fp& a, const Fp& b) {
        a.check_same(b);
        Int r = a.v_ - b.v_;
        if (r < 0) r += a.modulus();
        return Fp::raw(a.f_, std::move(r));
    }

    Fp operator-() const {
        Int r = v_ == 0 ? Int(0) : Int(modulus() - v_);
        return Fp::raw(f_, std::move(r));
    }

    friend Fp operator*(const Fp& a, const Fp& b) {
        a.check_same(b);
        a.f_->ledger().tick(a.v_ == b.v_ ? Op::Sq : Op::Mul);
        Int r = (a.v_ * b.v_) % a.modulus();
        return Fp::raw(a.f_, std::move(r));
    }

    Fp doubled() const { return *this + *this; }

    Fp times(unsigned long k) const {
        Int r = (v_ * k) % modulus();
        return Fp::raw(f_, std::move(r));
    }

    static Fp raw(const PrimeField* f, Int v) {
        Fp e;
        e.f_ = f;
        e.v_ = std::move(v);
        return e;
    }

  private:
    void set(Int v) {
        v_ = std::move(v);
        mpz_mod(v_.get_mpz_t(), v_.get_mpz_t(), f_->modulus().get_mpz_t());
    }
    void check_same(const Fp& o) const {
        if (f_ != o.f_) throw error("Fp: mismatched field contexts");
    }

    Int v_;
    const PrimeField* f_ = nullptr;
};

inline Fp fp_sq(const Fp& a) { return a * a; }

// Extended-gcd inversion. The Fermat route a^(p-2) exists in the tests as an
// independent oracle.
inline Fp fp_inv(const Fp& a) {
    if (a.is_zero()) throw error("fp_inv: zero has no inverse");
    a.field()->ledger().tick(Op::Inv);
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.value().get_mpz_t(), a.modulus().get_mpz_t()) == 0)
        throw error("fp_inv: not invertible");
    return Fp::raw(a.field(), std::move(r));
}

// Right-to-left binary exponentiation: bitlen(e)-1 squarings plus
// popcount(e) multiplications on the ledger, plus one Exp tick.
inline Fp fp_exp(const Fp& a, const Int& e) {
    if (e < 0) throw error("fp_exp: negative exponent");
    a.field()->ledger().tick(Op::Exp);
    Fp result = Fp::raw(a.field(), 1);
    if (e == 0) return result;
    Fp base = a;
    Int k = e;
    while (true) {
        if (mpz_odd_p(k.get_mpz_t())) result = result * base;
        k >>= 1;
        if (k == 0) break;
        base = base * base;
    }
    return result;
}

inline Fp fp_div(const Fp& a, const Fp& b) { return a * fp_inv(b); }

} // namespace ibetk
