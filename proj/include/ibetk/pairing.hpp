#pragma once

#include "ibetk/profiles.hpp"

namespace ibetk {

// Element of the order-r subgroup of F_{p^2}^*, i.e. a reduced Tate value.
class Gt {
  public:
    Gt() = default;
    explicit Gt(Fp2 v) : v_(std::move(v)) {}

    static Gt one(const Profile& pr) { return Gt(Fp2::one(pr.fp2())); }

    const Fp2& value() const { return v_; }
    bool is_identity() const { return v_.is_one(); }

    friend bool operator==(const Gt& a, const Gt& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Gt& a, const Gt& b) { return !(a == b); }

    friend Gt operator*(const Gt& a, const Gt& b) { return Gt(a.v_ * b.v_); }

    friend Gt operator/(const Gt& a, const Gt& b) {
        a.v_.ledger().tick(Op::DivK);
        return Gt(a.v_ * ext_inv(b.v_));
    }

    Gt inverse() const { return Gt(ext_inv(v_)); }

    // Unit-priced exponentiation: one ExpK tick, internals not itemized.
    Gt pow(const Int& e) const {
        Int k = e;
        Fp2 base = v_;
        if (k < 0) {
            LedgerPause pause(v_.ledger());
            base = ext_inv(base);
            k = -k;
        }
        v_.ledger().tick(Op::ExpK);
        LedgerPause pause(v_.ledger());
        return Gt(detail::ext_pow_seeded(v_.one_like(), base, k));
    }

    // m * this^e in a single right-to-left pass: the message ride-along
    // costs no top-level multiplication.
    Gt pow_seeded(const Gt& seed, const Int& e) const {
        if (e < 0) throw error("Gt::pow_seeded: negative exponent");
        v_.ledger().tick(Op::ExpK);
        LedgerPause pause(v_.ledger());
        return Gt(detail::ext_pow_seeded(seed.v_, v_, e));
    }

  private:
    Fp2 v_;
};

namespace detail {

// One Miller evaluation stream: accumulator point T walking multiples of P,
// with the divisor [A] - [B] it is evaluated against (A = Q + S, B = S).
struct MillerChain {
    Point T;
    Point base;    // P, affine
    ExtPoint A;    // affine over F_{p^2}
    Point B;       // affine over F_p
};

struct MillerAccum {
    Fp2 num, den;
};

inline Fp2 embed(const ExtPtr& ext, const Fp& v) { return Fp2::from_base(ext, v); }

// Tangent-line and vertical evaluation for a doubling step. Derives its own
// Y^2 and Z3^2 so one iteration's ledger diff equals the unit-cost model's
// 4MulK + 2SqK + (6k+7)Mul + 7Sq at k = 2.
inline bool dbl_eval(const Profile& pr, const TangentLine<Fp>& ln, const MillerChain& ch,
                     Fp2& lA, Fp& lB, Fp2& vA, Fp& vB) {
    Fp YY = ln.Y * ln.Y;
    Fp twoYY = YY + YY;
    Fp VZZ = ln.Z3 * ln.Z3;
    // line at A (extension point): W*y - 2Y^2 - M*(ZZ*x - X)
    Fp2 t = ch.A.x().scaled(ln.ZZ) - embed(pr.fp2(), ln.X);
    lA = ch.A.y().scaled(ln.W) - t.scaled(ln.M) - embed(pr.fp2(), twoYY);
    // line at B (base point)
    lB = ln.W * ch.B.y() - twoYY - ln.M * (ln.ZZ * ch.B.x() - ln.X);
    // verticals at [2]T
    vA = ch.A.x().scaled(VZZ) - embed(pr.fp2(), ln.X3);
    vB = VZZ * ch.B.x() - ln.X3;
    return !lA.is_zero() && !lB.is_zero() && !vA.is_zero() && !vB.is_zero();
}

// Chord-line evaluation for an addition step; when T + P = O the chord is
// the vertical through P and there is no separate vertical factor.
inline bool add_eval(const Profile& pr, const ChordLine<Fp>& ln, const MillerChain& ch,
                     Fp2& lA, Fp& lB, Fp2& vA, Fp& vB) {
    Fp2 dyA = ch.A.y() - embed(pr.fp2(), ln.yP);
    Fp2 dxA = ch.A.x() - embed(pr.fp2(), ln.xP);
    lA = dyA.scaled(ln.Z3) - dxA.scaled(ln.R);
    lB = ln.Z3 * (ch.B.y() - ln.yP) - ln.R * (ch.B.x() - ln.xP);
    if (lA.is_zero() || lB.is_zero()) return false;
    if (ln.at_infinity) return true;
    Fp VZZ = ln.Z3 * ln.Z3;
    vA = ch.A.x().scaled(VZZ) - embed(pr.fp2(), ln.X3);
    vB = VZZ * ch.B.x() - ln.X3;
    return !vA.is_zero() && !vB.is_zero();
}

// One loop iteration (doubling step, plus an addition step when the bit is
// set) applied to every chain, all contributing factors to one accumulator.
// Returns false when a degenerate evaluation forces a fresh auxiliary point.
inline bool miller_bit(const Profile& pr, std::vector<MillerChain>& chains, MillerAccum& f,
                       bool bit) {
    const Curve& curve = pr.curve();
    f.num = f.num * f.num;
    f.den = f.den * f.den;
    for (auto& ch : chains) {
        TangentLine<Fp> ln;
        ch.T = curve.dbl(ch.T, &ln);
        Fp2 lA, vA;
        Fp lB, vB;
        if (!dbl_eval(pr, ln, ch, lA, lB, vA, vB)) return false;
        f.num = f.num * lA;
        f.num = f.num * embed(pr.fp2(), vB);
        f.den = f.den * embed(pr.fp2(), lB);
        f.den = f.den * vA;
    }
    if (bit) {
        for (auto& ch : chains) {
            ChordLine<Fp> ln{};
            ch.T = curve.add_mixed(ch.T, ch.base, &ln);
            Fp2 lA, vA;
            Fp lB, vB;
            if (!add_eval(pr, ln, ch, lA, lB, vA, vB)) return false;
            f.num = f.num * lA;
            f.den = f.den * embed(pr.fp2(), lB);
            if (!ln.at_infinity) {
                f.num = f.num * embed(pr.fp2(), vB);
                f.den = f.den * vA;
            }
        }
    }
    return true;
}

inline bool miller_pass(const Profile& pr, std::vector<MillerChain>& chains, MillerAccum& f,
                        const Int& r) {
    f.num = Fp2::one(pr.fp2());
    f.den = Fp2::one(pr.fp2());
    if (r == 1) return true; // empty loop, f = 1
    auto bits = static_cast<long>(bit_length(r));
    for (long i = bits - 2; i >= 0; --i)
        if (!miller_bit(pr, chains, f, bit_at(r, static_cast<std::size_t>(i)))) return false;
    for (const auto& ch : chains)
        if (!ch.T.is_infinity()) throw error("miller: point is not of order r");
    return true;
}

// Divisor setup: pick the auxiliary point S from the hash of the inputs and
// the attempt counter, so evaluation is deterministic yet per-call fresh.
inline bool make_chain(const Profile& pr, const Point& P, const ExtPoint& Q, std::uint64_t salt,
                       unsigned attempt, MillerChain& out) {
    LedgerPause pause(pr.ledger());
    if (P.is_infinity() || Q.is_infinity()) throw error("miller: infinite input");
    Point pa = pr.curve().to_affine(P);
    ExtPoint qa = pr.ext_curve().to_affine(Q);
    Xof x("ibetk/miller-aux");
    x.feed(to_bytes(pa.x().value()));
    x.feed(to_bytes(pa.y().value()));
    x.feed(to_bytes(qa.x().c0().value()));
    x.feed(to_bytes(qa.x().c1().value()));
    x.feed(to_bytes(qa.y().c0().value()));
    x.feed(to_bytes(qa.y().c1().value()));
    x.feed_u64(salt);
    x.feed_u64(attempt);
    Drbg rng(from_bytes(x.squeeze(8)).get_ui(), "miller-aux");
    Point S = pr.sample_point(rng);
    if (S.is_infinity()) return false;
    ExtPoint A = pr.ext_curve().add(qa, pr.lift(S));
    if (A.is_infinity()) return false;
    out = MillerChain{pa, pa, pr.ext_curve().to_affine(A), pr.curve().to_affine(S)};
    return true;
}

} // namespace detail

inline constexpr unsigned kMillerRetryCap = 16;

// f_{r,P} evaluated at the divisor [Q+S] - [S], returned as an unreduced
// numerator/denominator pair. Retries a fresh S on any zero evaluation.
// r defaults to the profile's subgroup order.
inline std::pair<Fp2, Fp2> miller_loop(const Profile& pr, const Point& P, const ExtPoint& Q,
                                       std::uint64_t salt = 0, const Int& order = 0) {
    const Int r = order == 0 ? pr.r() : order;
    pr.ledger().tick(Op::MillerLoop);
    for (unsigned attempt = 0; attempt < kMillerRetryCap; ++attempt) {
        detail::MillerChain ch;
        if (!detail::make_chain(pr, P, Q, salt, attempt, ch)) continue;
        std::vector<detail::MillerChain> chains{ch};
        detail::MillerAccum f;
        if (detail::miller_pass(pr, chains, f, r)) return {f.num, f.den};
    }
    throw error("miller: degenerate inputs, retry cap exhausted");
}

// Stepwise view of one Miller evaluation: accumulator pair, running point
// and iteration index, advanced one loop iteration at a time.
class MillerTrace {
  public:
    MillerTrace(const Profile& pr, const Point& P, const ExtPoint& Q, std::uint64_t salt = 0)
        : pr_(pr), next_bit_(static_cast<long>(bit_length(pr.r())) - 2) {
        detail::MillerChain ch;
        unsigned attempt = 0;
        while (!detail::make_chain(pr, P, Q, salt, attempt, ch)) {
            if (++attempt >= kMillerRetryCap) throw error("miller trace: no auxiliary point");
        }
        chains_.push_back(ch);
        f_.num = Fp2::one(pr.fp2());
        f_.den = Fp2::one(pr.fp2());
    }

    bool done() const { return next_bit_ < 0; }
    long next_bit_index() const { return next_bit_; }
    bool next_bit_set() const { return bit_at(pr_.r(), static_cast<std::size_t>(next_bit_)); }
    const Point& running_point() const { return chains_.front().T; }
    const Fp2& accumulator_num() const { return f_.num; }
    const Fp2& accumulator_den() const { return f_.den; }

    // One iteration; throws on a degenerate evaluation (callers wanting the
    // retry behaviour use miller_loop).
    void step() {
        if (done()) throw error("miller trace: already complete");
        if (!detail::miller_bit(pr_, chains_, f_, next_bit_set()))
            throw error("miller trace: degenerate evaluation");
        --next_bit_;
    }

  private:
    const Profile& pr_;
    std::vector<detail::MillerChain> chains_;
    detail::MillerAccum f_;
    long next_bit_;
};

// Final exponentiation to the unique order-r subgroup: plain square-multiply
// by (p^2-1)/r, counted as extension muls under one FinalExp tick.
inline Gt final_exponentiation(const Profile& pr, const Fp2& f) {
    pr.ledger().tick(Op::FinalExp);
    Int e = (pr.p() * pr.p() - 1) / pr.r();
    return Gt(detail::ext_pow_seeded(f.one_like(), f, e));
}

// Reduced Tate pairing t_r(P, Q) for P in E(F_p)[r], Q over the extension.
// An infinite argument pairs to the identity.
inline Gt tate_pairing(const Profile& pr, const Point& P, const ExtPoint& Q, std::uint64_t salt = 0) {
    pr.ledger().tick(Op::Pairing);
    if (P.is_infinity() || Q.is_infinity()) return Gt(Fp2::one(pr.fp2()));
    auto [num, den] = miller_loop(pr, P, Q, salt);
    return final_exponentiation(pr, num * ext_inv(den));
}

// Symmetric pairing e(P, Q) = t_r(P, phi(Q)) with the distortion map
// phi(x, y) = (u*x, y). Single pairing entry point used by every scheme.
inline Gt pair_points(const Profile& pr, const Point& P, const Point& Q, std::uint64_t salt = 0) {
    return tate_pairing(pr, P, pr.distort(Q), salt);
}

// e(P1,Q1) / e(P2,Q2) as e(P1,Q1) * e(P2,-Q2) with one shared Miller loop
// and one final exponentiation; both loops contribute their line factors to
// the same accumulator each iteration.
inline Gt tate_ratio(const Profile& pr, const Point& P1, const ExtPoint& Q1, const Point& P2,
                     const ExtPoint& Q2, std::uint64_t salt = 0) {
    pr.ledger().tick(Op::RatioPairing);
    pr.ledger().tick(Op::Pairing, 2);
    pr.ledger().tick(Op::MillerLoop, 2);
    if (P1.is_infinity() || Q1.is_infinity() || P2.is_infinity() || Q2.is_infinity()) {
        // degenerate operand: evaluate the two sides independently
        Gt left = (P1.is_infinity() || Q1.is_infinity())
                      ? Gt(Fp2::one(pr.fp2()))
                      : [&] {
                            auto [n, d] = miller_loop(pr, P1, Q1, salt);
                            return final_exponentiation(pr, n * ext_inv(d));
                        }();
        Gt right = (P2.is_infinity() || Q2.is_infinity())
                       ? Gt(Fp2::one(pr.fp2()))
                       : [&] {
                             auto [n, d] = miller_loop(pr, P2, Q2, salt);
                             return final_exponentiation(pr, n * ext_inv(d));
                         }();
        return left / right;
    }
    ExtPoint Q2n = Q2.negated();
    for (unsigned attempt = 0; attempt < kMillerRetryCap; ++attempt) {
        detail::MillerChain c1, c2;
        if (!detail::make_chain(pr, P1, Q1, salt ^ 0x9e3779b97f4a7c15ull, attempt, c1)) continue;
        if (!detail::make_chain(pr, P2, Q2n, salt ^ 0xc2b2ae3d27d4eb4full, attempt, c2)) continue;
        std::vector<detail::MillerChain> chains{c1, c2};
        detail::MillerAccum f;
        if (detail::miller_pass(pr, chains, f, pr.r()))
            return final_exponentiation(pr, f.num * ext_inv(f.den));
    }
    throw error("pairing ratio: degenerate inputs, retry cap exhausted");
}

inline Gt ratio_points(const Profile& pr, const Point& P1, const Point& Q1, const Point& P2,
                       const Point& Q2, std::uint64_t salt = 0) {
    return tate_ratio(pr, P1, pr.distort(Q1), P2, pr.distort(Q2), salt);
}

// Pairing-based DDH decision: abP = cP iff e(P, cP) = e(aP, bP).
inline bool ddh_decide(const Profile& pr, const Point& P, const Point& A, const Point& B,
                       const Point& C) {
    return pair_points(pr, P, C) == pair_points(pr, A, B);
}

// --- Hardness-assumption instance generators (test-oracle machinery) -----

enum class AssumptionKind { BDHP, BDHIP, BCAA1, ABDHP, WBDHI };

struct AssumptionInstance {
    AssumptionKind kind;
    std::vector<std::pair<std::string, Point>> points;
    std::vector<std::pair<std::string, Fp>> scalars; // the h_i of BCAA1
    Gt answer;                                        // hidden solution
    std::vector<std::pair<std::string, Int>> secrets; // for oracle re-derivation
};

// Emits the public tuple exactly as the corresponding hardness definition
// lists it, plus the hidden answer. Generation is uninstrumented: instances
// exist to feed test oracles, not benchmarks.
inline AssumptionInstance assumption_instance(const Profile& pr, AssumptionKind kind, unsigned k,
                                              Drbg& rng) {
    LedgerPause pause(pr.ledger());
    if (k < 1) throw error("assumption_instance: k must be at least 1");
    AssumptionInstance inst;
    inst.kind = kind;
    const Curve& curve = pr.curve();
    Point G = pr.curve().to_affine(pr.generator());
    auto scalar = [&] { return rng.nonzero_below(pr.r()); };
    auto named = [&](std::string name, const Point& p) {
        inst.points.emplace_back(std::move(name), curve.to_affine(p));
    };
    switch (kind) {
        case AssumptionKind::BDHP: {
            Int a = scalar(), b = scalar(), c = scalar();
            named("P", G);
            named("aP", curve.scalar_mul(a, G));
            named("bP", curve.scalar_mul(b, G));
            named("cP", curve.scalar_mul(c, G));
            inst.answer = pair_points(pr, G, G).pow(a * b * c % pr.r());
            inst.secrets = {{"a", a}, {"b", b}, {"c", c}};
            break;
        }
        case AssumptionKind::BDHIP: {
            Int x = scalar();
            named("P1", G);
            named("P2", G);
            Int xi = 1;
            for (unsigned i = 1; i <= k; ++i) {
                xi = xi * x % pr.r();
                named("x^" + std::to_string(i) + "P2", curve.scalar_mul(xi, G));
            }
            Int xinv;
            mpz_invert(xinv.get_mpz_t(), x.get_mpz_t(), pr.r().get_mpz_t());
            inst.answer = pair_points(pr, G, G).pow(xinv);
            inst.secrets = {{"x", x}};
            break;
        }
        case AssumptionKind::BCAA1: {
            Int x = scalar();
            named("P1", G);
            named("P2", G);
            named("xP2", curve.scalar_mul(x, G));
            std::vector<Int> hs;
            while (hs.size() < k + 1) {
                Int h = rng.below(pr.r());
                bool dup = false;
                for (const auto& o : hs) dup = dup || o == h;
                if (!dup && (h + x) % pr.r() != 0) hs.push_back(h);
            }
            inst.scalars.emplace_back("h0", pr.fr_elem(hs[0]));
            for (unsigned i = 1; i <= k; ++i) {
                Int d = (hs[i] + x) % pr.r();
                Int dinv;
                mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), pr.r().get_mpz_t());
                inst.scalars.emplace_back("h" + std::to_string(i), pr.fr_elem(hs[i]));
                named("(1/(h" + std::to_string(i) + "+x))P2", curve.scalar_mul(dinv, G));
            }
            Int d0 = (hs[0] + x) % pr.r();
            Int d0inv;
            mpz_invert(d0inv.get_mpz_t(), d0.get_mpz_t(), pr.r().get_mpz_t());
            inst.answer = pair_points(pr, G, G).pow(d0inv);
            inst.secrets = {{"x", x}};
            break;
        }
        case AssumptionKind::ABDHP: {
            Int x = scalar();
            named("P1", G);
            Int xk2 = 1;
            for (unsigned i = 0; i < k + 2; ++i) xk2 = xk2 * x % pr.r();
            named("x^(k+2)P1", curve.scalar_mul(xk2, G));
            named("P2", G);
            Int xi = 1;
            for (unsigned i = 1; i <= 2 * k; ++i) {
                xi = xi * x % pr.r();
                named("x^" + std::to_string(i) + "P2", curve.scalar_mul(xi, G));
            }
            Int xk1 = 1;
            for (unsigned i = 0; i < k + 1; ++i) xk1 = xk1 * x % pr.r();
            inst.answer = pair_points(pr, G, G).pow(xk1);
            inst.secrets = {{"x", x}};
            break;
        }
        case AssumptionKind::WBDHI: {
            Int x = scalar(), hmul = scalar();
            Point H = curve.to_affine(curve.scalar_mul(hmul, G));
            named("g", G);
            named("h", H);
            Int xi = 1;
            for (unsigned i = 1; i <= k; ++i) {
                xi = xi * x % pr.r();
                named("x^" + std::to_string(i) + "g", curve.scalar_mul(xi, G));
            }
            Int xk1 = 1;
            for (unsigned i = 0; i < k + 1; ++i) xk1 = xk1 * x % pr.r();
            inst.answer = pair_points(pr, G, H).pow(xk1);
            inst.secrets = {{"x", x}, {"hmul", hmul}};
            break;
        }
    }
    return inst;
}

} // namespace ibetk
