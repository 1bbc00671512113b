#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "ibetk/curve.hpp"

namespace ibetk {

using Point = PointT<Fp>;
using ExtPoint = PointT<Fp2>;
using Curve = CurveT<Fp>;
using ExtCurve = CurveT<Fp2>;

// Serializable curve description. Decimal text key-value format; writing and
// re-reading must reproduce the numbers bit-exactly.
struct CurveSpec {
    Int p, a4, a6, r, cof;
    unsigned k = 2;
    Int gx, gy;

    std::string to_text() const {
        std::ostringstream os;
        os << "p = " << to_dec(p) << "\n";
        os << "a4 = " << to_dec(a4) << "\n";
        os << "a6 = " << to_dec(a6) << "\n";
        os << "r = " << to_dec(r) << "\n";
        os << "cof = " << to_dec(cof) << "\n";
        os << "k = " << k << "\n";
        os << "gx = " << to_dec(gx) << "\n";
        os << "gy = " << to_dec(gy) << "\n";
        return os.str();
    }

    static CurveSpec from_text(const std::string& text) {
        std::map<std::string, std::string> kv;
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty() || line[0] == '#') continue;
            auto eq = line.find('=');
            if (eq == std::string::npos) throw error("curve file: bad line: " + line);
            auto trim = [](std::string s) {
                auto b = s.find_first_not_of(" \t");
                auto e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
        auto get = [&](const char* key) {
            auto it = kv.find(key);
            if (it == kv.end()) throw error(std::string("curve file: missing key ") + key);
            return it->second;
        };
        CurveSpec s;
        s.p = from_dec(get("p"));
        s.a4 = from_dec(get("a4"));
        s.a6 = from_dec(get("a6"));
        s.r = from_dec(get("r"));
        s.cof = from_dec(get("cof"));
        s.k = static_cast<unsigned>(std::stoul(get("k")));
        s.gx = from_dec(get("gx"));
        s.gy = from_dec(get("gy"));
        return s;
    }

    static CurveSpec load(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw error("cannot open curve file: " + path);
        std::ostringstream os;
        os << f.rdbuf();
        return from_text(os.str());
    }
};

// Desk-scale curve for exhaustive oracles: y^2 = x^3 + 2 over F_11, group
// order 12, pairing subgroup of order 3 generated by (9, 4). The constant 2
// is a non-residue mod 11, which keeps the order-3 points off the x = 0
// line; on y^2 = x^3 + 1 that subgroup sits at x = 0 where the distortion
// map acts trivially and every symmetric pairing value collapses to 1.
inline CurveSpec tiny_curve_spec() {
    CurveSpec s;
    s.p = 11;
    s.a4 = 0;
    s.a6 = 2;
    s.r = 3;
    s.cof = 4;
    s.k = 2;
    s.gx = 9;
    s.gy = 4;
    return s;
}

// Benchmark curve: 256-bit p = 2 mod 3 (and 3 mod 4), 160-bit prime r with
// p + 1 = cof * r. Same family as the tiny curve so MapToPoint and the
// distortion map apply unchanged.
inline CurveSpec bench_curve_spec() {
    CurveSpec s;
    s.p = from_dec("88038833044515112864564589654188090464052658439490855567631028654891904819127");
    s.a4 = 0;
    s.a6 = 1;
    s.r = from_dec("1111206296481563498528441555658427842001233683179");
    s.cof = from_dec("79228162514264337593543950632");
    s.k = 2;
    s.gx = from_dec("36442227369735010650095668411227079451703947327770809655256083201327852653438");
    s.gy = from_dec("41001517200933474070559299637444245552030829433969382095821807942554203841755");
    return s;
}

// Execution context: one ledger shared by the base field F_p, the scalar
// field Z_r, the quadratic extension and both curve views.
class Profile {
  public:
    static Profile from_spec(const CurveSpec& spec, std::shared_ptr<OpLedger> ledger) {
        Profile pr;
        pr.spec_ = spec;
        pr.ledger_ = ledger ? std::move(ledger) : std::make_shared<OpLedger>();
        LedgerPause pause(*pr.ledger_);
        pr.fp_ = PrimeField::create(spec.p, pr.ledger_);
        pr.fr_ = PrimeField::create(spec.r, pr.ledger_);
        pr.fp2_ = QuadExt::create(pr.fp_);
        pr.base_ = std::make_unique<Curve>(Fp(pr.fp_, spec.a4), Fp(pr.fp_, spec.a6), pr.ledger_.get());
        pr.ext_ = std::make_unique<ExtCurve>(Fp2::from_base(pr.fp2_, Fp(pr.fp_, spec.a4)),
                                             Fp2::from_base(pr.fp2_, Fp(pr.fp_, spec.a6)),
                                             pr.ledger_.get());
        pr.gen_ = Point::affine(Fp(pr.fp_, spec.gx), Fp(pr.fp_, spec.gy));
        pr.validate();
        return pr;
    }

    static Profile tiny(std::shared_ptr<OpLedger> ledger = nullptr) {
        return from_spec(tiny_curve_spec(), std::move(ledger));
    }
    static Profile bench(std::shared_ptr<OpLedger> ledger = nullptr) {
        return from_spec(bench_curve_spec(), std::move(ledger));
    }

    OpLedger& ledger() const { return *ledger_; }
    std::shared_ptr<OpLedger> ledger_ptr() const { return ledger_; }
    const FieldPtr& fp() const { return fp_; }
    const FieldPtr& fr() const { return fr_; }
    const ExtPtr& fp2() const { return fp2_; }
    const Curve& curve() const { return *base_; }
    const ExtCurve& ext_curve() const { return *ext_; }
    const Point& generator() const { return gen_; }
    const Int& p() const { return spec_.p; }
    const Int& r() const { return spec_.r; }
    const Int& cof() const { return spec_.cof; }
    const CurveSpec& spec() const { return spec_; }

    Fp fp_elem(Int v) const { return Fp(fp_, std::move(v)); }
    Fp fr_elem(Int v) const { return Fp(fr_, std::move(v)); }
    Fp2 fp2_elem(Int c0, Int c1) const { return Fp2::make(fp2_, std::move(c0), std::move(c1)); }

    // Distortion map (x, y) -> (u*x, y): coordinate placement only, no field
    // multiplications, since u*x has coefficients (0, x).
    ExtPoint distort(const Point& p) const {
        if (p.is_infinity()) return ExtPoint::infinity();
        Point a = base_->to_affine(p);
        Fp zero = Fp::raw(fp_.get(), 0);
        Fp2 dx(fp2_.get(), zero, a.x());
        Fp2 dy(fp2_.get(), a.y(), zero);
        return ExtPoint::affine(std::move(dx), std::move(dy));
    }

    ExtPoint lift(const Point& p) const {
        if (p.is_infinity()) return ExtPoint::infinity();
        Point a = base_->to_affine(p);
        return ExtPoint::affine(Fp2::from_base(fp2_, a.x()), Fp2::from_base(fp2_, a.y()));
    }

    // Uniform point of the full group E(F_p). Sampling is free in the cost
    // model, so counting pauses for the duration.
    Point sample_point(Drbg& rng) const {
        LedgerPause pause(*ledger_);
        while (true) {
            Int x = rng.below(spec_.p);
            Fp fx(fp_, x);
            Fp rhs = fx * fx * fx + base_->a4() * fx + base_->a6();
            auto y = sqrt_mod(rhs);
            if (!y) continue;
            Point p = Point::affine(fx, rng.next_u64() & 1 ? -*y : *y);
            return p;
        }
    }

    Point sample_subgroup_point(Drbg& rng) const {
        LedgerPause pause(*ledger_);
        while (true) {
            Point q = base_->scalar_mul(spec_.cof, sample_point(rng));
            if (!q.is_infinity()) return base_->to_affine(q);
        }
    }

    // Square root for p = 3 mod 4 via one exponentiation; empty if no root.
    std::optional<Fp> sqrt_mod(const Fp& a) const {
        if (a.is_zero()) return a;
        Int e = (spec_.p + 1) / 4;
        Fp y = fp_exp(a, e);
        if (y * y == a) return y;
        return std::nullopt;
    }

  private:
    void validate() const {
        LedgerPause pause(*ledger_);
        if (spec_.k != 2) throw error("profile: embedding degree must be 2");
        // nonzero discriminant
        Fp a(fp_, spec_.a4), b(fp_, spec_.a6);
        Fp disc = (a * a * a).times(4) + (b * b).times(27);
        if (disc.is_zero()) throw error("profile: singular curve");
        if (!probably_prime(spec_.r)) throw error("profile: r is not prime");
        if (spec_.r * spec_.cof != spec_.p + 1) throw error("profile: r*cof != group order p+1");
        if ((spec_.p * spec_.p - 1) % spec_.r != 0) throw error("profile: r does not divide p^k-1");
        if ((spec_.p - 1) % spec_.r == 0) throw error("profile: embedding degree below k");
        if (!base_->on_curve(gen_)) throw error("profile: generator not on curve");
        if (!base_->scalar_mul(spec_.r, gen_).is_infinity()) throw error("profile: generator order is not r");
    }

    std::shared_ptr<OpLedger> ledger_;
    FieldPtr fp_, fr_;
    ExtPtr fp2_;
    std::unique_ptr<Curve> base_;
    std::unique_ptr<ExtCurve> ext_;
    Point gen_;
    CurveSpec spec_;
};

// Identity bytes -> curve point of order dividing r, by y-coordinate hash,
// cube-root x recovery (exponent (2p-1)/3, valid for p = 2 mod 3) and
// cofactor multiplication. Retries with a counter when the candidate lands
// in the cofactor part and [cof]Q = O.
inline Point map_to_point(const Bytes& id, const Profile& profile, unsigned max_attempts = 256) {
    const Int& p = profile.p();
    if (mpz_fdiv_ui(p.get_mpz_t(), 3) != 2) throw error("map_to_point: need p = 2 mod 3");
    if (!profile.curve().a4().is_zero()) throw error("map_to_point: needs a j=0 curve (a4 = 0)");
    profile.ledger().tick(Op::MapToPoint);
    Int cube_exp = (2 * p - 1) / 3;
    for (unsigned ctr = 0; ctr < max_attempts; ++ctr) {
        Xof x("ibetk/maptopoint");
        x.feed(id);
        x.feed_u64(ctr);
        Bytes raw = x.squeeze((bit_length(p) + 7) / 8 + 16);
        Fp y0(profile.fp(), from_bytes(raw));
        Fp x0 = fp_exp(y0 * y0 - profile.curve().a6(), cube_exp);
        Point q = Point::affine(x0, y0);
        Point qid = profile.curve().scalar_mul(profile.cof(), q);
        if (!qid.is_infinity()) return profile.curve().to_affine(qid);
    }
    throw error("map_to_point: no admissible encoding after retry cap");
}

} // namespace ibetk
