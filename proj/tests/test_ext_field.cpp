#include <catch2/catch_amalgamated.hpp>

#include "ibetk/ext_field.hpp"
#include "ibetk/profiles.hpp"

using namespace ibetk;

namespace {

struct Ctx {
    std::shared_ptr<OpLedger> ledger = std::make_shared<OpLedger>();
    FieldPtr fp = PrimeField::create(bench_curve_spec().p, ledger);
    ExtPtr ext = QuadExt::create(fp);

    Fp2 random(Drbg& rng) const {
        const Int& p = fp->modulus();
        return Fp2::make(ext, rng.below(p), rng.below(p));
    }
};

// Naive polynomial multiply then reduce by u^2 = -u - 1, coefficient by
// coefficient, independent of the Karatsuba path.
Fp2 schoolbook_ext_mul(const Ctx& c, const Fp2& a, const Fp2& b) {
    LedgerPause pause(*c.ledger);
    Fp c0 = a.c0() * b.c0();
    Fp c1 = a.c0() * b.c1() + a.c1() * b.c0();
    Fp c2 = a.c1() * b.c1();
    return Fp2(c.ext.get(), c0 - c2, c1 - c2);
}

} // namespace

TEST_CASE("extension requires p = 2 mod 3") {
    auto ledger = std::make_shared<OpLedger>();
    auto f7 = PrimeField::create(7, ledger); // 7 = 1 mod 3
    CHECK_THROWS_AS(QuadExt::create(f7), error);
}

TEST_CASE("identity element") {
    Ctx c;
    Drbg rng(1);
    Fp2 a = c.random(rng);
    CHECK(a * Fp2::one(c.ext) == a);
}

TEST_CASE("product matches schoolbook polynomial oracle") {
    Ctx c;
    Drbg rng(2);
    for (int i = 0; i < 200; ++i) {
        Fp2 a = c.random(rng), b = c.random(rng);
        CHECK(a * b == schoolbook_ext_mul(c, a, b));
    }
}

TEST_CASE("one extension multiply costs at most three base multiplies") {
    Ctx c;
    Drbg rng(3);
    Fp2 a = c.random(rng), b = c.random(rng);
    auto before = c.ledger->snapshot();
    (void)(a * b);
    auto d = c.ledger->snapshot().diff(before);
    CHECK(d[Op::MulK] == 1);
    CHECK(d[Op::Mul] + d[Op::Sq] <= 3);
}

TEST_CASE("squaring is detected and costs three base squarings") {
    Ctx c;
    Drbg rng(4);
    Fp2 a = c.random(rng);
    auto before = c.ledger->snapshot();
    (void)(a * a);
    auto d = c.ledger->snapshot().diff(before);
    CHECK(d[Op::SqK] == 1);
    CHECK(d[Op::MulK] == 0);
    CHECK(d[Op::Sq] == 3);
}

TEST_CASE("commutativity and associativity on random triples") {
    Ctx c;
    Drbg rng(5);
    for (int i = 0; i < 1000; ++i) {
        Fp2 a = c.random(rng), b = c.random(rng), d = c.random(rng);
        CHECK(a * b == b * a);
        CHECK((a * b) * d == a * (b * d));
    }
}

TEST_CASE("inversion and division") {
    Ctx c;
    Drbg rng(6);
    for (int i = 0; i < 50; ++i) {
        Fp2 a = c.random(rng);
        if (a.is_zero()) continue;
        CHECK(a * ext_inv(a) == Fp2::one(c.ext));
        Fp2 b = c.random(rng);
        CHECK(ext_div(b, a) * a == b);
    }
    CHECK_THROWS_AS(ext_inv(Fp2::zero(c.ext)), error);
}

TEST_CASE("conjugation is the Frobenius") {
    Ctx c;
    Drbg rng(7);
    for (int i = 0; i < 20; ++i) {
        Fp2 a = c.random(rng);
        CHECK(a.conj() == ext_pow(a, c.fp->modulus()));
    }
}

TEST_CASE("exponentiation in the extension") {
    Ctx c;
    Drbg rng(8);
    Fp2 a = c.random(rng);
    CHECK(ext_pow(a, 0) == Fp2::one(c.ext));
    CHECK(ext_pow(a, 1) == a);
    CHECK(ext_pow(a, 5) == a * a * a * a * a);
    auto before = c.ledger->snapshot();
    (void)ext_pow(a, 37);
    CHECK(c.ledger->snapshot().diff(before)[Op::ExpK] == 1);
}
