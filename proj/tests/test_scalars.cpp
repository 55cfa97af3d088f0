#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "novbar/novikov.hpp"

using namespace novbar;

namespace {

NovikovScalar t_pow(const GroundField& f, long num, long den = 1) {
    return NovikovScalar::t_power(f, rational(num, den));
}

GroundField Q() { return GroundField::rationals(); }

NovikovScalar random_scalar(Rng& rng, const GroundField& f) {
    NovikovScalar num = NovikovScalar::zero(f);
    std::size_t terms = 1 + rng.below(3);
    for (std::size_t k = 0; k < terms; ++k) {
        long c = rng.range(-4, 4);
        if (c == 0) c = 1;
        num = num + NovikovScalar::monomial(GroundScalar::from_int(f, c),
                                            rational(rng.range(-3, 6), rng.range(1, 3)));
    }
    if (rng.chance(1, 3)) {
        NovikovScalar den =
            NovikovScalar::one(f) + NovikovScalar::monomial(GroundScalar::from_int(f, rng.range(1, 3)),
                                                            rational(rng.range(1, 4), rng.range(1, 2)));
        num = num / den;
    }
    return num;
}

}  // namespace

TEST_CASE("valuation basics") {
    GroundField f = Q();
    CHECK(NovikovScalar::zero(f).val().is_infinite());

    // T^(1/2) + 3T^2 has valuation 1/2.
    NovikovScalar x = t_pow(f, 1, 2) + NovikovScalar::monomial(GroundScalar::from_rational(3), rational(2));
    CHECK(x.val() == Valuation(rational(1, 2)));

    // T / (1 + T) has valuation 1; long division begins T - T^2 + T^3 - ...
    NovikovScalar y = t_pow(f, 1) / (NovikovScalar::one(f) + t_pow(f, 1));
    CHECK(y.val() == Valuation(rational(1)));
    NovikovScalar partial = t_pow(f, 1) - t_pow(f, 2) + t_pow(f, 3);
    CHECK((y - partial).val() == Valuation(rational(4)));
}

TEST_CASE("field arithmetic and canonical form") {
    GroundField f = Q();
    CHECK(t_pow(f, 1, 2) * t_pow(f, 1, 2) == t_pow(f, 1));

    NovikovScalar one_plus_t = NovikovScalar::one(f) + t_pow(f, 1);
    NovikovScalar inv = one_plus_t.inverse();
    CHECK(inv.val() == Valuation(rational(0)));
    CHECK(inv * one_plus_t == NovikovScalar::one(f));

    // (T(1+T)) / (1+T) collapses to T.
    NovikovScalar redundant = (t_pow(f, 1) * one_plus_t) / one_plus_t;
    CHECK(redundant == t_pow(f, 1));
    CHECK(redundant.numerator().size() == 1);

    GroundField f2 = GroundField::prime(2);
    CHECK((t_pow(f2, 1) + t_pow(f2, 1)).is_zero());

    CHECK_THROWS_AS(NovikovScalar::zero(f).inverse(), std::domain_error);
}

TEST_CASE("valuation axioms on random scalars") {
    GroundField f = Q();
    Rng rng(20240817);
    for (int it = 0; it < 200; ++it) {
        NovikovScalar x = random_scalar(rng, f);
        NovikovScalar y = random_scalar(rng, f);
        CHECK((x * y).val() == x.val() + y.val());
        Valuation lo = x.val() < y.val() ? x.val() : y.val();
        CHECK((x + y).val() >= lo);
        if (x.val() != y.val()) CHECK((x + y).val() == lo);
        if (!x.is_zero()) CHECK(x.inverse() * x == NovikovScalar::one(f));
    }
}

TEST_CASE("reduction mod p") {
    GroundField f = Q();
    NovikovScalar two_sqrt = NovikovScalar::monomial(GroundScalar::from_rational(2), rational(1, 2));
    NovikovScalar r3 = two_sqrt.reduce_mod(3);
    CHECK(r3 == NovikovScalar::monomial(GroundScalar::from_residue(3, 2), rational(1, 2)));
    CHECK(two_sqrt.reduce_mod(2).is_zero());

    // (1/3) T reduces to 2T over F_5 (3 * 2 = 6 = 1 mod 5).
    NovikovScalar third_t =
        NovikovScalar::monomial(GroundScalar::from_rational(rational(1, 3)), rational(1));
    CHECK(third_t.reduce_mod(5) ==
          NovikovScalar::monomial(GroundScalar::from_residue(5, 2), rational(1)));
    CHECK_THROWS_AS(third_t.reduce_mod(3), std::domain_error);
}

TEST_CASE("prime field with u") {
    GroundField fu = GroundField::prime_with_u(5);
    GroundScalar u = GroundScalar::u_variable(fu);
    GroundScalar one = GroundScalar::one(fu);
    GroundScalar ratio = (u * u + one) / u;
    CHECK(ratio.u_valuation() == -1);
    CHECK(ratio.str() == "(u^2+1)/(u)");
    CHECK(ratio * u == u * u + one);
    CHECK(GroundScalar::parse(fu, "(u^2+1)/(u)") == ratio);

    GroundScalar embedded = GroundScalar::from_residue(5, 3).extend_to_u();
    CHECK(embedded.field().kind == FieldKind::PrimeWithU);
    CHECK((embedded + GroundScalar::from_int(fu, 2)).is_zero());
}

TEST_CASE("serialization round-trip is canonical") {
    Rng rng(99);
    for (const GroundField& f :
         {Q(), GroundField::prime(3), GroundField::prime_with_u(2)}) {
        for (int it = 0; it < 50; ++it) {
            NovikovScalar x = random_scalar(rng, f);
            NovikovScalar back = NovikovScalar::parse(f, x.str());
            CHECK(back == x);
            CHECK(back.str() == x.str());
        }
    }
}

TEST_CASE("canonicalization is idempotent and equality structural") {
    GroundField f = Q();
    NovikovScalar a = (t_pow(f, 1) + t_pow(f, 2)) / (NovikovScalar::one(f) + t_pow(f, 1));
    CHECK(a == t_pow(f, 1));
    NovikovScalar b = NovikovScalar::from_fraction(
        f, {{GroundScalar::from_rational(1), rational(1)}, {GroundScalar::from_rational(1), rational(2)}},
        {{GroundScalar::from_rational(1), rational(0)}, {GroundScalar::from_rational(1), rational(1)}});
    CHECK(b == t_pow(f, 1));
}
