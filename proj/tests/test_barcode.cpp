#include <doctest.h>

#include "novbar/generator.hpp"

using namespace novbar;

namespace {

GroundField Q() { return GroundField::rationals(); }

FilteredComplex zero_complex(const GroundField& f, std::size_t n) {
    FilteredComplex c;
    c.field = f;
    c.convention = Convention::Orthonormalized;
    for (std::size_t i = 0; i < n; ++i) c.basis.push_back({"x" + std::to_string(i), 0, Rational(0)});
    c.diff = Matrix(f, n, n);
    return c;
}

FilteredComplex v2(const GroundField& f, const Rational& beta) {
    FilteredComplex c;
    c.field = f;
    c.convention = Convention::Orthonormalized;
    c.basis = {{"eta", 0, Rational(0)}, {"zeta", 1, Rational(0)}};
    c.diff = Matrix(f, 2, 2);
    c.diff.at(0, 1) = NovikovScalar::t_power(f, beta);
    return c;
}

}  // namespace

TEST_CASE("spectrum basics") {
    BarSpectrum z = spectrum(zero_complex(Q(), 3));
    CHECK(z.B == 3);
    CHECK(z.torsion.empty());

    BarSpectrum s = spectrum(v2(Q(), rational(1, 2)));
    CHECK(s.B == 0);
    CHECK(s.torsion == std::vector<Rational>{rational(1, 2)});
}

TEST_CASE("minors oracle directly") {
    BarSpectrum one = spectrum_via_minors(v2(Q(), rational(1, 2)));
    CHECK(one.torsion == std::vector<Rational>{rational(1, 2)});
    CHECK(one.B == 0);

    CHECK(spectrum_via_minors(zero_complex(Q(), 4)).torsion.empty());

    // [[T, T], [T, T^2]]: gamma_1 = 1, gamma_2 = val(T^3 - T^2) = 2.
    FilteredComplex m = zero_complex(Q(), 2);
    m.diff.at(0, 0) = NovikovScalar::t_power(Q(), Rational(1));
    m.diff.at(0, 1) = NovikovScalar::t_power(Q(), Rational(1));
    m.diff.at(1, 0) = NovikovScalar::t_power(Q(), Rational(1));
    m.diff.at(1, 1) = NovikovScalar::t_power(Q(), Rational(2));
    BarSpectrum g = spectrum_via_minors(m);
    CHECK(g.torsion == std::vector<Rational>{Rational(1), Rational(1)});

    CHECK_THROWS_AS(spectrum_via_minors(zero_complex(Q(), 9)), std::length_error);
}

TEST_CASE("spectrum equals minors oracle and the generator truth") {
    for (std::uint64_t seed = 0; seed < 24; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = 9000 + seed;
        cfg.field = seed % 4 == 0   ? GroundField::rationals()
                    : seed % 4 == 1 ? GroundField::prime(2)
                    : seed % 4 == 2 ? GroundField::prime(3)
                                    : GroundField::prime(5);
        cfg.rank = 2 + seed % 5;
        GeneratedComplex g = generate(cfg);
        BarSpectrum s = spectrum(g.complex);
        CHECK(s == spectrum_via_minors(g.complex));
        CHECK(s == g.truth);
        CHECK(static_cast<long long>(g.complex.rank()) ==
              s.B + 2 * static_cast<long long>(s.torsion.size()));
    }
}

TEST_CASE("invariance under valuation-0 conjugation and field extension") {
    GeneratorConfig cfg;
    cfg.seed = 31337;
    cfg.field = GroundField::prime(5);
    cfg.rank = 5;
    GeneratedComplex g = generate(cfg);
    BarSpectrum s = spectrum(g.complex);
    for (std::uint64_t k = 0; k < 10; ++k)
        CHECK(spectrum(random_conjugate(g.complex, k, 8)) == s);

    BarSpectrum ext = spectrum(extend_field(g.complex, GroundField::prime_with_u(5)));
    CHECK(ext == s);
}

TEST_CASE("beta_total and beta_max") {
    BarSpectrum empty;
    CHECK(empty.beta_total() == 0);
    CHECK(empty.beta_max() == 0);

    BarSpectrum two;
    two.torsion = {rational(1, 2), rational(3, 2)};
    CHECK(two.beta_total() == Rational(2));
    CHECK(two.beta_max() == rational(3, 2));

    FilteredComplex a = v2(Q(), Rational(1)), b = v2(Q(), rational(1, 3));
    CHECK(spectrum(direct_sum(a, b)).beta_total() ==
          spectrum(a).beta_total() + spectrum(b).beta_total());
}

TEST_CASE("orthonormalization preserves the spectrum") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = 7100 + seed;
        cfg.field = seed % 2 ? GroundField::prime(3) : Q();
        cfg.rank = 3 + seed % 3;
        GeneratedComplex g = generate(cfg);
        FilteredComplex raw = shift_action(g.complex, rational(static_cast<long>(seed), 2));
        CHECK(spectrum(raw) == g.truth);
        CHECK(spectrum(orthonormalize(raw)) == g.truth);
    }
}

TEST_CASE("interval data tracks actions") {
    // d(zeta) = eta with actions A(zeta) = 1/2, A(eta) = 0: one bar (0, 1/2).
    FilteredComplex raw;
    raw.field = Q();
    raw.convention = Convention::Raw;
    raw.basis = {{"eta", 0, Rational(0)}, {"zeta", 1, rational(1, 2)}};
    raw.diff = Matrix(Q(), 2, 2);
    raw.diff.at(0, 1) = NovikovScalar::one(Q());
    IntervalData bars = intervals_of(raw);
    REQUIRE(bars.finite.size() == 1);
    CHECK(bars.finite[0] == std::pair<Rational, Rational>{Rational(0), rational(1, 2)});
    CHECK(bars.infinite.empty());

    // Uniform action shift moves every endpoint, lengths unchanged.
    IntervalData moved = intervals_of(shift_action(raw, Rational(2)));
    REQUIRE(moved.finite.size() == 1);
    CHECK(moved.finite[0] == std::pair<Rational, Rational>{Rational(2), rational(5, 2)});
    CHECK(spectrum(shift_action(raw, Rational(2))) == spectrum(raw));
}

TEST_CASE("zero-length torsion stays out of interval data") {
    // Non-strict pair of valuation 0: one verbose zero in the spectrum,
    // nothing in the barcode.
    FilteredComplex c;
    c.field = Q();
    c.convention = Convention::Orthonormalized;
    c.basis = {{"eta", 0, Rational(0)}, {"zeta", 1, Rational(0)}, {"free", 0, Rational(0)}};
    c.diff = Matrix(Q(), 3, 3);
    c.diff.at(0, 1) = NovikovScalar::one(Q());
    BarSpectrum s = spectrum(c);
    CHECK(s.torsion == std::vector<Rational>{Rational(0)});
    CHECK(s.make_concise().torsion.empty());
    IntervalData bars = intervals_of(c);
    CHECK(bars.finite.empty());
    CHECK(bars.infinite.size() == 1);
}
