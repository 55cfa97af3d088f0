#include <doctest.h>

#include "novbar/equivariant.hpp"
#include "novbar/generator.hpp"

using namespace novbar;

namespace {

FilteredComplex v2(const GroundField& f, const Rational& beta) {
    FilteredComplex c;
    c.field = f;
    c.convention = Convention::Orthonormalized;
    c.basis = {{"eta", 0, Rational(0)}, {"zeta", 1, Rational(0)}};
    c.diff = Matrix(f, 2, 2);
    c.diff.at(0, 1) = NovikovScalar::t_power(f, beta);
    return c;
}

FilteredComplex free_points(const GroundField& f, std::size_t n, int degree) {
    FilteredComplex c;
    c.field = f;
    c.convention = Convention::Orthonormalized;
    for (std::size_t i = 0; i < n; ++i)
        c.basis.push_back({"x" + std::to_string(i), degree, Rational(0)});
    c.diff = Matrix(f, n, n);
    return c;
}

}  // namespace

TEST_CASE("cyclic permutation signs") {
    GroundField f2 = GroundField::prime(2);
    GroundField f3 = GroundField::prime(3);

    // Even degrees: x⊗y -> y⊗x with sign +1.
    ChainMap tau_even = cyclic_permutation(free_points(f3, 2, 0), 2);
    CHECK(tau_even.matrix.at(2, 1) == NovikovScalar::one(f3));  // (0,1) -> (1,0)

    // Odd degrees: x⊗y -> y⊗x with sign -1.
    ChainMap tau_odd = cyclic_permutation(free_points(f3, 2, 1), 2);
    CHECK(tau_odd.matrix.at(2, 1) == -NovikovScalar::one(f3));

    // tau is a chain map and tau^p = id, for p in {2, 3, 5}.
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL}) {
        GroundField f = GroundField::prime(p);
        GeneratorConfig cfg;
        cfg.seed = 40 + p;
        cfg.field = f;
        cfg.rank = 2;
        GeneratedComplex g = generate(cfg);
        ChainMap tau = cyclic_permutation(g.complex, p);
        CHECK(verify_chain_map(tau).pass);
        Matrix power = tau.matrix;
        for (std::uint64_t k = 1; k < p; ++k) power = power * tau.matrix;
        CHECK(power == Matrix::identity(f, tau.matrix.rows()));

        // (1 - tau)(1 + tau + ... + tau^(p-1)) = 0.
        const std::size_t w = tau.matrix.rows();
        Matrix norm(f, w, w);
        Matrix acc = Matrix::identity(f, w);
        for (std::uint64_t k = 0; k < p; ++k) {
            norm = norm + acc;
            acc = acc * tau.matrix;
        }
        CHECK(((Matrix::identity(f, w) - tau.matrix) * norm).is_zero());
    }
}

TEST_CASE("tate complex structure") {
    GroundField f2 = GroundField::prime(2);

    // Rank-1, d = 0: both the rotation and the norm act trivially on x⊗x.
    TateComplex point = build_tate(free_points(f2, 1, 0), 2);
    CHECK(point.underlying.rank() == 2);
    CHECK(point.underlying.diff.is_zero());

    for (std::uint64_t p : {2ULL, 3ULL, 5ULL}) {
        FilteredComplex c = v2(GroundField::prime(p), rational(1, 2));
        TateComplex t = build_tate(c, p);
        CHECK(t.underlying.rank() == 2 * t.words);
        ValidationReport r = validate(t.underlying);
        CHECK(r.pass);
    }

    // Field and strictness guards.
    CHECK_THROWS_AS(build_tate(v2(GroundField::prime(3), Rational(1)), 2), std::invalid_argument);
    FilteredComplex flat = v2(f2, Rational(0));
    CHECK_THROWS_AS(build_tate(flat, 2), std::invalid_argument);
}

TEST_CASE("rescale_spectrum") {
    BarSpectrum one_free;
    one_free.B = 1;
    BarSpectrum r = rescale_spectrum(one_free, 3);
    CHECK(r.B == 2);
    CHECK(r.torsion.empty());

    BarSpectrum half;
    half.B = 0;
    half.torsion = {rational(1, 2)};
    BarSpectrum r3 = rescale_spectrum(half, 3);
    CHECK(r3.torsion == std::vector<Rational>{rational(3, 2), rational(3, 2)});

    BarSpectrum mixed;
    mixed.B = 2;
    mixed.torsion = {Rational(1), Rational(2)};
    BarSpectrum r2 = rescale_spectrum(mixed, 2);
    CHECK(r2.B == 4);
    CHECK(r2.torsion ==
          std::vector<Rational>{Rational(2), Rational(2), Rational(4), Rational(4)});
}

TEST_CASE("quasi-Frobenius scaling") {
    // Rank-2 closed form: torsion {p*beta, p*beta}.
    QuasiFrobeniusReport qf = verify_quasi_frobenius(v2(GroundField::prime(3), rational(1, 2)), 3);
    CHECK(qf.pass);
    CHECK(qf.tate.make_concise().torsion ==
          std::vector<Rational>{rational(3, 2), rational(3, 2)});

    // d = 0: both sides torsion-free with B doubled.
    QuasiFrobeniusReport flat = verify_quasi_frobenius(free_points(GroundField::prime(2), 2, 0), 2);
    CHECK(flat.pass);
    CHECK(flat.tate.make_concise().torsion.empty());
    CHECK(flat.tate.B == 4);

    // Random strict instances.
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = 600 + seed;
        cfg.field = GroundField::prime(2);
        cfg.rank = 3;
        GeneratedComplex g = generate(cfg);
        CHECK(verify_quasi_frobenius(g.complex, 2).pass);
    }
}

TEST_CASE("Tate positive part does not depend on the adapted basis") {
    GeneratorConfig cfg;
    cfg.seed = 77;
    cfg.field = GroundField::prime(3);
    cfg.rank = 2;
    cfg.forced_B = 0;
    GeneratedComplex g = generate(cfg);
    BarSpectrum reference =
        spectrum(build_tate(g.complex, 3).underlying).make_concise();
    for (std::uint64_t k = 0; k < 4; ++k) {
        FilteredComplex conj = random_conjugate(g.complex, 900 + k, 6);
        BarSpectrum other = spectrum(build_tate(conj, 3).underlying).make_concise();
        CHECK(other == reference);
    }
}
