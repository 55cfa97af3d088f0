#include <doctest.h>

#include "novbar/generator.hpp"
#include "novbar/perturb.hpp"

using namespace novbar;

namespace {

GroundField Q() { return GroundField::rationals(); }

FilteredComplex v2(const GroundField& f, const Rational& beta) {
    FilteredComplex c;
    c.field = f;
    c.convention = Convention::Orthonormalized;
    c.basis = {{"eta", 0, Rational(0)}, {"zeta", 1, Rational(0)}};
    c.diff = Matrix(f, 2, 2);
    c.diff.at(0, 1) = NovikovScalar::t_power(f, beta);
    return c;
}

FilteredComplex free_points(const GroundField& f, std::size_t n, int degree = 0) {
    FilteredComplex c;
    c.field = f;
    c.convention = Convention::Orthonormalized;
    for (std::size_t i = 0; i < n; ++i)
        c.basis.push_back({"x" + std::to_string(i), degree, Rational(0)});
    c.diff = Matrix(f, n, n);
    return c;
}

// Two local V2 pieces with a cross entry T^(cross) from zeta_2 to eta_1.
FilteredComplex two_blocks(const Rational& beta, const Rational& cross) {
    FilteredComplex c;
    c.field = Q();
    c.convention = Convention::Orthonormalized;
    c.basis = {{"eta1", 0, Rational(0)},
               {"zeta1", 1, Rational(0)},
               {"eta2", 0, Rational(0)},
               {"zeta2", 1, Rational(0)}};
    c.diff = Matrix(Q(), 4, 4);
    c.diff.at(0, 1) = NovikovScalar::t_power(Q(), beta);
    c.diff.at(2, 3) = NovikovScalar::t_power(Q(), beta);
    c.diff.at(0, 3) = NovikovScalar::t_power(Q(), cross);
    return c;
}

}  // namespace

TEST_CASE("split construction guards") {
    FilteredComplex c = two_blocks(rational(1, 10), Rational(1));
    SplitDifferential s = make_split(c, {{0, 1}, {2, 3}}, Rational(1));
    CHECK(s.delta0 == rational(1, 10));

    CHECK_THROWS_AS(make_split(c, {{0, 1}, {2, 3}}, rational(1, 20)), std::invalid_argument);
    CHECK_THROWS_AS(make_split(c, {{0, 1}}, Rational(1)), std::invalid_argument);
}

TEST_CASE("perturb with zero off-block part") {
    FilteredComplex c = two_blocks(rational(1, 10), Rational(1));
    // Remove the cross entry: D = 0, X = block homology (empty here).
    c.diff.at(0, 3) = NovikovScalar::zero(Q());
    SplitDifferential s = make_split(c, {{0, 1}, {2, 3}}, Rational(1));
    PerturbationOutput out = perturb(s, Rational(10));
    CHECK(out.exact);
    CHECK(out.X.rank() == 0);
    CHECK(verify_certificate(out.certificate).pass);
}

TEST_CASE("perturb with trivial local differential") {
    // Singleton blocks: d_loc = 0, X is the whole complex, d_phi = diff.
    FilteredComplex c = v2(Q(), Rational(2));
    SplitDifferential s = make_split(c, {{0}, {1}}, Rational(1));
    CHECK(s.delta0 == 0);
    PerturbationOutput out = perturb(s, Rational(10));
    CHECK(out.exact);
    CHECK(out.X.rank() == 2);
    CHECK(out.X.diff == c.diff);
    CHECK(spectrum(out.X) == spectrum(c));
    CHECK(verify_certificate(out.certificate).pass);
}

TEST_CASE("perturb terminating series matches the spectrum above eps0") {
    FilteredComplex c = two_blocks(rational(1, 10), Rational(1));
    SplitDifferential s = make_split(c, {{0, 1}, {2, 3}}, Rational(1));
    PerturbationOutput out = perturb(s, Rational(10));
    CHECK(out.exact);
    // pi_bar ∘ iota_bar = id on X, exactly.
    Matrix composed = out.pi_bar.matrix * out.iota_bar.matrix;
    CHECK(composed == Matrix::identity(Q(), out.X.rank()));
    // iota_bar ∘ pi_bar - id = d theta + theta d, exactly.
    Matrix lhs = out.iota_bar.matrix * out.pi_bar.matrix - Matrix::identity(Q(), 4);
    Matrix rhs = c.diff * out.theta_bar + out.theta_bar * c.diff;
    CHECK(lhs == rhs);
    CHECK(verify_certificate(out.certificate).pass);

    // All bars here sit below eps0, so X carries none of them.
    BarSpectrum sx = spectrum(out.X);
    CHECK(sx.torsion.empty());
    CHECK(sx.B == 0);
}

TEST_CASE("generated splits: certificate and restricted spectrum") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        GroundField f = seed % 2 ? GroundField::prime(3) : Q();
        GeneratedSplit g = generate_split(seed, f);
        CHECK(spectrum(g.split.complex) == g.truth);
        PerturbationOutput out = perturb(g.split, Rational(100));
        CHECK(out.exact);
        CHECK(verify_certificate(out.certificate).pass);
        BarSpectrum sx = spectrum(out.X);
        CHECK(sx.B == g.truth_above_eps.B);
        CHECK(sx.torsion == g.truth_above_eps.torsion);
        CHECK(spectra_close(sx, g.truth_above_eps, g.split.delta0));
    }
}

TEST_CASE("cone closed forms") {
    // S = 0 doubles the spectrum.
    FilteredComplex c = v2(Q(), rational(2, 3));
    ChainMap zero{c, c, Matrix(Q(), 2, 2), Rational(0)};
    BarSpectrum doubled = spectrum(cone(zero));
    CHECK(doubled.torsion == std::vector<Rational>{rational(2, 3), rational(2, 3)});
    CHECK(doubled.B == 0);

    // S = id on the acyclic rank-2 piece: all torsion exponents are zero.
    ChainMap ident{c, c, Matrix::identity(Q(), 2), Rational(0)};
    BarSpectrum collapsed = spectrum(cone(ident));
    CHECK(collapsed.B == 0);
    CHECK(collapsed.torsion == std::vector<Rational>(2, Rational(0)));

    // S = T^gamma id on a zero differential: torsion {gamma} * n, B = 0.
    FilteredComplex flat = free_points(Q(), 3);
    ChainMap tid{flat, flat, Matrix::identity(Q(), 3).t_scaled(rational(5, 7)), Rational(0)};
    BarSpectrum tors = spectrum(cone(tid));
    CHECK(tors.B == 0);
    CHECK(tors.torsion == std::vector<Rational>(3, rational(5, 7)));
}

TEST_CASE("cone bound checker") {
    FilteredComplex c = v2(Q(), rational(2, 3));
    ChainMap zero{c, c, Matrix(Q(), 2, 2), Rational(0)};
    ConeBoundReport r0 = check_cone_bound(zero);
    CHECK(r0.hypothesis_met);
    CHECK(r0.pass);
    CHECK(r0.cone_beta_tot == r0.twice_beta_tot);

    // Identity on a complex with homology: hypothesis fails.
    FilteredComplex flat = free_points(Q(), 2);
    ChainMap ident{flat, flat, Matrix::identity(Q(), 2), Rational(0)};
    ConeBoundReport r1 = check_cone_bound(ident);
    CHECK(!r1.hypothesis_met);

    // Null-homotopic maps on random complexes.
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = 100 + seed;
        cfg.field = seed % 2 ? GroundField::prime(5) : Q();
        cfg.rank = 3 + seed % 3;
        GeneratedComplex g = generate(cfg);
        ChainMap s = random_null_homotopic_map(g.complex, seed, seed % 2 ? rational(1, 2) : Rational(0));
        ConeBoundReport r = check_cone_bound(s);
        CHECK(r.hypothesis_met);
        CHECK(r.pass);
    }
}

TEST_CASE("majorization checker") {
    GroundField f5 = GroundField::prime(5);
    FilteredComplex c0 = v2(f5, Rational(1));

    // D = 0: equality.
    MajorizationReport eq = check_majorization(c0, Matrix(GroundField::prime_with_u(5), 2, 2));
    CHECK(eq.pass);
    CHECK(eq.original == eq.deformed);

    // u times a unit on the same entry: the deformed bar drops to zero.
    Matrix d(GroundField::prime_with_u(5), 2, 2);
    d.at(0, 1) = NovikovScalar::one(GroundField::prime_with_u(5));
    MajorizationReport drop = check_majorization(c0, d);
    CHECK(drop.pass);
    CHECK(drop.deformed == std::vector<Rational>{Rational(0)});
    CHECK(drop.original == std::vector<Rational>{Rational(1)});

    // A u^(-1) coefficient is rejected as a hypothesis failure.
    Matrix neg(GroundField::prime_with_u(5), 2, 2);
    GroundScalar u = GroundScalar::u_variable(GroundField::prime_with_u(5));
    neg.at(0, 1) = NovikovScalar::from_ground(u.inverse());
    MajorizationReport badu = check_majorization(c0, neg);
    CHECK(!badu.pass);
    CHECK(!badu.u_nonnegative);

    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        GeneratedDeformation g = generate_deformation(seed, seed % 2 ? 3 : 5);
        MajorizationReport r = check_majorization(g.c0, g.deformation);
        CHECK(r.pass);
        if (g.expected_strict) {
            Rational t0(0), t1(0);
            for (const auto& b : r.original) t0 += b;
            for (const auto& b : r.deformed) t1 += b;
            CHECK(t1 < t0);
        }
    }
}

TEST_CASE("scaling pipeline") {
    // Trivial scenario: zero differential, S = 0, no deformation; every step
    // is an equality between zeros.
    GroundField f2 = GroundField::prime(2);
    FilteredComplex flat = free_points(f2, 1, 0);
    ScalingScenario trivial;
    trivial.cp = extend_field(tensor_power(flat, 2), GroundField::prime_with_u(2));
    trivial.s = ChainMap{trivial.cp, trivial.cp, Matrix(trivial.cp.field, 1, 1), Rational(0)};
    trivial.deformation = Matrix(trivial.cp.field, 1, 1);
    PipelineReport triv = scaling_pipeline(flat, 2, trivial);
    CHECK(triv.pass);
    CHECK(triv.p_beta_c == 0);

    // V2 scenario at p = 2 and generated scenarios at p in {2, 3}.
    FilteredComplex c = v2(f2, rational(1, 2));
    ScalingScenario sc = make_scaling_scenario(c, 2, 99);
    PipelineReport rep = scaling_pipeline(c, 2, sc);
    CHECK(rep.pass);
    CHECK(rep.p_beta_c == Rational(1));
    for (const auto& step : rep.steps) CHECK(step.ok);

    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        std::uint64_t p = seed % 2 ? 3 : 2;
        GeneratorConfig cfg;
        cfg.seed = 300 + seed;
        cfg.field = GroundField::prime(p);
        cfg.rank = 2;
        cfg.forced_B = 0;
        GeneratedComplex g = generate(cfg);
        ScalingScenario scen = make_scaling_scenario(g.complex, p, seed);
        PipelineReport r = scaling_pipeline(g.complex, p, scen);
        CHECK(r.pass);
    }
}
