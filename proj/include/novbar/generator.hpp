#pragma once

#include "novbar/perturb.hpp"

namespace novbar {

/// Seeded instance generation. Complexes are built in adapted form (random
/// torsion exponents and free rank, so the spectrum is known by
/// construction) and conjugated by random valuation-ring matrices with
/// valuation-0 determinant; d*d = 0 therefore holds by construction.
struct GeneratorConfig {
    std::uint64_t seed = 0;
    GroundField field = GroundField::rationals();
    std::size_t rank = 3;
    /// Required minimal entry valuation (strictness); torsion exponents are
    /// drawn at or above this.
    Rational min_val = Rational(1, 4);
    long exponent_denominator_bound = 4;
    /// Fraction of attempted mixing operations actually applied, in (0, 1].
    Rational density = Rational(1);
    /// Forced free rank; -1 draws it at random (parity-compatible).
    long forced_B = -1;
    /// Optional pool of torsion exponents to draw from instead of random
    /// ones (used by the stability suite).
    std::vector<Rational> torsion_pool;
    /// Integer conjugation coefficients only (mod-p suite needs them).
    bool integer_coefficients = false;
};

struct GeneratedComplex {
    FilteredComplex complex;  // orthonormalized, validates, d*d = 0
    BarSpectrum truth;        // ground-truth spectrum from the construction
};

GeneratedComplex generate(const GeneratorConfig& config);

/// Applies `count` random valuation-0-determinant conjugations (same-parity
/// elementary operations and unit scalings) and returns the result.
FilteredComplex random_conjugate(const FilteredComplex& c, std::uint64_t seed, std::size_t count,
                                 bool integer_coefficients = false);

/// Random valuation-ring map assembled as d∘R + R∘d (hence null-homotopic),
/// optionally scaled by T^gamma.
ChainMap random_null_homotopic_map(const FilteredComplex& c, std::uint64_t seed,
                                   const Rational& gamma = Rational(0));

/// Split-differential instance with exactly terminating perturbation
/// series: local pieces with small torsion, cross-block pairs above eps0,
/// strictly upper block-triangular mixing.
struct GeneratedSplit {
    SplitDifferential split;
    BarSpectrum truth;           // spectrum of the full complex
    BarSpectrum truth_above_eps; // its part above eps0 (plus the free rank)
};
GeneratedSplit generate_split(std::uint64_t seed, const GroundField& field);

/// Deformation scenario for the majorization suite: adapted complex over
/// F_p, a u-deformation supported on the adapted pair entries (so the
/// deformed differential still squares to zero), then a common conjugation.
struct GeneratedDeformation {
    FilteredComplex c0;       // over F_p
    Matrix deformation;       // over F_p(u), u-integral entries
    bool expected_strict;     // some partial sum strictly drops
};
GeneratedDeformation generate_deformation(std::uint64_t seed, std::uint64_t p);

}  // namespace novbar
