#pragma once

#include <set>

#include "novbar/complex.hpp"

namespace novbar {

/// Bar-length spectrum: free rank B (infinite bars) plus the sorted multiset
/// of torsion exponents (finite bar lengths). Verbose spectra may contain
/// zeros; concise ones may not. N = B + 2*K for an N-generator complex.
struct BarSpectrum {
    long long B = 0;
    std::vector<Rational> torsion;  // ascending
    bool concise = false;

    Rational beta_total() const;
    Rational beta_max() const;  // 0 on empty torsion
    BarSpectrum make_concise() const;

    bool operator==(const BarSpectrum&) const = default;
    std::string str() const;
};

/// Outcome of the valuation-aware elimination (Smith normal form over the
/// valuation ring by conjugation): the pivot valuations are the verbose
/// torsion exponents; `pairs` records the adapted (eta, zeta) index pairs;
/// `basis`/`basis_inv` the accumulated change of basis when requested.
struct Elimination {
    std::vector<Rational> pivot_vals;
    struct Pair {
        std::size_t eta;   // row index of the pivot
        std::size_t zeta;  // column index of the pivot
        Rational beta;
    };
    std::vector<Pair> pairs;
    std::vector<std::size_t> unpaired;  // adapted cycles with no partner
    Matrix basis;                        // columns = adapted basis in input coordinates
    Matrix basis_inv;
    std::set<std::uint64_t> coefficient_primes;  // see record_primes
};

struct EliminationOptions {
    bool track_basis = false;
    /// Record every prime <= prime_bound dividing any numerator or
    /// denominator of any coefficient of any live entry at any pivot step
    /// (rational ground field only). Reduction mod p commutes with the whole
    /// elimination for primes outside this set.
    bool record_primes = false;
    std::uint64_t prime_bound = 50;
};

/// Requires an orthonormalized complex with d*d = 0.
Elimination eliminate(const FilteredComplex& c, const EliminationOptions& opts = {});

/// Verbose bar-length spectrum via elimination. Raw inputs are
/// orthonormalized first.
BarSpectrum spectrum(const FilteredComplex& c);

/// Independent oracle: gamma_j = min valuation of det over all j x j minors,
/// torsion exponents are the successive differences. Identical output
/// contract to spectrum(); refuses ranks above `cap`.
BarSpectrum spectrum_via_minors(const FilteredComplex& c, std::size_t cap = 8);

/// Barcode-style intervals derived from the adapted basis: finite bars
/// (start, start + beta) with starts taken from the original actions of the
/// pivot rows, infinite bars at the actions of unpaired indices. Zero-length
/// bars are dropped (they never enter a Barcode object).
struct IntervalData {
    std::vector<std::pair<Rational, Rational>> finite;
    std::vector<Rational> infinite;
};
IntervalData intervals_of(const FilteredComplex& c);

}  // namespace novbar
