#pragma once

#include "novbar/barcode.hpp"
#include "novbar/metrics.hpp"

namespace novbar {

/// Cyclic rotation with Koszul sign on the p-th tensor power of `base`:
///   tau(x_0 ⊗ ... ⊗ x_{p-1}) = ± x_{p-1} ⊗ x_0 ⊗ ... ⊗ x_{p-2},
/// the sign being (-1)^{|x_{p-1}|(|x_0|+...+|x_{p-2}|)}. Returned as a chain
/// map on tensor_power(base, p).
ChainMap cyclic_permutation(const FilteredComplex& base, std::uint64_t p,
                            std::size_t cap = kDefaultRankCap);

/// Z/p Tate complex of a strict orthonormalized complex over F_p: basis
/// pairs (w ⊗ 1, w ⊗ θ) over F_p(u), rank 2 N^p, with
///   d(x ⊗ 1) =  d_pow x ⊗ 1 + ((1 - tau) x) ⊗ θ
///   d(x ⊗ θ) = -d_pow x ⊗ θ + u ((1 + tau + ... + tau^{p-1}) x) ⊗ 1.
/// The θ-sector sign is fixed by d∘d = 0.
struct TateComplex {
    FilteredComplex underlying;  // over F_p(u)
    std::uint64_t p = 0;
    FilteredComplex input;       // the complex it was built from
    std::size_t words = 0;       // N^p
};

TateComplex build_tate(const FilteredComplex& c, std::uint64_t p,
                       std::size_t cap = kDefaultRankCap);

/// Spectrum transport along T -> T^(1/p) plus the θ factor: B doubles and
/// each finite bar length becomes two copies of p times itself.
BarSpectrum rescale_spectrum(const BarSpectrum& s, std::uint64_t p);

struct QuasiFrobeniusReport {
    bool pass = false;
    BarSpectrum tate;      // verbose spectrum of the Tate complex
    BarSpectrum expected;  // rescale_spectrum(spectrum(c), p)
    std::string message;
};

/// Mechanized p-scaling check: the Tate spectrum (verbose zeros discarded)
/// must equal the doubled p-scaled spectrum of the input.
QuasiFrobeniusReport verify_quasi_frobenius(const FilteredComplex& c, std::uint64_t p,
                                            std::size_t cap = kDefaultRankCap);

}  // namespace novbar
