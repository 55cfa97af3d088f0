#pragma once

#include "novbar/barcode.hpp"

namespace novbar {

/// Multiset of intervals; finite bars (start, end) with start < end,
/// infinite bars recorded by their start. Stored expanded (one entry per
/// multiplicity unit), sorted.
struct Barcode {
    std::vector<std::pair<Rational, Rational>> finite;
    std::vector<Rational> infinite;

    void normalize();
    Barcode shifted(const Rational& c) const;
    bool operator==(const Barcode&) const = default;
};

/// Exact bottleneck distance; +infinity iff the infinite-bar counts differ.
/// The optimum is attained on the finite candidate set of endpoint
/// differences and half-lengths, each tested by bipartite matching.
Valuation bottleneck(const Barcode& a, const Barcode& b);

/// Shift-quotient distance: minimum of bottleneck(a, b shifted by c) over
/// the finite candidate set of endpoint-difference shifts.
Valuation bottleneck_mod_shift(const Barcode& a, const Barcode& b);

/// delta-quasi-equivalence certificate: chain maps F: C -> C', G: C' -> C
/// and homotopies H (on C), H' (on C') with
///   G F - T^delta id = d H + H d      and      F G - T^delta id = d H' + H' d,
/// all entries in the valuation ring.
struct QuasiEquivalenceCertificate {
    ChainMap F;
    ChainMap G;
    Matrix H;
    Matrix Hp;
    Rational delta = Rational(0);
};

struct CertificateReport {
    bool pass = false;
    std::string message;
};

CertificateReport verify_certificate(const QuasiEquivalenceCertificate& cert);

/// Composes a delta1- and a delta2-certificate along a common middle
/// complex into a (delta1+delta2)-certificate.
QuasiEquivalenceCertificate compose_certificates(const QuasiEquivalenceCertificate& c1,
                                                 const QuasiEquivalenceCertificate& c2);

/// The explicit certificate between (C, d) and (C, T^delta d): the adapted
/// basis scales by T^(delta/2) on cycles, T^delta on eta, identity on zeta,
/// with zero homotopies. Requires a strict complex.
QuasiEquivalenceCertificate canonical_scaling_certificate(const FilteredComplex& c,
                                                          const Rational& delta);

/// 2*delta-closeness of spectra: equal free ranks, matching > 4*delta
/// cutoffs from the top, and |beta - beta'| <= 2*delta on the matched part
/// (the boundary is accepted at exact-arithmetic ties).
bool spectra_close(const BarSpectrum& s1, const BarSpectrum& s2, const Rational& delta);

}  // namespace novbar
