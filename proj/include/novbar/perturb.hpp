#pragma once

#include "novbar/equivariant.hpp"

namespace novbar {

/// Differential split as d_loc + T^(eps0) D along a partition of the basis
/// into local pieces: d_loc is the block-diagonal part, D the off-block part
/// divided by T^(eps0) (entries in the valuation ring), and delta0 the
/// largest verbose torsion exponent of any block. Requires delta0 < eps0.
struct SplitDifferential {
    FilteredComplex complex;               // orthonormalized
    std::vector<std::vector<std::size_t>> blocks;
    Rational eps0;
    Rational delta0;                       // computed from the blocks
};

SplitDifferential make_split(const FilteredComplex& c,
                             std::vector<std::vector<std::size_t>> blocks, Rational eps0);

/// Output of transferring the differential to the block-homology generators
/// via the perturbation series pi (T^e D + T^2e D Θ D + ...) iota.
struct PerturbationOutput {
    FilteredComplex X;          // complex on the block-homology generators
    ChainMap pi_bar;            // C -> X
    ChainMap iota_bar;          // X -> C
    Matrix theta_bar;           // homotopy on C over the fraction field
    QuasiEquivalenceCertificate certificate;  // at delta0, after T^(delta0/2) scaling
    bool exact = false;         // series terminated before the truncation horizon
    Rational truncation;
};

/// Evaluates the perturbation series; terms beyond valuation `truncation`
/// are dropped unless the series terminates exactly first.
PerturbationOutput perturb(const SplitDifferential& s, const Rational& truncation);

/// Cone of a valuation-ring chain map S : C -> C, with differential
/// (x0, x1) -> (d x0, -d x1 + S x0).
FilteredComplex cone(const ChainMap& s);

struct ConeBoundReport {
    bool hypothesis_met = false;  // S zero on H(C, d) ⊗ Λ
    bool pass = false;
    Rational cone_beta_tot;
    Rational twice_beta_tot;
    std::string message;
};

/// Checks beta_tot(Cone(S)) <= 2 beta_tot(C) after verifying that S kills
/// fraction-field homology.
ConeBoundReport check_cone_bound(const ChainMap& s);

struct MajorizationReport {
    bool squares_to_zero = false;
    bool homology_match = false;
    bool u_nonnegative = false;
    bool pass = false;
    std::vector<Rational> original;  // verbose spectrum of (C, d0), ascending
    std::vector<Rational> deformed;  // verbose spectrum of (C ⊗ K, d0 + uD)
    std::string message;
};

/// Partial-sum majorization of the u-deformed spectrum by the original one;
/// `c0` over F_p, `deformation` over F_p(u) with u-integral entries.
MajorizationReport check_majorization(const FilteredComplex& c0, const Matrix& deformation);

/// Synthetic scaling scenario: the Tate differential of tensor words split
/// as cone(S) + u·E with S the 1 - tau rotation and E the norm block, all
/// conjugated by `change` (a valuation-0-determinant matrix on words).
struct ScalingScenario {
    FilteredComplex cp;   // plays the p-th iterate: (C^{⊗p}, d_pow) over F_p(u)
    ChainMap s;           // chain map on cp, null on homology by construction
    Matrix deformation;   // E with u·E the remaining Tate terms, u-integral
};

ScalingScenario make_scaling_scenario(const FilteredComplex& c, std::uint64_t p,
                                      std::uint64_t seed, std::size_t cap = kDefaultRankCap);

struct PipelineStep {
    std::string name;
    std::string lhs;
    std::string relation;
    std::string rhs;
    bool ok = false;
};

struct PipelineReport {
    bool pass = false;
    std::vector<PipelineStep> steps;
    Rational p_beta_c;   // p * beta_tot(c)
    Rational beta_cp;    // beta_tot of the iterate stand-in
    std::string failed_step;
};

/// Verifies p·beta_tot(c) = ½ beta_tot(Tate-shaped) <= ½ beta_tot(cone(S))
/// <= beta_tot(Cp), with every hypothesis checked and every inequality
/// logged.
PipelineReport scaling_pipeline(const FilteredComplex& c, std::uint64_t p,
                                const ScalingScenario& scenario);

}  // namespace novbar
