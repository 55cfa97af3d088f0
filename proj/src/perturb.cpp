#include "novbar/perturb.hpp"

#include <algorithm>
#include <sstream>

namespace novbar {

SplitDifferential make_split(const FilteredComplex& input,
                             std::vector<std::vector<std::size_t>> blocks, Rational eps0) {
    if (!(eps0 > 0)) throw std::invalid_argument("eps0 must be positive");
    FilteredComplex c = orthonormalize(input);
    const std::size_t n = c.rank();
    std::vector<long> owner(n, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::size_t i : blocks[b]) {
            if (i >= n || owner[i] >= 0)
                throw std::invalid_argument("blocks must partition the basis");
            owner[i] = static_cast<long>(b);
        }
    for (std::size_t i = 0; i < n; ++i)
        if (owner[i] < 0) throw std::invalid_argument("blocks must cover the basis");

    Rational delta0(0);
    for (const auto& block : blocks) {
        // Spectrum of the local piece.
        FilteredComplex local;
        local.field = c.field;
        local.convention = Convention::Orthonormalized;
        for (std::size_t i : block) local.basis.push_back(c.basis[i]);
        local.diff = Matrix(c.field, block.size(), block.size());
        for (std::size_t a = 0; a < block.size(); ++a)
            for (std::size_t b = 0; b < block.size(); ++b)
                local.diff.at(a, b) = c.diff.at(block[a], block[b]);
        BarSpectrum s = spectrum(local);
        if (!s.torsion.empty()) delta0 = std::max(delta0, s.beta_max());
    }
    // Off-block entries must carry valuation >= eps0.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (owner[i] == owner[j] || c.diff.at(i, j).is_zero()) continue;
            if (!c.diff.at(i, j).val().at_least(eps0))
                throw std::invalid_argument("off-block entry below T^eps0");
        }
    if (!(delta0 < eps0))
        throw std::invalid_argument("split rejected: eps0 <= delta0 (local torsion too large)");
    return SplitDifferential{std::move(c), std::move(blocks), std::move(eps0), std::move(delta0)};
}

PerturbationOutput perturb(const SplitDifferential& s, const Rational& truncation) {
    const FilteredComplex& c = s.complex;
    const std::size_t n = c.rank();
    const GroundField& f = c.field;

    // Local differential and its adapted basis.
    std::vector<long> owner(n, -1);
    for (std::size_t b = 0; b < s.blocks.size(); ++b)
        for (std::size_t i : s.blocks[b]) owner[i] = static_cast<long>(b);
    FilteredComplex local = c;
    Matrix off(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (owner[i] != owner[j]) {
                off.at(i, j) = c.diff.at(i, j);
                local.diff.at(i, j) = NovikovScalar::zero(f);
            }
        }
    EliminationOptions opts;
    opts.track_basis = true;
    Elimination e = eliminate(local, opts);

    // Everything below runs in adapted coordinates.
    Matrix off_ad = e.basis_inv * off * e.basis;
    // Homotopy of the local contraction, normalized so that
    // iota∘pi - id = d h + h d holds on the nose; the pair (eta, zeta) with
    // d zeta = T^b eta contributes h(eta) = -T^(-b) zeta.
    Matrix theta(f, n, n);
    for (const auto& pr : e.pairs)
        theta.at(pr.zeta, pr.eta) = -NovikovScalar::t_power(f, -pr.beta);

    Matrix series(f, n, n);
    Matrix term = off_ad;  // T^(eps0) D and onward
    Rational step = s.eps0 - s.delta0;  // every factor adds at least this much valuation
    Rational bound = step;
    bool exact = false;
    while (true) {
        if (term.is_zero()) {
            exact = true;
            break;
        }
        series = series + term;
        bound += step;
        if (bound > truncation) break;
        term = term * theta * off_ad;
    }

    const std::vector<std::size_t>& xs = e.unpaired;
    auto rows_at = [&](const Matrix& m, const std::vector<std::size_t>& rows) {
        Matrix r(f, rows.size(), m.cols());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(rows[i], j);
        return r;
    };
    auto cols_at = [&](const Matrix& m, const std::vector<std::size_t>& cols) {
        Matrix r(f, m.rows(), cols.size());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) r.at(i, j) = m.at(i, cols[j]);
        return r;
    };

    PerturbationOutput out;
    out.exact = exact;
    out.truncation = truncation;
    out.X.field = f;
    out.X.convention = Convention::Orthonormalized;
    for (std::size_t i : xs) out.X.basis.push_back(c.basis[i]);
    out.X.diff = rows_at(cols_at(series, xs), xs);

    Matrix eye = Matrix::identity(f, n);
    Matrix pi_ad = rows_at(eye + series * theta, xs);
    Matrix iota_ad = cols_at(eye + theta * series, xs);
    Matrix theta_bar_ad = theta + theta * series * theta;

    out.pi_bar = ChainMap{c, out.X, pi_ad * e.basis_inv, Rational(0)};
    out.iota_bar = ChainMap{out.X, c, e.basis * iota_ad, Rational(0)};
    out.theta_bar = e.basis * theta_bar_ad * e.basis_inv;

    Rational half = s.delta0 / 2;
    out.certificate.delta = s.delta0;
    out.certificate.F = ChainMap{c, out.X, out.pi_bar.matrix.t_scaled(half), Rational(0)};
    out.certificate.G = ChainMap{out.X, c, out.iota_bar.matrix.t_scaled(half), Rational(0)};
    out.certificate.H = out.theta_bar.t_scaled(s.delta0);
    out.certificate.Hp = Matrix(f, xs.size(), xs.size());
    return out;
}

FilteredComplex cone(const ChainMap& s) {
    if (!(s.source == s.target))
        throw std::invalid_argument("cone expects an endomorphism chain map");
    if (!s.matrix.entries_in_valuation_ring())
        throw std::invalid_argument("cone expects a valuation-ring chain map");
    ChainMapReport r = verify_chain_map(s);
    if (!r.pass) throw std::invalid_argument("cone: " + r.message);
    const FilteredComplex& c = s.source;
    const std::size_t n = c.rank();
    FilteredComplex out;
    out.field = c.field;
    out.convention = c.convention;
    out.basis.reserve(2 * n);
    for (const auto& b : c.basis) out.basis.push_back(b);
    for (const auto& b : c.basis) out.basis.push_back({b.label + "'", b.degree + 1, b.action});
    out.diff = Matrix(c.field, 2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!c.diff.at(i, j).is_zero()) {
                out.diff.at(i, j) = c.diff.at(i, j);
                out.diff.at(n + i, n + j) = -c.diff.at(i, j);
            }
            if (!s.matrix.at(i, j).is_zero()) out.diff.at(n + i, j) = s.matrix.at(i, j);
        }
    return out;
}

ConeBoundReport check_cone_bound(const ChainMap& s) {
    ConeBoundReport rep;
    const FilteredComplex& c = s.source;
    Matrix ker = kernel_basis(c.diff);
    Matrix image = s.matrix * ker;
    rep.hypothesis_met = columns_in_span(c.diff, image);
    if (!rep.hypothesis_met) {
        rep.message = "hypothesis not met: S is not null on fraction-field homology";
        return rep;
    }
    FilteredComplex cn = cone(s);
    rep.cone_beta_tot = spectrum(cn).beta_total();
    rep.twice_beta_tot = spectrum(c).beta_total() * 2;
    rep.pass = !(rep.twice_beta_tot < rep.cone_beta_tot);
    rep.message = rep.pass ? "ok" : "cone bound violated";
    return rep;
}

namespace {

MajorizationReport majorization_of_matrices(const GroundField& fu, const FilteredComplex& base,
                                            const Matrix& d0, const Matrix& deformed) {
    MajorizationReport rep;
    Matrix u_part = deformed - d0;
    NovikovScalar u = NovikovScalar::from_ground(GroundScalar::u_variable(fu));
    for (std::size_t i = 0; i < u_part.rows(); ++i)
        for (std::size_t j = 0; j < u_part.cols(); ++j) {
            if (u_part.at(i, j).is_zero()) continue;
            NovikovScalar dd = u_part.at(i, j) / u;
            if (!dd.has_nonnegative_u_degree()) {
                rep.message = "deformation term is not u-integral";
                return rep;
            }
        }
    rep.u_nonnegative = true;

    Matrix sq = deformed * deformed;
    if (!sq.is_zero()) {
        rep.message = "deformed differential does not square to zero";
        return rep;
    }
    rep.squares_to_zero = true;

    if (d0.rank() != deformed.rank()) {
        rep.message = "hypothesis not met: fraction-field homology dimensions differ";
        return rep;
    }
    rep.homology_match = true;

    FilteredComplex c0 = base;
    c0.diff = d0;
    FilteredComplex c1 = base;
    c1.diff = deformed;
    rep.original = spectrum(c0).torsion;
    rep.deformed = spectrum(c1).torsion;
    Rational sum0(0), sum1(0);
    for (std::size_t j = 0; j < rep.deformed.size(); ++j) {
        sum1 += rep.deformed[j];
        sum0 += j < rep.original.size() ? rep.original[j] : Rational(0);
        if (sum0 < sum1) {
            std::ostringstream os;
            os << "partial sum " << j + 1 << " violates majorization";
            rep.message = os.str();
            return rep;
        }
    }
    rep.pass = true;
    rep.message = "ok";
    return rep;
}

}  // namespace

MajorizationReport check_majorization(const FilteredComplex& c0, const Matrix& deformation) {
    if (c0.field.kind != FieldKind::Prime)
        throw std::invalid_argument("check_majorization expects the base complex over F_p");
    GroundField fu = GroundField::prime_with_u(c0.field.p);
    if (!(deformation.field() == fu))
        throw std::invalid_argument("deformation must live over F_p(u)");
    FilteredComplex base = extend_field(orthonormalize(c0), fu);
    NovikovScalar u = NovikovScalar::from_ground(GroundScalar::u_variable(fu));
    Matrix deformed = base.diff + deformation.scaled(u);
    return majorization_of_matrices(fu, base, base.diff, deformed);
}

ScalingScenario make_scaling_scenario(const FilteredComplex& c, std::uint64_t p,
                                      std::uint64_t seed, std::size_t cap) {
    if (c.field.kind != FieldKind::Prime || c.field.p != p)
        throw std::invalid_argument("scenario needs a complex over F_" + std::to_string(p));
    FilteredComplex ortho = orthonormalize(c);
    ChainMap tau = cyclic_permutation(ortho, p, cap);
    GroundField fu = GroundField::prime_with_u(p);
    const std::size_t w = tau.source.rank();

    FilteredComplex cp = extend_field(tau.source, fu);
    Matrix tau_u = tau.matrix.extend_to_u();
    Matrix s_mat = Matrix::identity(fu, w) - tau_u;
    Matrix norm(fu, w, w);
    {
        Matrix acc = Matrix::identity(fu, w);
        for (std::uint64_t k = 0; k < p; ++k) {
            norm = norm + acc;
            acc = acc * tau_u;
        }
    }

    // Deterministic change of basis on words: elementary operations between
    // same-parity indices, T-powers only (no u), so the cone/deformation
    // split survives conjugation.
    Rng rng(seed ^ 0x746174655f703255ULL);
    Matrix basis = Matrix::identity(fu, w);
    Matrix basis_inv = Matrix::identity(fu, w);
    std::size_t ops = w > 1 ? w : 0;
    for (std::size_t k = 0; k < ops; ++k) {
        std::size_t i = rng.below(w), j = rng.below(w);
        if (i == j || (cp.basis[i].degree - cp.basis[j].degree) % 2 != 0) continue;
        long num = rng.range(1, static_cast<long>(p) - 1 > 0 ? static_cast<long>(p) - 1 : 1);
        Rational exp = rational(rng.range(0, 4), rng.range(1, 3));
        NovikovScalar lam =
            NovikovScalar::monomial(GroundScalar::from_int(fu, num), exp);
        // x_j <- x_j + lam x_i
        for (std::size_t r = 0; r < w; ++r)
            if (!basis.at(r, i).is_zero())
                basis.at(r, j) = basis.at(r, j) + lam * basis.at(r, i);
        for (std::size_t cidx = 0; cidx < w; ++cidx)
            if (!basis_inv.at(j, cidx).is_zero())
                basis_inv.at(i, cidx) = basis_inv.at(i, cidx) - lam * basis_inv.at(j, cidx);
    }

    ScalingScenario out;
    out.cp = cp;
    out.cp.diff = basis_inv * cp.diff * basis;
    // Relabel: the conjugated words are formal combinations now.
    for (std::size_t i = 0; i < out.cp.basis.size(); ++i)
        out.cp.basis[i].label = "w" + std::to_string(i);
    out.s = ChainMap{out.cp, out.cp, basis_inv * s_mat * basis, Rational(0)};
    out.deformation = basis_inv * norm * basis;
    return out;
}

PipelineReport scaling_pipeline(const FilteredComplex& c, std::uint64_t p,
                                const ScalingScenario& scenario) {
    PipelineReport rep;
    auto log = [&](const std::string& name, const Rational& lhs, const char* rel,
                   const Rational& rhs, bool ok) {
        rep.steps.push_back({name, to_string(lhs), rel, to_string(rhs), ok});
        if (!ok && rep.failed_step.empty()) rep.failed_step = name;
        return ok;
    };

    Rational beta_c = spectrum(c).beta_total();
    rep.p_beta_c = beta_c * static_cast<long>(p);

    // Assembled Tate-shaped complex: cone(S) plus the u-divisible block.
    const FilteredComplex& cp = scenario.cp;
    const std::size_t w = cp.rank();
    GroundField fu = cp.field;
    FilteredComplex cone_s = cone(scenario.s);
    FilteredComplex assembled = cone_s;
    NovikovScalar u = NovikovScalar::from_ground(GroundScalar::u_variable(fu));
    for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < w; ++j)
            if (!scenario.deformation.at(i, j).is_zero())
                assembled.diff.at(i, w + j) = u * scenario.deformation.at(i, j);

    Rational beta_tate = spectrum(assembled).beta_total();
    bool qf_ok = rep.p_beta_c * 2 == beta_tate;
    if (!log("quasi-frobenius: 2p·β_tot(C) = β_tot(Tate)", rep.p_beta_c * 2, "=", beta_tate,
             qf_ok)) {
        rep.pass = false;
        return rep;
    }

    MajorizationReport maj =
        majorization_of_matrices(fu, cone_s, cone_s.diff, assembled.diff);
    Rational beta_cone;
    for (const auto& b : maj.original) beta_cone += b;
    if (!log("majorization: β_tot(Tate) ≤ β_tot(Cone(S))  [" + maj.message + "]", beta_tate,
             "<=", beta_cone, maj.pass)) {
        rep.pass = false;
        return rep;
    }

    ConeBoundReport cb = check_cone_bound(scenario.s);
    rep.beta_cp = cb.twice_beta_tot / 2;
    if (!log("cone bound: β_tot(Cone(S)) ≤ 2·β_tot(Cp)  [" + cb.message + "]", cb.cone_beta_tot,
             "<=", cb.twice_beta_tot, cb.hypothesis_met && cb.pass)) {
        rep.pass = false;
        return rep;
    }

    bool conclusion = !(rep.beta_cp < rep.p_beta_c);
    log("conclusion: p·β_tot(C) ≤ β_tot(Cp)", rep.p_beta_c, "<=", rep.beta_cp, conclusion);
    rep.pass = conclusion;
    return rep;
}

}  // namespace novbar
