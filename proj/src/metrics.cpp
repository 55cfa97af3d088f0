#include "novbar/metrics.hpp"

#include <algorithm>
#include <sstream>

namespace novbar {

void Barcode::normalize() {
    for (const auto& bar : finite)
        if (!(bar.first < bar.second))
            throw std::invalid_argument("finite bar with nonpositive length");
    std::sort(finite.begin(), finite.end());
    std::sort(infinite.begin(), infinite.end());
}

Barcode Barcode::shifted(const Rational& c) const {
    Barcode out = *this;
    for (auto& bar : out.finite) {
        bar.first += c;
        bar.second += c;
    }
    for (auto& s : out.infinite) s += c;
    return out;
}

namespace {

Rational rabs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

// Perfect matching on the augmented bipartite graph (bars + diagonal
// slots) with all edge costs <= delta; Kuhn's augmenting paths.
bool matchable_at(const Barcode& a, const Barcode& b, const Rational& delta) {
    if (a.infinite.size() != b.infinite.size()) return false;
    for (std::size_t i = 0; i < a.infinite.size(); ++i)
        if (rabs(a.infinite[i] - b.infinite[i]) > delta) return false;

    const std::size_t m = a.finite.size(), n = b.finite.size();
    const std::size_t total = m + n;  // left: a-bars then n diagonal slots
    // adjacency: left u ~ right v (right: b-bars then m diagonal slots)
    std::vector<std::vector<std::size_t>> adj(total);
    Rational two_delta = delta * 2;
    for (std::size_t u = 0; u < total; ++u) {
        for (std::size_t v = 0; v < total; ++v) {
            bool ok;
            if (u < m && v < n) {
                ok = rabs(a.finite[u].first - b.finite[v].first) <= delta &&
                     rabs(a.finite[u].second - b.finite[v].second) <= delta;
            } else if (u < m) {
                ok = a.finite[u].second - a.finite[u].first <= two_delta;
            } else if (v < n) {
                ok = b.finite[v].second - b.finite[v].first <= two_delta;
            } else {
                ok = true;  // diagonal to diagonal
            }
            if (ok) adj[u].push_back(v);
        }
    }
    std::vector<long> match_right(total, -1);
    std::vector<bool> visited;
    auto augment = [&](auto&& self, std::size_t u) -> bool {
        for (std::size_t v : adj[u]) {
            if (visited[v]) continue;
            visited[v] = true;
            if (match_right[v] < 0 || self(self, static_cast<std::size_t>(match_right[v]))) {
                match_right[v] = static_cast<long>(u);
                return true;
            }
        }
        return false;
    };
    for (std::size_t u = 0; u < total; ++u) {
        visited.assign(total, false);
        if (!augment(augment, u)) return false;
    }
    return true;
}

}  // namespace

Valuation bottleneck(const Barcode& a, const Barcode& b) {
    if (a.infinite.size() != b.infinite.size()) return Valuation::infinity();
    std::vector<Rational> candidates{Rational(0)};
    for (const auto& x : a.finite)
        for (const auto& y : b.finite) {
            candidates.push_back(rabs(x.first - y.first));
            candidates.push_back(rabs(x.second - y.second));
        }
    for (const auto& x : a.finite) candidates.push_back(Rational((x.second - x.first) / 2));
    for (const auto& y : b.finite) candidates.push_back(Rational((y.second - y.first) / 2));
    for (std::size_t i = 0; i < a.infinite.size(); ++i)
        candidates.push_back(rabs(a.infinite[i] - b.infinite[i]));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    // Feasibility is monotone in delta: binary search the first feasible.
    std::size_t lo = 0, hi = candidates.size() - 1;
    if (!matchable_at(a, b, candidates[hi]))
        throw std::logic_error("bottleneck candidate set misses a feasible delta");
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (matchable_at(a, b, candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return Valuation(candidates[lo]);
}

Valuation bottleneck_mod_shift(const Barcode& a, const Barcode& b) {
    std::vector<Rational> shifts{Rational(0)};
    auto endpoints = [](const Barcode& bc) {
        std::vector<Rational> es;
        for (const auto& bar : bc.finite) {
            es.push_back(bar.first);
            es.push_back(bar.second);
        }
        for (const auto& s : bc.infinite) es.push_back(s);
        return es;
    };
    for (const auto& ea : endpoints(a))
        for (const auto& eb : endpoints(b)) shifts.push_back(Rational(ea - eb));
    std::sort(shifts.begin(), shifts.end());
    shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
    Valuation best = Valuation::infinity();
    for (const auto& c : shifts) {
        Valuation v = bottleneck(a, b.shifted(c));
        if (v < best) best = v;
    }
    return best;
}

namespace {

std::string locate(const char* what, std::size_t i, std::size_t j) {
    std::ostringstream os;
    os << what << " fails at [" << i << "," << j << "]";
    return os.str();
}

CertificateReport check_homotopy(const FilteredComplex& c, const Matrix& gf, const Matrix& h,
                                 const Rational& delta, const char* side) {
    Matrix lhs = gf - Matrix::identity(c.field, c.rank()).t_scaled(delta);
    Matrix rhs = c.diff * h + h * c.diff;
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j)
            if (!(lhs.at(i, j) == rhs.at(i, j)))
                return {false, locate(side, i, j)};
    return {true, "ok"};
}

}  // namespace

CertificateReport verify_certificate(const QuasiEquivalenceCertificate& cert) {
    const FilteredComplex& c = cert.F.source;
    const FilteredComplex& cp = cert.F.target;
    if (!(cert.G.source == cp) || !(cert.G.target == c))
        return {false, "F and G do not connect the same pair of complexes"};
    if (cert.delta < 0) return {false, "negative delta"};
    ChainMapReport fr = verify_chain_map(cert.F);
    if (!fr.pass) return {false, "F: " + fr.message};
    ChainMapReport gr = verify_chain_map(cert.G);
    if (!gr.pass) return {false, "G: " + gr.message};
    for (const Matrix* h : {&cert.H, &cert.Hp})
        if (!h->entries_in_valuation_ring())
            return {false, "homotopy has an entry outside the valuation ring"};
    if (!cert.F.matrix.entries_in_valuation_ring() || !cert.G.matrix.entries_in_valuation_ring())
        return {false, "chain map has an entry outside the valuation ring"};
    if (cert.H.rows() != c.rank() || cert.H.cols() != c.rank()) return {false, "H shape mismatch"};
    if (cert.Hp.rows() != cp.rank() || cert.Hp.cols() != cp.rank())
        return {false, "H' shape mismatch"};

    CertificateReport r1 =
        check_homotopy(c, cert.G.matrix * cert.F.matrix, cert.H, cert.delta, "G∘F - T^δ = dH+Hd");
    if (!r1.pass) return r1;
    CertificateReport r2 =
        check_homotopy(cp, cert.F.matrix * cert.G.matrix, cert.Hp, cert.delta, "F∘G - T^δ = dH'+H'd");
    if (!r2.pass) return r2;
    return {true, "ok"};
}

QuasiEquivalenceCertificate compose_certificates(const QuasiEquivalenceCertificate& c1,
                                                 const QuasiEquivalenceCertificate& c2) {
    if (!(c1.F.target == c2.F.source))
        throw std::invalid_argument("certificate composition: middle complexes differ");
    QuasiEquivalenceCertificate out;
    out.delta = c1.delta + c2.delta;
    out.F = ChainMap{c1.F.source, c2.F.target, c2.F.matrix * c1.F.matrix, Rational(0)};
    out.G = ChainMap{c2.F.target, c1.F.source, c1.G.matrix * c2.G.matrix, Rational(0)};
    // H = T^(delta2) H1 + G1 H2 F1, H' = T^(delta1) H2' + F2 H1' G2.
    out.H = c1.H.t_scaled(c2.delta) + c1.G.matrix * c2.H * c1.F.matrix;
    out.Hp = c2.Hp.t_scaled(c1.delta) + c2.F.matrix * c1.Hp * c2.G.matrix;
    return out;
}

QuasiEquivalenceCertificate canonical_scaling_certificate(const FilteredComplex& input,
                                                          const Rational& delta) {
    if (delta < 0) throw std::invalid_argument("delta must be >= 0");
    FilteredComplex c = orthonormalize(input);
    ValidationReport v = validate(c);
    if (!v.pass || !v.strict)
        throw std::invalid_argument("canonical scaling certificate needs a strict complex");
    EliminationOptions opts;
    opts.track_basis = true;
    Elimination e = eliminate(c, opts);

    const std::size_t n = c.rank();
    Matrix df(c.field, n, n);  // diagonal in adapted coordinates
    Matrix dg(c.field, n, n);
    NovikovScalar half = NovikovScalar::t_power(c.field, Rational(delta / 2));
    NovikovScalar full = NovikovScalar::t_power(c.field, delta);
    NovikovScalar one = NovikovScalar::one(c.field);
    for (std::size_t i : e.unpaired) {
        df.at(i, i) = half;
        dg.at(i, i) = half;
    }
    for (const auto& pr : e.pairs) {
        df.at(pr.eta, pr.eta) = full;
        df.at(pr.zeta, pr.zeta) = one;
        dg.at(pr.eta, pr.eta) = one;
        dg.at(pr.zeta, pr.zeta) = full;
    }
    FilteredComplex scaled = scale_differential(c, delta);
    QuasiEquivalenceCertificate cert;
    cert.delta = delta;
    cert.F = ChainMap{c, scaled, e.basis * df * e.basis_inv, Rational(0)};
    cert.G = ChainMap{scaled, c, e.basis * dg * e.basis_inv, Rational(0)};
    cert.H = Matrix(c.field, n, n);
    cert.Hp = Matrix(c.field, n, n);
    return cert;
}

bool spectra_close(const BarSpectrum& s1, const BarSpectrum& s2, const Rational& delta) {
    if (s1.B != s2.B) return false;
    const BarSpectrum a = s1.make_concise();
    const BarSpectrum b = s2.make_concise();
    Rational four_delta = delta * 4, two_delta = delta * 2;
    std::size_t ka = a.torsion.size(), kb = b.torsion.size();
    for (std::size_t j = 0;; ++j) {
        bool ina = j < ka && a.torsion[ka - 1 - j] > four_delta;
        bool inb = j < kb && b.torsion[kb - 1 - j] > four_delta;
        if (ina != inb) return false;
        if (!ina) return true;
        Rational diff = a.torsion[ka - 1 - j] - b.torsion[kb - 1 - j];
        if (rabs(diff) > two_delta) return false;
    }
}

}  // namespace novbar
