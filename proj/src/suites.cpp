#include "novbar/suites.hpp"

#include <algorithm>
#include <sstream>

namespace novbar {

namespace {

const std::vector<GroundField> kFields{GroundField::rationals(), GroundField::prime(2),
                                       GroundField::prime(3), GroundField::prime(5)};

std::string spectrum_values(const BarSpectrum& a, const BarSpectrum& b) {
    return a.str() + " vs " + b.str();
}

void add_check(SuiteReport& rep, const std::string& name, const FilteredComplex& instance,
               bool pass, const std::string& values) {
    SuiteCheck chk;
    chk.name = name;
    Json serialized = to_json(instance);
    chk.instance = digest(dump_json(serialized));
    chk.pass = pass;
    chk.values = values;
    if (!pass) chk.replay = serialized;
    rep.checks.push_back(std::move(chk));
    if (!pass) ++rep.failures;
}

SuiteReport suite_barcode_oracle(std::uint64_t seed, std::size_t count) {
    SuiteReport rep{"barcode-oracle", seed, count, {}, 0};
    for (std::size_t k = 0; k < count; ++k) {
        GeneratorConfig cfg;
        cfg.seed = seed + k;
        cfg.field = kFields[k % kFields.size()];
        cfg.rank = 2 + k % 5;
        GeneratedComplex g = generate(cfg);
        BarSpectrum s = spectrum(g.complex);
        BarSpectrum oracle = spectrum_via_minors(g.complex);
        bool pass = s == oracle && s == g.truth &&
                    static_cast<long long>(g.complex.rank()) ==
                        s.B + 2 * static_cast<long long>(s.torsion.size());
        add_check(rep, "spectrum==minors_oracle", g.complex, pass, spectrum_values(s, oracle));
    }
    return rep;
}

SuiteReport suite_stability(std::uint64_t seed, std::size_t count) {
    SuiteReport rep{"stability", seed, count, {}, 0};
    // Bar lengths stay clear of the (3δ, 4δ] band for every tested δ, so
    // the 4δ cutoffs classify both spectra the same way.
    const std::vector<Rational> pool{rational(1, 2), rational(3, 5), rational(2), rational(5),
                                     rational(13, 2)};
    const std::vector<Rational> deltas{rational(1, 4), rational(1, 3), rational(1)};
    for (std::size_t k = 0; k < count; ++k) {
        GeneratorConfig cfg;
        cfg.seed = seed + 7 * k;
        cfg.field = kFields[k % kFields.size()];
        cfg.rank = 2 + k % 5;
        cfg.torsion_pool = pool;
        GeneratedComplex g = generate(cfg);
        BarSpectrum base = spectrum(g.complex);
        for (const Rational& delta : deltas) {
            QuasiEquivalenceCertificate cert = canonical_scaling_certificate(g.complex, delta);
            CertificateReport vr = verify_certificate(cert);
            BarSpectrum scaled = spectrum(scale_differential(g.complex, delta));
            bool close = spectra_close(base, scaled, delta);
            add_check(rep, "scaling-certificate δ=" + to_string(delta), g.complex,
                      vr.pass && close, vr.message + "; " + spectrum_values(base, scaled));
        }
        // Composition across two scalings verifies at the summed delta.
        QuasiEquivalenceCertificate c1 = canonical_scaling_certificate(g.complex, deltas[0]);
        FilteredComplex mid = scale_differential(g.complex, deltas[0]);
        QuasiEquivalenceCertificate c2 = canonical_scaling_certificate(mid, deltas[1]);
        QuasiEquivalenceCertificate both = compose_certificates(c1, c2);
        CertificateReport vr = verify_certificate(both);
        add_check(rep, "composed-certificate", g.complex,
                  vr.pass && both.delta == deltas[0] + deltas[1], vr.message);
    }
    return rep;
}

SuiteReport suite_tate(std::uint64_t seed, std::size_t count) {
    SuiteReport rep{"tate", seed, count, {}, 0};
    const std::vector<std::pair<std::uint64_t, std::size_t>> shapes{
        {2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}};
    for (std::size_t k = 0; k < count; ++k) {
        auto [p, rank] = shapes[k % shapes.size()];
        GeneratorConfig cfg;
        cfg.seed = seed + 11 * k;
        cfg.field = GroundField::prime(p);
        cfg.rank = rank;
        GeneratedComplex g = generate(cfg);
        QuasiFrobeniusReport qf = verify_quasi_frobenius(g.complex, p);
        std::ostringstream os;
        os << "p=" << p << "; " << qf.message << "; "
           << spectrum_values(qf.tate.make_concise(), qf.expected);
        add_check(rep, "quasi-frobenius p=" + std::to_string(p), g.complex, qf.pass, os.str());
    }
    return rep;
}

SuiteReport suite_majorization(std::uint64_t seed, std::size_t count) {
    SuiteReport rep{"majorization", seed, count, {}, 0};
    const std::vector<std::uint64_t> primes{2, 3, 5};
    for (std::size_t k = 0; k < count; ++k) {
        GeneratedDeformation g = generate_deformation(seed + k, primes[k % primes.size()]);
        MajorizationReport mr = check_majorization(g.c0, g.deformation);
        std::ostringstream os;
        os << mr.message << (g.expected_strict ? " [strict expected]" : " [equality expected]");
        add_check(rep, g.expected_strict ? "majorization-strict" : "majorization-equal", g.c0,
                  mr.pass, os.str());
    }
    return rep;
}

SuiteReport suite_cone(std::uint64_t seed, std::size_t count) {
    SuiteReport rep{"cone", seed, count, {}, 0};
    for (std::size_t k = 0; k < count; ++k) {
        GeneratorConfig cfg;
        cfg.seed = seed + 13 * k;
        cfg.field = kFields[k % kFields.size()];
        cfg.rank = 2 + k % 5;
        GeneratedComplex g = generate(cfg);
        bool zero_map = k % 3 == 0;
        ChainMap s = zero_map
                         ? ChainMap{g.complex, g.complex,
                                    Matrix(g.complex.field, g.complex.rank(), g.complex.rank()),
                                    Rational(0)}
                         : random_null_homotopic_map(g.complex, seed + k,
                                                     k % 2 ? rational(1, 2) : Rational(0));
        ConeBoundReport cr = check_cone_bound(s);
        bool pass = cr.hypothesis_met && cr.pass;
        if (zero_map) pass = pass && cr.cone_beta_tot == cr.twice_beta_tot;
        std::ostringstream os;
        os << "beta_tot(cone)=" << to_string(cr.cone_beta_tot)
           << " vs 2*beta_tot=" << to_string(cr.twice_beta_tot);
        add_check(rep, zero_map ? "cone-zero-map" : "cone-null-homotopic", g.complex, pass,
                  os.str());
    }
    return rep;
}

SuiteReport suite_pipeline(std::uint64_t seed, std::size_t count) {
    SuiteReport rep{"pipeline", seed, count, {}, 0};
    const std::vector<std::pair<std::uint64_t, std::size_t>> shapes{{2, 2}, {2, 3}, {3, 2}};
    for (std::size_t k = 0; k < count; ++k) {
        auto [p, rank] = shapes[k % shapes.size()];
        GeneratorConfig cfg;
        cfg.seed = seed + 17 * k;
        cfg.field = GroundField::prime(p);
        cfg.rank = rank;
        cfg.forced_B = static_cast<long>(rank % 2);  // B in {0,1}
        GeneratedComplex g = generate(cfg);
        ScalingScenario scenario = make_scaling_scenario(g.complex, p, seed + k);
        PipelineReport pr = scaling_pipeline(g.complex, p, scenario);
        std::ostringstream os;
        os << "p*beta_tot(c)=" << to_string(pr.p_beta_c)
           << " <= beta_tot(Cp)=" << to_string(pr.beta_cp);
        if (!pr.pass) os << "; failed at: " << pr.failed_step;
        add_check(rep, "scaling-pipeline p=" + std::to_string(p), g.complex, pr.pass, os.str());
    }
    return rep;
}

SuiteReport suite_modp(std::uint64_t seed, std::size_t count) {
    SuiteReport rep{"modp", seed, count, {}, 0};
    for (std::size_t k = 0; k < count; ++k) {
        GeneratorConfig cfg;
        cfg.seed = seed + 19 * k;
        cfg.field = GroundField::rationals();
        cfg.rank = 2 + k % 5;
        cfg.integer_coefficients = true;
        GeneratedComplex g = generate(cfg);
        EliminationOptions opts;
        opts.record_primes = true;
        Elimination e = eliminate(g.complex, opts);
        BarSpectrum over_q;
        over_q.torsion = e.pivot_vals;
        over_q.B = static_cast<long long>(g.complex.rank()) -
                   2 * static_cast<long long>(e.pairs.size());
        bool pass = true;
        std::ostringstream os;
        os << "excluded primes:";
        for (std::uint64_t p : e.coefficient_primes) os << " " << p;
        for (std::uint64_t p = 2; p <= 50; ++p) {
            if (!is_prime(p) || e.coefficient_primes.count(p)) continue;
            FilteredComplex cp = g.complex;
            cp.field = GroundField::prime(p);
            cp.diff = g.complex.diff.reduce_mod(p);
            BarSpectrum sp = spectrum(cp);
            if (!(sp == over_q)) {
                pass = false;
                os << "; mismatch at p=" << p << ": " << spectrum_values(over_q, sp);
                break;
            }
        }
        add_check(rep, "modp-agreement", g.complex, pass, os.str());
    }
    // Constructed witness: the 2*T^(1/2) entry dies in characteristic 2.
    {
        GroundField q = GroundField::rationals();
        FilteredComplex w;
        w.field = q;
        w.convention = Convention::Orthonormalized;
        w.basis = {{"eta", 0, Rational(0)}, {"zeta", 1, Rational(0)}};
        w.diff = Matrix(q, 2, 2);
        w.diff.at(0, 1) = NovikovScalar::monomial(GroundScalar::from_rational(2), rational(1, 2));
        BarSpectrum over_q = spectrum(w);
        FilteredComplex w2 = w;
        w2.field = GroundField::prime(2);
        w2.diff = w.diff.reduce_mod(2);
        BarSpectrum over_f2 = spectrum(w2);
        bool pass = over_q.torsion == std::vector<Rational>{rational(1, 2)} && over_q.B == 0 &&
                    over_f2.B == 2 && over_f2.torsion.empty();
        add_check(rep, "witness-expected-difference", w, pass,
                  spectrum_values(over_q, over_f2) + " (difference at p=2 is expected)");
    }
    return rep;
}

}  // namespace

Json SuiteReport::to_json() const {
    Json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["count"] = count;
    j["failures"] = failures;
    Json arr = Json::array();
    for (const auto& c : checks) {
        Json e;
        e["name"] = c.name;
        e["instance"] = c.instance;
        e["pass"] = c.pass;
        e["values"] = c.values;
        if (!c.pass) e["replay"] = c.replay;
        arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    return j;
}

std::vector<std::string> suite_names() {
    return {"barcode-oracle", "stability", "tate", "majorization", "cone", "pipeline", "modp"};
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t count) {
    SuiteReport rep;
    if (name == "barcode-oracle")
        rep = suite_barcode_oracle(seed, count);
    else if (name == "stability")
        rep = suite_stability(seed, count);
    else if (name == "tate")
        rep = suite_tate(seed, count);
    else if (name == "majorization")
        rep = suite_majorization(seed, count);
    else if (name == "cone")
        rep = suite_cone(seed, count);
    else if (name == "pipeline")
        rep = suite_pipeline(seed, count);
    else if (name == "modp")
        rep = suite_modp(seed, count);
    else
        throw std::invalid_argument("unknown suite: '" + name + "'");
    std::stable_sort(rep.checks.begin(), rep.checks.end(),
                     [](const SuiteCheck& a, const SuiteCheck& b) { return a.instance < b.instance; });
    return rep;
}

}  // namespace novbar
