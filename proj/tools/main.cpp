// novbar: exact bar-length spectra, Tate complexes and scaling checks for
// filtered complexes over Novikov valuation rings.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "novbar/suites.hpp"

using namespace novbar;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::size_t default_rank_cap() {
    if (const char* env = std::getenv("NOVBAR_MAX_RANK")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        std::cerr << "warning: ignoring malformed NOVBAR_MAX_RANK='" << env << "'\n";
    }
    return kDefaultRankCap;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

FilteredComplex load_complex(const std::string& path) {
    try {
        return complex_from_json(load_json(path));
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("while reading complex: ") + e.what());
    }
}

void emit(const Json& j, const std::string& out_path) {
    std::string text = dump_json(j);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
        out << text;
    }
}

Json steps_to_json(const PipelineReport& rep) {
    Json j;
    j["pass"] = rep.pass;
    j["p_beta_tot"] = to_string(rep.p_beta_c);
    j["beta_tot_iterate"] = to_string(rep.beta_cp);
    if (!rep.failed_step.empty()) j["failed_step"] = rep.failed_step;
    Json steps = Json::array();
    for (const auto& s : rep.steps) {
        Json e;
        e["name"] = s.name;
        e["lhs"] = s.lhs;
        e["relation"] = s.relation;
        e["rhs"] = s.rhs;
        e["ok"] = s.ok;
        steps.push_back(std::move(e));
    }
    j["steps"] = std::move(steps);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact bar-length spectra over Novikov valuation rings"};
    app.require_subcommand(1);

    std::string in_path, out_path, aux_path, truth_path;
    std::uint64_t prime = 2, seed = 1;
    std::size_t count = 20, rank = 3;
    std::string field_name = "Q", suite_name, gamma, eps = "1", trunc = "10", min_val = "1/4",
                density = "1";
    long forced_b = -1;
    bool verify = false, oracle = false, concise = false, intervals = false;
    std::size_t max_rank = default_rank_cap();
    long den_bound = 4;

    auto* c_validate = app.add_subcommand("validate", "check d*d=0, grading and filtration");
    c_validate->add_option("--input", in_path, "complex JSON file")->required();

    auto* c_barcode = app.add_subcommand("barcode", "bar-length spectrum of a complex");
    c_barcode->add_option("--input", in_path, "complex JSON file")->required();
    c_barcode->add_flag("--oracle", oracle, "cross-check against the minors oracle");
    c_barcode->add_flag("--concise", concise, "drop zero-length bars");
    c_barcode->add_flag("--intervals", intervals, "also emit interval endpoints");
    c_barcode->add_option("--out", out_path, "write the report here instead of stdout");

    auto* c_bottle = app.add_subcommand("bottleneck", "bottleneck distance between barcode files");
    std::string bar_a, bar_b;
    c_bottle->add_option("a", bar_a, "first barcode JSON file")->required();
    c_bottle->add_option("b", bar_b, "second barcode JSON file")->required();

    auto* c_tate = app.add_subcommand("tate", "Z/p Tate complex and its spectrum");
    c_tate->add_option("--input", in_path, "complex JSON file (over F_p)")->required();
    c_tate->add_option("--p", prime, "prime p")->required();
    c_tate->add_flag("--verify", verify, "check the quasi-Frobenius p-scaling");
    c_tate->add_option("--max-rank", max_rank, "override the size cap");
    c_tate->add_option("--out", out_path, "write the report here instead of stdout");

    auto* c_perturb = app.add_subcommand("perturb", "transfer the differential to block homology");
    c_perturb->add_option("--input", in_path, "complex JSON file")->required();
    c_perturb->add_option("--split", aux_path, "blocks JSON file")->required();
    c_perturb->add_option("--eps", eps, "off-block valuation eps0")->required();
    c_perturb->add_option("--trunc", trunc, "truncation valuation");
    c_perturb->add_option("--out", out_path, "write the report here instead of stdout");

    auto* c_cone = app.add_subcommand("cone", "cone of a chain map and the total-length bound");
    c_cone->add_option("--input", in_path, "complex JSON file")->required();
    c_cone->add_option("--map", aux_path, "chain map matrix JSON (default: zero map)");
    c_cone->add_option("--scale-identity", gamma, "use S = T^gamma * identity");
    c_cone->add_option("--out", out_path, "write the report here instead of stdout");

    auto* c_pipe = app.add_subcommand("pipeline", "end-to-end p-scaling inequality");
    c_pipe->add_option("--input", in_path, "complex JSON file (over F_p)")->required();
    c_pipe->add_option("--p", prime, "prime p")->required();
    c_pipe->add_option("--seed", seed, "scenario seed");
    c_pipe->add_option("--out", out_path, "write the report here instead of stdout");

    auto* c_gen = app.add_subcommand("gen", "generate a seeded complex with known spectrum");
    c_gen->add_option("--seed", seed, "generator seed")->required();
    c_gen->add_option("--rank", rank, "number of generators")->required();
    c_gen->add_option("--field", field_name, "Q, F<p> or F<p>(u)");
    c_gen->add_option("--min-val", min_val, "required minimal entry valuation");
    c_gen->add_option("--den-bound", den_bound, "exponent denominator bound");
    c_gen->add_option("--density", density, "mixing density in (0,1]");
    c_gen->add_option("--free-rank", forced_b, "force the free rank B");
    c_gen->add_option("--out", out_path, "complex output file")->required();
    c_gen->add_option("--truth", truth_path, "also write the ground-truth spectrum");

    auto* c_suite = app.add_subcommand("suite", "run a named verification suite");
    c_suite
        ->add_option("name", suite_name,
                     "one of: barcode-oracle, stability, tate, majorization, cone, pipeline, modp")
        ->required();
    c_suite->add_option("--seed", seed, "suite seed");
    c_suite->add_option("--count", count, "instances to run");
    c_suite->add_option("--out", out_path, "write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*c_validate) {
            FilteredComplex c = load_complex(in_path);
            ValidationReport r = validate(c);
            Json j;
            j["pass"] = r.pass;
            j["strict"] = r.strict;
            j["message"] = r.message;
            emit(j, "");
            return r.pass ? kExitPass : kExitCheckFailed;
        }
        if (*c_barcode) {
            FilteredComplex c = load_complex(in_path);
            BarSpectrum s = spectrum(c);
            if (concise) s = s.make_concise();
            Json j = to_json(s);
            bool pass = true;
            if (oracle) {
                BarSpectrum other = spectrum_via_minors(c, max_rank);
                pass = concise ? other.make_concise() == s : other == s;
                j["oracle_agrees"] = pass;
            }
            if (intervals) {
                IntervalData bars = intervals_of(c);
                Barcode bc;
                bc.finite = bars.finite;
                bc.infinite = bars.infinite;
                j["intervals"] = to_json(bc);
            }
            emit(j, out_path);
            return pass ? kExitPass : kExitCheckFailed;
        }
        if (*c_bottle) {
            Barcode a = barcode_from_json(load_json(bar_a));
            Barcode b = barcode_from_json(load_json(bar_b));
            std::cout << bottleneck(a, b).str() << "\n";
            return kExitPass;
        }
        if (*c_tate) {
            FilteredComplex c = load_complex(in_path);
            Json j;
            if (verify) {
                QuasiFrobeniusReport r = verify_quasi_frobenius(c, prime, max_rank);
                j["pass"] = r.pass;
                j["message"] = r.message;
                j["tate_spectrum"] = to_json(r.tate);
                j["rescaled_spectrum"] = to_json(r.expected);
                emit(j, out_path);
                return r.pass ? kExitPass : kExitCheckFailed;
            }
            TateComplex t = build_tate(c, prime, max_rank);
            j["rank"] = t.underlying.rank();
            j["spectrum"] = to_json(spectrum(t.underlying));
            emit(j, out_path);
            return kExitPass;
        }
        if (*c_perturb) {
            FilteredComplex c = load_complex(in_path);
            auto blocks = blocks_from_json(load_json(aux_path));
            SplitDifferential s = make_split(c, blocks, parse_rational(eps));
            PerturbationOutput out = perturb(s, parse_rational(trunc));
            Json j;
            j["delta0"] = to_string(s.delta0);
            j["exact"] = out.exact;
            j["truncation"] = to_string(out.truncation);
            j["transferred"] = to_json(out.X);
            j["spectrum"] = to_json(spectrum(out.X));
            if (out.exact) {
                CertificateReport cr = verify_certificate(out.certificate);
                j["certificate_pass"] = cr.pass;
                j["certificate_message"] = cr.message;
                emit(j, out_path);
                return cr.pass ? kExitPass : kExitCheckFailed;
            }
            emit(j, out_path);
            return kExitPass;
        }
        if (*c_cone) {
            FilteredComplex c = orthonormalize(load_complex(in_path));
            Matrix m(c.field, c.rank(), c.rank());
            if (!aux_path.empty()) m = matrix_from_json(c.field, load_json(aux_path));
            if (!gamma.empty())
                m = Matrix::identity(c.field, c.rank()).t_scaled(parse_rational(gamma));
            ChainMap s{c, c, std::move(m), Rational(0)};
            ConeBoundReport r = check_cone_bound(s);
            Json j;
            j["hypothesis_met"] = r.hypothesis_met;
            j["pass"] = r.pass;
            j["message"] = r.message;
            if (r.hypothesis_met) {
                j["cone_beta_tot"] = to_string(r.cone_beta_tot);
                j["twice_beta_tot"] = to_string(r.twice_beta_tot);
                j["cone_spectrum"] = to_json(spectrum(cone(s)));
            }
            emit(j, out_path);
            return r.hypothesis_met && r.pass ? kExitPass : kExitCheckFailed;
        }
        if (*c_pipe) {
            FilteredComplex c = load_complex(in_path);
            ScalingScenario scenario = make_scaling_scenario(c, prime, seed, max_rank);
            PipelineReport rep = scaling_pipeline(c, prime, scenario);
            emit(steps_to_json(rep), out_path);
            return rep.pass ? kExitPass : kExitCheckFailed;
        }
        if (*c_gen) {
            GeneratorConfig cfg;
            cfg.seed = seed;
            cfg.field = GroundField::parse(field_name);
            cfg.rank = rank;
            cfg.min_val = parse_rational(min_val);
            cfg.exponent_denominator_bound = den_bound;
            cfg.density = parse_rational(density);
            cfg.forced_B = forced_b;
            GeneratedComplex g = generate(cfg);
            emit(to_json(g.complex), out_path);
            if (!truth_path.empty()) emit(to_json(g.truth), truth_path);
            return kExitPass;
        }
        if (*c_suite) {
            SuiteReport rep = run_suite(suite_name, seed, count);
            emit(rep.to_json(), out_path);
            return rep.failures == 0 ? kExitPass : kExitCheckFailed;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}
