#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "novbar/suites.hpp"

namespace py = pybind11;
using namespace novbar;

namespace {

py::object json_to_py(const Json& j) {
    switch (j.type()) {
        case Json::value_t::null: return py::none();
        case Json::value_t::boolean: return py::bool_(j.get<bool>());
        case Json::value_t::number_integer: return py::int_(j.get<long long>());
        case Json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case Json::value_t::number_float: return py::float_(j.get<double>());
        case Json::value_t::string: return py::str(j.get<std::string>());
        case Json::value_t::array: {
            py::list out;
            for (const auto& e : j) out.append(json_to_py(e));
            return out;
        }
        case Json::value_t::object: {
            py::dict out;
            for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
            return out;
        }
        default: return py::none();
    }
}

py::dict spectrum_dict(const BarSpectrum& s) {
    return py::dict(json_to_py(to_json(s)));
}

FilteredComplex parse_complex(const std::string& text) {
    return complex_from_json(Json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact bar-length spectra for filtered complexes over Novikov valuation rings";

    py::class_<FilteredComplex>(m, "FilteredComplex")
        .def_static("from_json", &parse_complex, py::arg("text"),
                    "parse the complex JSON format")
        .def("to_json", [](const FilteredComplex& c) { return dump_json(to_json(c)); })
        .def("rank", &FilteredComplex::rank)
        .def("field", [](const FilteredComplex& c) { return c.field.str(); })
        .def("__eq__", [](const FilteredComplex& a, const FilteredComplex& b) { return a == b; })
        .def("__repr__", [](const FilteredComplex& c) {
            return "<FilteredComplex rank=" + std::to_string(c.rank()) + " over " + c.field.str() +
                   ">";
        });

    m.def("validate", [](const FilteredComplex& c) {
        ValidationReport r = validate(c);
        py::dict out;
        out["pass"] = r.pass;
        out["strict"] = r.strict;
        out["message"] = r.message;
        return out;
    });

    m.def("orthonormalize", &orthonormalize);
    m.def("tensor_power", &tensor_power, py::arg("complex"), py::arg("p"),
          py::arg("cap") = kDefaultRankCap);
    m.def("direct_sum", &direct_sum);
    m.def("shift_action",
          [](const FilteredComplex& c, const std::string& s) { return shift_action(c, parse_rational(s)); });
    m.def("extend_field", [](const FilteredComplex& c, const std::string& field) {
        return extend_field(c, GroundField::parse(field));
    });
    m.def("scale_differential", [](const FilteredComplex& c, const std::string& delta) {
        return scale_differential(c, parse_rational(delta));
    });

    m.def("spectrum", [](const FilteredComplex& c) { return spectrum_dict(spectrum(c)); });
    m.def(
        "spectrum_via_minors",
        [](const FilteredComplex& c, std::size_t cap) {
            return spectrum_dict(spectrum_via_minors(c, cap));
        },
        py::arg("complex"), py::arg("cap") = 8);
    m.def("intervals", [](const FilteredComplex& c) {
        IntervalData bars = intervals_of(c);
        Barcode bc;
        bc.finite = bars.finite;
        bc.infinite = bars.infinite;
        return json_to_py(to_json(bc));
    });

    m.def("bottleneck", [](const std::string& a, const std::string& b) {
        return bottleneck(barcode_from_json(Json::parse(a)), barcode_from_json(Json::parse(b)))
            .str();
    });

    m.def(
        "build_tate",
        [](const FilteredComplex& c, std::uint64_t p, std::size_t cap) {
            return build_tate(c, p, cap).underlying;
        },
        py::arg("complex"), py::arg("p"), py::arg("cap") = kDefaultRankCap);
    m.def(
        "verify_quasi_frobenius",
        [](const FilteredComplex& c, std::uint64_t p, std::size_t cap) {
            QuasiFrobeniusReport r = verify_quasi_frobenius(c, p, cap);
            py::dict out;
            out["pass"] = r.pass;
            out["message"] = r.message;
            out["tate"] = spectrum_dict(r.tate);
            out["rescaled"] = spectrum_dict(r.expected);
            return out;
        },
        py::arg("complex"), py::arg("p"), py::arg("cap") = kDefaultRankCap);

    m.def("verify_scaling_certificate", [](const FilteredComplex& c, const std::string& delta_s) {
        Rational delta = parse_rational(delta_s);
        QuasiEquivalenceCertificate cert = canonical_scaling_certificate(c, delta);
        CertificateReport r = verify_certificate(cert);
        py::dict out;
        out["certificate_pass"] = r.pass;
        out["message"] = r.message;
        out["spectra_close"] =
            spectra_close(spectrum(c), spectrum(scale_differential(c, delta)), delta);
        return out;
    });

    m.def(
        "check_cone_bound",
        [](const FilteredComplex& c, const std::string& map_json) {
            FilteredComplex on = orthonormalize(c);
            Matrix mat(on.field, on.rank(), on.rank());
            if (!map_json.empty()) mat = matrix_from_json(on.field, Json::parse(map_json));
            ConeBoundReport r = check_cone_bound(ChainMap{on, on, std::move(mat), Rational(0)});
            py::dict out;
            out["hypothesis_met"] = r.hypothesis_met;
            out["pass"] = r.pass;
            out["message"] = r.message;
            out["cone_beta_tot"] = to_string(r.cone_beta_tot);
            out["twice_beta_tot"] = to_string(r.twice_beta_tot);
            return out;
        },
        py::arg("complex"), py::arg("map_json") = std::string());

    m.def("check_majorization",
          [](const FilteredComplex& c0, const std::string& deformation_json) {
              GroundField fu = GroundField::prime_with_u(c0.field.p);
              Matrix d = matrix_from_json(fu, Json::parse(deformation_json));
              MajorizationReport r = check_majorization(c0, d);
              py::dict out;
              out["pass"] = r.pass;
              out["message"] = r.message;
              py::list orig, def;
              for (const auto& b : r.original) orig.append(to_string(b));
              for (const auto& b : r.deformed) def.append(to_string(b));
              out["original"] = orig;
              out["deformed"] = def;
              return out;
          });

    m.def(
        "perturb",
        [](const FilteredComplex& c, const std::vector<std::vector<std::size_t>>& blocks,
           const std::string& eps, const std::string& trunc) {
            SplitDifferential s = make_split(c, blocks, parse_rational(eps));
            PerturbationOutput out = perturb(s, parse_rational(trunc));
            py::dict r;
            r["delta0"] = to_string(s.delta0);
            r["exact"] = out.exact;
            r["transferred"] = out.X;
            r["spectrum"] = spectrum_dict(spectrum(out.X));
            r["certificate_pass"] =
                out.exact ? verify_certificate(out.certificate).pass : false;
            return r;
        },
        py::arg("complex"), py::arg("blocks"), py::arg("eps"), py::arg("trunc") = "10");

    m.def(
        "scaling_pipeline",
        [](const FilteredComplex& c, std::uint64_t p, std::uint64_t seed) {
            ScalingScenario scenario = make_scaling_scenario(c, p, seed);
            PipelineReport rep = scaling_pipeline(c, p, scenario);
            py::dict out;
            out["pass"] = rep.pass;
            out["p_beta_tot"] = to_string(rep.p_beta_c);
            out["beta_tot_iterate"] = to_string(rep.beta_cp);
            py::list steps;
            for (const auto& s : rep.steps) {
                py::dict e;
                e["name"] = s.name;
                e["lhs"] = s.lhs;
                e["relation"] = s.relation;
                e["rhs"] = s.rhs;
                e["ok"] = s.ok;
                steps.append(e);
            }
            out["steps"] = steps;
            return out;
        },
        py::arg("complex"), py::arg("p"), py::arg("seed") = 1);

    m.def(
        "gen",
        [](std::uint64_t seed, std::size_t rank, const std::string& field,
           const std::string& min_val, long den_bound, const std::string& density, long free_rank) {
            GeneratorConfig cfg;
            cfg.seed = seed;
            cfg.field = GroundField::parse(field);
            cfg.rank = rank;
            cfg.min_val = parse_rational(min_val);
            cfg.exponent_denominator_bound = den_bound;
            cfg.density = parse_rational(density);
            cfg.forced_B = free_rank;
            GeneratedComplex g = generate(cfg);
            return py::make_tuple(g.complex, spectrum_dict(g.truth));
        },
        py::arg("seed"), py::arg("rank"), py::arg("field") = "Q", py::arg("min_val") = "1/4",
        py::arg("den_bound") = 4, py::arg("density") = "1", py::arg("free_rank") = -1);

    m.def(
        "run_suite",
        [](const std::string& name, std::uint64_t seed, std::size_t count) {
            return json_to_py(run_suite(name, seed, count).to_json());
        },
        py::arg("name"), py::arg("seed") = 1, py::arg("count") = 20);
    m.def("suite_names", &suite_names);
}
