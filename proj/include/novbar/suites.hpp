#pragma once

#include "novbar/generator.hpp"
#include "novbar/serialize.hpp"

namespace novbar {

struct SuiteCheck {
    std::string name;
    std::string instance;  // digest of the serialized instance
    bool pass = false;
    std::string values;
    Json replay;  // the offending instance, serialized, on failure
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t count = 0;
    std::vector<SuiteCheck> checks;
    std::size_t failures = 0;

    Json to_json() const;
};

/// Named verification suites: barcode-oracle, stability, tate, majorization,
/// cone, pipeline, modp. Deterministic for a seed; checks are sorted by
/// instance digest so report assembly is order-independent.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t count);

std::vector<std::string> suite_names();

}  // namespace novbar
