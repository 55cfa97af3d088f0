#pragma once

#include <json.hpp>

#include "novbar/metrics.hpp"
#include "novbar/perturb.hpp"

namespace novbar {

using Json = nlohmann::json;

/// Complex file format:
///   {"field": "F5", "basis": [{"label","degree","action"}, ...],
///    "diff": {"(i,j)": "<scalar>", ...}}
/// Sparse entries only; round-trips bit-exactly.
Json to_json(const FilteredComplex& c);
FilteredComplex complex_from_json(const Json& j);

/// Barcode file format:
///   {"finite": [{"start","end","mult"}, ...], "infinite": [{"start","mult"}, ...]}
Json to_json(const Barcode& b);
Barcode barcode_from_json(const Json& j);

/// Spectrum output: {"B", "torsion": ["1/2", ...], "beta_tot", "beta_max"}.
Json to_json(const BarSpectrum& s);

/// Matrix over a named complex: {"rows", "cols", "entries": {"(i,j)": "<scalar>"}}.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const GroundField& f, const Json& j);

/// Blocks file for perturb --split: {"blocks": [[0,1],[2,3], ...]}.
std::vector<std::vector<std::size_t>> blocks_from_json(const Json& j);

std::string dump_json(const Json& j);

/// FNV-1a 64 digest of a serialized object, hex-encoded; stable across
/// platforms and runs.
std::string digest(const std::string& text);

}  // namespace novbar
