#pragma once

// JSON (de)serialization for the library types and fixed-precision real
// formatting for CSV emission.  Parsing throws ValidationError on malformed
// or inconsistent input; all output is deterministic.

#include <string>

#include "json.hpp"

#include "horoball/convergence.hpp"
#include "horoball/geometry.hpp"
#include "horoball/horofunction.hpp"
#include "horoball/moment_map.hpp"
#include "horoball/types.hpp"

namespace horoball {

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

// Input schema: {"dim": m, "vertices": [[..], ..]}.  Output adds
// "halfspaces" (normal/offset, meaning <normal|x> >= offset) and "faces"
// with each face's dual vertex index set.
nlohmann::json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const nlohmann::json& j);

// {"face_vertex_indices": [..], "p": [..]}; indices refer to the dual
// ball's vertex list and must name one of its proper faces.
nlohmann::json horofunction_to_json(const Horofunction& h);
Horofunction horofunction_from_json(const Polytope& unit_ball, const nlohmann::json& j);

// {"kind": "affine"|"power"|"log"|"sinusoid"|"explicit"|"expr",
//  "params": {..}, "horizon": N}
nlohmann::json sequence_spec_to_json(const SequenceSpec& s);
SequenceSpec sequence_spec_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const ClassificationVerdict& v);

nlohmann::json moment_result_to_json(const MomentResult& r);

// Interior point {"point": [..]} (or a bare array) vs boundary
// horofunction object as above.
CompactifiedPoint compactified_point_from_json(const Polytope& unit_ball,
                                               const nlohmann::json& j);

// 17-significant-digit decimal form, locale independent; used for CSV.
std::string format_real(double x);

}  // namespace horoball
