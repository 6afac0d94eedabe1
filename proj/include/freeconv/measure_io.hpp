#pragma once

#include <string>
#include <string_view>

#include "freeconv/measure.hpp"

namespace fc {

// Parses the measure file format:
//   {"type": "atomic"|"nu"|"continuous",
//    "atoms": [{"x": <real>, "w": <real>}, ...],
//    "density": {"xs": [...], "pdf": [...]}}
// Throws parse_error with location context on malformed input.
MeasureSpec parse_measure_json(std::string_view text);

// Serializes a validated measure so that reparsing reproduces it exactly.
std::string serialize_measure(const ValidatedMeasure& vm);

}  // namespace fc
