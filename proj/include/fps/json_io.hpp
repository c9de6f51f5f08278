#pragma once

#include <json.hpp>

#include <string>

#include "fps/composition.hpp"
#include "fps/rdl.hpp"

namespace fps {

using Json = nlohmann::ordered_json;

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Series literal:
//   {"q":2,"K":4,"mode":"exact","terms":[{"exp":[1,0],"coef":"1/2"}]}
// Coefficients are "p/q" strings in exact mode and decimal strings in
// binary64 mode; bare JSON numbers are accepted on input.
Json series_to_json(const AnySeries& f);
AnySeries series_from_json(const Json& j);

// Outer sequence:
//   {"kind":"rule","rule":"(-1)^n/sqrt(n+1)"} or {"kind":"list","coeffs":["1","1/2"]}
// with optional "radius": "1" | "inf" | number (user-asserted).
Json sequence_to_json(const CoeffSequence& g);
CoeffSequence sequence_from_json(const Json& j);

Json verdict_to_json(const ConvergenceVerdict& v);
Json composition_report_to_json(const CompositionReport& r);
Json rdl_report_to_json(const RdlReport& r);
Json counterexample_report_to_json(const CounterexampleReport& r);
Json abel_report_to_json(const AbelReport& r);

}  // namespace fps
