#pragma once

#include <json.hpp>

#include "hodgelab/fourier_form.hpp"

namespace hodgelab {

// JSON layout of a form:
//   {
//     "geometry": {"n": 2, "K": 6, "oversample": 2},
//     "bidegree": [p, q],
//     "valueKind": "scalar" | "tangent" | "dual-tangent",
//     "band": b,
//     "entries": [
//       {"I": [..], "J": [..], "tangent": t, "mode": [[a..], [b..]],
//        "re": x, "im": y},
//       ...
//     ]
//   }
// Frame indices I, J and the tangent index are 1-based and strictly
// increasing; "tangent" is present exactly when the form is value-carrying.
// Entries appear in canonical order (components ascending, then modes in
// layout order) and carry only nonzero coefficients.
nlohmann::json toJson(const FourierForm& f);
FourierForm fromJson(const nlohmann::json& j);

void writeFormJson(const std::string& path, const FourierForm& f);
FourierForm readFormJson(const std::string& path);

} // namespace hodgelab
