#pragma once

// JSON file formats.
//
// Scalar:   {"conductor": N, "coeffs": ["p/q", ...]}, coefficient i multiplying ζ_N^i.
//           Input also takes "zeta(N)^k", "-zeta(N)^k", "zeta(N)", "p/q" and integers.
// Matrix:   {"rows": r, "cols": c, "entries": [[row, col, Scalar], ...]} in row-major order.
// Braiding: {"type": "diagonal", "q": [[Scalar, ...], ...]} or
//           {"type": "yetter-drinfeld-abelian", "group": [d, ...],
//            "points": [{"g": [...], "chi": [Scalar, ...]}, ...]}.
// Hopf structure and fusion data: see docs/FORMATS.md.  Every sparse table is
// written sorted by its key tuple, zero entries dropped.

#include <optional>
#include <string>

#include "json.hpp"
#include "nichols_forge/braided.hpp"
#include "nichols_forge/fusion.hpp"
#include "nichols_forge/structconst.hpp"

namespace nf {

using json = nlohmann::json;

json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);
// "zeta(N)^k", "p/q", ...; throws ParseError.
Scalar parse_scalar(const std::string& text);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

struct BraidingInput {
  DiagonalBraiding braiding;
  std::optional<YDDatum> yd;
};
json braiding_to_json(const DiagonalBraiding& b);
json braiding_to_json(const YDDatum& d);
BraidingInput braiding_from_json(const json& j);

json hopf_to_json(const HopfStructure& t);
// Validates shapes; throws ParseError or MalformedBlock.
HopfStructure hopf_from_json(const json& j);

json fusion_to_json(const FusionData& f);
FusionData fusion_from_json(const json& j);

// Parses text, turning library errors into ParseError with the given context.
json parse_json_text(const std::string& text, const std::string& what);

}  // namespace nf
