#pragma once

// JSON encodings:
//   FqElem        [c_0, ..., c_{m-1}]            base-p digits (a plain integer index is accepted on input)
//   APoly         [FqElem, ...]                  lowest degree first
//   RationalFn    APoly, or {"num": APoly, "den": APoly}
//   LaurentSeries {"valuation", "coeffs": [FqElem...], "precision"}  precision null when exact;
//                 "ramification" is present only for K_∞(η) values
//   TateSeries    {"t_precision", "coeffs": [LaurentSeries...]}       t_precision null when exact
//   Kummer value  [LaurentSeries f_0, ..., f_{q-2}]
//   Module spec   {"field": {"p", "m", "modulus"}, "type", "rank", "n", "coeffs": [RationalFn...], "b"?}
//                 type "custom" takes "matrices": [A_0, A_1, ...] of row-major RationalFn arrays

#include <string>

#include <json.hpp>

#include "drinfeld/lfunc.hpp"
#include "drinfeld/tate.hpp"
#include "drinfeld/tmodule.hpp"

namespace drinfeld {

using Json = nlohmann::ordered_json;

Json fq_to_json(const Fq& F, FqElem a);
FqElem fq_from_json(const Fq& F, const Json& j, const std::string& where);

Json field_to_json(const FieldSpec& s);
FieldSpec field_from_json(const Json& j, const std::string& where = "field");

Json poly_to_json(const Poly& p);
Poly poly_from_json(const FieldPtr& F, const Json& j, Var x, const std::string& where);

Json rational_to_json(const RationalFn& f);
RationalFn rational_from_json(const FieldPtr& F, const Json& j, const std::string& where);

Json laurent_to_json(const LaurentSeries& s);
LaurentSeries laurent_from_json(const FieldPtr& F, const Json& j, const std::string& where);

Json tate_to_json(const TateSeries& s);
Json kummer_to_json(const LaurentSeries& s);

Json matrix_to_json(const KMat& m);
Json module_to_json(const TModule& G);

// Parses a module spec given as JSON text; ParseError messages carry the line or the field path.
TModule module_from_text(const std::string& text);
TModule module_from_json(const Json& j);
Json module_spec_json(const TModule& G);

Json lvalue_to_json(const LValue& v);
Json local_factor_to_json(const LocalFactor& lf);
LocalFactor local_factor_from_json(const FieldPtr& F, const Json& j, const std::string& where);

}  // namespace drinfeld
