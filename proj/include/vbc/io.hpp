/*
   Copyright 2026 The vbc authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vbc/pairs.hpp"

namespace vbc {

using json = nlohmann::json;

/** Malformed textual or JSON input. */
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Expressions in x, y and the generator a of F_q over F_p, with + - * / and integer powers.
Elem parse_elem(const FunctionField& K, const std::string& s);
// Expressions in x only.
RatFunc parse_rat(const GF* k, const std::string& s);
// Polynomial in y over k(x); coefficients from degree 0 upwards.
std::vector<RatFunc> parse_ypoly(const GF* k, const std::string& s);

/** A function field with the name it was loaded under. */
struct NamedCurve {
    std::string name;
    FieldPtr K;
    json source;  // the defining JSON
};
// {"name", "p", "m", "minpoly" | "equation", optional "integral_basis_fi", "integral_basis_inf"}.
NamedCurve curve_from_json(const json& j);
json curve_to_json(const NamedCurve& c);

PlacePtr place_from_id(const FunctionField& K, const std::string& id);
json place_to_json(const Place& P);

json elem_to_json(const FunctionField& K, const Elem& a);
Elem elem_from_json(const FunctionField& K, const json& j);
json vec_to_json(const FunctionField& K, const EVec& v);
EVec vec_from_json(const FunctionField& K, const json& j);
// Matrices as lists of rows.
json matrix_to_json(const FunctionField& K, const EMat& M);
EMat matrix_from_json(const FunctionField& K, const json& j);
json fmatrix_to_json(const Mat<Fe>& M);

// "unit", {"generators": [...]}, {"hnf": n x n over k(x)} or {"factors": [{"place": id, "exp": e}]}.
Ideal ideal_from_json(const FunctionField& K, const json& j);
json ideal_to_json(const Ideal& I);

// {"rank", "ideals", "g_fi", "g_inf"} (the "curve" field is resolved by the caller).
MatrixPair pair_from_json(const FieldPtr& K, const json& j);
json pair_to_json(const MatrixPair& g);

// [{"place": id, "coeff": c}] or {"terms": [...]}.
Divisor divisor_from_json(const FunctionField& K, const json& j);
json divisor_to_json(const Divisor& D);

}  // namespace vbc
