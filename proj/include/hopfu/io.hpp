#pragma once

// JSON files for fields, U-modules, algebra presentations and actions.
//
//   field:        {"p": 3, "k": 1, "modulus": [1, 0, 1]}   modulus optional, low degree first
//   element:      integer (reduced mod p) or coefficient list [c0, c1, ...] of length <= k
//   matrix:       list of rows of elements
//   module:       {"p": 3, "field": ..., "dim": 2, "mat_u": matrix, "mat_w": matrix}
//                 p and dim are optional on input and checked when present
//   presentation: {"field": ..., "generators": [names],
//                  "relations": [[{"monomial": [a, b], "coeff": element}, ...], ...]}
//                 monomial entries are 0-based generator indices
//   action:       {"algebra": presentation or path, "rho_u": matrix, "rho_w": matrix}
//
// Canonical output writes every element as a length-k coefficient list, the
// modulus only when k > 1, relations as the reduced echelon basis of R, and
// object keys in sorted order.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "hopfu/action.hpp"
#include "hopfu/umod.hpp"

namespace hopfu::io {

using json = nlohmann::json;
using gf::Elem;
using gf::Field;
using gf::Matrix;

// Throws ParseError "<source>:<line>:<column>: <reason>".
json parse_text(const std::string& text, const std::string& source = "<input>");
// Throws ParseError when the file cannot be read or parsed.
json load_file(const std::filesystem::path& path);

// All *_from_json functions throw SchemaError "<json pointer>: <reason>".
Field field_from_json(const json& j, const std::string& ptr = "");
json field_to_json(const Field& f);
Elem elem_from_json(const Field& f, const json& j, const std::string& ptr);
json elem_to_json(const Field& f, Elem e);
Matrix matrix_from_json(const Field& f, const json& j, const std::string& ptr);
json matrix_to_json(const Matrix& m);

umod::UModule module_from_json(const json& j);
json module_to_json(const umod::UModule& m);
umod::UModule parse_module(const std::filesystem::path& path);

quadalg::QuadAlgebra presentation_from_json(const json& j);
json presentation_to_json(const quadalg::QuadAlgebra& a);
quadalg::QuadAlgebra parse_presentation(const std::filesystem::path& path);

// A string "algebra" member is a path relative to base_dir.
action::UAction action_from_json(const json& j, const std::filesystem::path& base_dir = ".");
json action_to_json(const action::UAction& act);
action::UAction parse_action(const std::filesystem::path& path);

json decomposition_to_json(const umod::Decomposition& d);

}  // namespace hopfu::io
