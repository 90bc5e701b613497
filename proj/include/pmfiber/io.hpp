#pragma once

// MatrixFile JSON: {"n": 4, "field": "Q" | "Q(i)", "entries": [["1/2", ...], ...]}.
// Entries are strings in the scalar grammar; plain JSON integers are accepted.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pmfiber/index_set.hpp"
#include "pmfiber/matrix.hpp"
#include "pmfiber/mpoly.hpp"

namespace pmfiber::io {

using Json = nlohmann::ordered_json;
using AnyMatrix = std::variant<Matrix<Rational>, Matrix<Gaussian>>;

AnyMatrix parse_matrix_file(const Json& doc);
AnyMatrix read_matrix_file(const std::string& path);
AnyMatrix read_matrix_file(std::istream& in);

template <typename S>
Json matrix_file(const Matrix<S>& a);

template <typename S>
Json scalars(const std::vector<S>& values);

// Sorted 1-based labels.
Json labels(IndexSet s);

// Text form by default; with structured = true an array of
// {"subset": [...], "coefficient": "..."} for multiaffine polynomials and
// {"exponents": [...], "coefficient": "..."} otherwise.
template <typename S>
Json polynomial(const MPoly<S>& p, bool structured);

}  // namespace pmfiber::io
