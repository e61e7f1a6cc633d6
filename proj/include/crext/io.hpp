// Copyright 2026 The crext Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CREXT_IO_HPP
#define CREXT_IO_HPP

#include <ostream>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "crext/polynomial.hpp"
#include "crext/quadric.hpp"

namespace crext::io {

using json = nlohmann::json;

// Parsers throw InputError with the offending field path in the message.

/// {"n": int, "terms": [{"alpha": [...], "beta": [...], "k": int, "re": x, "im": y}, ...]}
json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const json& j, const std::string& path = "polynomial");

json complex_to_json(Complex c);
/// {"re": x, "im": y} or a bare number.
Complex complex_from_json(const json& j, const std::string& path);

/// Row-major array of rows of {"re", "im"} entries.
json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const json& j, const std::string& path);

/// {"n", "A", "B", "E"?}
json model_to_json(const QuadricModel& m);
QuadricModel model_from_json(const json& j, const std::string& path = "model");

/// Parses text, reporting the line and column of syntax errors as InputError.
json parse_document(const std::string& text, const std::string& source);

/// Serializes with every floating-point number written as %.17g.
void write_json(std::ostream& os, const json& j, int indent = 2);
std::string dump_json(const json& j, int indent = 2);

}  // namespace crext::io

#endif  // CREXT_IO_HPP
