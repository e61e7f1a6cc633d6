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

#include "crext/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "crext/errors.hpp"

namespace crext::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

int nonnegative_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < 0) fail(path, "negative exponent");
  if (v > kMaxDegree) fail(path, "exponent exceeds the degree limit");
  return static_cast<int>(v);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::vector<int> exponent_vector(const json& j, int n, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  if (static_cast<int>(j.size()) != n) {
    fail(path, "length " + std::to_string(j.size()) + " does not match n = " + std::to_string(n));
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(nonnegative_int(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_value(std::ostream& os, const json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write_value(os, it.value(), indent, depth + 1);
      }
      os << nl << close_pad << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[' << nl;
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad;
        write_value(os, v, indent, depth + 1);
      }
      os << nl << close_pad << ']';
      return;
    }
    case json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
      return;
  }
}

}  // namespace

json polynomial_to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back({{"alpha", e.alpha}, {"beta", e.beta}, {"k", e.k}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"n", p.n()}, {"terms", terms}};
}

Polynomial polynomial_from_json(const json& j, const std::string& path) {
  const json& jn = field(j, "n", path);
  if (!jn.is_number_integer() || jn.get<long long>() < 1) fail(path + ".n", "expected a positive integer");
  const int n = jn.get<int>();
  const json& terms = field(j, "terms", path);
  if (!terms.is_array()) fail(path + ".terms", "expected an array");

  Polynomial p(n);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = path + ".terms[" + std::to_string(i) + "]";
    const json& t = terms[i];
    Exponent e(exponent_vector(field(t, "alpha", tp), n, tp + ".alpha"),
               exponent_vector(field(t, "beta", tp), n, tp + ".beta"),
               t.contains("k") ? nonnegative_int(t["k"], tp + ".k") : 0);
    const double re = number(field(t, "re", tp), tp + ".re");
    const double im = t.contains("im") ? number(t["im"], tp + ".im") : 0.0;
    try {
      p.add_term(e, {re, im});
    } catch (const InputError& err) {
      fail(tp, err.what());
    }
  }
  return p;
}

json complex_to_json(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

Complex complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_object()) fail(path, "expected a number or {\"re\", \"im\"}");
  const double re = number(field(j, "re", path), path + ".re");
  const double im = j.contains("im") ? number(j["im"], path + ".im") : 0.0;
  return {re, im};
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array()) fail(path + "[" + std::to_string(i) + "]", "expected an array");
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols) fail(path + "[" + std::to_string(i) + "]", "ragged row");
  }
  Eigen::MatrixXcd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) {
      m(i, k) = complex_from_json(j[i][k], path + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return m;
}

json model_to_json(const QuadricModel& m) {
  json out = {{"n", m.n}, {"A", matrix_to_json(m.A)}, {"B", matrix_to_json(m.B)}};
  if (m.E) out["E"] = polynomial_to_json(*m.E);
  return out;
}

QuadricModel model_from_json(const json& j, const std::string& path) {
  Eigen::MatrixXcd A = matrix_from_json(field(j, "A", path), path + ".A");
  Eigen::MatrixXcd B = matrix_from_json(field(j, "B", path), path + ".B");
  if (j.contains("n")) {
    if (!j["n"].is_number_integer() || j["n"].get<long long>() != A.rows()) {
      fail(path + ".n", "does not match the size of A");
    }
  }
  std::optional<Polynomial> E;
  if (j.contains("E") && !j["E"].is_null()) E = polynomial_from_json(j["E"], path + ".E");
  try {
    return QuadricModel::create(std::move(A), std::move(B), std::move(E));
  } catch (const InputError& err) {
    fail(path, err.what());
  }
}

json parse_document(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    // Translate the byte offset into line:column.
    const std::size_t pos = std::min<std::size_t>(err.byte == 0 ? 0 : err.byte - 1, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON (" + err.what() + ")");
  }
}

void write_json(std::ostream& os, const json& j, int indent) { write_value(os, j, indent, 0); }

std::string dump_json(const json& j, int indent) {
  std::ostringstream os;
  write_json(os, j, indent);
  return os.str();
}

}  // namespace crext::io
