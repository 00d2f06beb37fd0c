// Copyright 2026 The rspsteer Authors
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

#pragma once

// Shared matrix file format: {"dim": n, "re": [[...]], "im": [[...]]},
// row-major. Extra keys (labels, basis annotations, notes) are preserved by
// callers that care and ignored here.

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "rspsteer/errors.hpp"
#include "rspsteer/linalg.hpp"

namespace rspsteer {

using json = nlohmann::json;

inline json matrix_to_json(const CMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

namespace detail {

inline void check_part(const json& part, const char* name, std::size_t dim) {
  if (!part.is_array() || part.size() != dim) {
    throw ParseError(std::string("matrix json: '") + name + "' must have dim rows");
  }
  for (const auto& row : part) {
    if (!row.is_array() || row.size() != dim) {
      throw ParseError(std::string("matrix json: '") + name + "' rows must have dim entries");
    }
    for (const auto& x : row) {
      if (!x.is_number()) throw ParseError(std::string("matrix json: non-numeric entry in '") + name + "'");
    }
  }
}

}  // namespace detail

inline CMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix json: expected an object");
  for (const char* key : {"dim", "re", "im"}) {
    if (!j.contains(key)) throw ParseError(std::string("matrix json: missing '") + key + "'");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0) {
    throw ParseError("matrix json: 'dim' must be a positive integer");
  }
  const auto dim = static_cast<std::size_t>(j["dim"].get<long long>());
  detail::check_part(j["re"], "re", dim);
  detail::check_part(j["im"], "im", dim);
  CMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      m(r, c) = cplx(j["re"][r][c].get<double>(), j["im"][r][c].get<double>());
  return m;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

inline CMatrix read_matrix_file(const std::string& path) { return matrix_from_json(read_json_file(path)); }

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace rspsteer
