// Copyright 2026 The tnsprep Authors
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

#include <stdexcept>

#include "json.hpp"
#include "tnsprep/sdp_solver.hpp"

namespace tnsprep {

namespace {

using nlohmann::json;

json matrix_to_json(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix matrix_from_json(const json& j, Eigen::Index cols_hint = -1) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : std::max<Eigen::Index>(cols_hint, 0);
  RMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j.at(r).size()) != cols)
      throw std::invalid_argument("sdp dump: ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
  }
  return m;
}

}  // namespace

std::string dump_problem(const SdpProblem& p) {
  json j;
  j["format"] = "tnsprep-sdp";
  j["version"] = 1;
  j["var_count"] = p.var_count;
  j["objective"] = std::vector<double>(p.objective.data(), p.objective.data() + p.objective.size());
  json blocks = json::array();
  for (const auto& b : p.blocks) {
    json jb;
    jb["dim"] = b.dim();
    jb["F0"] = matrix_to_json(b.f0);
    json fs = json::array();
    for (const auto& [k, fk] : b.coeffs) fs.push_back({{"var", k}, {"matrix", matrix_to_json(fk)}});
    jb["F"] = std::move(fs);
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  j["equalities"] = {{"A", matrix_to_json(p.eq_a)},
                     {"b", std::vector<double>(p.eq_b.data(), p.eq_b.data() + p.eq_b.size())}};
  return j.dump(1);
}

SdpProblem load_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("sdp dump: ") + e.what());
  }
  if (j.value("format", "") != "tnsprep-sdp")
    throw std::invalid_argument("sdp dump: missing or wrong format tag");
  try {
    SdpProblem p;
    p.var_count = j.at("var_count").get<int>();
    auto obj = j.at("objective").get<std::vector<double>>();
    p.objective = Eigen::Map<RVector>(obj.data(), static_cast<Eigen::Index>(obj.size()));
    for (const auto& jb : j.at("blocks")) {
      SdpBlock b;
      b.f0 = matrix_from_json(jb.at("F0"));
      for (const auto& f : jb.at("F")) b.coeffs.emplace_back(f.at("var").get<int>(), matrix_from_json(f.at("matrix")));
      p.blocks.push_back(std::move(b));
    }
    const auto& eq = j.at("equalities");
    p.eq_a = matrix_from_json(eq.at("A"), p.var_count);
    auto eb = eq.at("b").get<std::vector<double>>();
    p.eq_b = Eigen::Map<RVector>(eb.data(), static_cast<Eigen::Index>(eb.size()));
    if (p.eq_a.rows() == 0) p.eq_a.resize(0, p.var_count);
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("sdp dump: ") + e.what());
  }
}

}  // namespace tnsprep
