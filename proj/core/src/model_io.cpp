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

#include "tnsprep/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>

#include "json.hpp"

#ifndef TNSPREP_VERSION
#define TNSPREP_VERSION "0.0.0"
#endif

namespace tnsprep {

using nlohmann::json;

std::string version() { return TNSPREP_VERSION; }

namespace {

constexpr int kModelVersion = 1;

cplx parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw FormatError("expected a number or an [re, im] pair, got " + j.dump());
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

CMatrix parse_matrix(const json& j, Eigen::Index dim) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim)
    throw FormatError("matrix must have " + std::to_string(dim) + " rows");
  CMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != dim)
      throw FormatError("matrix row " + std::to_string(r) + " must have " + std::to_string(dim) +
                        " entries");
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = parse_complex(j[r][c]);
  }
  return m;
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Reorders a matrix written over `listed` (first vertex most significant)
// onto the sorted support.
CMatrix to_sorted_order(const std::vector<Vertex>& listed, const CMatrix& m) {
  const int k = static_cast<int>(listed.size());
  std::vector<Vertex> sorted = listed;
  std::sort(sorted.begin(), sorted.end());
  if (sorted == listed) return m;
  std::vector<int> pos(k);  // position of sorted[q] in listed
  for (int q = 0; q < k; ++q)
    pos[q] = static_cast<int>(std::find(listed.begin(), listed.end(), sorted[q]) - listed.begin());
  const Eigen::Index dim = Eigen::Index{1} << k;
  std::vector<Eigen::Index> perm(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::Index li = 0;
    for (int q = 0; q < k; ++q)
      if ((i >> (k - 1 - q)) & 1) li |= Eigen::Index{1} << (k - 1 - pos[q]);
    perm[i] = li;
  }
  CMatrix out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) out(r, c) = m(perm[r], perm[c]);
  return out;
}

std::vector<Vertex> parse_support(const json& j, int n) {
  if (!j.is_array()) throw FormatError("support must be a list of vertices");
  std::vector<Vertex> s;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw FormatError("support entries must be integers");
    int x = v.get<int>();
    if (x < 0 || x >= n) throw FormatError("support vertex " + std::to_string(x) + " out of range");
    if (std::find(s.begin(), s.end(), x) != s.end())
      throw FormatError("support lists vertex " + std::to_string(x) + " twice");
    s.push_back(x);
  }
  return s;
}

LocalOperator parse_operator(const json& j, int n) {
  if (!j.is_object()) throw FormatError("operator must be an object");
  std::vector<Vertex> s = parse_support(j.at("support"), n);
  if (j.contains("named")) {
    const std::string name = j.at("named").get<std::string>();
    if (name == "ising_edge" && s.size() == 2) return named::ising_edge(s[0], s[1]);
    if (name == "projector11" && s.size() == 2) return named::projector11(s[0], s[1]);
    if (name == "plus_projector" && s.size() == 1) return named::plus_projector(s[0]);
    if (name == "plus_projector" && s.size() == 2) return named::plus_projector2(s[0], s[1]);
    throw FormatError("unknown named operator '" + name + "' on " + std::to_string(s.size()) +
                      " sites");
  }
  if (s.size() > 12) throw FormatError("operator support too large for a dense literal");
  CMatrix m = parse_matrix(j.at("matrix"), Eigen::Index{1} << s.size());
  try {
    return LocalOperator(Region(s), to_sorted_order(s, m));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("operator literal: ") + e.what());
  }
}

CommutingFamily parse_family(const json& j, int n) {
  CommutingFamily f;
  if (j.is_null()) return f;
  f.declared_radius = j.value("declared_radius", 0);
  for (const auto& t : j.at("terms")) f.terms.push_back(parse_operator(t, n));
  return f;
}

json family_json(const CommutingFamily& f) {
  json terms = json::array();
  for (const auto& t : f.terms)
    terms.push_back({{"support", t.support().vertices()}, {"matrix", matrix_json(t.matrix())}});
  return {{"declared_radius", f.declared_radius}, {"terms", std::move(terms)}};
}

Graph parse_graph(const json& j) {
  if (j.contains("builder")) {
    const std::string b = j.at("builder").get<std::string>();
    std::smatch m;
    static const std::regex kPath(R"(path\((\d+)\))"), kCycle(R"(cycle\((\d+)\))"),
        kGrid(R"(grid\((\d+),\s*(\d+),\s*(open|periodic)\))");
    if (std::regex_match(b, m, kPath)) return lattices::path(std::stoi(m[1]));
    if (std::regex_match(b, m, kCycle)) return lattices::cycle(std::stoi(m[1]));
    if (std::regex_match(b, m, kGrid))
      return lattices::grid(std::stoi(m[1]), std::stoi(m[2]), m[3] == "periodic");
    throw FormatError("unknown graph builder '" + b + "'");
  }
  int n = j.at("vertex_count").get<int>();
  std::vector<Graph::Edge> edges;
  for (const auto& e : j.value("edges", json::array())) {
    if (!e.is_array() || e.size() != 2) throw FormatError("edges must be [a, b] pairs");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Graph(n, std::move(edges));
}

QubitState parse_qubit(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const double r = 1.0 / std::sqrt(2.0);
    if (s == "0") return {cplx(1, 0), cplx(0, 0)};
    if (s == "1") return {cplx(0, 0), cplx(1, 0)};
    if (s == "+") return {cplx(r, 0), cplx(r, 0)};
    if (s == "-") return {cplx(r, 0), cplx(-r, 0)};
    throw FormatError("unknown product-state label '" + s + "'");
  }
  if (!j.is_array() || j.size() != 2) throw FormatError("qubit state must be two amplitudes");
  return {parse_complex(j[0]), parse_complex(j[1])};
}

}  // namespace

ModelSpec parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("version", kModelVersion) != kModelVersion)
      throw FormatError("unsupported model-spec version");
    ModelSpec m(parse_graph(j.at("graph")));
    const int n = m.n();
    m.k1 = parse_family(j.value("K1", json()), n);
    m.k2 = parse_family(j.value("K2", json()), n);
    m.beta = j.value("beta", 0.0);
    m.t = j.value("t", 0.0);
    m.name = j.value("name", std::string());
    if (j.contains("product_state")) {
      const json& ps = j.at("product_state");
      if (ps.is_string()) {
        m.product_state.assign(n, parse_qubit(ps));
      } else if (ps.is_array()) {
        if (static_cast<int>(ps.size()) != n)
          throw FormatError("product_state must list one qubit per vertex");
        for (const auto& q : ps) m.product_state.push_back(parse_qubit(q));
      } else {
        throw FormatError("bad product_state section");
      }
    } else {
      m.product_state.assign(n, ket0());
    }
    return m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("model file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("model file: ") + e.what());
  }
}

std::string dump_model(const ModelSpec& m) {
  json edges = json::array();
  for (auto [a, b] : m.graph.edges()) edges.push_back({a, b});
  json ps = json::array();
  for (const auto& q : m.product_state) ps.push_back({complex_json(q[0]), complex_json(q[1])});
  json j = {{"version", kModelVersion},
            {"name", m.name},
            {"graph", {{"vertex_count", m.n()}, {"edges", std::move(edges)}}},
            {"K1", family_json(m.k1)},
            {"K2", family_json(m.k2)},
            {"beta", m.beta},
            {"t", m.t},
            {"product_state", std::move(ps)}};
  return j.dump(1) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ModelSpec read_model_file(const std::string& path) { return parse_model(read_file(path)); }

void write_atomic(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write '" + tmp + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DomainError("write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw DomainError("cannot rename onto '" + path + "'");
  }
}

std::string dump_state_text(const StateVector& s) {
  std::ostringstream os;
  os << "# tnsprep state v1\n";
  os << "# qubits " << s.qubits() << "\n";
  os << "# bit-order vertex v is bit (n-1-v) of the index\n";
  os << std::setprecision(17) << "# norm_constant " << s.norm_constant << "\n";
  for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i)
    os << i << " " << s.amplitudes(i).real() << " " << s.amplitudes(i).imag() << "\n";
  return os.str();
}

std::string dump_state_binary(const StateVector& s) {
  std::string out = "TNSV";
  auto put = [&](const void* p, std::size_t len) { out.append(static_cast<const char*>(p), len); };
  std::uint32_t ver = 1, n = static_cast<std::uint32_t>(s.qubits());
  put(&ver, 4);
  put(&n, 4);
  put(&s.norm_constant, 8);
  for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) {
    double re = s.amplitudes(i).real(), im = s.amplitudes(i).imag();
    put(&re, 8);
    put(&im, 8);
  }
  return out;
}

StateVector load_state(const std::string& bytes) {
  StateVector s;
  if (bytes.rfind("TNSV", 0) == 0) {
    if (bytes.size() < 20) throw FormatError("truncated binary state");
    std::uint32_t ver, n;
    std::memcpy(&ver, bytes.data() + 4, 4);
    std::memcpy(&n, bytes.data() + 8, 4);
    if (ver != 1 || n > 30) throw FormatError("unsupported binary state header");
    std::memcpy(&s.norm_constant, bytes.data() + 12, 8);
    const std::size_t dim = std::size_t{1} << n;
    if (bytes.size() != 20 + 16 * dim) throw FormatError("binary state has the wrong length");
    s.amplitudes.resize(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
      double re, im;
      std::memcpy(&re, bytes.data() + 20 + 16 * i, 8);
      std::memcpy(&im, bytes.data() + 28 + 16 * i, 8);
      s.amplitudes(static_cast<Eigen::Index>(i)) = {re, im};
    }
    return s;
  }
  std::istringstream in(bytes);
  std::string line;
  int n = -1;
  std::vector<cplx> amps;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream h(line.substr(1));
      std::string key;
      h >> key;
      if (key == "qubits") h >> n;
      if (key == "norm_constant") h >> s.norm_constant;
      continue;
    }
    std::istringstream row(line);
    long long idx;
    double re, im;
    if (!(row >> idx >> re >> im) || idx != static_cast<long long>(amps.size()))
      throw FormatError("bad amplitude line: " + line);
    amps.emplace_back(re, im);
  }
  if (n < 0 || amps.size() != (std::size_t{1} << n)) throw FormatError("text state size mismatch");
  s.amplitudes = Eigen::Map<CVector>(amps.data(), static_cast<Eigen::Index>(amps.size()));
  return s;
}

namespace {

json config_json(const CertifierConfig& c) {
  return {{"gap_tol", c.sdp.gap_tol},     {"feas_tol", c.sdp.feas_tol},
          {"max_iter", c.sdp.max_iter},   {"block_cap", c.sdp.block_cap},
          {"audit_tol", c.audit_tol},     {"psd_floor", c.psd_floor},
          {"slack", c.slack},             {"compress_tol", c.compress_tol}};
}

json certificate_json(const GapCertificate& c) {
  json pairs = json::array();
  for (std::size_t p = 0; p < c.pairs.size(); ++p)
    pairs.push_back({{"i", c.pairs[p].first},
                     {"j", c.pairs[p].second},
                     {"a", p < c.a.size() ? c.a[p] : 0.0},
                     {"c", p < c.c.size() ? c.c[p] : 0.0}});
  return {{"issued", c.issued},
          {"failure", c.failure},
          {"beta", c.beta},
          {"t", c.t},
          {"delta", c.delta},
          {"mode", c.mode.name()},
          {"term_count", c.term_count},
          {"pairs", std::move(pairs)},
          {"row_sums", c.row_sums},
          {"min_block_eig", c.min_block_eig},
          {"equality_residual", c.equality_residual},
          {"shrink", c.shrink},
          {"slack", c.slack},
          {"solver", {{"status", c.solver_status},
                      {"duality_gap", c.solver_gap},
                      {"iterations", c.solver_iterations},
                      {"objective", c.sdp_objective}}}};
}

}  // namespace

std::string dump_certificate(const GapCertificate& cert, const CertifierConfig& config) {
  json j = {{"format", "tnsprep-gap-certificate"},
            {"version", version()},
            {"config", config_json(config)},
            {"certificate", certificate_json(cert)}};
  return j.dump(1) + "\n";
}

std::string dump_interval(const IntervalCertificate& cert, const CertifierConfig& config) {
  json certs = json::array();
  for (const auto& c : cert.certificates) certs.push_back(certificate_json(c));
  json j = {{"format", "tnsprep-interval-certificate"},
            {"version", version()},
            {"config", config_json(config)},
            {"t", cert.t},
            {"floor", cert.floor},
            {"beta_target", cert.beta_target},
            {"beta0", cert.beta0},
            {"covered", cert.covered},
            {"delta_min", cert.delta_min},
            {"stop_reason", cert.stop_reason},
            {"beta_points", cert.beta_points},
            {"tau_steps", cert.tau_steps},
            {"certificates", std::move(certs)}};
  return j.dump(1) + "\n";
}

std::string dump_observable(const ObservableSpec& spec) {
  json terms = json::object();
  for (const auto& [letters, coeff] : spec.expansion.terms) terms[letters] = coeff;
  json j = {{"kind", to_string(spec.kind)},
            {"lambda", spec.lambda.vertices()},
            {"expected", spec.expected},
            {"support", spec.op.support().vertices()},
            {"matrix", matrix_json(spec.op.matrix())},
            {"pauli_expansion", {{"support", spec.expansion.support.vertices()},
                                 {"terms", std::move(terms)}}}};
  return j.dump(1) + "\n";
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string RunManifest::to_json() const {
  json in = json::array(), out = json::array();
  for (const auto& [p, d] : inputs) in.push_back({{"path", p}, {"digest", d}});
  for (const auto& [p, d] : outputs) out.push_back({{"path", p}, {"digest", d}});
  json cfg = config.empty() ? json::object() : json::parse(config);
  json j = {{"format", "tnsprep-manifest"}, {"argv", argv},       {"config", std::move(cfg)},
            {"seed", seed},                 {"version", version}, {"inputs", std::move(in)},
            {"outputs", std::move(out)},    {"wall_seconds", wall_seconds}};
  return j.dump(1) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  try {
    json j = json::parse(text);
    if (j.value("format", "") != "tnsprep-manifest") throw FormatError("not a tnsprep manifest");
    RunManifest m;
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.config = j.value("config", json::object()).dump();
    m.seed = j.value("seed", std::uint64_t{0});
    m.version = j.value("version", std::string());
    for (const auto& e : j.value("inputs", json::array()))
      m.inputs.emplace_back(e.at("path").get<std::string>(), e.at("digest").get<std::string>());
    for (const auto& e : j.value("outputs", json::array()))
      m.outputs.emplace_back(e.at("path").get<std::string>(), e.at("digest").get<std::string>());
    m.wall_seconds = j.value("wall_seconds", 0.0);
    return m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }
}

}  // namespace tnsprep
