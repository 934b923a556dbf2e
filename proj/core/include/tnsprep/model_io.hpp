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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tnsprep/gap_certifier.hpp"
#include "tnsprep/observables.hpp"

namespace tnsprep {

/// Malformed input file.
class FormatError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Model-spec text: JSON with sections version, graph, K1, K2, beta, t,
/// product_state. Complex numbers are [re, im] pairs (plain reals allowed),
/// matrices row-major over the support as listed. Families are not
/// validated here; see validate_model.
ModelSpec parse_model(const std::string& text);
std::string dump_model(const ModelSpec& model);

ModelSpec read_model_file(const std::string& path);

/// Decimal text with a bit-ordering header.
std::string dump_state_text(const StateVector& state);
/// "TNSV" magic, u32 version, u32 n, f64 Z, then 2^n (re, im) f64 pairs,
/// little endian.
std::string dump_state_binary(const StateVector& state);
/// Accepts either format.
StateVector load_state(const std::string& bytes);

std::string dump_certificate(const GapCertificate& cert, const CertifierConfig& config);
std::string dump_interval(const IntervalCertificate& cert, const CertifierConfig& config);
std::string dump_observable(const ObservableSpec& spec);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string digest(const std::string& bytes);

std::string read_file(const std::string& path);
/// Writes to a temporary sibling and renames over the target.
void write_atomic(const std::string& path, const std::string& bytes);

struct RunManifest {
  std::vector<std::string> argv;
  std::string config;  // JSON text
  std::uint64_t seed = 0;
  std::string version;
  std::vector<std::pair<std::string, std::string>> inputs;   // path, digest
  std::vector<std::pair<std::string, std::string>> outputs;  // path, digest
  double wall_seconds = 0.0;

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);
};

/// Library version string.
std::string version();

}  // namespace tnsprep
