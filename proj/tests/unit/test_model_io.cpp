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

#include <gtest/gtest.h>

#include <filesystem>

#include "tnsprep/model_io.hpp"

namespace tnsprep {
namespace {

void expect_same_model(const ModelSpec& a, const ModelSpec& b) {
  EXPECT_EQ(a.n(), b.n());
  EXPECT_EQ(a.graph.edges(), b.graph.edges());
  EXPECT_EQ(a.beta, b.beta);
  EXPECT_EQ(a.t, b.t);
  ASSERT_EQ(a.k1.terms.size(), b.k1.terms.size());
  ASSERT_EQ(a.k2.terms.size(), b.k2.terms.size());
  for (std::size_t k = 0; k < a.k1.terms.size(); ++k) {
    EXPECT_EQ(a.k1.terms[k].support(), b.k1.terms[k].support());
    EXPECT_LT(linalg::max_abs(a.k1.terms[k].matrix() - b.k1.terms[k].matrix()), 1e-15);
  }
  for (int v = 0; v < a.n(); ++v) {
    EXPECT_EQ(a.product_state[v][0], b.product_state[v][0]);
    EXPECT_EQ(a.product_state[v][1], b.product_state[v][1]);
  }
}

TEST(ModelText, RoundTrip) {
  for (const std::string name : {"FX-CHAIN4", "FX-GIBBS4", "FX-XCHAIN(3)"}) {
    ModelSpec m = fixtures::by_name(name, 0.37);
    ModelSpec back = parse_model(dump_model(m));
    expect_same_model(m, back);
    EXPECT_EQ(dump_model(back), dump_model(m));
  }
}

TEST(ModelText, NamedTermsAndBuilders) {
  const std::string text = R"js({
    "version": 1,
    "graph": {"builder": "path(3)"},
    "K1": {"declared_radius": 1, "terms": [
      {"support": [0, 1], "named": "ising_edge"},
      {"support": [1, 2], "named": "ising_edge"}]},
    "K2": {"declared_radius": 0, "terms": []},
    "beta": 0.2, "t": 0.0,
    "product_state": "0"
  })js";
  ModelSpec m = parse_model(text);
  EXPECT_EQ(m.n(), 3);
  EXPECT_EQ(m.k1.terms.size(), 2u);
  EXPECT_TRUE(m.all_zero_product());
  EXPECT_TRUE(validate_model(m).accepted()) << validate_model(m).describe();
}

TEST(ModelText, MalformedInputIsAFormatError) {
  EXPECT_THROW(parse_model("{"), FormatError);
  EXPECT_THROW(parse_model(R"({"version": 1})"), FormatError);
  std::string m = dump_model(fixtures::chain4(0.1));
  std::string broken = m;
  broken.replace(broken.find("\"graph\""), 7, "\"grape\"");
  EXPECT_THROW(parse_model(broken), FormatError);
  EXPECT_THROW(parse_model(R"js({"graph": {"builder": "ring(3)"}})js"), FormatError);
  EXPECT_THROW(parse_model(R"js({"graph": {"builder": "path(2)"}, "product_state": "q"})js"), FormatError);
  EXPECT_THROW(parse_model("{"), DomainError);
}

TEST(StateFile, TextAndBinaryRoundTrip) {
  StateVector psi = build_state(fixtures::chain4(0.3));
  StateVector a = load_state(dump_state_text(psi));
  StateVector b = load_state(dump_state_binary(psi));
  EXPECT_EQ(b.amplitudes, psi.amplitudes);
  EXPECT_EQ(b.norm_constant, psi.norm_constant);
  EXPECT_LT((a.amplitudes - psi.amplitudes).norm(), 1e-15);
  EXPECT_EQ(dump_state_binary(psi).substr(0, 4), "TNSV");
  EXPECT_THROW(load_state("TNSV\x01"), FormatError);
}

TEST(Digest, KnownValues) {
  EXPECT_EQ(digest(""), "cbf29ce484222325");
  EXPECT_EQ(digest("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(digest("foobar"), "85944171f73967e8");
}

TEST(Manifest, RoundTripAndAtomicWrite) {
  RunManifest m;
  m.argv = {"tnsprep", "gap", "certify"};
  m.config = R"({"mode":"overlapping-only"})";
  m.seed = 42;
  m.version = version();
  m.inputs = {{"in.json", digest("x")}};
  m.outputs = {{"out.json", digest("y")}};
  m.wall_seconds = 1.5;
  RunManifest back = RunManifest::from_json(m.to_json());
  EXPECT_EQ(back.argv, m.argv);
  EXPECT_EQ(back.seed, 42u);
  EXPECT_EQ(back.inputs, m.inputs);
  EXPECT_EQ(back.outputs, m.outputs);
  EXPECT_EQ(back.config, m.config);

  auto dir = std::filesystem::temp_directory_path() / "tnsprep_io_test";
  std::filesystem::create_directories(dir);
  std::string path = (dir / "manifest.json").string();
  write_atomic(path, m.to_json());
  write_atomic(path, "second");
  EXPECT_EQ(read_file(path), "second");
  std::filesystem::remove_all(dir);
  EXPECT_THROW(read_file((dir / "missing").string()), std::runtime_error);
}

TEST(Certificate, DumpCarriesTheBound) {
  ModelSpec m = fixtures::chain4(0.2);
  GapCertificate c = certify_point(m, CertifierMode::parse("overlapping-only"));
  std::string text = dump_certificate(c, {});
  EXPECT_NE(text.find("overlapping-only"), std::string::npos);
  EXPECT_NE(text.find("delta"), std::string::npos);
}

}  // namespace
}  // namespace tnsprep
