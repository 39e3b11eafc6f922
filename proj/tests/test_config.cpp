// Copyright 2026 The oscnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oscnet/config.hpp"
#include "oscnet/io.hpp"

namespace {

using namespace oscnet;

const char* kMinimal = R"({
  "network": {"chain": {"N": 3, "omega": 1.0, "J": 0.1}},
  "protocol": {"points": [[[0.1, 0.0], 0.0, [0.0, -0.2]]]},
  "state": {"name": "vacuum"}
})";

TEST(Config, DefaultDocumentParses) {
  const auto c = parse_config(default_config_json());
  EXPECT_EQ(c.modes(), 2);
  EXPECT_TRUE(c.network.chain.has_value());
  EXPECT_EQ(c.shots, 10000u);
  EXPECT_TRUE(c.seed.has_value());
  EXPECT_FALSE(protocol_points(c).empty());
}

TEST(Config, MinimalDocumentUsesDefaults) {
  const auto c = parse_config(kMinimal);
  EXPECT_EQ(c.modes(), 3);
  EXPECT_EQ(c.shots, 0u);
  EXPECT_FALSE(c.seed.has_value());
  EXPECT_EQ(c.protocol.basis, Basis::local);
  EXPECT_DOUBLE_EQ(c.protocol.t_factor, 2.0);
  ASSERT_EQ(c.protocol.points.size(), 1u);
  EXPECT_EQ(c.protocol.points[0][0], cplx(0.1, 0.0));
  EXPECT_EQ(c.protocol.points[0][2], cplx(0.0, -0.2));
  EXPECT_EQ(c.workers, 1);
}

TEST(Config, ExplicitMatricesAreAccepted) {
  const auto c = parse_config(R"({
    "network": {"omega": [1.0, 1.2], "J": [[0, 0.1], [0.1, 0]], "K": [[0, 0.05], [0.05, 0]], "probe": 1},
    "protocol": {"grid": {"type": "line", "mode": 1, "from": 0.0, "to": [0.3, 0.1], "count": 4}},
    "state": {"name": "vacuum"}
  })");
  EXPECT_FALSE(c.network.chain.has_value());
  EXPECT_EQ(c.network.probe, 1);
  EXPECT_DOUBLE_EQ(c.network.spec.K(0, 1), 0.05);
  const auto pts = protocol_points(c);
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_EQ(pts[0][0], cplx(0.0, 0.0));
  EXPECT_NEAR(std::abs(pts[3][1] - cplx(0.3, 0.1)), 0.0, 1e-15);
}

TEST(Config, UnknownKeysAreRejected) {
  std::string text = kMinimal;
  text.replace(text.find("\"state\""), 7, "\"shotz\": 3, \"state\"");
  EXPECT_THROW(parse_config(text), ConfigError);
  EXPECT_THROW(parse_config(R"({"network": {"chain": {"N": 2, "omega": 1, "J": 0.1, "K": 0}},
                               "protocol": {"grid": {}}, "state": {"name": "vacuum"}})"),
               ConfigError);
}

TEST(Config, MalformedValuesAreRejected) {
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  EXPECT_THROW(parse_config(R"({"network": {"chain": {"N": 2, "omega": 1, "J": 0.1}}, "protocol": {},
                               "state": {"name": "vacuum"}})"),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"network": {"chain": {"N": 2, "omega": 1, "J": 0.1}},
                               "protocol": {"grid": {"type": "spiral"}}, "state": {"name": "vacuum"}})"),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"network": {"chain": {"N": 2, "omega": 1, "J": 0.1}},
                               "protocol": {"grid": {}}, "state": {"name": "unicorn"}})"),
               ConfigError);
  // An unstable chain surfaces as a configuration problem.
  EXPECT_THROW(parse_config(R"({"network": {"chain": {"N": 4, "omega": 1, "J": 0.9}},
                               "protocol": {"grid": {}}, "state": {"name": "vacuum"}})"),
               ConfigError);
  EXPECT_THROW(load_config("/nonexistent/oscnet.json"), ConfigError);
}

TEST(Config, SeedIsRequiredForStochasticRuns) {
  std::string text = kMinimal;
  text.replace(text.find("\"state\""), 7, "\"shots\": 100, \"state\"");
  EXPECT_THROW(parse_config(text), ConfigError);
  auto c = parse_config(kMinimal);
  set_seed(c, 11);
  EXPECT_EQ(*c.seed, 11u);
}

TEST(Config, ChainFlag) {
  const auto cs = parse_chain_flag("5,1.5,0.25");
  EXPECT_EQ(cs.N, 5);
  EXPECT_DOUBLE_EQ(cs.omega, 1.5);
  EXPECT_DOUBLE_EQ(cs.J, 0.25);
  EXPECT_THROW(parse_chain_flag("5,1.5"), ConfigError);
  EXPECT_THROW(parse_chain_flag("5,1.5,0.2,9"), ConfigError);
  EXPECT_THROW(parse_chain_flag("5.5,1,0.2"), ConfigError);
  EXPECT_THROW(parse_chain_flag("a,b,c"), ConfigError);
}

TEST(Config, SettersKeepDocumentConsistent) {
  auto c = parse_config(default_config_json());
  set_chain(c, ChainSpec(4, 1.0, 0.15));
  EXPECT_EQ(c.modes(), 4);
  EXPECT_EQ(protocol_points(c).front().size(), 4);
  set_exact(c);
  EXPECT_EQ(c.shots, 0u);
  set_output(c, "elsewhere");
  EXPECT_EQ(c.output, "elsewhere");
  set_samples_per_period(c, 40);
  EXPECT_EQ(c.protocol.samples_per_period, 40);
  // The canonical text reproduces the same configuration.
  const auto again = parse_config(c.canonical);
  EXPECT_EQ(again.canonical, c.canonical);
  EXPECT_EQ(again.modes(), 4);

  auto fig4 = load_config(std::string(OSCNET_SOURCE_DIR) + "/configs/fig4.json");
  ASSERT_TRUE(fig4.sweeps.has_value());
  set_chain(fig4, ChainSpec(3, 1.0, 0.2));
  EXPECT_FALSE(fig4.sweeps.has_value());
  EXPECT_EQ(fig4.decoherence->resolve(diagonalize(fig4.network.spec)).modes(), 3);
}

TEST(Config, DecoherenceResolution) {
  const auto c = parse_config(R"({"network": {"chain": {"N": 2, "omega": 1, "J": 0.1}},
                                 "protocol": {"grid": {}}, "state": {"name": "vacuum"},
                                 "decoherence": {"kappa": [0.01, 0.02], "Nbar": 0.5, "Gamma2": 0.001}})");
  const auto deco = c.decoherence->resolve(diagonalize(c.network.spec));
  EXPECT_DOUBLE_EQ(deco.kappa[1], 0.02);
  EXPECT_DOUBLE_EQ(deco.Nbar[0], 0.5);
  EXPECT_DOUBLE_EQ(deco.Nbar[1], 0.5);
  EXPECT_DOUBLE_EQ(deco.Gamma2, 0.001);
  EXPECT_THROW(parse_config(R"({"network": {"chain": {"N": 2, "omega": 1, "J": 0.1}},
                               "protocol": {"grid": {}}, "state": {"name": "vacuum"},
                               "decoherence": {"kappa": 0.01, "Nbar": 0.5, "T": 3}})"),
               ConfigError);
}

TEST(Io, RecordsRoundTrip) {
  std::vector<MeasurementRecord> recs(2);
  recs[0].point = CVec::Constant(2, cplx(0.1, -0.3));
  recs[0].shots = 1000;
  recs[0].est_s1 = 0.123456789012345;
  recs[0].est_s2 = -1.0 / 3.0;
  recs[0].stderr_ = 0.02;
  recs[0].f = 0.5;
  recs[0].chi_corrected = {0.2, -0.55};
  recs[0].chi_err = 0.033;
  recs[1].point = CVec::Zero(2);
  recs[1].basis = Basis::normal;
  recs[1].f = std::log(200.0);
  std::stringstream ss;
  write_records_csv(ss, recs);
  const auto back = read_records_csv(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].point, recs[0].point);
  EXPECT_EQ(back[0].est_s1, recs[0].est_s1);
  EXPECT_EQ(back[0].est_s2, recs[0].est_s2);
  EXPECT_EQ(back[0].shots, 1000u);
  EXPECT_EQ(back[0].chi_corrected, recs[0].chi_corrected);
  EXPECT_EQ(back[1].basis, Basis::normal);
  EXPECT_FALSE(back[0].over_amplified);
  EXPECT_TRUE(back[1].over_amplified);
}

TEST(Io, BadCsvIsRejected) {
  std::stringstream bad("a,b,c\n1,2,3\n");
  EXPECT_THROW(read_records_csv(bad), ConfigError);
  std::vector<MeasurementRecord> recs(1);
  recs[0].point = CVec::Zero(1);
  std::stringstream ss;
  write_records_csv(ss, recs);
  std::string text = ss.str();
  text.back() = ',';
  text += "oops\n";
  std::stringstream broken(text);
  EXPECT_THROW(read_records_csv(broken), ConfigError);
}

TEST(Io, FormatDoubleRoundTrips) {
  for (double x : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

TEST(Hash, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(fnv1a_hex("foobar"), "85944171f73967e8");
}

}  // namespace
