// Copyright 2026 The hqcran Authors.
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

#include <array>
#include <filesystem>
#include <functional>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "hqcran/network.hpp"
#include "hqcran/samples.hpp"
#include "oracles.hpp"

namespace hqcran {
namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "hqcran_model_io_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kIo;
}

TEST(LoadNetwork, Tn1FromFile) {
  Network net = load_network(oracle::data_path("data/tn1.json"));
  EXPECT_EQ(net.num_layers(), 2);
  EXPECT_EQ(net.width(0), 1);
  EXPECT_EQ(net.width(1), 1);
  EXPECT_EQ(net.width(2), 2);
  EXPECT_TRUE(net.final_relu());
  EXPECT_DOUBLE_EQ(net.layer(0).bias[0], -0.5);
  EXPECT_DOUBLE_EQ(net.layer(1).bias[1], 0.25);
}

TEST(LoadNetwork, DimensionMismatchNamesLayer) {
  const fs::path p = temp_file("bad_dims.json");
  write_text(p, R"({"layers":[{"weights":[[1.0]],"bias":[0.0]},
                              {"weights":[[1.0,2.0]],"bias":[0.0]}]})");
  try {
    load_network(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimension);
    EXPECT_NE(std::string(e.what()).find("layer 2"), std::string::npos) << e.what();
  }
}

TEST(LoadNetwork, NonFiniteBias) {
  const fs::path p = temp_file("nan_bias.json");
  write_text(p, R"({"layers":[{"weights":[[1.0]],"bias":[NaN]}]})");
  // nlohmann rejects the NaN literal outright; null is how writers emit it.
  EXPECT_EQ(kind_of([&] { load_network(p); }), ErrorKind::kParse);
  write_text(p, R"({"layers":[{"weights":[[1.0]],"bias":[null]}]})");
  EXPECT_EQ(kind_of([&] { load_network(p); }), ErrorKind::kNonFinite);
  Layer l{Matrix::Constant(1, 1, 1.0), Vector::Constant(1, std::nan(""))};
  EXPECT_EQ(kind_of([&] { Network({l}); }), ErrorKind::kNonFinite);
}

TEST(LoadNetwork, MissingFile) {
  EXPECT_EQ(kind_of([] { load_network("/nonexistent/net.json"); }), ErrorKind::kIo);
}

TEST(LoadNetwork, RoundTrip) {
  const std::array<int, 4> dims{3, 5, 4, 2};
  Network net = generate_random_network(dims, 0.7, 11);
  const fs::path p = temp_file("roundtrip.json");
  save_network(net, p);
  Network back = load_network(p);
  ASSERT_EQ(back.num_layers(), net.num_layers());
  for (int i = 0; i < net.num_layers(); ++i) {
    EXPECT_EQ(back.layer(i).weights, net.layer(i).weights);
    EXPECT_EQ(back.layer(i).bias, net.layer(i).bias);
  }
  EXPECT_EQ(back.final_relu(), net.final_relu());
}

TEST(GenerateRandomNetwork, Deterministic) {
  const std::array<int, 4> dims{2, 4, 4, 2};
  Network a = generate_random_network(dims, 1.0, 7);
  Network b = generate_random_network(dims, 1.0, 7);
  for (int i = 0; i < a.num_layers(); ++i) {
    EXPECT_EQ(a.layer(i).weights, b.layer(i).weights);
    EXPECT_EQ(a.layer(i).bias, b.layer(i).bias);
  }
}

TEST(GenerateRandomNetwork, RejectsSingleDim) {
  const std::array<int, 1> dims{3};
  EXPECT_EQ(kind_of([&] { generate_random_network(dims, 1.0, 1); }), ErrorKind::kPrecondition);
}

TEST(GenerateRandomNetwork, EntriesWithinScale) {
  const std::array<int, 3> dims{2, 3, 2};
  Network net = generate_random_network(dims, 0.3, 1);
  for (const Layer& l : net.layers()) {
    EXPECT_LE(l.weights.cwiseAbs().maxCoeff(), 0.3);
    EXPECT_LE(l.bias.cwiseAbs().maxCoeff(), 0.3);
  }
}

TEST(Forward, Tn1HandValues) {
  Network net = oracle::tn1();
  Prediction p = forward(net, Vector::Constant(1, 0.5));
  EXPECT_DOUBLE_EQ(p.logits[0], 0.0);
  EXPECT_DOUBLE_EQ(p.logits[1], 0.25);
  EXPECT_EQ(p.predicted_class, 1);
  p = forward(net, Vector::Constant(1, 1.0));
  EXPECT_DOUBLE_EQ(p.logits[0], 0.5);
  EXPECT_DOUBLE_EQ(p.logits[1], 0.25);
  EXPECT_EQ(p.predicted_class, 0);
}

TEST(Forward, TieGoesToLowestIndex) {
  Layer l{Matrix::Zero(3, 2), Vector::Constant(3, 1.0)};
  Network net({l});
  EXPECT_EQ(forward(net, Vector::Zero(2)).predicted_class, 0);
}

TEST(Forward, DimensionMismatch) {
  Network net = oracle::tn1();
  EXPECT_EQ(kind_of([&] { forward(net, Vector::Zero(2)); }), ErrorKind::kDimension);
}

TEST(Forward, FinalReluLogitsNonNegative) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int seed = 0; seed < 20; ++seed) {
    const std::array<int, 4> dims{4, 6, 5, 3};
    Network net = generate_random_network(dims, 1.0, static_cast<std::uint64_t>(seed));
    Vector x(4);
    for (int k = 0; k < 4; ++k) x[k] = u(rng);
    Prediction a = forward(net, x);
    EXPECT_GE(a.logits.minCoeff(), 0.0);
    EXPECT_EQ(a.logits, forward(net, x).logits);
  }
}

TEST(LoadSamples, Csv) {
  const fs::path p = temp_file("s.csv");
  write_text(p, "1,0.5\n0,0.25");
  auto s = load_samples_csv(p, 1);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].label, 1);
  EXPECT_DOUBLE_EQ(s[0].features[0], 0.5);
  EXPECT_EQ(s[1].label, 0);
  EXPECT_DOUBLE_EQ(s[1].features[0], 0.25);
}

TEST(LoadSamples, CsvHeaderSkipped) {
  auto s = load_samples_csv(oracle::data_path("data/tn1_samples.csv"));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[1].label, 0);
  EXPECT_DOUBLE_EQ(s[1].features[0], 1.0);
}

TEST(LoadSamples, CsvRowLengthMismatchNamesRow) {
  const fs::path p = temp_file("bad.csv");
  write_text(p, "1,0.5,0.2\n0,0.25\n");
  try {
    load_samples_csv(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimension);
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
  }
}

void write_idx(const fs::path& images, const fs::path& labels, std::uint32_t image_magic) {
  auto be = [](std::ofstream& o, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                       static_cast<char>(v >> 8), static_cast<char>(v)};
    o.write(b, 4);
  };
  std::ofstream fi(images, std::ios::binary);
  be(fi, image_magic);
  be(fi, 2);
  be(fi, 2);
  be(fi, 2);
  const unsigned char px[8] = {0, 255, 0, 255, 255, 255, 0, 51};
  fi.write(reinterpret_cast<const char*>(px), 8);
  std::ofstream fl(labels, std::ios::binary);
  be(fl, kIdxLabelMagic);
  be(fl, 2);
  const char lab[2] = {3, 7};
  fl.write(lab, 2);
}

TEST(LoadSamples, IdxScaling) {
  const fs::path img = temp_file("img.idx"), lab = temp_file("lab.idx");
  write_idx(img, lab, kIdxImageMagic);
  auto s = load_samples_idx(img, lab);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].label, 3);
  EXPECT_EQ(s[1].label, 7);
  EXPECT_DOUBLE_EQ(s[0].features[0], 0.0);
  EXPECT_DOUBLE_EQ(s[0].features[1], 1.0);
  EXPECT_DOUBLE_EQ(s[1].features[3], 0.2);
}

TEST(LoadSamples, IdxBadMagic) {
  const fs::path img = temp_file("img_bad.idx"), lab = temp_file("lab_bad.idx");
  write_idx(img, lab, 0x0803u + 1);
  EXPECT_EQ(kind_of([&] { load_samples_idx(img, lab); }), ErrorKind::kParse);
}

}  // namespace
}  // namespace hqcran
