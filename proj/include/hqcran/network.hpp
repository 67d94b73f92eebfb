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

// Feed-forward ReLU networks: representation, JSON ingestion, random
// instance generation and plain inference.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hqcran/common.hpp"

namespace hqcran {

struct Layer {
  Matrix weights;  // n_i x n_{i-1}, one row per output neuron
  Vector bias;     // n_i
};

class Network {
 public:
  Network() = default;

  // Validates the dimension chain and finiteness; throws Error naming the
  // offending layer (1-based) otherwise.
  Network(std::vector<Layer> layers, bool final_relu = true,
          std::string name = "network")
      : layers_(std::move(layers)),
        final_relu_(final_relu),
        name_(std::move(name)) {
    validate();
  }

  const std::vector<Layer>& layers() const { return layers_; }
  const Layer& layer(int i) const { return layers_[static_cast<size_t>(i)]; }
  int num_layers() const { return static_cast<int>(layers_.size()); }
  bool final_relu() const { return final_relu_; }
  const std::string& name() const { return name_; }

  int input_dim() const { return static_cast<int>(layers_.front().weights.cols()); }
  int output_dim() const { return static_cast<int>(layers_.back().weights.rows()); }

  // Width of layer i for i in [0, L]; layer 0 is the input.
  int width(int i) const {
    return i == 0 ? input_dim()
                  : static_cast<int>(layers_[static_cast<size_t>(i - 1)].weights.rows());
  }

  // Whether the activation after layer i (1-based) is a ReLU.
  bool has_relu(int i) const { return i < num_layers() || final_relu_; }

 private:
  void validate() const {
    require(!layers_.empty(), ErrorKind::kDimension, "network has no layers");
    for (size_t i = 0; i < layers_.size(); ++i) {
      const Layer& l = layers_[i];
      const std::string tag = "layer " + std::to_string(i + 1);
      require(l.weights.rows() >= 1 && l.weights.cols() >= 1,
              ErrorKind::kDimension, tag + ": empty weight matrix");
      require(l.bias.size() == l.weights.rows(), ErrorKind::kDimension,
              tag + ": bias length " + std::to_string(l.bias.size()) +
                  " does not match " + std::to_string(l.weights.rows()) +
                  " weight rows");
      if (i > 0) {
        require(l.weights.cols() == layers_[i - 1].weights.rows(),
                ErrorKind::kDimension,
                tag + ": weights have " + std::to_string(l.weights.cols()) +
                    " columns but previous layer has " +
                    std::to_string(layers_[i - 1].weights.rows()) + " outputs");
      }
      require(l.weights.allFinite(), ErrorKind::kNonFinite,
              tag + ": non-finite weight");
      require(l.bias.allFinite(), ErrorKind::kNonFinite,
              tag + ": non-finite bias");
    }
  }

  std::vector<Layer> layers_;
  bool final_relu_ = true;
  std::string name_ = "network";
};

struct Sample {
  Vector features;
  int label = 0;
};

// l-infinity ball around `center`.
struct Ball {
  Vector center;
  double epsilon = 0.0;

  Ball() = default;
  Ball(Vector c, double eps) : center(std::move(c)), epsilon(eps) {
    require(epsilon >= 0.0 && std::isfinite(epsilon), ErrorKind::kPrecondition,
            "epsilon must be finite and non-negative");
  }
};

struct Prediction {
  Vector logits;
  int predicted_class = 0;
};

// Index of the largest entry, lowest index on ties.
inline int argmax(const Vector& v) {
  int best = 0;
  for (int i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

inline Prediction forward(const Network& net, const Vector& x) {
  require(x.size() == net.input_dim(), ErrorKind::kDimension,
          "input has length " + std::to_string(x.size()) + ", network expects " +
              std::to_string(net.input_dim()));
  Vector z = x;
  for (int i = 1; i <= net.num_layers(); ++i) {
    const Layer& l = net.layer(i - 1);
    Vector pre = l.weights * z + l.bias;
    z = net.has_relu(i) ? Vector(pre.cwiseMax(0.0)) : pre;
  }
  Prediction p;
  p.predicted_class = argmax(z);
  p.logits = std::move(z);
  return p;
}

// Pre-activations of every layer 1..L (index 0 holds the input itself).
inline std::vector<Vector> pre_activations(const Network& net, const Vector& x) {
  std::vector<Vector> out;
  out.push_back(x);
  Vector z = x;
  for (int i = 1; i <= net.num_layers(); ++i) {
    const Layer& l = net.layer(i - 1);
    Vector pre = l.weights * z + l.bias;
    out.push_back(pre);
    z = net.has_relu(i) ? Vector(pre.cwiseMax(0.0)) : pre;
  }
  return out;
}

namespace detail {

inline Vector json_to_vector(const nlohmann::json& j, const std::string& tag) {
  require(j.is_array(), ErrorKind::kParse, tag + ": expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (size_t k = 0; k < j.size(); ++k) {
    const auto& e = j[k];
    if (e.is_null()) {
      // NaN and Inf are serialized as null by most JSON writers.
      throw Error(ErrorKind::kNonFinite, tag + ": non-finite entry");
    }
    require(e.is_number(), ErrorKind::kParse, tag + ": expected a number");
    v[static_cast<Eigen::Index>(k)] = e.get<double>();
  }
  return v;
}

}  // namespace detail

inline Network network_from_json(const nlohmann::json& doc) {
  require(doc.is_object(), ErrorKind::kParse, "network file: expected an object");
  require(doc.contains("layers") && doc["layers"].is_array(), ErrorKind::kParse,
          "network file: missing \"layers\" array");
  const bool final_relu = doc.value("final_relu", true);
  const std::string name = doc.value("name", std::string("network"));
  std::vector<Layer> layers;
  size_t idx = 0;
  for (const auto& jl : doc["layers"]) {
    ++idx;
    const std::string tag = "layer " + std::to_string(idx);
    require(jl.contains("weights") && jl.contains("bias"), ErrorKind::kParse,
            tag + ": needs \"weights\" and \"bias\"");
    const auto& jw = jl["weights"];
    require(jw.is_array() && !jw.empty(), ErrorKind::kParse,
            tag + ": weights must be a non-empty array of rows");
    const size_t cols = jw[0].is_array() ? jw[0].size() : 0;
    Matrix w(static_cast<Eigen::Index>(jw.size()), static_cast<Eigen::Index>(cols));
    for (size_t r = 0; r < jw.size(); ++r) {
      Vector row = detail::json_to_vector(jw[r], tag + " weights row " + std::to_string(r));
      require(static_cast<size_t>(row.size()) == cols, ErrorKind::kDimension,
              tag + ": ragged weight rows");
      w.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    Vector b = detail::json_to_vector(jl["bias"], tag + " bias");
    layers.push_back({std::move(w), std::move(b)});
  }
  return Network(std::move(layers), final_relu, name);
}

inline nlohmann::json network_to_json(const Network& net) {
  nlohmann::json doc;
  doc["name"] = net.name();
  doc["final_relu"] = net.final_relu();
  doc["layers"] = nlohmann::json::array();
  for (const Layer& l : net.layers()) {
    nlohmann::json jl;
    jl["weights"] = nlohmann::json::array();
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) row.push_back(l.weights(r, c));
      jl["weights"].push_back(std::move(row));
    }
    jl["bias"] = std::vector<double>(l.bias.data(), l.bias.data() + l.bias.size());
    doc["layers"].push_back(std::move(jl));
  }
  return doc;
}

inline Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::kIo,
          "cannot open network file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kParse, path.string() + ": " + e.what());
  }
  return network_from_json(doc);
}

inline void save_network(const Network& net, const std::filesystem::path& path) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::kIo,
          "cannot write network file " + path.string());
  out << network_to_json(net).dump(1) << '\n';
}

// Weights and biases drawn uniformly from [-weight_scale, weight_scale].
inline Network generate_random_network(std::span<const int> dims,
                                       double weight_scale, std::uint64_t seed,
                                       bool final_relu = true) {
  require(dims.size() >= 2, ErrorKind::kPrecondition,
          "need at least an input and an output dimension");
  require(weight_scale > 0.0, ErrorKind::kPrecondition, "weight_scale must be positive");
  for (int d : dims) require(d >= 1, ErrorKind::kPrecondition, "layer sizes must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-weight_scale, weight_scale);
  std::vector<Layer> layers;
  for (size_t i = 1; i < dims.size(); ++i) {
    Layer l;
    l.weights.resize(dims[i], dims[i - 1]);
    l.bias.resize(dims[i]);
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) l.weights(r, c) = dist(rng);
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) l.bias[r] = dist(rng);
    layers.push_back(std::move(l));
  }
  std::string name = "random";
  for (int d : dims) name += "-" + std::to_string(d);
  return Network(std::move(layers), final_relu, name);
}

}  // namespace hqcran
