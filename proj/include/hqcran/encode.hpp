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

// Big-M encoding of a ReLU network over an input box:
//
//   min g z   s.t.  A z + B y >= b,   C z >= d,   y in {0,1}^{n_y}
//
// z stacks all layer outputs, input first. y has one entry per unstable
// neuron. For neuron j of a ReLU layer with pre-activation w z' + v in
// [l, u] the two coupling rows are
//
//   w z' - z_j + l y_j >= l - v        (z_j <= w z' + v - l (1 - y_j))
//        - z_j + u y_j >= 0            (z_j <= u y_j)
//
// with y_j substituted by its fixed value when the neuron is stable, and the
// system rows are z_j - w z' >= v and z_j >= 0.

#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hqcran/bounds.hpp"

namespace hqcran {

struct MipProblem {
  Matrix a;  // m_b x n_z
  Matrix b;  // m_b x n_y
  Vector rhs_b;
  Matrix c;  // m_d x n_z
  Vector rhs_d;
  Vector g;  // n_z

  std::vector<int> layer_offset;  // start of layer i's block in z, i = 0..L
  std::vector<std::pair<int, int>> unstable;  // (layer, neuron) per y column
  BoundsStack bounds;
  StabilityMap stability;
  bool final_relu = true;
  int output_dim = 0;
  int predicted = -1;
  int target = -1;

  int num_z() const { return static_cast<int>(a.cols()); }
  int num_y() const { return static_cast<int>(b.cols()); }
  int num_b_rows() const { return static_cast<int>(a.rows()); }
  int num_d_rows() const { return static_cast<int>(c.rows()); }
  int output_index(int cls) const { return num_z() - output_dim + cls; }
};

inline MipProblem build_mip(const Network& net, const BoundsStack& bs) {
  require(bs.num_layers() == net.num_layers(), ErrorKind::kDimension,
          "bounds stack does not match network depth");
  MipProblem mip;
  mip.bounds = bs;
  mip.stability = classify_neurons(bs, net.final_relu());
  mip.final_relu = net.final_relu();
  mip.output_dim = net.output_dim();

  const int num_layers = net.num_layers();
  int n_z = 0;
  int hidden = 0;
  for (int i = 0; i <= num_layers; ++i) {
    mip.layer_offset.push_back(n_z);
    n_z += net.width(i);
    if (i > 0) hidden += net.width(i);
  }
  const int n0 = net.input_dim();
  const int n_y = mip.stability.num_unstable;
  const int m_b = 2 * hidden;
  const int m_d = 2 * n0 + 2 * hidden;

  mip.a = Matrix::Zero(m_b, n_z);
  mip.b = Matrix::Zero(m_b, n_y);
  mip.rhs_b = Vector::Zero(m_b);
  mip.c = Matrix::Zero(m_d, n_z);
  mip.rhs_d = Vector::Zero(m_d);
  mip.g = Vector::Zero(n_z);
  mip.unstable.resize(static_cast<size_t>(n_y));

  for (int k = 0; k < n0; ++k) {
    mip.c(k, k) = 1.0;
    mip.rhs_d[k] = bs.input_lower()[k];
    mip.c(n0 + k, k) = -1.0;
    mip.rhs_d[n0 + k] = -bs.input_upper()[k];
  }

  int row = 0;  // neuron counter across layers
  for (int i = 1; i <= num_layers; ++i) {
    const Layer& l = net.layer(i - 1);
    const int prev = mip.layer_offset[static_cast<size_t>(i - 1)];
    const int cur = mip.layer_offset[static_cast<size_t>(i)];
    const Vector& lo = bs.pre_lower[static_cast<size_t>(i)];
    const Vector& hi = bs.pre_upper[static_cast<size_t>(i)];
    for (int j = 0; j < net.width(i); ++j, ++row) {
      const int r1 = row;
      const int r2 = hidden + row;
      const int m_row = 2 * n0 + row;
      const int n_row = 2 * n0 + hidden + row;
      const double v = l.bias[j];
      const auto w = l.weights.row(j);

      mip.c.block(m_row, prev, 1, w.size()) = -w;
      mip.c(m_row, cur + j) = 1.0;
      mip.rhs_d[m_row] = v;

      const NeuronTag tag = mip.stability.tag(i, j);
      if (tag == NeuronTag::kLinear) {
        mip.c.block(n_row, prev, 1, w.size()) = w;
        mip.c(n_row, cur + j) = -1.0;
        mip.rhs_d[n_row] = -v;
        continue;
      }
      mip.c(n_row, cur + j) = 1.0;

      mip.a.block(r1, prev, 1, w.size()) = w;
      mip.a(r1, cur + j) = -1.0;
      mip.a(r2, cur + j) = -1.0;
      switch (tag) {
        case NeuronTag::kStableActive:
          mip.rhs_b[r1] = -v;
          mip.rhs_b[r2] = -hi[j];
          break;
        case NeuronTag::kStableInactive:
          mip.rhs_b[r1] = lo[j] - v;
          mip.rhs_b[r2] = 0.0;
          break;
        case NeuronTag::kUnstable: {
          const int s = mip.stability.slot(i, j);
          mip.b(r1, s) = lo[j];
          mip.b(r2, s) = hi[j];
          mip.rhs_b[r1] = lo[j] - v;
          mip.rhs_b[r2] = 0.0;
          mip.unstable[static_cast<size_t>(s)] = {i, j};
          break;
        }
        case NeuronTag::kLinear:
          break;
      }
    }
  }
  return mip;
}

// Objective z_c - z_t on the output block: positive minimum means class c
// beats t everywhere in the box.
inline void set_target(MipProblem& mip, int predicted, int target) {
  require(predicted >= 0 && predicted < mip.output_dim && target >= 0 &&
              target < mip.output_dim,
          ErrorKind::kPrecondition, "class index out of range");
  require(predicted != target, ErrorKind::kPrecondition,
          "target class equals predicted class");
  mip.g.setZero();
  mip.g[mip.output_index(predicted)] = 1.0;
  mip.g[mip.output_index(target)] = -1.0;
  mip.predicted = predicted;
  mip.target = target;
}

namespace detail {

inline void dump_block(std::ostream& out, const std::string& name, const Matrix& m) {
  out << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  char buf[32];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(r, c) == 0.0 ? 0.0 : m(r, c));
      out << (c ? "," : "") << buf;
    }
    out << '\n';
  }
}

}  // namespace detail

// Plain-text matrix dump, one "<name> <rows> <cols>" header per block.
inline void dump_mip(const MipProblem& mip, std::ostream& out) {
  out << "n_z " << mip.num_z() << "\nn_y " << mip.num_y() << "\nm_b " << mip.num_b_rows()
      << "\nm_d " << mip.num_d_rows() << '\n';
  detail::dump_block(out, "A", mip.a);
  detail::dump_block(out, "B", mip.b);
  detail::dump_block(out, "b", mip.rhs_b);
  detail::dump_block(out, "C", mip.c);
  detail::dump_block(out, "d", mip.rhs_d);
  detail::dump_block(out, "g", mip.g);
}

}  // namespace hqcran
