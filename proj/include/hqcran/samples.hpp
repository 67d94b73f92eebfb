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

// Dataset ingestion: CSV (label first) and uncompressed IDX image/label pairs.

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hqcran/network.hpp"

namespace hqcran {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    size_t start = cell.find_first_not_of(' ');
    cells.push_back(start == std::string::npos ? std::string() : cell.substr(start));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline std::optional<double> parse_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline std::uint32_t read_be_u32(std::istream& in, const std::string& what) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  require(static_cast<bool>(in), ErrorKind::kParse, what + ": truncated header");
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
         (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
}

}  // namespace detail

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

// Each row: label, then `input_dim` features. A header row is detected by a
// non-numeric first cell. input_dim < 0 accepts the first row's width.
inline std::vector<Sample> load_samples_csv(const std::filesystem::path& path,
                                            int input_dim = -1) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot open samples file " + path.string());
  std::vector<Sample> out;
  std::string line;
  int row = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \r\t") == std::string::npos) continue;
    auto cells = detail::split_csv_line(line);
    if (first) {
      first = false;
      if (!detail::parse_double(cells[0])) continue;
    }
    if (input_dim < 0) input_dim = static_cast<int>(cells.size()) - 1;
    require(static_cast<int>(cells.size()) == input_dim + 1, ErrorKind::kDimension,
            path.string() + " row " + std::to_string(row) + ": expected " +
                std::to_string(input_dim + 1) + " columns, found " +
                std::to_string(cells.size()));
    Sample s;
    auto label = detail::parse_double(cells[0]);
    require(label && *label >= 0 && *label == static_cast<int>(*label), ErrorKind::kParse,
            path.string() + " row " + std::to_string(row) + ": bad label");
    s.label = static_cast<int>(*label);
    s.features.resize(input_dim);
    for (int k = 0; k < input_dim; ++k) {
      auto v = detail::parse_double(cells[static_cast<size_t>(k + 1)]);
      require(v.has_value() && std::isfinite(*v), ErrorKind::kParse,
              path.string() + " row " + std::to_string(row) + ": bad feature");
      s.features[k] = *v;
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Big-endian IDX pair; pixel bytes are scaled by 1/255.
inline std::vector<Sample> load_samples_idx(const std::filesystem::path& images,
                                            const std::filesystem::path& labels) {
  std::ifstream fi(images, std::ios::binary);
  require(static_cast<bool>(fi), ErrorKind::kIo, "cannot open " + images.string());
  std::ifstream fl(labels, std::ios::binary);
  require(static_cast<bool>(fl), ErrorKind::kIo, "cannot open " + labels.string());

  const auto magic_i = detail::read_be_u32(fi, images.string());
  require(magic_i == kIdxImageMagic, ErrorKind::kParse,
          images.string() + ": bad magic number for IDX images");
  const auto count = detail::read_be_u32(fi, images.string());
  const auto rows = detail::read_be_u32(fi, images.string());
  const auto cols = detail::read_be_u32(fi, images.string());

  const auto magic_l = detail::read_be_u32(fl, labels.string());
  require(magic_l == kIdxLabelMagic, ErrorKind::kParse,
          labels.string() + ": bad magic number for IDX labels");
  const auto label_count = detail::read_be_u32(fl, labels.string());
  require(label_count == count, ErrorKind::kDimension,
          "IDX image and label counts differ");

  const size_t pixels = static_cast<size_t>(rows) * cols;
  std::vector<unsigned char> buf(pixels);
  std::vector<Sample> out;
  out.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    fi.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(pixels));
    require(static_cast<bool>(fi), ErrorKind::kParse, images.string() + ": truncated data");
    char lab = 0;
    fl.read(&lab, 1);
    require(static_cast<bool>(fl), ErrorKind::kParse, labels.string() + ": truncated data");
    Sample s;
    s.label = static_cast<unsigned char>(lab);
    s.features.resize(static_cast<Eigen::Index>(pixels));
    for (size_t p = 0; p < pixels; ++p) s.features[static_cast<Eigen::Index>(p)] = buf[p] / 255.0;
    out.push_back(std::move(s));
  }
  return out;
}

inline void write_samples_csv(const std::vector<Sample>& samples,
                              const std::filesystem::path& path) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + path.string());
  out.precision(17);
  for (const Sample& s : samples) {
    out << s.label;
    for (Eigen::Index k = 0; k < s.features.size(); ++k) out << ',' << s.features[k];
    out << '\n';
  }
}

// Writes an IDX pair with features rounded to bytes; `rows` * cols must equal
// the feature width.
inline void write_samples_idx(const std::vector<Sample>& samples, int rows, int cols,
                              const std::filesystem::path& images,
                              const std::filesystem::path& labels) {
  std::ofstream fi(images, std::ios::binary);
  require(static_cast<bool>(fi), ErrorKind::kIo, "cannot write " + images.string());
  std::ofstream fl(labels, std::ios::binary);
  require(static_cast<bool>(fl), ErrorKind::kIo, "cannot write " + labels.string());
  auto be32 = [](std::ofstream& f, std::uint32_t v) {
    const char bytes[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                           static_cast<char>(v >> 8), static_cast<char>(v)};
    f.write(bytes, 4);
  };
  const auto count = static_cast<std::uint32_t>(samples.size());
  be32(fi, kIdxImageMagic);
  be32(fi, count);
  be32(fi, static_cast<std::uint32_t>(rows));
  be32(fi, static_cast<std::uint32_t>(cols));
  be32(fl, kIdxLabelMagic);
  be32(fl, count);
  for (const Sample& s : samples) {
    require(s.features.size() == static_cast<Eigen::Index>(rows) * cols, ErrorKind::kDimension,
            "sample width does not match the IDX image size");
    require(s.label >= 0 && s.label < 256, ErrorKind::kPrecondition, "IDX labels must fit a byte");
    for (Eigen::Index k = 0; k < s.features.size(); ++k) {
      const double v = std::clamp(s.features[k], 0.0, 1.0);
      fi.put(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
    }
    fl.put(static_cast<char>(static_cast<unsigned char>(s.label)));
  }
}

}  // namespace hqcran
