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

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage or input error.

#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hqcran/bench.hpp"

namespace hqcran {

namespace cli {

inline constexpr int kOk = 0;
inline constexpr int kVerifyError = 1;
inline constexpr int kUsageError = 2;

struct InputOptions {
  std::string network;
  std::string samples;
  std::string idx_images;
  std::string idx_labels;
  std::string input;
  int sample_index = -1;
  int limit = -1;
};

inline void add_input_options(CLI::App* app, InputOptions& in) {
  app->add_option("--network", in.network, "network JSON file")->required();
  app->add_option("--samples", in.samples, "samples CSV (label,x0,x1,...)");
  app->add_option("--idx-images", in.idx_images, "IDX image file");
  app->add_option("--idx-labels", in.idx_labels, "IDX label file");
  app->add_option("--input", in.input, "single input as comma-separated values");
  app->add_option("--sample-index", in.sample_index, "use only this sample");
  app->add_option("--limit", in.limit, "use at most this many samples");
}

struct LoadedInput {
  Network net;
  std::vector<Sample> samples;
  std::vector<int> ids;
};

inline LoadedInput load_input(const InputOptions& in) {
  LoadedInput out;
  out.net = load_network(in.network);
  const int sources = !in.samples.empty() + !in.idx_images.empty() + !in.input.empty();
  require(sources == 1, ErrorKind::kPrecondition,
          "give exactly one of --samples, --idx-images/--idx-labels, --input");
  if (!in.samples.empty()) {
    out.samples = load_samples_csv(in.samples, out.net.input_dim());
  } else if (!in.idx_images.empty()) {
    require(!in.idx_labels.empty(), ErrorKind::kPrecondition, "--idx-images needs --idx-labels");
    out.samples = load_samples_idx(in.idx_images, in.idx_labels);
  } else {
    Sample s;
    const auto cells = detail::split_csv_line(in.input);
    s.features = Vector(static_cast<Eigen::Index>(cells.size()));
    for (size_t k = 0; k < cells.size(); ++k) {
      const auto v = detail::parse_double(cells[k]);
      require(v.has_value(), ErrorKind::kParse, "bad --input value '" + cells[k] + "'");
      s.features[static_cast<Eigen::Index>(k)] = *v;
    }
    require(s.features.size() == out.net.input_dim(), ErrorKind::kDimension,
            "--input width does not match the network");
    s.label = forward(out.net, s.features).predicted_class;
    out.samples.push_back(s);
  }
  for (const Sample& s : out.samples)
    require(s.features.size() == out.net.input_dim(), ErrorKind::kDimension,
            "sample width does not match the network");
  if (in.sample_index >= 0) {
    require(in.sample_index < static_cast<int>(out.samples.size()), ErrorKind::kPrecondition,
            "--sample-index out of range");
    out.samples = {out.samples[static_cast<size_t>(in.sample_index)]};
    out.ids = {in.sample_index};
  } else {
    if (in.limit >= 0 && in.limit < static_cast<int>(out.samples.size()))
      out.samples.resize(static_cast<size_t>(in.limit));
    for (int i = 0; i < static_cast<int>(out.samples.size()); ++i) out.ids.push_back(i);
  }
  return out;
}

struct HqOptions {
  std::string variant = "v2";
  std::string master = "milp";
  std::string certify = "paper";
  std::string phi;
  std::optional<double> prune;
  bool early_stop = false;
  HqcranConfig cfg;
};

inline void add_hqcran_options(CLI::App* app, HqOptions& o) {
  app->add_option("--variant", o.variant, "v1 | v2")->check(CLI::IsMember({"v1", "v2"}));
  app->add_option("--master", o.master, "milp | sa | exhaustive")
      ->check(CLI::IsMember({"milp", "sa", "exhaustive"}));
  app->add_option("--T", o.cfg.T, "maximum iterations");
  app->add_option("--xi", o.cfg.xi, "target gap");
  app->add_option("--alpha-bar", o.cfg.alpha_bar, "dual bound on alpha");
  app->add_option("--beta-bar", o.cfg.beta_bar, "dual bound on beta");
  app->add_option("--wp", o.cfg.omega_p, "eta encoding weight");
  app->add_option("--wa", o.cfg.omega_a, "slack encoding weight");
  app->add_option("--phi", o.phi, "cut capacity, integer or 'inf'");
  app->add_option("--reads", o.cfg.reads, "annealing reads");
  app->add_option("--sweeps", o.cfg.sweeps, "annealing sweeps");
  app->add_option("--seed", o.cfg.seed, "random seed");
  app->add_option("--prune", o.prune, "drop couplings below this fraction of the largest");
  app->add_option("--certify", o.certify, "paper | sound")
      ->check(CLI::IsMember({"paper", "sound"}));
  app->add_flag("--early-stop", o.early_stop, "stop once the sign of the margin is settled");
}

inline HqcranConfig finish_hqcran(const HqOptions& o) {
  HqcranConfig cfg = o.cfg;
  cfg.variant = detail::parse_variant(o.variant);
  cfg.backend = detail::parse_backend(o.master);
  cfg.certify = o.certify == "sound" ? CertifyMode::kSound : CertifyMode::kPaper;
  cfg.early_stop = o.early_stop;
  cfg.prune = o.prune;
  if (o.phi == "inf") {
    cfg.phi = kUnboundedPool;
  } else if (!o.phi.empty()) {
    const auto v = detail::parse_double(o.phi);
    require(v.has_value() && *v == std::floor(*v), ErrorKind::kParse, "--phi must be an integer or 'inf'");
    cfg.phi = static_cast<int>(*v);
  }
  cfg.validate();
  return cfg;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  require(static_cast<bool>(f), ErrorKind::kIo, "cannot write " + path);
  return f;
}

inline int cmd_verify(const InputOptions& in, const HqOptions& hq, const std::string& eps_text,
                      const std::string& method, bool all_targets, int jobs,
                      const std::string& json_out, const std::string& csv_out,
                      const std::string& trace_dir, std::ostream& out) {
  const double eps = parse_epsilon(eps_text);
  const LoadedInput li = load_input(in);
  const HqcranConfig cfg = finish_hqcran(hq);
  MethodSpec spec{method, cfg.variant, cfg.backend};
  BenchConfig bc;
  bc.networks.push_back({li.net.name(), li.net, li.samples});
  bc.epsilons = {eps};
  bc.methods = {spec};
  bc.all_targets = all_targets;
  bc.jobs = jobs;
  bc.hqcran = cfg;
  BenchResult res;
  try {
    res = run_bench(bc);
  } catch (const Error& ex) {
    throw std::runtime_error(ex.what());
  }
  out.precision(10);
  for (size_t k = 0; k < li.samples.size(); ++k) {
    const int id = li.ids[k];
    double worst = kInf;
    std::string verdict = "robust";
    std::ostringstream detail_lines;
    detail_lines.precision(10);
    for (const RunRecord& r : res.report.records) {
      if (r.sample != static_cast<int>(k)) continue;
      if (r.target < 0) {
        verdict = "misclassified";
        continue;
      }
      worst = std::min(worst, r.bound);
      if (r.verdict != "certified") verdict = "not_certified";
      detail_lines << "  target " << r.target << " bound " << r.bound << " " << r.verdict;
      if (r.method == "hqcran")
        detail_lines << " iterations " << r.iterations << " qubits " << r.qubits_avg;
      detail_lines << '\n';
    }
    out << "sample " << id << " label " << li.samples[k].label << " predicted "
        << forward(li.net, li.samples[k].features).predicted_class << " verdict " << verdict;
    if (verdict != "misclassified") out << " bound " << worst;
    out << '\n' << detail_lines.str();
  }
  for (RunRecord& r : res.report.records) r.sample = li.ids[static_cast<size_t>(r.sample)];
  for (TargetTrace& t : res.traces) t.sample = li.ids[static_cast<size_t>(t.sample)];
  res.report = aggregate(res.report.records);
  const GroupStats& g = res.report.groups.front();
  out << "certified_accuracy " << g.certified_accuracy << " samples " << g.samples << '\n';
  if (!json_out.empty()) {
    auto f = open_out(json_out);
    f << report_to_json(res.report).dump(2) << '\n';
  }
  if (!csv_out.empty()) {
    auto f = open_out(csv_out);
    write_records_csv(res.report.records, f);
  }
  if (!trace_dir.empty()) {
    std::filesystem::create_directories(trace_dir);
    for (const TargetTrace& t : res.traces) {
      auto f = open_out((std::filesystem::path(trace_dir) / trace_file_name(t)).string());
      write_trace_csv(t.outcome, f);
    }
  }
  return kOk;
}

inline int cmd_bounds(const InputOptions& in, const std::string& eps_text, std::ostream& out) {
  const double eps = parse_epsilon(eps_text);
  const LoadedInput li = load_input(in);
  out.precision(17);
  out << "sample,layer,neuron,pre_lower,pre_upper,post_lower,post_upper,tag\n";
  for (size_t k = 0; k < li.samples.size(); ++k) {
    const BoundsStack bs = propagate_interval(li.net, Ball(li.samples[k].features, eps));
    const StabilityMap sm = classify_neurons(bs, li.net.final_relu());
    for (int i = 0; i <= bs.num_layers(); ++i) {
      const auto& pl = bs.pre_lower[static_cast<size_t>(i)];
      for (Eigen::Index j = 0; j < pl.size(); ++j) {
        out << li.ids[k] << ',' << i << ',' << j << ',' << pl[j] << ','
            << bs.pre_upper[static_cast<size_t>(i)][j] << ','
            << bs.post_lower[static_cast<size_t>(i)][j] << ','
            << bs.post_upper[static_cast<size_t>(i)][j] << ','
            << (i == 0 ? std::string_view("input") : to_string(sm.tag(i, static_cast<int>(j))))
            << '\n';
      }
    }
  }
  return kOk;
}

inline int parse_dims(const std::string& text, std::vector<int>& dims) {
  for (const auto& cell : detail::split_csv_line(text)) {
    const auto v = detail::parse_double(cell);
    require(v.has_value() && *v >= 1 && *v == std::floor(*v), ErrorKind::kParse,
            "bad --dims entry '" + cell + "'");
    dims.push_back(static_cast<int>(*v));
  }
  require(dims.size() >= 2, ErrorKind::kParse, "--dims needs at least two sizes");
  return kOk;
}

inline int cmd_gen(const std::string& dims_text, double scale, std::uint64_t seed, bool linear,
                   const std::string& net_out, int n_samples, const std::string& samples_out,
                   const std::string& idx_prefix, std::ostream& out) {
  std::vector<int> dims;
  parse_dims(dims_text, dims);
  const Network net = generate_random_network(dims, scale, seed, !linear);
  save_network(net, net_out);
  out << "wrote " << net_out << " (" << net.name() << ")\n";
  if (n_samples <= 0) return kOk;
  std::vector<Sample> samples = detail::random_samples(net, n_samples, seed + 1);
  if (!idx_prefix.empty()) {
    int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dims.front()))));
    const bool square = side * side == dims.front();
    const int rows = square ? side : 1;
    const int cols = square ? side : dims.front();
    // Quantize first so labels match what a reader of the files will see.
    for (Sample& s : samples) {
      for (Eigen::Index k = 0; k < s.features.size(); ++k)
        s.features[k] = std::lround(s.features[k] * 255.0) / 255.0;
      s.label = forward(net, s.features).predicted_class;
    }
    write_samples_idx(samples, rows, cols, idx_prefix + "-images-idx3-ubyte",
                      idx_prefix + "-labels-idx1-ubyte");
    out << "wrote " << idx_prefix << "-{images-idx3,labels-idx1}-ubyte\n";
  }
  if (!samples_out.empty()) {
    write_samples_csv(samples, samples_out);
    out << "wrote " << samples_out << '\n';
  }
  return kOk;
}

inline int resolve_target(const Network& net, const Sample& s, int target) {
  const int c = forward(net, s.features).predicted_class;
  if (target < 0) return c == 0 ? 1 : 0;
  return target;
}

inline int cmd_dump_qubo(const InputOptions& in, const HqOptions& hq, const std::string& eps_text,
                         int target, int iteration, const std::string& path, std::ostream& out) {
  const double eps = parse_epsilon(eps_text);
  require(iteration >= 1, ErrorKind::kPrecondition, "--iteration must be at least 1");
  const LoadedInput li = load_input(in);
  const Sample& s = li.samples.front();
  HqcranConfig cfg = finish_hqcran(hq);
  cfg.T = iteration;
  MipProblem mip = build_mip(li.net, propagate_interval(li.net, Ball(s.features, eps)));
  set_target(mip, forward(li.net, s.features).predicted_class, resolve_target(li.net, s, target));
  std::optional<QuboModel> model;
  run_target(mip, cfg, [&](const IterationView& v) {
    if (v.iter != iteration) return;
    std::vector<CutTerms> terms;
    for (const Cut& c : v.pool->cuts) terms.push_back(c.terms());
    model = assemble_qubo(terms, *v.y_prev, *v.layout, v.hamming);
  });
  if (!model) throw std::runtime_error("run stopped before iteration " + std::to_string(iteration));
  if (path.empty() || path == "-") {
    write_qubo_csv(*model, out);
  } else {
    auto f = open_out(path);
    write_qubo_csv(*model, f);
    out << "wrote " << path << " (" << model->size() << " variables)\n";
  }
  return kOk;
}

inline int cmd_encode(const InputOptions& in, const std::string& eps_text, int target,
                      const std::string& path, std::ostream& out) {
  const double eps = parse_epsilon(eps_text);
  const LoadedInput li = load_input(in);
  const Sample& s = li.samples.front();
  MipProblem mip = build_mip(li.net, propagate_interval(li.net, Ball(s.features, eps)));
  set_target(mip, forward(li.net, s.features).predicted_class, resolve_target(li.net, s, target));
  if (path.empty() || path == "-") {
    dump_mip(mip, out);
  } else {
    auto f = open_out(path);
    dump_mip(mip, f);
  }
  return kOk;
}

}  // namespace cli

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Robustness certification for small ReLU networks"};
  app.require_subcommand(1);

  cli::InputOptions in;
  cli::HqOptions hq;
  std::string eps_text = "0";
  std::string method = "hqcran";
  bool all_targets = false;
  int jobs = 1;
  std::string json_out, csv_out, trace_dir;

  auto* verify = app.add_subcommand("verify", "certify samples against an l-inf ball");
  cli::add_input_options(verify, in);
  cli::add_hqcran_options(verify, hq);
  verify->add_option("--epsilon", eps_text, "radius, decimal or k/255")->required();
  verify->add_option("--method", method, "exact | convex | hqcran")
      ->check(CLI::IsMember({"exact", "convex", "hqcran"}));
  verify->add_flag("--all-targets", all_targets, "do not stop at the first uncertified target");
  verify->add_option("--jobs", jobs, "parallel samples")->check(CLI::PositiveNumber);
  verify->add_option("--json", json_out, "write the report as JSON");
  verify->add_option("--csv", csv_out, "write the run records as CSV");
  verify->add_option("--trace-dir", trace_dir, "write per-target iteration traces");

  std::string config, bench_out;
  std::optional<int> bench_jobs;
  auto* bench = app.add_subcommand("bench", "run an experiment grid from a JSON config");
  bench->add_option("--config", config, "bench config JSON")->required();
  bench->add_option("--out", bench_out, "output directory (overrides the config)");
  bench->add_option("--jobs", bench_jobs, "parallel work items")->check(CLI::PositiveNumber);

  cli::InputOptions bin;
  std::string beps = "0";
  auto* bounds = app.add_subcommand("bounds", "print interval bounds per neuron");
  cli::add_input_options(bounds, bin);
  bounds->add_option("--epsilon", beps, "radius, decimal or k/255")->required();

  std::string dims, net_out, samples_out, idx_prefix;
  double scale = 1.0;
  std::uint64_t gen_seed = 0;
  bool linear = false;
  int n_samples = 0;
  auto* gen = app.add_subcommand("gen", "generate a random network and samples");
  gen->add_option("--dims", dims, "layer sizes, e.g. 784,20,20,10")->required();
  gen->add_option("--weight-scale", scale, "weights and biases uniform in [-s, s]");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_flag("--linear-output", linear, "no ReLU on the last layer");
  gen->add_option("--out", net_out, "network JSON path")->required();
  gen->add_option("--samples", n_samples, "number of random samples");
  gen->add_option("--samples-out", samples_out, "samples CSV path");
  gen->add_option("--idx-out", idx_prefix, "prefix for IDX image and label files");

  cli::InputOptions qin;
  cli::HqOptions qhq;
  std::string qeps = "0", qout;
  int qtarget = -1, qiter = 1;
  auto* dump = app.add_subcommand("dump-qubo", "write the master QUBO of one iteration");
  cli::add_input_options(dump, qin);
  cli::add_hqcran_options(dump, qhq);
  dump->add_option("--epsilon", qeps, "radius, decimal or k/255")->required();
  dump->add_option("--target", qtarget, "target class (default: first other class)");
  dump->add_option("--iteration", qiter, "iteration whose master is written");
  dump->add_option("--out", qout, "output CSV (default stdout)");

  cli::InputOptions ein;
  std::string eeps = "0", eout;
  int etarget = -1;
  auto* encode = app.add_subcommand("encode", "write the MIP matrices for one sample");
  cli::add_input_options(encode, ein);
  encode->add_option("--epsilon", eeps, "radius, decimal or k/255")->required();
  encode->add_option("--target", etarget, "target class (default: first other class)");
  encode->add_option("--dump", eout, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return cli::kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return cli::kUsageError;
  }

  try {
    if (*verify)
      return cli::cmd_verify(in, hq, eps_text, method, all_targets, jobs, json_out, csv_out,
                             trace_dir, out);
    if (*bench) {
      BenchConfig bc = load_bench_config(config);
      if (!bench_out.empty()) bc.output_dir = bench_out;
      if (bench_jobs) bc.jobs = *bench_jobs;
      BenchResult res;
      try {
        res = run_bench(bc);
      } catch (const Error& ex) {
        throw std::runtime_error(ex.what());
      }
      if (!bc.output_dir.empty()) write_bench_outputs(res, bc.output_dir);
      write_table1_csv(res.report, out);
      out << '\n';
      write_table2_csv(res.report, out);
      return cli::kOk;
    }
    if (*bounds) return cli::cmd_bounds(bin, beps, out);
    if (*gen)
      return cli::cmd_gen(dims, scale, gen_seed, linear, net_out, n_samples, samples_out,
                          idx_prefix, out);
    if (*dump) return cli::cmd_dump_qubo(qin, qhq, qeps, qtarget, qiter, qout, out);
    if (*encode) return cli::cmd_encode(ein, eeps, etarget, eout, out);
  } catch (const Error& ex) {
    // Input, parse and configuration problems.
    err << "error: " << ex.what() << '\n';
    return cli::kUsageError;
  } catch (const std::exception& ex) {
    err << "verification failed: " << ex.what() << '\n';
    return cli::kVerifyError;
  }
  return cli::kUsageError;
}

}  // namespace hqcran
