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

// Experiment driver: per-target run records, aggregate metrics and reports.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "hqcran/benders.hpp"
#include "hqcran/samples.hpp"
#include "hqcran/verifiers.hpp"

namespace hqcran {

inline constexpr double kCorrectTol = 1e-6;

// Parses "0.1" or "k/255".
inline double parse_epsilon(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    const auto v = detail::parse_double(text);
    require(v.has_value() && *v >= 0.0, ErrorKind::kParse, "bad epsilon '" + text + "'");
    return *v;
  }
  const auto num = detail::parse_double(text.substr(0, slash));
  const auto den = detail::parse_double(text.substr(slash + 1));
  require(num && den && *den > 0.0 && *num >= 0.0, ErrorKind::kParse,
          "bad epsilon '" + text + "'");
  return *num / *den;
}

inline double optimality_ratio(double m_t, double m_star) {
  require(std::isfinite(m_t) && std::isfinite(m_star), ErrorKind::kPrecondition,
          "optimality ratio needs finite values");
  if (m_t == m_star) return 1.0;
  if (m_t > 0.0) return m_star / m_t;
  if (m_star < 0.0) return m_t / m_star;
  return m_star / (m_star - m_t);
}

struct MethodSpec {
  std::string method = "hqcran";  // exact | convex | hqcran
  Variant variant = Variant::kV2;
  MasterBackend backend = MasterBackend::kMilp;

  std::string key() const {
    if (method != "hqcran") return method;
    return method + "-" + std::string(to_string(variant)) + "-" + std::string(to_string(backend));
  }
};

struct RunRecord {
  std::string network;
  double epsilon = 0.0;
  int sample = 0;
  int label = 0;
  int predicted = 0;
  int target = -1;  // -1: sample misclassified, no target run
  std::string method;
  std::string variant;
  std::string backend;
  double bound = std::numeric_limits<double>::quiet_NaN();
  std::string verdict;  // certified | unknown | misclassified
  int iterations = 0;
  double qubits_avg = 0.0;
  double seconds = 0.0;

  std::string key() const {
    return method == "hqcran" ? method + "-" + variant + "-" + backend : method;
  }
};

struct GroupStats {
  std::string network;
  double epsilon = 0.0;
  std::string key;
  int samples = 0;
  double certified_accuracy = 0.0;
  double avg_time = 0.0;  // per sample
  int paired = 0;
  std::optional<double> correct_rate;
  double iter_mean = 0.0, iter_std = 0.0;
  double qubits_mean = 0.0, qubits_std = 0.0;
};

struct BenchReport {
  std::vector<GroupStats> groups;
  std::vector<RunRecord> records;
};

namespace detail {

inline std::pair<double, double> mean_std(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return {m, std::sqrt(s / static_cast<double>(v.size()))};
}

}  // namespace detail

// Groups keep first-appearance order of (network, epsilon, method key).
inline BenchReport aggregate(const std::vector<RunRecord>& records) {
  require(!records.empty(), ErrorKind::kPrecondition, "no records to aggregate");
  using GroupKey = std::tuple<std::string, double, std::string>;
  std::vector<GroupKey> order;
  std::map<GroupKey, std::vector<const RunRecord*>> by_group;
  std::map<std::tuple<std::string, double, int, int>, double> exact_bound;
  for (const RunRecord& r : records) {
    GroupKey k{r.network, r.epsilon, r.key()};
    if (!by_group.count(k)) order.push_back(k);
    by_group[k].push_back(&r);
    if (r.method == "exact" && r.target >= 0)
      exact_bound[{r.network, r.epsilon, r.sample, r.target}] = r.bound;
  }
  BenchReport rep;
  rep.records = records;
  for (const GroupKey& k : order) {
    const auto& rs = by_group[k];
    GroupStats g;
    std::tie(g.network, g.epsilon, g.key) = k;
    std::map<int, std::pair<bool, double>> per_sample;  // certified so far, time
    std::vector<double> iters, qubits;
    int correct = 0;
    for (const RunRecord* r : rs) {
      auto [it, fresh] = per_sample.try_emplace(r->sample, true, 0.0);
      it->second.first = it->second.first && r->verdict == "certified";
      it->second.second += r->seconds;
      if (r->target < 0) continue;
      if (r->method == "hqcran") {
        iters.push_back(r->iterations);
        qubits.push_back(r->qubits_avg);
        const auto e = exact_bound.find({r->network, r->epsilon, r->sample, r->target});
        if (e != exact_bound.end()) {
          ++g.paired;
          correct += r->bound <= e->second + kCorrectTol;
        }
      }
    }
    g.samples = static_cast<int>(per_sample.size());
    int certified = 0;
    double time = 0.0;
    for (const auto& [s, v] : per_sample) {
      certified += v.first;
      time += v.second;
    }
    g.certified_accuracy = static_cast<double>(certified) / g.samples;
    g.avg_time = time / g.samples;
    if (g.paired > 0) g.correct_rate = static_cast<double>(correct) / g.paired;
    std::tie(g.iter_mean, g.iter_std) = detail::mean_std(iters);
    std::tie(g.qubits_mean, g.qubits_std) = detail::mean_std(qubits);
    rep.groups.push_back(g);
  }
  return rep;
}

inline constexpr const char* kRecordHeader =
    "network,epsilon,sample,label,predicted,target,method,variant,backend,bound,verdict,"
    "iterations,qubits_avg,seconds";

inline void write_records_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  out.precision(17);
  out << kRecordHeader << '\n';
  for (const RunRecord& r : records)
    out << r.network << ',' << r.epsilon << ',' << r.sample << ',' << r.label << ','
        << r.predicted << ',' << r.target << ',' << r.method << ',' << r.variant << ','
        << r.backend << ',' << r.bound << ',' << r.verdict << ',' << r.iterations << ','
        << r.qubits_avg << ',' << r.seconds << '\n';
}

inline std::vector<RunRecord> read_records_csv(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) && line == kRecordHeader, ErrorKind::kParse,
          "records CSV header mismatch");
  std::vector<RunRecord> out;
  auto num = [](const std::string& s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    const auto v = detail::parse_double(s);
    require(v.has_value(), ErrorKind::kParse, "bad number '" + s + "' in records CSV");
    return *v;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    require(f.size() == 14, ErrorKind::kParse, "records CSV row has wrong field count");
    RunRecord r;
    r.network = f[0];
    r.epsilon = num(f[1]);
    r.sample = static_cast<int>(num(f[2]));
    r.label = static_cast<int>(num(f[3]));
    r.predicted = static_cast<int>(num(f[4]));
    r.target = static_cast<int>(num(f[5]));
    r.method = f[6];
    r.variant = f[7];
    r.backend = f[8];
    r.bound = num(f[9]);
    r.verdict = f[10];
    r.iterations = static_cast<int>(num(f[11]));
    r.qubits_avg = num(f[12]);
    r.seconds = num(f[13]);
    out.push_back(r);
  }
  return out;
}

namespace detail {

inline nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace detail

inline nlohmann::json report_to_json(const BenchReport& rep) {
  nlohmann::json j;
  j["aggregates"] = nlohmann::json::array();
  for (const GroupStats& g : rep.groups) {
    nlohmann::json a{{"network", g.network},
                     {"epsilon", g.epsilon},
                     {"method", g.key},
                     {"samples", g.samples},
                     {"certified_accuracy", g.certified_accuracy},
                     {"avg_time", g.avg_time},
                     {"iterations_mean", g.iter_mean},
                     {"iterations_std", g.iter_std},
                     {"qubits_mean", g.qubits_mean},
                     {"qubits_std", g.qubits_std}};
    if (g.correct_rate) {
      a["correct_rate"] = *g.correct_rate;
      a["paired"] = g.paired;
    }
    j["aggregates"].push_back(a);
  }
  j["records"] = nlohmann::json::array();
  for (const RunRecord& r : rep.records)
    j["records"].push_back({{"network", r.network},
                            {"epsilon", r.epsilon},
                            {"sample", r.sample},
                            {"label", r.label},
                            {"predicted", r.predicted},
                            {"target", r.target},
                            {"method", r.method},
                            {"variant", r.variant},
                            {"backend", r.backend},
                            {"bound", detail::finite_or_null(r.bound)},
                            {"verdict", r.verdict},
                            {"iterations", r.iterations},
                            {"qubits_avg", r.qubits_avg},
                            {"seconds", r.seconds}});
  return j;
}

namespace detail {

inline std::vector<std::string> keys_where(const BenchReport& rep, bool hqcran_only) {
  std::vector<std::string> keys;
  for (const GroupStats& g : rep.groups) {
    if (hqcran_only && g.key.rfind("hqcran", 0) != 0) continue;
    if (std::find(keys.begin(), keys.end(), g.key) == keys.end()) keys.push_back(g.key);
  }
  return keys;
}

inline const GroupStats* find_group(const BenchReport& rep, const std::string& net, double eps,
                                    const std::string& key) {
  for (const GroupStats& g : rep.groups)
    if (g.network == net && g.epsilon == eps && g.key == key) return &g;
  return nullptr;
}

inline std::vector<std::pair<std::string, double>> cells(const BenchReport& rep) {
  std::vector<std::pair<std::string, double>> out;
  for (const GroupStats& g : rep.groups) {
    std::pair<std::string, double> c{g.network, g.epsilon};
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

}  // namespace detail

// Certified accuracy and average time per method.
inline void write_table1_csv(const BenchReport& rep, std::ostream& out) {
  out.precision(10);
  const auto keys = detail::keys_where(rep, false);
  out << "network,epsilon";
  for (const auto& k : keys) out << ",certified_" << k;
  for (const auto& k : keys) out << ",time_" << k;
  out << '\n';
  for (const auto& [net, eps] : detail::cells(rep)) {
    out << net << ',' << eps;
    for (const auto& k : keys) {
      const GroupStats* g = detail::find_group(rep, net, eps, k);
      out << ',';
      if (g) out << g->certified_accuracy;
    }
    for (const auto& k : keys) {
      const GroupStats* g = detail::find_group(rep, net, eps, k);
      out << ',';
      if (g) out << g->avg_time;
    }
    out << '\n';
  }
}

// Correct solutions, iterations and qubits per HQ-CRAN configuration.
inline void write_table2_csv(const BenchReport& rep, std::ostream& out) {
  out.precision(10);
  const auto keys = detail::keys_where(rep, true);
  out << "network,epsilon";
  for (const auto& k : keys) out << ",correct_" << k;
  for (const auto& k : keys) out << ",iter_mean_" << k << ",iter_std_" << k;
  for (const auto& k : keys) out << ",qubits_mean_" << k << ",qubits_std_" << k;
  out << '\n';
  for (const auto& [net, eps] : detail::cells(rep)) {
    out << net << ',' << eps;
    for (const auto& k : keys) {
      const GroupStats* g = detail::find_group(rep, net, eps, k);
      out << ',';
      if (g && g->correct_rate) out << *g->correct_rate;
    }
    for (const auto& k : keys) {
      const GroupStats* g = detail::find_group(rep, net, eps, k);
      out << ',';
      if (g) out << g->iter_mean << ',' << g->iter_std;
      else out << ',';
    }
    for (const auto& k : keys) {
      const GroupStats* g = detail::find_group(rep, net, eps, k);
      out << ',';
      if (g) out << g->qubits_mean << ',' << g->qubits_std;
      else out << ',';
    }
    out << '\n';
  }
}

struct TargetTrace {
  int sample = 0;
  int target = 0;
  std::string key;
  std::string network;
  double epsilon = 0.0;
  TargetOutcome outcome;
};

// Runs one method over the targets of one sample. Stops at the first
// uncertified target unless all_targets is set.
inline std::vector<RunRecord> verify_sample(const Network& net, const std::string& net_name,
                                            double epsilon, int sample_id, const Sample& s,
                                            const MethodSpec& spec, HqcranConfig cfg,
                                            bool all_targets,
                                            std::vector<TargetTrace>* traces = nullptr) {
  RunRecord base;
  base.network = net_name;
  base.epsilon = epsilon;
  base.sample = sample_id;
  base.label = s.label;
  base.method = spec.method;
  if (spec.method == "hqcran") {
    base.variant = std::string(to_string(spec.variant));
    base.backend = std::string(to_string(spec.backend));
    cfg.variant = spec.variant;
    cfg.backend = spec.backend;
  }
  const auto t0 = std::chrono::steady_clock::now();
  base.predicted = forward(net, s.features).predicted_class;
  std::vector<RunRecord> out;
  if (base.predicted != s.label) {
    base.verdict = "misclassified";
    base.seconds = detail::seconds_since(t0);
    out.push_back(base);
    return out;
  }
  MipProblem mip = build_mip(net, propagate_interval(net, Ball(s.features, epsilon)));
  const double setup = detail::seconds_since(t0);
  for (int t = 0; t < net.output_dim(); ++t) {
    if (t == base.predicted) continue;
    const auto t1 = std::chrono::steady_clock::now();
    set_target(mip, base.predicted, t);
    RunRecord r = base;
    r.target = t;
    if (spec.method == "exact") {
      const VerifierResult v = verify_exact(mip, cfg.milp);
      r.bound = v.bound;
      r.verdict = v.certified ? "certified" : "unknown";
    } else if (spec.method == "convex") {
      const VerifierResult v = verify_convex(net, mip);
      r.bound = v.bound;
      r.verdict = v.certified ? "certified" : "unknown";
    } else {
      require(spec.method == "hqcran", ErrorKind::kPrecondition,
              "unknown method '" + spec.method + "'");
      TargetOutcome o = run_target(mip, cfg);
      r.bound = o.m_t;
      r.verdict = o.certified() ? "certified" : "unknown";
      r.iterations = o.iterations;
      r.qubits_avg = o.mean_qubits();
      if (traces) traces->push_back({sample_id, t, spec.key(), net_name, epsilon, std::move(o)});
    }
    r.seconds = detail::seconds_since(t1) + (out.empty() ? setup : 0.0);
    out.push_back(r);
    if (!all_targets && r.verdict != "certified") break;
  }
  return out;
}

struct NetworkEntry {
  std::string name;
  Network net;
  std::vector<Sample> samples;
};

struct BenchConfig {
  std::vector<NetworkEntry> networks;
  std::vector<double> epsilons;
  std::vector<MethodSpec> methods;
  int limit_samples = -1;
  std::uint64_t seed = 0;
  bool all_targets = false;
  int jobs = 1;
  HqcranConfig hqcran;
  std::filesystem::path output_dir;
};

namespace detail {

inline Variant parse_variant(const std::string& s) {
  if (s == "v1") return Variant::kV1;
  require(s == "v2", ErrorKind::kParse, "unknown variant '" + s + "'");
  return Variant::kV2;
}

inline MasterBackend parse_backend(const std::string& s) {
  if (s == "milp") return MasterBackend::kMilp;
  if (s == "sa") return MasterBackend::kSa;
  require(s == "exhaustive", ErrorKind::kParse, "unknown master backend '" + s + "'");
  return MasterBackend::kExhaustive;
}

inline double json_epsilon(const nlohmann::json& e) {
  if (e.is_string()) return parse_epsilon(e.get<std::string>());
  require(e.is_number(), ErrorKind::kParse, "epsilon must be a number or 'k/255' string");
  return parse_epsilon(std::to_string(e.get<double>()));
}

// Uniform inputs in [0, 1] labelled with the network's own prediction.
inline std::vector<Sample> random_samples(const Network& net, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Sample> out;
  for (int i = 0; i < n; ++i) {
    Sample s;
    s.features = Vector(net.input_dim());
    for (Eigen::Index k = 0; k < s.features.size(); ++k) s.features[k] = unit(rng);
    s.label = forward(net, s.features).predicted_class;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

inline void apply_hqcran_json(const nlohmann::json& h, HqcranConfig& cfg) {
  if (h.contains("T")) cfg.T = h["T"].get<int>();
  if (h.contains("xi")) cfg.xi = h["xi"].get<double>();
  if (h.contains("alpha_bar")) cfg.alpha_bar = h["alpha_bar"].get<double>();
  if (h.contains("beta_bar")) cfg.beta_bar = h["beta_bar"].get<double>();
  if (h.contains("wp")) cfg.omega_p = h["wp"].get<double>();
  if (h.contains("wa")) cfg.omega_a = h["wa"].get<double>();
  if (h.contains("phi") && !h["phi"].is_null()) {
    if (h["phi"].is_string()) {
      require(h["phi"].get<std::string>() == "inf", ErrorKind::kParse, "phi must be int or 'inf'");
      cfg.phi = kUnboundedPool;
    } else {
      cfg.phi = h["phi"].get<int>();
    }
  }
  if (h.contains("reads")) cfg.reads = h["reads"].get<int>();
  if (h.contains("sweeps")) cfg.sweeps = h["sweeps"].get<int>();
  if (h.contains("prune")) cfg.prune = h["prune"].get<double>();
  if (h.contains("certify"))
    cfg.certify = h["certify"].get<std::string>() == "sound" ? CertifyMode::kSound
                                                             : CertifyMode::kPaper;
  if (h.contains("early_stop")) cfg.early_stop = h["early_stop"].get<bool>();
  cfg.validate();
}

// Relative paths resolve against base.
inline BenchConfig parse_bench_config(const nlohmann::json& j,
                                      const std::filesystem::path& base = ".") {
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
  };
  try {
    BenchConfig cfg;
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.limit_samples = j.value("limit_samples", -1);
    cfg.all_targets = j.value("all_targets", false);
    cfg.jobs = j.value("jobs", 1);
    if (j.contains("output_dir")) cfg.output_dir = resolve(j["output_dir"].get<std::string>());
    require(j.contains("networks") && j["networks"].is_array() && !j["networks"].empty(),
            ErrorKind::kParse, "config needs a non-empty 'networks' list");
    int index = 0;
    for (const auto& n : j["networks"]) {
      NetworkEntry e;
      if (n.contains("generate")) {
        const auto& g = n["generate"];
        const auto dims = g.at("dims").get<std::vector<int>>();
        e.net = generate_random_network(dims, g.value("weight_scale", 1.0),
                                        g.value("seed", cfg.seed + index),
                                        g.value("final_relu", true));
      } else {
        e.net = load_network(resolve(n.at("path").get<std::string>()));
      }
      e.name = n.value("name", e.net.name());
      if (n.contains("samples")) {
        e.samples = load_samples_csv(resolve(n["samples"].get<std::string>()), e.net.input_dim());
      } else if (n.contains("mnist")) {
        e.samples = load_samples_idx(resolve(n["mnist"].at("images").get<std::string>()),
                                     resolve(n["mnist"].at("labels").get<std::string>()));
      } else {
        e.samples = detail::random_samples(e.net, n.value("random_samples", 10),
                                           cfg.seed + 1000003u * static_cast<unsigned>(index));
      }
      for (const Sample& s : e.samples)
        require(s.features.size() == e.net.input_dim(), ErrorKind::kDimension,
                "sample width does not match network '" + e.name + "'");
      cfg.networks.push_back(std::move(e));
      ++index;
    }
    for (const auto& eps : j.at("epsilons")) cfg.epsilons.push_back(detail::json_epsilon(eps));
    const auto methods = j.value("methods", std::vector<std::string>{"exact", "convex", "hqcran"});
    const auto variants = j.value("variants", std::vector<std::string>{"v2"});
    const auto masters = j.value("master", std::vector<std::string>{"milp"});
    for (const auto& m : methods) {
      if (m != "hqcran") {
        require(m == "exact" || m == "convex", ErrorKind::kParse, "unknown method '" + m + "'");
        cfg.methods.push_back({m, Variant::kV2, MasterBackend::kMilp});
        continue;
      }
      for (const auto& v : variants)
        for (const auto& b : masters)
          cfg.methods.push_back({m, detail::parse_variant(v), detail::parse_backend(b)});
    }
    cfg.hqcran.seed = cfg.seed;
    if (j.contains("hqcran")) apply_hqcran_json(j["hqcran"], cfg.hqcran);
    require(cfg.jobs >= 1, ErrorKind::kParse, "jobs must be at least 1");
    return cfg;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::kParse, std::string("bench config: ") + ex.what());
  }
}

inline BenchConfig load_bench_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::kParse, std::string("bench config: ") + ex.what());
  }
  return parse_bench_config(j, path.parent_path());
}

struct BenchResult {
  BenchReport report;
  std::vector<TargetTrace> traces;
};

// Work items are (network, epsilon, method, sample); results are sorted back
// into that order so the report does not depend on --jobs.
inline BenchResult run_bench(const BenchConfig& cfg) {
  struct Item {
    int net, eps, method, sample;
  };
  std::vector<Item> items;
  for (int n = 0; n < static_cast<int>(cfg.networks.size()); ++n) {
    int count = static_cast<int>(cfg.networks[static_cast<size_t>(n)].samples.size());
    if (cfg.limit_samples >= 0) count = std::min(count, cfg.limit_samples);
    for (int e = 0; e < static_cast<int>(cfg.epsilons.size()); ++e)
      for (int m = 0; m < static_cast<int>(cfg.methods.size()); ++m)
        for (int s = 0; s < count; ++s) items.push_back({n, e, m, s});
  }
  std::vector<std::vector<RunRecord>> records(items.size());
  std::vector<std::vector<TargetTrace>> traces(items.size());
  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  std::optional<Error> failure;
  auto worker = [&] {
    for (size_t i = next++; i < items.size(); i = next++) {
      const Item& it = items[i];
      const NetworkEntry& ne = cfg.networks[static_cast<size_t>(it.net)];
      try {
        records[i] = verify_sample(ne.net, ne.name, cfg.epsilons[static_cast<size_t>(it.eps)],
                                   it.sample, ne.samples[static_cast<size_t>(it.sample)],
                                   cfg.methods[static_cast<size_t>(it.method)], cfg.hqcran,
                                   cfg.all_targets, &traces[i]);
      } catch (const Error& ex) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failure) failure = ex;
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(items.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) throw *failure;
  BenchResult out;
  std::vector<RunRecord> flat;
  for (size_t i = 0; i < items.size(); ++i) {
    flat.insert(flat.end(), records[i].begin(), records[i].end());
    for (auto& t : traces[i]) out.traces.push_back(std::move(t));
  }
  out.report = aggregate(flat);
  return out;
}

inline std::string trace_file_name(const TargetTrace& t) {
  std::ostringstream name;
  name.precision(6);
  name << t.network << "_eps" << t.epsilon << '_' << t.key << "_s" << t.sample << "_t" << t.target
       << ".csv";
  return name.str();
}

// report.json, records.csv, table1.csv, table2.csv and traces/.
inline void write_bench_outputs(const BenchResult& res, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "traces");
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p);
    require(static_cast<bool>(f), ErrorKind::kIo, "cannot write " + p.string());
    return f;
  };
  {
    auto f = open(dir / "report.json");
    f << report_to_json(res.report).dump(2) << '\n';
  }
  {
    auto f = open(dir / "records.csv");
    write_records_csv(res.report.records, f);
  }
  {
    auto f = open(dir / "table1.csv");
    write_table1_csv(res.report, f);
  }
  {
    auto f = open(dir / "table2.csv");
    write_table2_csv(res.report, f);
  }
  for (const TargetTrace& t : res.traces) {
    auto f = open(dir / "traces" / trace_file_name(t));
    write_trace_csv(t.outcome, f);
  }
}

}  // namespace hqcran
