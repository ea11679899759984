// Copyright 2026 The padmm Authors
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

#include "padmm/experiment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "padmm/data.h"
#include "padmm/svt.h"

namespace padmm {
namespace {

using json = nlohmann::json;

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

double ParseDouble(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("config key '" + key + "': '" + text +
                                "' is not a number");
  }
  return v;
}

template <typename Int>
Int ParseInt(const std::string& key, const std::string& text) {
  Int v = 0;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("config key '" + key + "': '" + text +
                                "' is not an integer");
  }
  return v;
}

bool ParseBool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw std::invalid_argument("config key '" + key + "': '" + text +
                              "' is not a boolean");
}

std::optional<double> ParseOptionalDouble(const std::string& key,
                                          const std::string& text) {
  if (text == "auto" || text.empty()) return std::nullopt;
  return ParseDouble(key, text);
}

std::string FormatOptional(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : "auto";
}

struct Field {
  std::string key;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = [] {
    std::vector<Field> f;
    auto add = [&f](std::string key, auto set, auto get) {
      f.push_back({std::move(key), set, get});
    };
    using C = ExperimentConfig;
    using S = const std::string&;
#define PADMM_DOUBLE(name)                                                   \
  add(#name, [](C& c, S v) { c.name = ParseDouble(#name, v); },             \
      [](const C& c) { return FormatDouble(c.name); })
#define PADMM_INT(name)                                                      \
  add(#name, [](C& c, S v) { c.name = ParseInt<int>(#name, v); },           \
      [](const C& c) { return std::to_string(c.name); })
#define PADMM_STRING(name)                                                   \
  add(#name, [](C& c, S v) { c.name = v; },                                 \
      [](const C& c) { return c.name; })

    add("algorithm", [](C& c, S v) { c.algorithm = ParseAlgorithm(v); },
        [](const C& c) { return ToString(c.algorithm); });
    PADMM_STRING(dataset);
    PADMM_STRING(label_column);
    PADMM_STRING(positive_value);
    PADMM_INT(synthetic_n);
    PADMM_INT(synthetic_d);
    PADMM_DOUBLE(synthetic_separation);
    PADMM_INT(n_agents);
    PADMM_STRING(topology);
    PADMM_DOUBLE(edge_prob);
    PADMM_DOUBLE(epsilon);
    PADMM_DOUBLE(delta);
    add("delta_i1",
        [](C& c, S v) { c.delta_i1 = ParseOptionalDouble("delta_i1", v); },
        [](const C& c) { return FormatOptional(c.delta_i1); });
    add("calibration",
        [](C& c, S v) { c.calibration = ParseRhoCalibration(v); },
        [](const C& c) { return ToString(c.calibration); });
    PADMM_INT(T);
    PADMM_DOUBLE(eta);
    PADMM_DOUBLE(splits);
    PADMM_DOUBLE(beta);
    PADMM_INT(max_iterations);
    add("lambda_hat",
        [](C& c, S v) { c.lambda_hat = ParseOptionalDouble("lambda_hat", v); },
        [](const C& c) { return FormatOptional(c.lambda_hat); });
    PADMM_INT(c_max);
    PADMM_DOUBLE(c_loss);
    PADMM_DOUBLE(alpha);
    PADMM_DOUBLE(svt_rho_fraction);
    add("seeds",
        [](C& c, S v) {
          c.seeds.clear();
          std::istringstream in(v);
          std::string item;
          while (std::getline(in, item, ',')) {
            c.seeds.push_back(ParseInt<std::uint64_t>("seeds", Trim(item)));
          }
        },
        [](const C& c) {
          std::string out;
          for (size_t i = 0; i < c.seeds.size(); ++i) {
            if (i > 0) out += ",";
            out += std::to_string(c.seeds[i]);
          }
          return out;
        });
    add("data_seed",
        [](C& c, S v) { c.data_seed = ParseInt<std::uint64_t>("data_seed", v); },
        [](const C& c) { return std::to_string(c.data_seed); });
    PADMM_DOUBLE(test_fraction);
    PADMM_STRING(output);
    add("insecure_no_noise",
        [](C& c, S v) { c.insecure_no_noise = ParseBool("insecure_no_noise", v); },
        [](const C& c) { return std::string(c.insecure_no_noise ? "true" : "false"); });
#undef PADMM_DOUBLE
#undef PADMM_INT
#undef PADMM_STRING
    return f;
  }();
  return fields;
}

void Require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) {
    throw std::invalid_argument("config key '" + key + "': " + what);
  }
}

Graph BuildGraph(const ExperimentConfig& c) {
  if (c.n_agents == 1) return Graph::FromEdges(1, {});
  if (c.topology == "ring") {
    return c.n_agents == 2 ? Graph::Complete(2) : Graph::Ring(c.n_agents);
  }
  if (c.topology == "complete") return Graph::Complete(c.n_agents);
  return Graph::RandomConnected(c.n_agents, c.edge_prob, c.data_seed);
}

json PlanJson(const BudgetPlan& p) {
  json j;
  j["algorithm"] = ToString(p.algorithm);
  j["epsilon"] = p.epsilon_total;
  j["delta"] = p.delta_total;
  j["T"] = p.rounds;
  j["c_max"] = p.max_broadcasts ? json(*p.max_broadcasts) : json(nullptr);
  j["splits"] = p.splits;
  j["calibration"] = ToString(p.calibration);
  j["rho_total"] = p.rho_total.rho();
  j["rho_svt"] = p.rho_svt.rho();
  j["rho_per_release"] = p.rho_per_round.rho();
  j["rho_i1"] = p.rho_i1.rho();
  j["rho_i2"] = p.rho_i2.rho();
  j["epsilon_i1"] = p.epsilon_i1;
  j["epsilon_i3"] = p.epsilon_i3;
  j["delta_i1"] = p.delta_i1;
  j["svt_eps1"] = p.svt_eps1;
  j["svt_eps2"] = p.svt_eps2;
  j["sigma_i1"] = p.sigma_i1;
  j["sigma_i2"] = p.sigma_i2;
  j["lambda_hat_floor"] = p.lambda_hat_floor;
  j["dataset_sizes"] = p.dataset_sizes;
  j["degrees"] = p.degrees;
  j["eta"] = p.eta;
  j["beta"] = p.beta;
  j["planned_epsilon"] = ZcdpToDp(p.rho_total, p.delta_total);
  return j;
}

// JSON has no infinity; non-finite values are written as strings.
json Number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

void ExperimentConfig::Validate() const {
  Require(dataset == kSyntheticDataset || !dataset.empty(), "dataset",
          "must be 'synthetic' or a path");
  if (dataset == kSyntheticDataset) {
    Require(synthetic_n >= 2, "synthetic_n", "must be >= 2");
    Require(synthetic_d >= 1, "synthetic_d", "must be >= 1");
    Require(std::isfinite(synthetic_separation), "synthetic_separation",
            "must be finite");
  }
  Require(n_agents >= 1, "n_agents", "must be >= 1");
  Require(topology == "random" || topology == "ring" || topology == "complete",
          "topology", "must be random, ring or complete");
  Require(edge_prob > 0.0 && edge_prob <= 1.0, "edge_prob", "must be in (0, 1]");
  Require(T >= 0, "T", "must be >= 0");
  Require(eta > 0.0, "eta", "must be > 0");
  Require(beta > 0.0, "beta", "must be > 0");
  Require(max_iterations >= 1, "max_iterations", "must be >= 1");
  Require(!lambda_hat || *lambda_hat >= 0.0, "lambda_hat", "must be >= 0");
  Require(!seeds.empty(), "seeds", "needs at least one seed");
  Require(test_fraction > 0.0 && test_fraction < 1.0, "test_fraction",
          "must be in (0, 1)");
  if (algorithm != Algorithm::kNonPrivate) {
    Require(epsilon > 0.0 && std::isfinite(epsilon), "epsilon", "must be > 0");
    Require(delta > 0.0 && delta < 1.0, "delta", "must be in (0, 1)");
    Require(!delta_i1 || (*delta_i1 > 0.0 && *delta_i1 < 1.0), "delta_i1",
            "must be in (0, 1)");
    Require(splits > 0.0 && splits < 1.0, "splits", "must be in (0, 1)");
    Require(T >= 1, "T", "must be >= 1 for private runs");
  }
  if (algorithm == Algorithm::kIppAdmm) {
    Require(c_max >= 1 && c_max <= T, "c_max", "must be in [1, T]");
    Require(c_loss > 0.0, "c_loss", "must be > 0");
    Require(!std::isnan(alpha), "alpha", "must be a number");
    Require(svt_rho_fraction > 0.0 && svt_rho_fraction < 1.0,
            "svt_rho_fraction", "must be in (0, 1)");
  }
}

std::string ExperimentConfig::ToText() const {
  std::string out;
  for (const auto& f : Fields()) out += f.key + " = " + f.get(*this) + "\n";
  return out;
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const auto& f : Fields()) keys.push_back(f.key);
  return keys;
}

void SetConfigValue(ExperimentConfig& config, const std::string& key,
                    const std::string& value) {
  for (const auto& f : Fields()) {
    if (f.key == key) {
      f.set(config, Trim(value));
      return;
    }
  }
  throw std::invalid_argument("unknown config key '" + key + "'");
}

ExperimentConfig ParseConfig(const std::string& text,
                             const ExperimentConfig& base) {
  ExperimentConfig config = base;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    try {
      SetConfigValue(config, Trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": " + e.what());
    }
  }
  return config;
}

ExperimentConfig LoadConfig(const std::string& path,
                            const ExperimentConfig& base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str(), base);
}

PreparedData PrepareData(const ExperimentConfig& c) {
  PreparedData out;
  if (c.dataset == kSyntheticDataset) {
    const Dataset all = SyntheticBlobs(c.synthetic_n, c.synthetic_d,
                                       c.synthetic_separation, c.data_seed);
    std::tie(out.train, out.test) =
        TrainTestSplit(all, c.test_fraction, c.data_seed);
  } else {
    const Dataset raw = LoadCsv(c.dataset, c.label_column, c.positive_value);
    auto [train_raw, test_raw] =
        TrainTestSplit(raw, c.test_fraction, c.data_seed);
    // Test rows are scaled with the training maxima.
    const ColumnScaling scaling = FitColumnScaling(train_raw);
    out.train = ApplyScaling(train_raw, scaling);
    out.test = ApplyScaling(test_raw, scaling);
  }
  out.parts =
      ApplyPartition(out.train, Partition(out.train, c.n_agents, c.data_seed));
  out.graph = BuildGraph(c);
  return out;
}

BudgetRequest MakeBudgetRequest(const ExperimentConfig& c,
                                const PreparedData& data) {
  BudgetRequest req;
  req.algorithm = c.algorithm;
  req.epsilon = c.epsilon;
  req.delta = c.delta;
  req.delta_i1 = c.delta_i1;
  req.rounds = c.T;
  req.splits = c.splits;
  for (const auto& p : data.parts) req.dataset_sizes.push_back(p.size());
  req.degrees = data.graph.Degrees();
  req.eta = c.eta;
  req.beta = c.beta;
  req.calibration = c.calibration;
  if (c.algorithm == Algorithm::kIppAdmm) {
    req.max_broadcasts = c.c_max;
    const ZcdpCost total = c.calibration == RhoCalibration::kDpToZcdp
                               ? DpToZcdp(c.epsilon, c.delta)
                               : ZcdpForDpTarget(c.epsilon, c.delta);
    // (eps1 + eps2)^2 / 2 = fraction * rho_total.
    const double svt_epsilon = std::sqrt(2.0 * c.svt_rho_fraction * total.rho());
    req.svt_epsilons = SvtSplitRatio(c.c_max, svt_epsilon);
  }
  return req;
}

std::pair<double, double> MeanAndStd(const std::vector<double>& values) {
  if (values.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (const double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return {mean, std::sqrt(var)};
}

RunReport RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  RunReport report;
  report.config = config;
  const std::string context = "experiment (" + ToString(config.algorithm) +
                              ", dataset " + config.dataset + "): ";
  try {
    const PreparedData data = PrepareData(config);
    report.edges = data.graph.Edges();
    for (const auto& p : data.parts) report.dataset_sizes.push_back(p.size());

    if (config.algorithm != Algorithm::kNonPrivate) {
      report.plan = PlanBudget(MakeBudgetRequest(config, data));
    }
    if (config.insecure_no_noise) {
      report.warnings.push_back(
          "insecure_no_noise: all privacy noise disabled; this run is NOT "
          "differentially private");
    }

    EngineOptions options;
    options.eta = config.eta;
    options.rounds = config.T;
    options.lambda_hat = config.lambda_hat;
    if (config.algorithm == Algorithm::kNonPrivate && !options.lambda_hat) {
      options.lambda_hat = kDefaultNonPrivateLambda;
    }
    options.solver.beta = config.beta;
    options.solver.max_iterations = config.max_iterations;
    options.noise =
        config.insecure_no_noise ? NoiseMode::kDisabled : NoiseMode::kEnabled;
    options.test = &data.test;

    const SvtSettings svt{config.alpha, config.c_max, config.c_loss};
    for (const auto seed : config.seeds) {
      options.seed = seed;
      SeedRun run{seed, {}};
      switch (config.algorithm) {
        case Algorithm::kNonPrivate:
          run.result = RunNonPrivate(data.parts, data.graph, options);
          break;
        case Algorithm::kPpAdmm:
          run.result = RunPpAdmm(data.parts, data.graph, *report.plan, options);
          break;
        case Algorithm::kIppAdmm:
          run.result =
              RunIppAdmm(data.parts, data.graph, *report.plan, svt, options);
          break;
      }
      report.lambda_hat = run.result.lambda_hat;
      report.runs.push_back(std::move(run));
    }
  } catch (const std::exception& e) {
    throw std::runtime_error(context + e.what());
  }

  for (int t = 0; t < config.T; ++t) {
    std::vector<double> losses;
    std::vector<double> errors;
    for (const auto& run : report.runs) {
      losses.push_back(run.result.trace[t].average_loss);
      errors.push_back(run.result.trace[t].error_rate_test.value_or(0.0));
    }
    RoundAggregate agg;
    agg.round = t + 1;
    std::tie(agg.loss_mean, agg.loss_std) = MeanAndStd(losses);
    std::tie(agg.error_mean, agg.error_std) = MeanAndStd(errors);
    report.aggregate.push_back(agg);
  }

  const int n = config.n_agents;
  report.per_agent_rho.assign(n, 0.0);
  for (const auto& run : report.runs) {
    for (int i = 0; i < n; ++i) {
      report.per_agent_rho[i] = std::max(report.per_agent_rho[i],
                                         run.result.ledger.agent(i).rho());
    }
  }
  report.total_rho =
      *std::max_element(report.per_agent_rho.begin(), report.per_agent_rho.end());
  if (config.algorithm == Algorithm::kNonPrivate || config.insecure_no_noise) {
    report.epsilon_spent = std::numeric_limits<double>::infinity();
    if (config.algorithm == Algorithm::kNonPrivate) report.total_rho = 0.0;
  } else {
    report.epsilon_spent = ZcdpToDp(ZcdpCost(report.total_rho), config.delta);
    if (report.epsilon_spent > config.epsilon + 1e-9) {
      report.warnings.push_back(
          "realised epsilon " + FormatDouble(report.epsilon_spent) +
          " exceeds the configured epsilon " + FormatDouble(config.epsilon) +
          " under calibration " + ToString(config.calibration) +
          "; use calibration = exact for a guarantee of exactly epsilon");
    }
  }
  return report;
}

void WriteReport(const RunReport& report, std::ostream& out) {
  const ExperimentConfig& c = report.config;
  {
    json j;
    j["type"] = "config";
    json fields = json::object();
    for (const auto& f : Fields()) fields[f.key] = f.get(c);
    j["config"] = fields;
    j["config_text"] = c.ToText();
    out << j.dump() << "\n";
  }
  for (const auto& run : report.runs) {
    for (const auto& t : run.result.trace) {
      json j;
      j["type"] = "round";
      j["seed"] = run.seed;
      j["round"] = t.round;
      j["average_loss"] = Number(t.average_loss);
      j["error_rate"] = t.error_rate_test ? Number(*t.error_rate_test)
                                          : json(nullptr);
      j["consensus_residual"] = Number(t.consensus_residual);
      j["broadcasts"] = t.broadcasts;
      if (!t.decisions.empty()) {
        std::vector<std::string> d;
        for (const auto x : t.decisions) d.push_back(ToString(x));
        j["svt_decisions"] = d;
      }
      j["cumulative_rho"] = t.cumulative_rho;
      out << j.dump() << "\n";
    }
  }
  for (const auto& a : report.aggregate) {
    json j;
    j["type"] = "aggregate";
    j["round"] = a.round;
    j["average_loss_mean"] = Number(a.loss_mean);
    j["average_loss_std"] = Number(a.loss_std);
    j["error_rate_mean"] = Number(a.error_mean);
    j["error_rate_std"] = Number(a.error_std);
    out << j.dump() << "\n";
  }
  json s;
  s["type"] = "summary";
  s["algorithm"] = ToString(c.algorithm);
  s["num_seeds"] = report.runs.size();
  s["lambda_hat"] = report.lambda_hat;
  s["dataset_sizes"] = report.dataset_sizes;
  json edges = json::array();
  for (const auto& [a, b] : report.edges) edges.push_back({a, b});
  s["edges"] = edges;
  s["plan"] = report.plan ? PlanJson(*report.plan) : json(nullptr);
  json privacy;
  privacy["per_agent_rho"] = report.per_agent_rho;
  privacy["total_rho"] = report.total_rho;
  privacy["delta"] = c.delta;
  privacy["epsilon"] = Number(report.epsilon_spent);
  s["privacy"] = privacy;
  json counts = json::array();
  for (const auto& run : report.runs) counts.push_back(run.result.broadcast_counts);
  s["broadcast_counts"] = counts;
  if (!report.aggregate.empty()) {
    s["final_average_loss_mean"] = Number(report.aggregate.back().loss_mean);
    s["final_error_rate_mean"] = Number(report.aggregate.back().error_mean);
  }
  s["warnings"] = report.warnings;
  out << s.dump() << "\n";
}

std::string PlanToJson(const BudgetPlan& plan) { return PlanJson(plan).dump(2); }

}  // namespace padmm
