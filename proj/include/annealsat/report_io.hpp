#pragma once

// CSV and JSON persistence for experiment outputs. emitReports(report,
// prefix, config) writes <prefix>.csv and <prefix>.json; the JSON carries
// the full report plus an echo of the configuration.

#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include <nlohmann/json.hpp>

#include "annealsat/errors.hpp"
#include "annealsat/experiments.hpp"
#include "annealsat/qubo_io.hpp"
#include "annealsat/samplers.hpp"

namespace annealsat {

using json = nlohmann::ordered_json;

// ---- CSV ------------------------------------------------------------------

inline std::string qualityCsv(const QualityReport& r) {
  std::string out = "bitcount,correct,fixable,incorrect\n";
  for (const auto& [bitcount, c] : r.perBitcount) {
    out += std::to_string(bitcount) + "," + std::to_string(c.correct) + "," + std::to_string(c.fixable) + "," +
           std::to_string(c.incorrect) + "\n";
  }
  return out;
}

inline std::string sweepCsv(const AlphaSweepReport& r) {
  std::string out = "alpha,sat_fraction,mean_effort,sampler_success\n";
  for (const auto& p : r.points) {
    out += formatDouble(p.alpha) + "," + formatDouble(p.satisfiableFraction) + "," + formatDouble(p.meanSolverEffort) +
           "," + formatDouble(p.samplerSuccessFraction) + "\n";
  }
  return out;
}

inline std::string biasCsv(const BiasReport& r) {
  std::string out = "instance_id,solution_key,frequency\n";
  for (const auto& inst : r.instances) {
    for (const auto& [key, freq] : inst.frequencies) {
      out += std::to_string(inst.instanceId) + "," + key + "," + std::to_string(freq) + "\n";
    }
  }
  return out;
}

// ---- JSON -----------------------------------------------------------------

inline void to_json(json& j, const SamplerConfig& c) {
  j = json{{"reads", c.reads},           {"sweeps", c.sweeps},         {"beta_start", c.betaStart},
           {"beta_end", c.betaEnd},      {"tabu_tenure", c.tabuTenure}, {"master_seed", c.masterSeed},
           {"threads", c.threads}};
}

inline void from_json(const json& j, SamplerConfig& c) {
  j.at("reads").get_to(c.reads);
  j.at("sweeps").get_to(c.sweeps);
  j.at("beta_start").get_to(c.betaStart);
  j.at("beta_end").get_to(c.betaEnd);
  j.at("tabu_tenure").get_to(c.tabuTenure);
  j.at("master_seed").get_to(c.masterSeed);
  c.threads = j.value("threads", 1U);
}

inline void to_json(json& j, const ExperimentConfig& c) {
  j = json{{"n", c.n},
           {"m", c.m},
           {"alpha_grid", c.alphaGrid},
           {"instances", c.instances},
           {"reads_per_instance", c.readsPerInstance},
           {"sampler", std::string(toString(c.sampler))},
           {"sampler_config", c.samplerConfig},
           {"postprocessing", std::string(toString(c.postprocessing))},
           {"block_size", c.postConfig.blockSize},
           {"max_passes", c.postConfig.maxPasses},
           {"master_seed", c.masterSeed},
           {"max_attempts_per_instance", c.maxAttemptsPerInstance}};
}

inline void from_json(const json& j, ExperimentConfig& c) {
  j.at("n").get_to(c.n);
  j.at("m").get_to(c.m);
  j.at("alpha_grid").get_to(c.alphaGrid);
  j.at("instances").get_to(c.instances);
  j.at("reads_per_instance").get_to(c.readsPerInstance);
  c.sampler = parseSamplerKind(j.at("sampler").get<std::string>());
  j.at("sampler_config").get_to(c.samplerConfig);
  c.postprocessing = parsePostMode(j.at("postprocessing").get<std::string>());
  j.at("block_size").get_to(c.postConfig.blockSize);
  j.at("max_passes").get_to(c.postConfig.maxPasses);
  j.at("master_seed").get_to(c.masterSeed);
  j.at("max_attempts_per_instance").get_to(c.maxAttemptsPerInstance);
}

inline void to_json(json& j, const QualityReport& r) {
  json bins = json::array();
  for (const auto& [b, c] : r.perBitcount) {
    bins.push_back({{"bitcount", b}, {"correct", c.correct}, {"fixable", c.fixable}, {"incorrect", c.incorrect}});
  }
  json instances = json::array();
  for (const auto& [id, correct] : r.perInstanceCorrect) {
    auto seed = r.instanceSeeds.find(id);
    instances.push_back({{"instance_id", id},
                         {"seed", seed == r.instanceSeeds.end() ? 0 : seed->second},
                         {"correct", correct}});
  }
  j = json{{"total_answers", r.totalAnswers},
           {"total_correct", r.totalCorrect},
           {"instances_solved", r.instancesSolved},
           {"per_bitcount", bins},
           {"instances", instances}};
}

inline void from_json(const json& j, QualityReport& r) {
  r = QualityReport{};
  j.at("total_answers").get_to(r.totalAnswers);
  j.at("total_correct").get_to(r.totalCorrect);
  j.at("instances_solved").get_to(r.instancesSolved);
  for (const auto& b : j.at("per_bitcount")) {
    r.perBitcount[b.at("bitcount").get<std::size_t>()] =
        ClassCounts{b.at("correct").get<std::size_t>(), b.at("fixable").get<std::size_t>(),
                    b.at("incorrect").get<std::size_t>()};
  }
  for (const auto& inst : j.at("instances")) {
    const auto id = inst.at("instance_id").get<std::size_t>();
    r.perInstanceCorrect[id] = inst.at("correct").get<std::size_t>();
    r.instanceSeeds[id] = inst.at("seed").get<std::uint64_t>();
  }
}

inline void to_json(json& j, const AlphaSweepReport& r) {
  json points = json::array();
  for (const auto& p : r.points) {
    points.push_back({{"alpha", p.alpha},
                      {"m", p.m},
                      {"instances", p.instances},
                      {"satisfiable", p.satisfiable},
                      {"sat_fraction", p.satisfiableFraction},
                      {"mean_effort", p.meanSolverEffort},
                      {"sampler_success", p.samplerSuccessFraction}});
  }
  const double crossing = r.crossingAlpha();
  j = json{{"n", r.n}, {"crossing_alpha", std::isnan(crossing) ? json(nullptr) : json(crossing)}, {"points", points}};
}

inline void from_json(const json& j, AlphaSweepReport& r) {
  r = AlphaSweepReport{};
  j.at("n").get_to(r.n);
  for (const auto& p : j.at("points")) {
    AlphaPoint a;
    p.at("alpha").get_to(a.alpha);
    p.at("m").get_to(a.m);
    p.at("instances").get_to(a.instances);
    p.at("satisfiable").get_to(a.satisfiable);
    p.at("sat_fraction").get_to(a.satisfiableFraction);
    p.at("mean_effort").get_to(a.meanSolverEffort);
    p.at("sampler_success").get_to(a.samplerSuccessFraction);
    r.points.push_back(a);
  }
}

inline void to_json(json& j, const BiasReport& r) {
  json instances = json::array();
  for (const auto& inst : r.instances) {
    json table = json::array();
    for (const auto& [key, freq] : inst.frequencies) table.push_back({{"solution_key", key}, {"frequency", freq}});
    instances.push_back({{"instance_id", inst.instanceId}, {"solutions", table}});
  }
  j = json{{"instances", instances}};
}

inline void from_json(const json& j, BiasReport& r) {
  r = BiasReport{};
  for (const auto& inst : j.at("instances")) {
    InstanceBias b;
    inst.at("instance_id").get_to(b.instanceId);
    for (const auto& s : inst.at("solutions")) {
      b.frequencies.emplace_back(s.at("solution_key").get<std::string>(), s.at("frequency").get<std::size_t>());
    }
    r.instances.push_back(std::move(b));
  }
}

inline json sampleSetJson(const SampleSet& set) {
  json samples = json::array();
  for (const auto& s : set.samples) {
    samples.push_back({{"read", s.readIndex}, {"bits", s.x.toString()}, {"energy", s.energy}});
  }
  return json{{"dimension", set.sourceDimension}, {"samples", samples}};
}

// ---- files ----------------------------------------------------------------

inline void writeTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

inline std::string readTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

namespace detail {
inline std::string csvFor(const QualityReport& r) { return qualityCsv(r); }
inline std::string csvFor(const AlphaSweepReport& r) { return sweepCsv(r); }
inline std::string csvFor(const BiasReport& r) { return biasCsv(r); }
}  // namespace detail

template <class Report>
void emitReports(const Report& report, const std::string& prefix, const ExperimentConfig& config) {
  writeTextFile(prefix + ".csv", detail::csvFor(report));
  const json doc{{"config", config}, {"report", report}};
  writeTextFile(prefix + ".json", doc.dump(2) + "\n");
}

template <class Report>
Report readReportJson(const std::string& path) {
  return json::parse(readTextFile(path)).at("report").template get<Report>();
}

}  // namespace annealsat
