#pragma once

// Experiment harness: answer-quality histograms by bitcount, alpha sweeps
// over the satisfiability threshold, per-instance solution bias and the
// repeated-query confidence bound.
//
// All randomness comes from ExperimentConfig::masterSeed. Instance k, try a
// is generated from mixSeed(masterSeed, {kInstanceStream, k, a}); its sampler
// seed is mixSeed(masterSeed, {kSamplerStream, k}). samplerConfig.masterSeed
// is ignored by the harness.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "annealsat/encoder.hpp"
#include "annealsat/errors.hpp"
#include "annealsat/postprocess.hpp"
#include "annealsat/rng.hpp"
#include "annealsat/samplers.hpp"
#include "annealsat/sat.hpp"

namespace annealsat {

enum class PostMode { None, Logical, Subproblem, Both };

inline std::string_view toString(PostMode m) {
  switch (m) {
    case PostMode::None: return "none";
    case PostMode::Logical: return "logical";
    case PostMode::Subproblem: return "subproblem";
    case PostMode::Both: return "both";
  }
  return "?";
}

inline PostMode parsePostMode(std::string_view s) {
  if (s == "none") return PostMode::None;
  if (s == "logical") return PostMode::Logical;
  if (s == "subproblem") return PostMode::Subproblem;
  if (s == "both") return PostMode::Both;
  throw ConfigError("unknown postprocessing \"" + std::string(s) + "\" (expected none, logical, subproblem or both)");
}

inline constexpr std::uint64_t kInstanceStream = 1;
inline constexpr std::uint64_t kSamplerStream = 2;
inline constexpr std::uint64_t kSweepStream = 3;

struct ExperimentConfig {
  std::size_t n = 10;
  std::size_t m = 42;
  std::vector<double> alphaGrid;  // sweep only
  std::size_t instances = 100;
  std::size_t readsPerInstance = 1000;
  SamplerKind sampler = SamplerKind::SimulatedAnnealing;
  SamplerConfig samplerConfig;
  PostMode postprocessing = PostMode::None;
  PostprocessConfig postConfig;
  std::uint64_t masterSeed = 0;
  unsigned threads = 1;
  std::size_t maxAttemptsPerInstance = 1000;

  void validate(bool sweep = false) const {
    if (n < 3) throw ConfigError("n must be >= 3");
    if (!sweep && m < 1) throw ConfigError("m must be >= 1");
    if (instances < 1) throw ConfigError("instances must be >= 1");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (maxAttemptsPerInstance < 1) throw ConfigError("maxAttemptsPerInstance must be >= 1");
    if (sweep) {
      if (alphaGrid.empty()) throw ConfigError("alpha grid is empty");
      for (std::size_t i = 0; i < alphaGrid.size(); ++i) {
        if (!(alphaGrid[i] > 0.0)) throw ConfigError("alpha values must be positive");
        if (i > 0 && !(alphaGrid[i] > alphaGrid[i - 1])) throw ConfigError("alpha grid must be strictly increasing");
      }
    }
    if (readsPerInstance > 0) {
      SamplerConfig probe = samplerConfig;
      probe.reads = readsPerInstance;
      probe.validate();
    }
    postConfig.validate();
  }
};

struct Instance {
  std::size_t id = 0;
  std::uint64_t seed = 0;
  std::size_t attempts = 1;
  CnfFormula formula;
};

struct RunRecord {
  std::size_t instanceId = 0;
  std::size_t readIndex = 0;
  std::size_t bitcount = 0;
  Classification classification = Classification::Incorrect;
  double energy = 0.0;
  std::string distinctSolutionKey;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct ClassCounts {
  std::size_t correct = 0;
  std::size_t fixable = 0;
  std::size_t incorrect = 0;

  std::size_t total() const noexcept { return correct + fixable + incorrect; }
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

struct QualityReport {
  std::map<std::size_t, ClassCounts> perBitcount;
  std::size_t totalAnswers = 0;
  std::size_t totalCorrect = 0;
  std::size_t instancesSolved = 0;
  std::map<std::size_t, std::size_t> perInstanceCorrect;
  std::map<std::size_t, std::uint64_t> instanceSeeds;

  friend bool operator==(const QualityReport&, const QualityReport&) = default;
};

struct AlphaPoint {
  double alpha = 0.0;
  std::size_t m = 0;
  std::size_t instances = 0;
  std::size_t satisfiable = 0;
  double satisfiableFraction = 0.0;
  double meanSolverEffort = 0.0;
  double samplerSuccessFraction = 0.0;

  friend bool operator==(const AlphaPoint&, const AlphaPoint&) = default;
};

struct AlphaSweepReport {
  std::size_t n = 0;
  std::vector<AlphaPoint> points;

  // Linear interpolation of where satisfiableFraction first drops to 0.5
  // or below; NaN if it never does.
  double crossingAlpha() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].satisfiableFraction > 0.5) continue;
      if (i == 0) return points[0].alpha;
      const auto& a = points[i - 1];
      const auto& b = points[i];
      const double t = (a.satisfiableFraction - 0.5) / (a.satisfiableFraction - b.satisfiableFraction);
      return a.alpha + t * (b.alpha - a.alpha);
    }
    return std::nan("");
  }

  // Grid point closest to `alpha` (earlier point on ties).
  std::size_t nearestIndex(double alpha) const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (std::abs(points[i].alpha - alpha) < std::abs(points[best].alpha - alpha)) best = i;
    }
    return best;
  }

  friend bool operator==(const AlphaSweepReport&, const AlphaSweepReport&) = default;
};

struct InstanceBias {
  std::size_t instanceId = 0;
  // Sorted by descending frequency, then ascending key.
  std::vector<std::pair<std::string, std::size_t>> frequencies;

  friend bool operator==(const InstanceBias&, const InstanceBias&) = default;
};

struct BiasReport {
  std::vector<InstanceBias> instances;

  friend bool operator==(const BiasReport&, const BiasReport&) = default;
};

struct InstanceSamples {
  Instance instance;
  QuboMatrix qubo;
  SampleSet samples;
};

namespace detail {

template <class Fn>
void parallelFor(std::size_t count, unsigned threads, Fn&& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
}

}  // namespace detail

// Generates the k-th satisfiable instance, regenerating with fresh seeds
// while DPLL says unsatisfiable.
inline Instance generateSatisfiableInstance(std::size_t n, std::size_t m, std::size_t id,
                                            std::uint64_t masterSeed, std::size_t maxAttempts) {
  for (std::size_t attempt = 0; attempt < maxAttempts; ++attempt) {
    const std::uint64_t seed = mixSeed(masterSeed, {kInstanceStream, id, attempt});
    CnfFormula f = generateRandom3Sat(n, m, seed);
    if (dpll(f).satisfiable) return Instance{id, seed, attempt + 1, std::move(f)};
  }
  throw ExperimentError("no satisfiable instance found for n=" + std::to_string(n) + ", m=" +
                        std::to_string(m) + " (instance " + std::to_string(id) + ") after " +
                        std::to_string(maxAttempts) + " attempts");
}

inline std::vector<InstanceSamples> sampleInstances(const ExperimentConfig& config) {
  config.validate();
  std::vector<Instance> instances;
  instances.reserve(config.instances);
  for (std::size_t id = 0; id < config.instances; ++id) {
    instances.push_back(
        generateSatisfiableInstance(config.n, config.m, id, config.masterSeed, config.maxAttemptsPerInstance));
  }
  std::vector<InstanceSamples> out;
  out.reserve(instances.size());
  for (auto& inst : instances) {
    QuboMatrix q = encode(inst.formula);
    out.push_back({std::move(inst), std::move(q), SampleSet{{}, 0}});
    out.back().samples.sourceDimension = out.back().qubo.dimension();
  }
  if (config.readsPerInstance == 0) return out;
  detail::parallelFor(out.size(), config.threads, [&](std::size_t i) {
    SamplerConfig sc = config.samplerConfig;
    sc.reads = config.readsPerInstance;
    sc.masterSeed = mixSeed(config.masterSeed, {kSamplerStream, out[i].instance.id});
    sc.threads = 1;
    out[i].samples = sample(out[i].qubo, config.sampler, sc);
  });
  return out;
}

// The answer that gets classified under a postprocessing mode. Logical
// repair is only applied to answers that are not already Correct.
inline Bitstring postprocessAnswer(const Bitstring& raw, const CnfFormula& formula, const QuboMatrix& q,
                                   PostMode mode, const PostprocessConfig& pc) {
  Bitstring x = raw;
  if (mode == PostMode::Subproblem || mode == PostMode::Both) x = subproblemPostprocess(q, x, pc);
  if ((mode == PostMode::Logical || mode == PostMode::Both) && classify(x, formula) != Classification::Correct) {
    x = logicalPostprocess(x, formula);
  }
  return x;
}

inline RunRecord assessAnswer(const Sample& s, const InstanceSamples& inst, PostMode mode, const PostprocessConfig& pc) {
  const Bitstring x = postprocessAnswer(s.x, inst.instance.formula, inst.qubo, mode, pc);
  const DecodedAnswer d = decode(x, inst.instance.formula);
  return RunRecord{inst.instance.id, s.readIndex, x.count(), d.classification, quboEnergy(inst.qubo, x),
                   d.partial.key()};
}

// Records ordered by (instance, read).
inline std::vector<RunRecord> assessAnswers(const std::vector<InstanceSamples>& data, PostMode mode,
                                            const PostprocessConfig& pc, unsigned threads = 1) {
  std::vector<std::vector<RunRecord>> per(data.size());
  detail::parallelFor(data.size(), threads, [&](std::size_t i) {
    per[i].reserve(data[i].samples.samples.size());
    for (const auto& s : data[i].samples.samples) per[i].push_back(assessAnswer(s, data[i], mode, pc));
  });
  std::vector<RunRecord> out;
  for (auto& v : per) out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  return out;
}

inline QualityReport aggregateQuality(const std::vector<InstanceSamples>& data, const std::vector<RunRecord>& records) {
  QualityReport r;
  for (const auto& d : data) {
    r.perInstanceCorrect[d.instance.id] = 0;
    r.instanceSeeds[d.instance.id] = d.instance.seed;
  }
  for (const auto& rec : records) {
    auto& c = r.perBitcount[rec.bitcount];
    switch (rec.classification) {
      case Classification::Correct:
        ++c.correct;
        ++r.totalCorrect;
        ++r.perInstanceCorrect[rec.instanceId];
        break;
      case Classification::FixableByLogical: ++c.fixable; break;
      case Classification::Incorrect: ++c.incorrect; break;
    }
    ++r.totalAnswers;
  }
  for (const auto& [id, correct] : r.perInstanceCorrect) r.instancesSolved += correct > 0;
  return r;
}

inline QualityReport runQualityExperiment(const ExperimentConfig& config) {
  const auto data = sampleInstances(config);
  return aggregateQuality(data, assessAnswers(data, config.postprocessing, config.postConfig, config.threads));
}

// instancesSolved when only the first r reads of each instance are kept,
// for r = 1..readsPerInstance.
inline std::vector<std::size_t> instancesSolvedByPrefix(const std::vector<RunRecord>& records, std::size_t reads) {
  std::map<std::size_t, std::size_t> firstCorrect;  // instance -> earliest Correct read
  for (const auto& rec : records) {
    firstCorrect.try_emplace(rec.instanceId, reads);
    if (rec.classification == Classification::Correct) {
      auto& f = firstCorrect[rec.instanceId];
      f = std::min(f, rec.readIndex);
    }
  }
  std::vector<std::size_t> solved(reads, 0);
  for (const auto& [id, first] : firstCorrect) {
    for (std::size_t r = first; r < reads; ++r) ++solved[r];
  }
  return solved;
}

inline BiasReport biasFromRecords(const std::vector<InstanceSamples>& data, const std::vector<RunRecord>& records) {
  std::map<std::size_t, std::map<std::string, std::size_t>> counts;
  for (const auto& d : data) counts[d.instance.id];
  for (const auto& rec : records) {
    if (rec.classification == Classification::Correct) ++counts[rec.instanceId][rec.distinctSolutionKey];
  }
  BiasReport report;
  for (auto& [id, table] : counts) {
    InstanceBias b{id, {table.begin(), table.end()}};
    std::stable_sort(b.frequencies.begin(), b.frequencies.end(),
                     [](const auto& a, const auto& c) { return a.second > c.second; });
    report.instances.push_back(std::move(b));
  }
  return report;
}

// Frequency of each distinct Correct decoded assignment, per instance.
inline BiasReport solutionBias(const ExperimentConfig& config) {
  const auto data = sampleInstances(config);
  return biasFromRecords(data, assessAnswers(data, config.postprocessing, config.postConfig, config.threads));
}

inline AlphaSweepReport runAlphaSweep(const ExperimentConfig& config) {
  config.validate(true);
  AlphaSweepReport report;
  report.n = config.n;
  for (std::size_t a = 0; a < config.alphaGrid.size(); ++a) {
    const double alpha = config.alphaGrid[a];
    const auto m = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(alpha * static_cast<double>(config.n))));
    std::vector<std::uint8_t> sat(config.instances, 0);
    std::vector<std::uint64_t> effort(config.instances, 0);
    std::vector<std::uint8_t> solved(config.instances, 0);
    detail::parallelFor(config.instances, config.threads, [&](std::size_t i) {
      const std::uint64_t seed = mixSeed(config.masterSeed, {kSweepStream, a, i});
      CnfFormula f = generateRandom3Sat(config.n, m, seed);
      const auto r = dpll(f);
      sat[i] = r.satisfiable;
      effort[i] = r.stats.effort();
      if (!r.satisfiable || config.readsPerInstance == 0) return;
      InstanceSamples inst{Instance{i, seed, 1, std::move(f)}, QuboMatrix{}, SampleSet{}};
      inst.qubo = encode(inst.instance.formula);
      SamplerConfig sc = config.samplerConfig;
      sc.reads = config.readsPerInstance;
      sc.masterSeed = mixSeed(seed, kSamplerStream);
      sc.threads = 1;
      inst.samples = sample(inst.qubo, config.sampler, sc);
      for (const auto& s : inst.samples.samples) {
        if (assessAnswer(s, inst, config.postprocessing, config.postConfig).classification == Classification::Correct) {
          solved[i] = 1;
          break;
        }
      }
    });
    AlphaPoint p;
    p.alpha = alpha;
    p.m = m;
    p.instances = config.instances;
    double effortSum = 0.0;
    std::size_t solvedCount = 0;
    for (std::size_t i = 0; i < config.instances; ++i) {
      p.satisfiable += sat[i];
      effortSum += static_cast<double>(effort[i]);
      solvedCount += solved[i];
    }
    p.satisfiableFraction = static_cast<double>(p.satisfiable) / static_cast<double>(config.instances);
    p.meanSolverEffort = effortSum / static_cast<double>(config.instances);
    p.samplerSuccessFraction =
        p.satisfiable == 0 ? 0.0 : static_cast<double>(solvedCount) / static_cast<double>(p.satisfiable);
    report.points.push_back(p);
  }
  return report;
}

// Smallest k with (1 - p)^k <= epsilon.
inline std::size_t queriesForConfidence(double p, double epsilon) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("success probability must lie in (0, 1)");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("failure bound must lie in (0, 1)");
  const double ratio = std::log(epsilon) / std::log1p(-p);
  // Absorb rounding when the ratio is an exact integer (p = 0.5, eps = 0.25).
  auto k = static_cast<std::size_t>(std::ceil(ratio * (1.0 - 1e-12)));
  return std::max<std::size_t>(k, 1);
}

}  // namespace annealsat
