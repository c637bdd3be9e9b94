#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "annealsat/experiments.hpp"
#include "annealsat/report_io.hpp"

using namespace annealsat;

namespace {

ExperimentConfig smallConfig() {
  ExperimentConfig c;
  c.n = 5;
  c.m = 4;
  c.instances = 6;
  c.readsPerInstance = 20;
  c.samplerConfig.sweeps = 50;
  c.masterSeed = 77;
  return c;
}

std::size_t queriesByProduct(double p, double eps) {
  long double fail = 1.0L;
  std::size_t k = 0;
  while (fail > eps) {
    fail *= (1.0L - p);
    ++k;
  }
  return k;
}

std::filesystem::path tempPrefix(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("annealsat_test_" + name);
}

}  // namespace

TEST(QueriesForConfidence, Examples) {
  EXPECT_EQ(queriesForConfidence(0.25, 1e-12), 97U);
  EXPECT_EQ(queriesForConfidence(0.5, 0.5), 1U);
  EXPECT_EQ(queriesForConfidence(0.9, 1e-12), 12U);
  EXPECT_EQ(queriesForConfidence(0.5, 0.25), 2U);
}

TEST(QueriesForConfidence, DomainErrors) {
  EXPECT_THROW(queriesForConfidence(0.0, 0.1), DomainError);
  EXPECT_THROW(queriesForConfidence(1.0, 0.1), DomainError);
  EXPECT_THROW(queriesForConfidence(0.5, 0.0), DomainError);
  EXPECT_THROW(queriesForConfidence(0.5, 1.0), DomainError);
}

TEST(QueriesForConfidence, MatchesProductLoopAndIsMonotone) {
  const double eps[] = {0.3, 1e-2, 1e-5, 1e-9, 1e-12};
  for (double e : eps) {
    std::size_t prev = std::numeric_limits<std::size_t>::max();
    for (int i = 1; i < 100; ++i) {
      const double p = i / 100.0 + 0.003;
      const auto k = queriesForConfidence(p, e);
      EXPECT_EQ(k, queriesByProduct(p, e)) << p << " " << e;
      EXPECT_LE(k, prev);
      prev = k;
    }
  }
  for (int i = 1; i < 100; ++i) {
    const double p = i / 100.0;
    EXPECT_LE(queriesForConfidence(p, 1e-3), queriesForConfidence(p, 1e-6));
  }
}

TEST(Quality, BruteSamplerAnswersAllCorrect) {
  auto c = smallConfig();
  c.sampler = SamplerKind::BruteForce;
  const auto r = runQualityExperiment(c);
  EXPECT_EQ(r.totalAnswers, c.instances * c.readsPerInstance);
  EXPECT_EQ(r.totalCorrect, r.totalAnswers);
  EXPECT_EQ(r.instancesSolved, c.instances);
  for (const auto& [bitcount, counts] : r.perBitcount) EXPECT_EQ(bitcount, c.m);
}

TEST(Quality, ZeroReadsGivesEmptyReport) {
  auto c = smallConfig();
  c.readsPerInstance = 0;
  const auto r = runQualityExperiment(c);
  EXPECT_EQ(r.totalAnswers, 0U);
  EXPECT_EQ(r.totalCorrect, 0U);
  EXPECT_EQ(r.instancesSolved, 0U);
  EXPECT_TRUE(r.perBitcount.empty());
  EXPECT_EQ(qualityCsv(r), "bitcount,correct,fixable,incorrect\n");
}

TEST(Quality, CountsPartitionAnswersAndBitcountsBounded) {
  auto c = smallConfig();
  c.n = 10;
  c.m = 42;
  c.instances = 3;
  c.readsPerInstance = 30;
  for (auto mode : {PostMode::None, PostMode::Logical, PostMode::Subproblem, PostMode::Both}) {
    c.postprocessing = mode;
    const auto r = runQualityExperiment(c);
    std::size_t sum = 0;
    for (const auto& [bitcount, counts] : r.perBitcount) {
      EXPECT_LE(bitcount, 3 * c.m);
      sum += counts.total();
    }
    EXPECT_EQ(sum, c.instances * c.readsPerInstance);
    std::size_t perInstance = 0;
    for (const auto& [id, k] : r.perInstanceCorrect) perInstance += k;
    EXPECT_EQ(perInstance, r.totalCorrect);
  }
}

TEST(Quality, InstancesAreSatisfiableAndSeedsRecorded) {
  auto c = smallConfig();
  c.n = 10;
  c.m = 45;
  const auto data = sampleInstances(c);
  ASSERT_EQ(data.size(), c.instances);
  for (const auto& d : data) {
    EXPECT_TRUE(dpll(d.instance.formula).satisfiable);
    EXPECT_EQ(generateRandom3Sat(10, 45, d.instance.seed), d.instance.formula);
  }
}

TEST(Quality, DeterministicAndThreadIndependent) {
  auto c = smallConfig();
  c.n = 8;
  c.m = 30;
  const auto a = runQualityExperiment(c);
  c.threads = 3;
  const auto b = runQualityExperiment(c);
  EXPECT_EQ(a, b);
  EXPECT_EQ(qualityCsv(a), qualityCsv(b));
}

TEST(Quality, RegenerationGivesUp) {
  auto c = smallConfig();
  c.n = 3;
  c.m = 200;
  c.maxAttemptsPerInstance = 5;
  EXPECT_THROW(runQualityExperiment(c), ExperimentError);
}

TEST(Quality, PostprocessingNeverLosesCorrectAnswersOnSameSamples) {
  auto c = smallConfig();
  c.n = 10;
  c.m = 42;
  c.instances = 4;
  c.readsPerInstance = 40;
  c.samplerConfig.sweeps = 30;
  const auto data = sampleInstances(c);
  const auto raw = aggregateQuality(data, assessAnswers(data, PostMode::None, c.postConfig));
  const auto logical = aggregateQuality(data, assessAnswers(data, PostMode::Logical, c.postConfig));
  const auto both = aggregateQuality(data, assessAnswers(data, PostMode::Both, c.postConfig));
  EXPECT_GE(logical.totalCorrect, raw.totalCorrect);
  // Logical repair turns exactly the fixable raw answers into correct ones.
  std::size_t fixable = 0;
  for (const auto& [b, counts] : raw.perBitcount) fixable += counts.fixable;
  EXPECT_EQ(logical.totalCorrect, raw.totalCorrect + fixable);
  EXPECT_GE(both.totalCorrect, raw.totalCorrect);
}

TEST(Quality, SolvedInstancesMonotoneInReads) {
  auto c = smallConfig();
  c.n = 10;
  c.m = 42;
  c.instances = 5;
  c.readsPerInstance = 25;
  c.samplerConfig.sweeps = 20;
  const auto data = sampleInstances(c);
  const auto records = assessAnswers(data, PostMode::None, c.postConfig);
  const auto solved = instancesSolvedByPrefix(records, c.readsPerInstance);
  ASSERT_EQ(solved.size(), c.readsPerInstance);
  for (std::size_t r = 1; r < solved.size(); ++r) EXPECT_LE(solved[r - 1], solved[r]);
  EXPECT_EQ(solved.back(), aggregateQuality(data, records).instancesSolved);
}

TEST(Bias, BruteSamplerKeysAreDecodedGroundStates) {
  auto c = smallConfig();
  c.sampler = SamplerKind::BruteForce;
  c.instances = 3;
  c.readsPerInstance = 200;
  const auto data = sampleInstances(c);
  const auto records = assessAnswers(data, PostMode::None, c.postConfig);
  const auto report = biasFromRecords(data, records);
  ASSERT_EQ(report.instances.size(), data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto oracle = bruteForceMinimize(data[i].qubo);
    ASSERT_LE(oracle.argminMasks.size(), c.readsPerInstance);
    std::set<std::string> expected;
    for (const auto& x : oracle.argmins()) expected.insert(decode(x, data[i].instance.formula).partial.key());
    std::set<std::string> keys;
    std::size_t total = 0;
    for (const auto& [k, freq] : report.instances[i].frequencies) {
      keys.insert(k);
      total += freq;
    }
    EXPECT_EQ(keys, expected);
    EXPECT_EQ(total, c.readsPerInstance);
    const auto& f = report.instances[i].frequencies;
    for (std::size_t j = 1; j < f.size(); ++j) EXPECT_GE(f[j - 1].second, f[j].second);
  }
}

TEST(Bias, UniqueSolutionGivesAtMostOneKey) {
  // x0 ^ x1 ^ x2 forced True: exactly one satisfying assignment.
  const CnfFormula f(3, {{pos(0), pos(0), pos(0)}, {pos(1), pos(1), pos(1)}, {pos(2), pos(2), pos(2)}});
  InstanceSamples inst{Instance{0, 0, 1, f}, encode(f), SampleSet{}};
  SamplerConfig sc;
  sc.reads = 50;
  sc.sweeps = 100;
  inst.samples = simulatedAnnealingSample(inst.qubo, sc);
  std::vector<InstanceSamples> data;
  data.push_back(inst);
  const auto report = biasFromRecords(data, assessAnswers(data, PostMode::None, {}));
  EXPECT_LE(report.instances.at(0).frequencies.size(), 1U);
}

TEST(Sweep, ExtremesAndShape) {
  ExperimentConfig c;
  c.n = 10;
  c.alphaGrid = {1.0, 4.3, 8.0};
  c.instances = 60;
  c.readsPerInstance = 2;
  c.samplerConfig.sweeps = 50;
  c.masterSeed = 5;
  const auto r = runAlphaSweep(c);
  ASSERT_EQ(r.points.size(), 3U);
  EXPECT_EQ(r.points[0].m, 10U);
  EXPECT_EQ(r.points[1].m, 43U);
  EXPECT_GE(r.points[0].satisfiableFraction, 0.95);
  EXPECT_LE(r.points[2].satisfiableFraction, 0.05);
  for (const auto& p : r.points) {
    EXPECT_GE(p.samplerSuccessFraction, 0.0);
    EXPECT_LE(p.samplerSuccessFraction, 1.0);
  }
}

TEST(Sweep, RejectsBadGrid) {
  ExperimentConfig c;
  c.alphaGrid = {2.0, 2.0};
  EXPECT_THROW(runAlphaSweep(c), ConfigError);
  c.alphaGrid = {};
  EXPECT_THROW(runAlphaSweep(c), ConfigError);
}

TEST(Sweep, CrossingInterpolation) {
  AlphaSweepReport r;
  r.points = {{1.0, 0, 0, 0, 1.0, 0, 0}, {2.0, 0, 0, 0, 0.75, 0, 0}, {3.0, 0, 0, 0, 0.25, 0, 0}};
  EXPECT_DOUBLE_EQ(r.crossingAlpha(), 2.5);
  EXPECT_EQ(r.nearestIndex(2.5), 1U);
  r.points.resize(2);
  EXPECT_TRUE(std::isnan(r.crossingAlpha()));
}

TEST(Reports, EmptyCsvIsHeaderOnly) {
  EXPECT_EQ(sweepCsv({}), "alpha,sat_fraction,mean_effort,sampler_success\n");
  EXPECT_EQ(biasCsv({}), "instance_id,solution_key,frequency\n");
}

TEST(Reports, SyntheticQualityRowsSorted) {
  QualityReport r;
  r.perBitcount[40] = {1, 2, 3};
  r.perBitcount[3] = {0, 0, 9};
  r.perBitcount[42] = {7, 0, 0};
  EXPECT_EQ(qualityCsv(r), "bitcount,correct,fixable,incorrect\n3,0,0,9\n40,1,2,3\n42,7,0,0\n");
}

TEST(Reports, JsonRoundTrip) {
  auto c = smallConfig();
  const auto data = sampleInstances(c);
  const auto records = assessAnswers(data, PostMode::Logical, c.postConfig);
  const auto quality = aggregateQuality(data, records);
  const auto bias = biasFromRecords(data, records);
  ExperimentConfig sc = c;
  sc.alphaGrid = {1.0, 2.0};
  sc.instances = 10;
  const auto sweep = runAlphaSweep(sc);

  const auto prefix = tempPrefix("roundtrip").string();
  emitReports(quality, prefix + "_q", c);
  EXPECT_EQ(readReportJson<QualityReport>(prefix + "_q.json"), quality);
  EXPECT_EQ(readTextFile(prefix + "_q.csv"), qualityCsv(quality));
  emitReports(bias, prefix + "_b", c);
  EXPECT_EQ(readReportJson<BiasReport>(prefix + "_b.json"), bias);
  emitReports(sweep, prefix + "_s", sc);
  EXPECT_EQ(readReportJson<AlphaSweepReport>(prefix + "_s.json"), sweep);

  const auto doc = json::parse(readTextFile(prefix + "_q.json"));
  EXPECT_EQ(doc.at("config").get<ExperimentConfig>().masterSeed, c.masterSeed);
  EXPECT_EQ(doc.at("report").at("instances").size(), c.instances);
}

TEST(Reports, UnwritablePathReportsPath) {
  try {
    writeTextFile("/nonexistent-dir/x.csv", "a");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/x.csv"), std::string::npos);
  }
}
