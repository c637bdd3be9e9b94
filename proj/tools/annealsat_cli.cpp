// annealsat: command line front end for the 3SAT -> QUBO toolkit.
//
//   annealsat generate   --n 10 --m 42 --seed 1 [--out f.cnf]
//   annealsat encode     --input f.cnf [--out f.qubo]
//   annealsat solve      --input f.cnf|f.qubo [--sampler sa] [--out s.json]
//   annealsat quality    --n 10 --m 42 --instances 100 --reads 1000 --out q
//   annealsat sweep      --n 12 --alpha-grid 1,1.5,...,8 --out s
//   annealsat bias       --n 10 --m 42 --out b
//   annealsat confidence --p 0.25 --epsilon 1e-12

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "annealsat/annealsat.hpp"

namespace {

using namespace annealsat;

struct Options {
  std::size_t n = 10;
  std::size_t m = 42;
  std::vector<double> alphaGrid;
  std::size_t instances = 100;
  std::size_t reads = 1000;
  std::string sampler = "sa";
  std::size_t sweeps = 1000;
  double betaStart = 0.1;
  double betaEnd = 10.0;
  std::size_t tabuTenure = 8;
  std::string post = "none";
  std::size_t blockSize = 12;
  std::size_t maxPasses = 10;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string input;
  std::string out;
  double p = 0.25;
  double epsilon = 1e-12;
};

void addSamplerFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--reads", o.reads, "Answers per instance")->capture_default_str();
  cmd->add_option("--sampler", o.sampler, "sa | tabu | brute")->capture_default_str();
  cmd->add_option("--sweeps", o.sweeps, "Sweeps (SA) or moves (tabu) per read")->capture_default_str();
  cmd->add_option("--beta-start", o.betaStart, "Initial inverse temperature")->capture_default_str();
  cmd->add_option("--beta-end", o.betaEnd, "Final inverse temperature")->capture_default_str();
  cmd->add_option("--tabu-tenure", o.tabuTenure, "Tabu tenure in moves")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  cmd->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
}

void addPostFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--post", o.post, "none | logical | subproblem | both")->capture_default_str();
  cmd->add_option("--block-size", o.blockSize, "Subproblem block size (<= 20)")->capture_default_str();
  cmd->add_option("--max-passes", o.maxPasses, "Subproblem passes")->capture_default_str();
}

void addExperimentFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "Variables")->capture_default_str();
  cmd->add_option("--m", o.m, "Clauses")->capture_default_str();
  cmd->add_option("--instances", o.instances, "Instances")->capture_default_str();
  addSamplerFlags(cmd, o);
  addPostFlags(cmd, o);
  cmd->add_option("--out", o.out, "Output prefix, writes <out>.csv and <out>.json");
}

SamplerConfig samplerConfig(const Options& o) {
  SamplerConfig c;
  c.reads = o.reads;
  c.sweeps = o.sweeps;
  c.betaStart = o.betaStart;
  c.betaEnd = o.betaEnd;
  c.tabuTenure = o.tabuTenure;
  c.masterSeed = o.seed;
  c.threads = o.threads;
  return c;
}

ExperimentConfig experimentConfig(const Options& o) {
  ExperimentConfig c;
  c.n = o.n;
  c.m = o.m;
  c.alphaGrid = o.alphaGrid;
  c.instances = o.instances;
  c.readsPerInstance = o.reads;
  c.sampler = parseSamplerKind(o.sampler);
  c.samplerConfig = samplerConfig(o);
  c.samplerConfig.reads = std::max<std::size_t>(o.reads, 1);
  c.postprocessing = parsePostMode(o.post);
  c.postConfig = PostprocessConfig{o.blockSize, o.maxPasses};
  c.masterSeed = o.seed;
  c.threads = o.threads;
  return c;
}

void writeOrPrint(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    writeTextFile(path, text);
  }
}

template <class Report>
void emit(const Report& report, const Options& o, const ExperimentConfig& config) {
  if (o.out.empty()) {
    std::cout << detail::csvFor(report);
  } else {
    emitReports(report, o.out, config);
  }
}

bool looksLikeQubo(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text.compare(pos, 3, "dim") == 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3SAT -> QUBO encoding, classical sampling and answer-quality experiments"};
  app.require_subcommand(1);
  Options o;

  auto* generate = app.add_subcommand("generate", "Emit a random 3SAT instance as DIMACS");
  generate->add_option("--n", o.n, "Variables")->capture_default_str();
  generate->add_option("--m", o.m, "Clauses")->capture_default_str();
  generate->add_option("--seed", o.seed, "Seed")->capture_default_str();
  generate->add_option("--out", o.out, "Output file (default stdout)");

  auto* encodeCmd = app.add_subcommand("encode", "Encode a DIMACS 3SAT file as a QUBO file");
  encodeCmd->add_option("--input", o.input, "DIMACS file")->required();
  encodeCmd->add_option("--out", o.out, "Output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "Sample a QUBO or DIMACS file, print SampleSet JSON");
  solve->add_option("--input", o.input, "DIMACS or QUBO file")->required();
  addSamplerFlags(solve, o);
  addPostFlags(solve, o);
  solve->add_option("--out", o.out, "Output file (default stdout)");

  auto* quality = app.add_subcommand("quality", "Answer quality histogram by bitcount");
  addExperimentFlags(quality, o);

  auto* sweep = app.add_subcommand("sweep", "Satisfiability / effort / sampler success across alpha");
  addExperimentFlags(sweep, o);
  sweep->add_option("--alpha-grid", o.alphaGrid, "Comma separated, strictly increasing alpha values")
      ->delimiter(',')
      ->required();

  auto* bias = app.add_subcommand("bias", "Frequency of distinct correct solutions per instance");
  addExperimentFlags(bias, o);

  auto* confidence = app.add_subcommand("confidence", "Queries needed for 1 - epsilon confidence");
  confidence->add_option("--p", o.p, "Per-query success probability")->capture_default_str();
  confidence->add_option("--epsilon", o.epsilon, "Allowed failure probability")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      writeOrPrint(o.out, writeDimacs(generateRandom3Sat(o.n, o.m, o.seed)));
    } else if (*encodeCmd) {
      writeOrPrint(o.out, writeQubo(encode(parseDimacs(readTextFile(o.input)))));
    } else if (*solve) {
      const std::string text = readTextFile(o.input);
      std::optional<CnfFormula> formula;
      QuboMatrix q;
      if (looksLikeQubo(text)) {
        q = parseQubo(text);
      } else {
        formula = parseDimacs(text);
        q = encode(*formula);
      }
      const SampleSet set = sample(q, parseSamplerKind(o.sampler), samplerConfig(o));
      json doc = sampleSetJson(set);
      if (formula) {
        const auto mode = parsePostMode(o.post);
        const PostprocessConfig pc{o.blockSize, o.maxPasses};
        for (std::size_t i = 0; i < set.samples.size(); ++i) {
          const Bitstring x = postprocessAnswer(set.samples[i].x, *formula, q, mode, pc);
          const auto d = decode(x, *formula);
          auto& entry = doc["samples"][i];
          entry["postprocessed_bits"] = x.toString();
          entry["classification"] = std::string(toString(d.classification));
          entry["assignment"] = d.partial.key();
        }
      }
      writeOrPrint(o.out, doc.dump(2) + "\n");
    } else if (*quality) {
      const auto config = experimentConfig(o);
      emit(runQualityExperiment(config), o, config);
    } else if (*sweep) {
      const auto config = experimentConfig(o);
      emit(runAlphaSweep(config), o, config);
    } else if (*bias) {
      const auto config = experimentConfig(o);
      emit(solutionBias(config), o, config);
    } else if (*confidence) {
      std::cout << queriesForConfidence(o.p, o.epsilon) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "annealsat: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
