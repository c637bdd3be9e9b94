#pragma once

// Classical QUBO minimizers standing in for annealer reads: exhaustive
// enumeration (exact oracle), simulated annealing and tabu search.
//
// Every read r draws from its own generator seeded with
// mixSeed(masterSeed, r), so a SampleSet is identical whether reads run
// serially or across threads.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "annealsat/errors.hpp"
#include "annealsat/qubo.hpp"
#include "annealsat/rng.hpp"

namespace annealsat {

inline constexpr std::size_t kBruteForceMaxDimension = 24;

struct SamplerConfig {
  std::size_t reads = 1000;
  std::size_t sweeps = 1000;
  double betaStart = 0.1;
  double betaEnd = 10.0;
  std::size_t tabuTenure = 8;
  std::uint64_t masterSeed = 0;
  // Worker threads for independent reads; does not affect results.
  unsigned threads = 1;

  void validate() const {
    if (reads < 1) throw ConfigError("sampler reads must be >= 1");
    if (sweeps < 1) throw ConfigError("sampler sweeps must be >= 1");
    if (!(betaStart > 0.0) || !(betaEnd > 0.0)) throw ConfigError("beta values must be positive");
    if (!(betaStart < betaEnd)) throw ConfigError("betaStart must be below betaEnd");
    if (!std::isfinite(betaEnd)) throw ConfigError("betaEnd must be finite");
    if (threads < 1) throw ConfigError("threads must be >= 1");
  }
};

struct Sample {
  Bitstring x;
  double energy = 0.0;
  std::size_t readIndex = 0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct SampleSet {
  std::vector<Sample> samples;
  std::size_t sourceDimension = 0;

  double lowestEnergy() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) best = std::min(best, s.energy);
    return best;
  }

  friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

enum class SamplerKind { SimulatedAnnealing, Tabu, BruteForce };

inline std::string_view toString(SamplerKind k) {
  switch (k) {
    case SamplerKind::SimulatedAnnealing: return "sa";
    case SamplerKind::Tabu: return "tabu";
    case SamplerKind::BruteForce: return "brute";
  }
  return "?";
}

inline SamplerKind parseSamplerKind(std::string_view s) {
  if (s == "sa") return SamplerKind::SimulatedAnnealing;
  if (s == "tabu") return SamplerKind::Tabu;
  if (s == "brute") return SamplerKind::BruteForce;
  throw ConfigError("unknown sampler \"" + std::string(s) + "\" (expected sa, tabu or brute)");
}

namespace detail {

// Result of exhaustively minimizing over k free bits.
struct ExhaustiveMinimum {
  double energy = std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> masks;  // ascending
};

// Couplings among the free bits, by local index.
using LocalCouplings = std::vector<std::vector<std::pair<std::size_t, double>>>;

// Gray-code enumeration of all 2^k assignments of the free bits. `field`
// holds the linear coefficient of each free bit (clamped neighbours already
// folded in). Energies are tracked incrementally; every state within a
// small tolerance of the incumbent is re-scored with `exact(mask)`, so the
// reported minimum and the tie set are decided on exact energies only.
// With collectAll == false only the numerically smallest argmin is kept.
template <class Exact>
ExhaustiveMinimum minimizeExhaustive(std::span<const double> field, const LocalCouplings& couplings,
                                     Exact&& exact, bool collectAll) {
  const std::size_t k = field.size();
  double scale = 1.0;
  for (double f : field) scale += std::abs(f);
  for (const auto& row : couplings)
    for (const auto& [j, w] : row) scale += std::abs(w);
  const double tol = 1e-9 * scale;

  ExhaustiveMinimum best;
  auto consider = [&](std::uint64_t mask, double& approx) {
    if (approx > best.energy + tol) return;
    const double e = exact(mask);
    approx = e;
    if (e < best.energy) {
      best.energy = e;
      best.masks.assign(1, mask);
    } else if (e == best.energy) {
      if (collectAll) {
        best.masks.push_back(mask);
      } else if (mask < best.masks.front()) {
        best.masks.front() = mask;
      }
    }
  };

  std::vector<std::uint8_t> bits(k, 0);
  std::uint64_t mask = 0;
  double approx = exact(0);
  consider(0, approx);
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t t = 1; t < total; ++t) {
    const auto b = static_cast<std::size_t>(std::countr_zero(t));
    double local = field[b];
    for (const auto& [j, w] : couplings[b]) {
      if (bits[j]) local += w;
    }
    approx += bits[b] ? -local : local;
    bits[b] ^= 1U;
    mask ^= std::uint64_t{1} << b;
    consider(mask, approx);
  }
  std::sort(best.masks.begin(), best.masks.end());
  return best;
}

template <class ReadFn>
std::vector<Sample> runReads(std::size_t reads, unsigned threads, ReadFn&& readFn) {
  std::vector<Sample> out(reads);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, reads));
  if (workers <= 1) {
    for (std::size_t r = 0; r < reads; ++r) out[r] = readFn(r);
    return out;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < reads; r += workers) out[r] = readFn(r);
      });
    }
  }
  return out;
}

inline Bitstring randomBitstring(Rng& rng, std::size_t n) {
  Bitstring x(n);
  for (std::size_t i = 0; i < n; ++i) x.set(i, fairCoin(rng));
  return x;
}

}  // namespace detail

struct BruteForceResult {
  double minEnergy = 0.0;
  std::size_t dimension = 0;
  // Every minimizing assignment, bit i of the mask = x_i, ascending.
  std::vector<std::uint64_t> argminMasks;

  std::vector<Bitstring> argmins() const {
    std::vector<Bitstring> out;
    out.reserve(argminMasks.size());
    for (auto m : argminMasks) out.push_back(Bitstring::fromMask(m, dimension));
    return out;
  }
};

inline BruteForceResult bruteForceMinimize(const QuboMatrix& q) {
  const std::size_t n = q.dimension();
  if (n > kBruteForceMaxDimension) {
    throw ConfigError("brute force refused: dimension " + std::to_string(n) + " exceeds " +
                      std::to_string(kBruteForceMaxDimension));
  }
  detail::LocalCouplings couplings(n);
  for (const auto& [ij, v] : q.offDiagonal()) {
    couplings[ij.first].emplace_back(ij.second, v);
    couplings[ij.second].emplace_back(ij.first, v);
  }
  auto exact = [&](std::uint64_t mask) { return quboEnergy(q, Bitstring::fromMask(mask, n)); };
  auto best = detail::minimizeExhaustive(q.diagonal(), couplings, exact, true);
  return {best.energy, n, std::move(best.masks)};
}

// Geometric inverse-temperature schedule over `sweeps` full passes.
inline double annealingBeta(const SamplerConfig& c, std::size_t sweep) {
  if (c.sweeps == 1) return c.betaStart;
  const double t = static_cast<double>(sweep) / static_cast<double>(c.sweeps - 1);
  return c.betaStart * std::pow(c.betaEnd / c.betaStart, t);
}

// Single-bit-flip Metropolis annealing; each read starts from a uniformly
// random bitstring and reports its final state.
inline SampleSet simulatedAnnealingSample(const QuboMatrix& q, const SamplerConfig& config) {
  config.validate();
  const QuboAdjacency adj(q);
  const std::size_t n = q.dimension();
  std::vector<double> betas(config.sweeps);
  for (std::size_t s = 0; s < config.sweeps; ++s) betas[s] = annealingBeta(config, s);

  auto read = [&](std::size_t r) {
    Rng rng(mixSeed(config.masterSeed, r));
    Bitstring x = detail::randomBitstring(rng, n);
    std::vector<std::uint8_t> bits = x.raw();
    for (double beta : betas) {
      for (std::size_t i = 0; i < n; ++i) {
        const double delta = adj.flipDelta(bits, i);
        if (delta <= 0.0 || uniformUnit(rng) < std::exp(-beta * delta)) bits[i] ^= 1U;
      }
    }
    Bitstring out(std::move(bits));
    const double e = quboEnergy(q, out);
    return Sample{std::move(out), e, r};
  };
  return {detail::runReads(config.reads, config.threads, read), n};
}

// Steepest single-flip descent with a tabu list over recently flipped
// bits (aspiration on new best). Each read runs `sweeps` moves from a random
// start and reports its best state. Ties go to the lowest index. With
// tabuTenure == 0 the walk stops at the first local minimum, i.e. plain
// greedy descent.
inline SampleSet tabuSample(const QuboMatrix& q, const SamplerConfig& config) {
  config.validate();
  const QuboAdjacency adj(q);
  const std::size_t n = q.dimension();

  auto read = [&](std::size_t r) {
    Rng rng(mixSeed(config.masterSeed, r));
    std::vector<std::uint8_t> bits = detail::randomBitstring(rng, n).raw();
    std::vector<double> delta(n);
    for (std::size_t i = 0; i < n; ++i) delta[i] = adj.flipDelta(bits, i);
    std::vector<std::size_t> tabuUntil(n, 0);
    double energy = quboEnergy(q, Bitstring(bits));
    double bestEnergy = energy;
    std::vector<std::uint8_t> best = bits;

    for (std::size_t step = 0; step < config.sweeps && n > 0; ++step) {
      std::size_t pick = n;
      for (std::size_t i = 0; i < n; ++i) {
        const bool allowed = tabuUntil[i] <= step || energy + delta[i] < bestEnergy;
        if (allowed && (pick == n || delta[i] < delta[pick])) pick = i;
      }
      if (pick == n) break;
      if (config.tabuTenure == 0 && delta[pick] >= 0.0) break;

      const double sign = bits[pick] ? -1.0 : 1.0;  // change of x_pick
      bits[pick] ^= 1U;
      energy += delta[pick];
      delta[pick] = -delta[pick];
      for (std::size_t k = adj.offsets[pick]; k < adj.offsets[pick + 1]; ++k) {
        const std::size_t j = adj.neighbors[k];
        delta[j] += (bits[j] ? -1.0 : 1.0) * adj.weights[k] * sign;
      }
      tabuUntil[pick] = step + 1 + config.tabuTenure;
      if (energy < bestEnergy) {
        bestEnergy = energy;
        best = bits;
      }
    }
    Bitstring out(std::move(best));
    const double e = quboEnergy(q, out);
    return Sample{std::move(out), e, r};
  };
  return {detail::runReads(config.reads, config.threads, read), q.dimension()};
}

// Exact ground states, handed out round-robin over the ascending argmin
// list so that reads >= |argmins| covers every ground state.
inline SampleSet bruteForceSample(const QuboMatrix& q, const SamplerConfig& config) {
  config.validate();
  const auto oracle = bruteForceMinimize(q);
  SampleSet set{{}, q.dimension()};
  set.samples.reserve(config.reads);
  for (std::size_t r = 0; r < config.reads; ++r) {
    Bitstring x = Bitstring::fromMask(oracle.argminMasks[r % oracle.argminMasks.size()], q.dimension());
    const double e = quboEnergy(q, x);
    set.samples.push_back({std::move(x), e, r});
  }
  return set;
}

inline SampleSet sample(const QuboMatrix& q, SamplerKind kind, const SamplerConfig& config) {
  switch (kind) {
    case SamplerKind::SimulatedAnnealing: return simulatedAnnealingSample(q, config);
    case SamplerKind::Tabu: return tabuSample(q, config);
    case SamplerKind::BruteForce: return bruteForceSample(q, config);
  }
  throw ConfigError("unknown sampler kind");
}

}  // namespace annealsat
