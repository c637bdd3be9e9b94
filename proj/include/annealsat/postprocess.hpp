#pragma once

// Reading answers back into the 3SAT problem space.
//
// A set bit x_i means "literal l_i witnesses its clause": a positive literal
// makes its variable True, a negative one False. Unset bits imply nothing,
// so an answer decodes to a partial assignment. An answer is Correct when no
// variable is witnessed both ways and the partial assignment already
// satisfies every clause.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "annealsat/errors.hpp"
#include "annealsat/qubo.hpp"
#include "annealsat/samplers.hpp"
#include "annealsat/sat.hpp"

namespace annealsat {

enum class Classification { Correct, FixableByLogical, Incorrect };

inline std::string_view toString(Classification c) {
  switch (c) {
    case Classification::Correct: return "correct";
    case Classification::FixableByLogical: return "fixable";
    case Classification::Incorrect: return "incorrect";
  }
  return "?";
}

struct DecodedAnswer {
  // Conflicted variables are left Unassigned here and listed below.
  PartialAssignment partial;
  bool conflicted = false;
  std::vector<VarIndex> conflictedVariables;
  std::vector<std::size_t> witnessedClauses;  // ascending
  Classification classification = Classification::Incorrect;
};

namespace detail {

inline void requireAnswerLength(const Bitstring& x, const CnfFormula& f) {
  if (x.size() != f.numLiterals()) {
    throw InputError("answer has " + std::to_string(x.size()) + " bits, formula needs 3m = " +
                     std::to_string(f.numLiterals()));
  }
}

// Which values each variable has been witnessed with.
struct Witnesses {
  std::vector<std::uint8_t> asTrue;
  std::vector<std::uint8_t> asFalse;

  Witnesses(const Bitstring& x, const CnfFormula& f)
      : asTrue(f.numVariables(), 0), asFalse(f.numVariables(), 0) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i]) add(f.literal(i));
    }
  }

  void add(const Literal& l) { (l.negated ? asFalse : asTrue)[l.variable] = 1; }

  bool contradicts(const Literal& l) const {
    return l.negated ? asTrue[l.variable] != 0 : asFalse[l.variable] != 0;
  }
};

inline DecodedAnswer decodeWitnesses(const Bitstring& x, const CnfFormula& f) {
  requireAnswerLength(x, f);
  const Witnesses w(x, f);
  DecodedAnswer d;
  d.partial = PartialAssignment(f.numVariables());
  for (VarIndex v = 0; v < f.numVariables(); ++v) {
    if (w.asTrue[v] && w.asFalse[v]) {
      d.conflicted = true;
      d.conflictedVariables.push_back(v);
    } else if (w.asTrue[v]) {
      d.partial.values[v] = Truth::True;
    } else if (w.asFalse[v]) {
      d.partial.values[v] = Truth::False;
    }
  }
  for (std::size_t k = 0; k < f.numClauses(); ++k) {
    if (x[3 * k] || x[3 * k + 1] || x[3 * k + 2]) d.witnessedClauses.push_back(k);
  }
  return d;
}

inline bool directlyCorrect(const DecodedAnswer& d, const CnfFormula& f) {
  return !d.conflicted && satisfiedByPartial(f, d.partial);
}

}  // namespace detail

// One ascending pass over the clauses: a clause with no set bit gets its
// first literal whose value contradicts no currently set bit (bits set
// earlier in the pass included). Bits only go 0 -> 1. A clause left empty
// has every literal contradicted, and later additions only add
// contradictions, so a second pass never changes anything.
inline Bitstring logicalPostprocess(const Bitstring& x, const CnfFormula& formula) {
  detail::requireAnswerLength(x, formula);
  detail::Witnesses w(x, formula);
  Bitstring out = x;
  for (std::size_t k = 0; k < formula.numClauses(); ++k) {
    const std::size_t base = 3 * k;
    if (out[base] || out[base + 1] || out[base + 2]) continue;
    for (std::size_t t = 0; t < 3; ++t) {
      const Literal& l = formula.literal(base + t);
      if (!w.contradicts(l)) {
        out.set(base + t);
        w.add(l);
        break;
      }
    }
  }
  return out;
}

inline Classification classify(const Bitstring& x, const CnfFormula& formula) {
  if (detail::directlyCorrect(detail::decodeWitnesses(x, formula), formula)) return Classification::Correct;
  const Bitstring repaired = logicalPostprocess(x, formula);
  if (detail::directlyCorrect(detail::decodeWitnesses(repaired, formula), formula)) {
    return Classification::FixableByLogical;
  }
  return Classification::Incorrect;
}

inline DecodedAnswer decode(const Bitstring& x, const CnfFormula& formula) {
  DecodedAnswer d = detail::decodeWitnesses(x, formula);
  d.classification = classify(x, formula);
  return d;
}

// Sets, for every clause without a witness, the lowest literal position
// that the decoded assignment makes True. Requires a Correct answer.
inline Bitstring completeWitnesses(const Bitstring& x, const CnfFormula& formula) {
  const DecodedAnswer d = detail::decodeWitnesses(x, formula);
  if (!detail::directlyCorrect(d, formula)) {
    throw ContractError("completeWitnesses requires a Correct answer");
  }
  Bitstring out = x;
  for (std::size_t k = 0; k < formula.numClauses(); ++k) {
    const std::size_t base = 3 * k;
    if (out[base] || out[base + 1] || out[base + 2]) continue;
    for (std::size_t t = 0; t < 3; ++t) {
      const Literal& l = formula.literal(base + t);
      const Truth v = d.partial.values[l.variable];
      if (v != Truth::Unassigned && l.satisfiedBy(v == Truth::True)) {
        out.set(base + t);
        break;
      }
    }
  }
  return out;
}

inline constexpr std::size_t kMaxBlockSize = 20;

struct PostprocessConfig {
  std::size_t blockSize = 12;
  std::size_t maxPasses = 10;

  void validate() const {
    if (blockSize < 1 || blockSize > kMaxBlockSize) {
      throw ConfigError("blockSize must be in [1, " + std::to_string(kMaxBlockSize) + "]");
    }
    if (maxPasses < 1) throw ConfigError("maxPasses must be >= 1");
  }
};

// Block-wise clamped exhaustive descent. Indices are cut into contiguous
// blocks of blockSize (the last one may be shorter); each block is
// re-minimized exactly with all other bits held fixed and the block optimum
// is adopted only if the total energy strictly drops. Among equal block
// optima the numerically smallest block mask (bit 0 = first index) wins.
// Passes repeat until one makes no change or maxPasses is reached.
inline Bitstring subproblemPostprocess(const QuboMatrix& q, const Bitstring& x, const PostprocessConfig& config) {
  config.validate();
  const std::size_t n = q.dimension();
  if (x.size() != n) throw InputError("bitstring length does not match QUBO dimension");

  const QuboAdjacency adj(q);
  Bitstring current = x;
  double currentEnergy = quboEnergy(q, current);
  Bitstring scratch = current;

  for (std::size_t pass = 0; pass < config.maxPasses; ++pass) {
    bool improved = false;
    for (std::size_t start = 0; start < n; start += config.blockSize) {
      const std::size_t len = std::min(config.blockSize, n - start);
      const std::size_t end = start + len;
      std::vector<double> field(len);
      detail::LocalCouplings couplings(len);
      for (std::size_t b = 0; b < len; ++b) {
        const std::size_t i = start + b;
        field[b] = adj.linear[i];
        for (std::size_t k = adj.offsets[i]; k < adj.offsets[i + 1]; ++k) {
          const std::size_t j = adj.neighbors[k];
          if (j >= start && j < end) {
            couplings[b].emplace_back(j - start, adj.weights[k]);
          } else if (current[j]) {
            field[b] += adj.weights[k];
          }
        }
      }
      auto exact = [&](std::uint64_t mask) {
        for (std::size_t b = 0; b < len; ++b) scratch.set(start + b, (mask >> b) & 1U);
        return quboEnergy(q, scratch);
      };
      const auto best = detail::minimizeExhaustive(field, couplings, exact, false);
      if (best.energy < currentEnergy) {
        for (std::size_t b = 0; b < len; ++b) current.set(start + b, (best.masks.front() >> b) & 1U);
        currentEnergy = best.energy;
        improved = true;
      }
      for (std::size_t b = 0; b < len; ++b) scratch.set(start + b, current[start + b]);
    }
    if (!improved) break;
  }
  return current;
}

}  // namespace annealsat
