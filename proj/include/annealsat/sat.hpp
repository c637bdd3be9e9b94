#pragma once

// 3SAT instances: representation, evaluation, random generation and an
// exact DPLL satisfiability check.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "annealsat/errors.hpp"
#include "annealsat/rng.hpp"

namespace annealsat {

using VarIndex = std::uint32_t;

struct Literal {
  VarIndex variable = 0;
  bool negated = false;

  constexpr Literal complement() const noexcept { return {variable, !negated}; }
  // Truth value of the literal when its variable takes `value`.
  constexpr bool satisfiedBy(bool value) const noexcept { return value != negated; }

  friend constexpr bool operator==(const Literal&, const Literal&) = default;
  friend constexpr auto operator<=>(const Literal&, const Literal&) = default;
};

constexpr Literal pos(VarIndex v) noexcept { return {v, false}; }
constexpr Literal neg(VarIndex v) noexcept { return {v, true}; }

// Exactly three literals. Duplicates are allowed.
using Clause = std::array<Literal, 3>;

class CnfFormula {
 public:
  CnfFormula(std::size_t numVariables, std::vector<Clause> clauses)
      : numVariables_(numVariables), clauses_(std::move(clauses)) {
    if (numVariables_ == 0) throw InputError("formula needs at least one variable");
    for (std::size_t k = 0; k < clauses_.size(); ++k) {
      for (const auto& lit : clauses_[k]) {
        if (lit.variable >= numVariables_) {
          throw InputError("clause " + std::to_string(k) + " references variable " +
                           std::to_string(lit.variable) + " but n = " +
                           std::to_string(numVariables_));
        }
      }
    }
  }

  std::size_t numVariables() const noexcept { return numVariables_; }
  std::size_t numClauses() const noexcept { return clauses_.size(); }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  const Clause& clause(std::size_t k) const { return clauses_.at(k); }

  // Literal l_i of the flattened literal sequence, clause i / 3.
  const Literal& literal(std::size_t i) const { return clauses_.at(i / 3)[i % 3]; }
  std::size_t numLiterals() const noexcept { return 3 * clauses_.size(); }

  double alpha() const noexcept {
    return static_cast<double>(clauses_.size()) / static_cast<double>(numVariables_);
  }

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

 private:
  std::size_t numVariables_;
  std::vector<Clause> clauses_;
};

struct Assignment {
  std::vector<bool> values;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

enum class Truth : std::uint8_t { False, True, Unassigned };

struct PartialAssignment {
  std::vector<Truth> values;

  PartialAssignment() = default;
  explicit PartialAssignment(std::size_t n) : values(n, Truth::Unassigned) {}
  explicit PartialAssignment(const Assignment& total) {
    values.reserve(total.values.size());
    for (bool b : total.values) values.push_back(b ? Truth::True : Truth::False);
  }

  std::size_t size() const noexcept { return values.size(); }
  bool isAssigned(VarIndex v) const { return values.at(v) != Truth::Unassigned; }

  // True / False / Unassigned rendered as '1' / '0' / '-', variable 0 first.
  std::string key() const {
    std::string s;
    s.reserve(values.size());
    for (auto t : values) s.push_back(t == Truth::True ? '1' : t == Truth::False ? '0' : '-');
    return s;
  }

  friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;
};

namespace detail {
inline void requireLength(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw InputError(std::string(what) + " has length " + std::to_string(got) +
                     ", expected " + std::to_string(want));
  }
}
}  // namespace detail

inline bool evaluate(const CnfFormula& formula, const Assignment& assignment) {
  detail::requireLength(assignment.values.size(), formula.numVariables(), "assignment");
  for (const auto& clause : formula.clauses()) {
    bool sat = false;
    for (const auto& lit : clause) {
      if (lit.satisfiedBy(assignment.values[lit.variable])) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

// True iff every clause contains a literal made true by an assigned
// variable, so every completion of `partial` satisfies the formula.
inline bool satisfiedByPartial(const CnfFormula& formula, const PartialAssignment& partial) {
  detail::requireLength(partial.size(), formula.numVariables(), "partial assignment");
  for (const auto& clause : formula.clauses()) {
    bool witnessed = false;
    for (const auto& lit : clause) {
      const Truth t = partial.values[lit.variable];
      if (t != Truth::Unassigned && lit.satisfiedBy(t == Truth::True)) {
        witnessed = true;
        break;
      }
    }
    if (!witnessed) return false;
  }
  return true;
}

// Fixed-clause-length random model: three distinct variables per clause,
// each negated with probability 1/2. Clauses may repeat.
inline CnfFormula generateRandom3Sat(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 3) throw InputError("random 3SAT needs n >= 3 to draw distinct variables");
  if (m < 1) throw InputError("random 3SAT needs m >= 1");
  Rng rng(splitmix64(seed));
  std::vector<Clause> clauses;
  clauses.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::array<VarIndex, 3> vars{};
    for (std::size_t slot = 0; slot < 3; ++slot) {
      VarIndex v;
      bool fresh;
      do {
        v = static_cast<VarIndex>(uniformBelow(rng, n));
        fresh = true;
        for (std::size_t prev = 0; prev < slot; ++prev) fresh = fresh && vars[prev] != v;
      } while (!fresh);
      vars[slot] = v;
    }
    Clause c;
    for (std::size_t slot = 0; slot < 3; ++slot) c[slot] = Literal{vars[slot], fairCoin(rng)};
    clauses.push_back(c);
  }
  return CnfFormula(n, std::move(clauses));
}

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t backtracks = 0;

  std::uint64_t effort() const noexcept { return decisions + backtracks; }
};

struct DpllResult {
  bool satisfiable = false;
  SolverStats stats;
  // A satisfying partial assignment when satisfiable.
  PartialAssignment model;
};

namespace detail {

class Dpll {
 public:
  explicit Dpll(const CnfFormula& f) : formula_(f) {}

  DpllResult run() {
    PartialAssignment a(formula_.numVariables());
    DpllResult r;
    r.satisfiable = search(a);
    r.stats = stats_;
    if (r.satisfiable) r.model = std::move(model_);
    return r;
  }

 private:
  enum class Status { Satisfied, Conflict, Open };

  static Truth value(const PartialAssignment& a, const Literal& lit) {
    const Truth t = a.values[lit.variable];
    if (t == Truth::Unassigned) return t;
    return lit.satisfiedBy(t == Truth::True) ? Truth::True : Truth::False;
  }

  Status propagate(PartialAssignment& a) const {
    bool changed = true;
    while (changed) {
      changed = false;
      bool allSatisfied = true;
      for (const auto& clause : formula_.clauses()) {
        bool sat = false;
        int open = 0;
        const Literal* unit = nullptr;
        for (const auto& lit : clause) {
          const Truth t = value(a, lit);
          if (t == Truth::True) {
            sat = true;
            break;
          }
          if (t == Truth::Unassigned) {
            // Repeated literals count once.
            if (unit == nullptr || *unit != lit) ++open;
            unit = &lit;
          }
        }
        if (sat) continue;
        allSatisfied = false;
        if (open == 0) return Status::Conflict;
        if (open == 1) {
          a.values[unit->variable] = unit->negated ? Truth::False : Truth::True;
          changed = true;
        }
      }
      if (allSatisfied) return Status::Satisfied;
    }
    return Status::Open;
  }

  // Lowest-index unassigned variable occurring in an unsatisfied clause.
  VarIndex pickBranch(const PartialAssignment& a) const {
    VarIndex best = static_cast<VarIndex>(formula_.numVariables());
    for (const auto& clause : formula_.clauses()) {
      bool sat = false;
      for (const auto& lit : clause) sat = sat || value(a, lit) == Truth::True;
      if (sat) continue;
      for (const auto& lit : clause) {
        if (a.values[lit.variable] == Truth::Unassigned && lit.variable < best) best = lit.variable;
      }
    }
    return best;
  }

  bool search(PartialAssignment& a) {
    switch (propagate(a)) {
      case Status::Conflict:
        return false;
      case Status::Satisfied:
        model_ = a;
        return true;
      case Status::Open:
        break;
    }
    const VarIndex v = pickBranch(a);
    ++stats_.decisions;
    PartialAssignment trial = a;
    trial.values[v] = Truth::True;
    if (search(trial)) return true;
    ++stats_.backtracks;
    a.values[v] = Truth::False;
    return search(a);
  }

  const CnfFormula& formula_;
  SolverStats stats_;
  PartialAssignment model_;
};

}  // namespace detail

// Exact satisfiability by unit propagation and chronological branching
// (lowest-index variable, True first).
inline DpllResult dpll(const CnfFormula& formula) { return detail::Dpll(formula).run(); }

inline std::pair<bool, SolverStats> dpllSatisfiable(const CnfFormula& formula) {
  auto r = dpll(formula);
  return {r.satisfiable, r.stats};
}

}  // namespace annealsat
