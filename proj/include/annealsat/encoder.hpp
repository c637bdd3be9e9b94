#pragma once

// 3SAT -> weighted maximum independent set -> QUBO.
//
// One vertex per literal occurrence (vertex i is literal l_i of clause
// i / 3). Edges join the three literals of a clause and every pair of
// complementary literals in different clauses. An independent set picks
// at most one witness per clause and never witnesses v and !v together, so
// a satisfiable formula has an independent set of size m and the QUBO
// ground-state energy is exactly -m * weight.

#include <algorithm>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "annealsat/errors.hpp"
#include "annealsat/qubo.hpp"
#include "annealsat/sat.hpp"

namespace annealsat {

struct ConflictGraph {
  using Edge = std::pair<std::size_t, std::size_t>;  // first < second

  std::vector<Literal> vertexLiteral;
  std::vector<double> vertexWeight;
  std::set<Edge> edges;

  std::size_t vertexCount() const noexcept { return vertexLiteral.size(); }
  std::size_t clauseOf(std::size_t vertex) const noexcept { return vertex / 3; }

  bool adjacent(std::size_t a, std::size_t b) const {
    if (a == b) return false;
    return edges.contains(a < b ? Edge{a, b} : Edge{b, a});
  }
};

inline ConflictGraph buildConflictGraph(const CnfFormula& formula) {
  ConflictGraph g;
  const std::size_t n = formula.numLiterals();
  g.vertexLiteral.reserve(n);
  for (std::size_t i = 0; i < n; ++i) g.vertexLiteral.push_back(formula.literal(i));
  g.vertexWeight.assign(n, 1.0);

  for (std::size_t k = 0; k < formula.numClauses(); ++k) {
    const std::size_t b = 3 * k;
    g.edges.insert({b, b + 1});
    g.edges.insert({b, b + 2});
    g.edges.insert({b + 1, b + 2});
  }

  // Bucket occurrences by literal so complementary pairs are found without
  // scanning all 9m^2/2 pairs.
  std::vector<std::vector<std::size_t>> occurrences(2 * formula.numVariables());
  auto slot = [](const Literal& l) { return 2 * static_cast<std::size_t>(l.variable) + (l.negated ? 1 : 0); };
  for (std::size_t i = 0; i < n; ++i) occurrences[slot(g.vertexLiteral[i])].push_back(i);
  for (std::size_t v = 0; v < formula.numVariables(); ++v) {
    for (std::size_t a : occurrences[2 * v]) {
      for (std::size_t b : occurrences[2 * v + 1]) {
        if (a / 3 == b / 3) continue;  // already joined by the clause triangle
        g.edges.insert({std::min(a, b), std::max(a, b)});
      }
    }
  }
  return g;
}

// Q_ii = -weight * vertexWeight_i, Q_ij = penalty on every edge.
inline QuboMatrix graphToQubo(const ConflictGraph& graph, double weight = 1.0, double penalty = 2.0) {
  if (!(penalty > weight)) {
    throw ConfigError("edge penalty must exceed the vertex weight (penalty > weight)");
  }
  QuboMatrix q(graph.vertexCount());
  for (std::size_t i = 0; i < graph.vertexCount(); ++i) q.setLinear(i, -weight * graph.vertexWeight[i]);
  for (const auto& [a, b] : graph.edges) q.setQuadratic(a, b, penalty);
  return q;
}

inline QuboMatrix encode(const CnfFormula& formula) { return graphToQubo(buildConflictGraph(formula)); }

}  // namespace annealsat
