#pragma once

// DIMACS CNF reader/writer restricted to 3SAT. Variables are 1-indexed in
// the file and 0-indexed in memory.

#include <charconv>
#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "annealsat/errors.hpp"
#include "annealsat/sat.hpp"

namespace annealsat {

inline CnfFormula parseDimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  long long n = -1;
  long long m = -1;
  std::size_t lineNo = 0;
  std::vector<Clause> clauses;
  std::vector<Literal> pending;

  auto fail = [&](const std::string& msg) -> FormatError {
    return FormatError("DIMACS line " + std::to_string(lineNo) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream tokens(line);
    std::string tok;
    if (!(tokens >> tok)) continue;
    if (tok == "c" || tok[0] == 'c') continue;
    if (tok == "%") break;  // SATLIB trailer
    if (tok == "p") {
      if (n >= 0) throw fail("duplicate header");
      std::string fmt;
      if (!(tokens >> fmt >> n >> m) || fmt != "cnf" || n <= 0 || m < 0) {
        throw fail("malformed header, expected \"p cnf <n> <m>\"");
      }
      continue;
    }
    if (n < 0) throw fail("clause data before \"p cnf\" header");
    do {
      long long v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw fail("bad literal \"" + tok + "\"");
      }
      if (v == 0) {
        if (pending.size() != 3) {
          throw fail("not 3SAT: clause has " + std::to_string(pending.size()) + " literals");
        }
        clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      const long long var = std::llabs(v);
      if (var > n) throw fail("variable " + std::to_string(var) + " exceeds n = " + std::to_string(n));
      pending.push_back(Literal{static_cast<VarIndex>(var - 1), v < 0});
    } while (tokens >> tok);
  }
  if (n < 0) throw FormatError("DIMACS: missing \"p cnf\" header");
  if (!pending.empty()) throw FormatError("DIMACS: last clause not terminated by 0");
  if (static_cast<long long>(clauses.size()) != m) {
    throw FormatError("DIMACS: header declares " + std::to_string(m) + " clauses, found " +
                      std::to_string(clauses.size()));
  }
  return CnfFormula(static_cast<std::size_t>(n), std::move(clauses));
}

inline std::string writeDimacs(const CnfFormula& formula) {
  std::string out = "p cnf " + std::to_string(formula.numVariables()) + " " +
                    std::to_string(formula.numClauses()) + "\n";
  for (const auto& clause : formula.clauses()) {
    for (const auto& lit : clause) {
      if (lit.negated) out += '-';
      out += std::to_string(lit.variable + 1);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

}  // namespace annealsat
