#pragma once

// Sparse coordinate QUBO text format:
//
//   dim <N>
//   <i> <j> <value>      i <= j, i == j for diagonal entries
//
// Values are written in shortest round-trip form, so parse(write(Q)) == Q.
// Lines starting with '#' and blank lines are ignored on input.

#include <array>
#include <charconv>
#include <sstream>
#include <string>
#include <string_view>

#include "annealsat/errors.hpp"
#include "annealsat/qubo.hpp"

namespace annealsat {

inline std::string formatDouble(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

inline std::string writeQubo(const QuboMatrix& q) {
  std::string out = "dim " + std::to_string(q.dimension()) + "\n";
  for (std::size_t i = 0; i < q.dimension(); ++i) {
    out += std::to_string(i) + " " + std::to_string(i) + " " + formatDouble(q.linear(i)) + "\n";
  }
  for (const auto& [ij, v] : q.offDiagonal()) {
    out += std::to_string(ij.first) + " " + std::to_string(ij.second) + " " + formatDouble(v) + "\n";
  }
  return out;
}

inline QuboMatrix parseQubo(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineNo = 0;
  bool haveHeader = false;
  QuboMatrix q;

  auto fail = [&](const std::string& msg) {
    return FormatError("QUBO line " + std::to_string(lineNo) + ": " + msg);
  };
  auto parseIndex = [&](const std::string& tok) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) throw fail("bad index \"" + tok + "\"");
    return v;
  };

  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream tokens(line);
    std::string a;
    if (!(tokens >> a) || a[0] == '#') continue;
    if (!haveHeader) {
      std::string dim;
      if (a != "dim" || !(tokens >> dim)) throw fail("expected header \"dim <N>\"");
      q = QuboMatrix(parseIndex(dim));
      haveHeader = true;
      continue;
    }
    std::string b, c, extra;
    if (!(tokens >> b >> c) || (tokens >> extra)) throw fail("expected \"<i> <j> <value>\"");
    const std::size_t i = parseIndex(a);
    const std::size_t j = parseIndex(b);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
    if (ec != std::errc() || ptr != c.data() + c.size()) throw fail("bad value \"" + c + "\"");
    if (i > j) throw fail("entry below the diagonal (i > j)");
    if (j >= q.dimension()) throw fail("index out of range for dim " + std::to_string(q.dimension()));
    if (i == j) {
      q.setLinear(i, v);
    } else {
      q.setQuadratic(i, j, v);
    }
  }
  if (!haveHeader) throw FormatError("QUBO: missing \"dim <N>\" header");
  return q;
}

}  // namespace annealsat
