#pragma once

// QUBO matrices, bitstrings and the energy function
//   E(x) = sum_{i<j} Q_ij x_i x_j + sum_i Q_i x_i.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "annealsat/errors.hpp"

namespace annealsat {

class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(std::size_t n) : bits_(n, 0) {}
  explicit Bitstring(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) b = b != 0;
  }

  // "100001" -> bit 0 = 1, ..., bit 5 = 1.
  static Bitstring fromString(std::string_view s) {
    Bitstring b(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '0' && s[i] != '1') throw InputError("bitstring may only contain 0 and 1");
      b.bits_[i] = s[i] == '1';
    }
    return b;
  }

  // Low `n` bits of `mask`, bit i of the mask -> position i.
  static Bitstring fromMask(std::uint64_t mask, std::size_t n) {
    Bitstring b(n);
    for (std::size_t i = 0; i < n; ++i) b.bits_[i] = (mask >> i) & 1U;
    return b;
  }

  std::string toString() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = bits_[i] ? '1' : '0';
    return s;
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  bool test(std::size_t i) const { return bits_.at(i) != 0; }
  void set(std::size_t i, bool value = true) { bits_.at(i) = value; }
  void flip(std::size_t i) { bits_.at(i) ^= 1U; }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto b : bits_) c += b;
    return c;
  }

  const std::vector<std::uint8_t>& raw() const noexcept { return bits_; }

  friend bool operator==(const Bitstring&, const Bitstring&) = default;
  friend auto operator<=>(const Bitstring&, const Bitstring&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

class QuboMatrix {
 public:
  using Index = std::size_t;
  using OffDiagonal = std::map<std::pair<Index, Index>, double>;

  QuboMatrix() = default;
  explicit QuboMatrix(Index dimension) : diagonal_(dimension, 0.0) {}

  Index dimension() const noexcept { return diagonal_.size(); }

  double linear(Index i) const { return diagonal_.at(i); }
  void setLinear(Index i, double value) { diagonal_.at(i) = value; }

  // Q_ij for i != j in either order; 0 when absent.
  double quadratic(Index i, Index j) const {
    auto it = offDiagonal_.find(ordered(i, j));
    return it == offDiagonal_.end() ? 0.0 : it->second;
  }
  void setQuadratic(Index i, Index j, double value) {
    auto key = ordered(i, j);
    if (key.second >= dimension()) throw InputError("QUBO index out of range");
    if (value == 0.0) {
      offDiagonal_.erase(key);
    } else {
      offDiagonal_[key] = value;
    }
  }

  const std::vector<double>& diagonal() const noexcept { return diagonal_; }
  const OffDiagonal& offDiagonal() const noexcept { return offDiagonal_; }

  friend bool operator==(const QuboMatrix&, const QuboMatrix&) = default;

 private:
  static std::pair<Index, Index> ordered(Index i, Index j) {
    if (i == j) throw InputError("diagonal entries are linear terms, use setLinear");
    return i < j ? std::pair{i, j} : std::pair{j, i};
  }

  std::vector<double> diagonal_;
  OffDiagonal offDiagonal_;
};

// Evaluation order is fixed (diagonal by index, then off-diagonal in key
// order) so recomputing an energy always reproduces the same double.
inline double quboEnergy(const QuboMatrix& q, const Bitstring& x) {
  if (x.size() != q.dimension()) {
    throw InputError("bitstring length " + std::to_string(x.size()) +
                     " does not match QUBO dimension " + std::to_string(q.dimension()));
  }
  double e = 0.0;
  for (std::size_t i = 0; i < q.dimension(); ++i) {
    if (x[i]) e += q.linear(i);
  }
  for (const auto& [ij, v] : q.offDiagonal()) {
    if (x[ij.first] && x[ij.second]) e += v;
  }
  return e;
}

// Symmetric CSR view of a QUBO, used by the local-search samplers.
struct QuboAdjacency {
  std::vector<double> linear;
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> neighbors;
  std::vector<double> weights;

  explicit QuboAdjacency(const QuboMatrix& q) : linear(q.diagonal()) {
    const std::size_t n = q.dimension();
    std::vector<std::size_t> degree(n, 0);
    for (const auto& [ij, v] : q.offDiagonal()) {
      ++degree[ij.first];
      ++degree[ij.second];
    }
    offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] = offsets[i] + degree[i];
    neighbors.resize(offsets[n]);
    weights.resize(offsets[n]);
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (const auto& [ij, v] : q.offDiagonal()) {
      neighbors[fill[ij.first]] = ij.second;
      weights[fill[ij.first]++] = v;
      neighbors[fill[ij.second]] = ij.first;
      weights[fill[ij.second]++] = v;
    }
  }

  std::size_t size() const noexcept { return linear.size(); }

  // Energy change from flipping bit i of x (x as 0/1 bytes).
  template <class Bits>
  double flipDelta(const Bits& x, std::size_t i) const {
    double field = linear[i];
    for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) {
      if (x[neighbors[k]]) field += weights[k];
    }
    return x[i] ? -field : field;
  }
};

}  // namespace annealsat

template <>
struct std::hash<annealsat::Bitstring> {
  std::size_t operator()(const annealsat::Bitstring& b) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto v : b.raw()) h = (h ^ v) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};
