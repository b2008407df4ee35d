#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "dualbraid/interval.hpp"

namespace dualbraid {

class HurwitzError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A tuple of reflection indices.
using ReflectionTuple = std::vector<std::uint32_t>;

/// table(a, b) = index of b^-1 a b.
class ConjugationTable {
 public:
  explicit ConjugationTable(const ReflectionSet& reflections);

  std::size_t size() const noexcept { return size_; }
  std::uint32_t conjugate(std::uint32_t a, std::uint32_t b) const { return table_[a * size_ + b]; }
  std::uint32_t inverse_of(std::uint32_t a) const { return inverses_[a]; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverses_;
};

/// sigma_i (direction +1) or its inverse (direction -1), with 1 <= i < length.
ReflectionTuple hurwitz_move(const ConjugationTable& table, const ReflectionTuple& tuple, std::size_t i, int direction);

/// Labels of one maximal chain of the interval: a reduced decomposition of c.
ReflectionTuple reduced_decompositions_seed(const Interval& interval);

/// Left-to-right product of the tuple entries.
CycMatrix tuple_product(const ReflectionSet& reflections, const ReflectionTuple& tuple);

struct OrbitStats {
  std::uint64_t size = 0;
  bool complete = false;  // false when the cap stopped the search
};

/// Breadth-first closure of {seed} under every sigma_i^(+-1). At most `cap`
/// tuples are stored; each visited tuple is written to `dump` when given.
/// Tuples are packed eight bits per entry, so length <= 8 and at most 255 reflections.
OrbitStats hurwitz_orbit(const ConjugationTable& table, const ReflectionTuple& seed, std::uint64_t cap,
                         std::ostream* dump = nullptr);

}  // namespace dualbraid
