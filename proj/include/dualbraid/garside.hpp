#pragma once

#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dualbraid/interval.hpp"

namespace dualbraid {

/// delta^k s_1 ... s_l in left greedy normal form: every s_i is an interval
/// index other than 1 and c, and each pair (s_i, s_{i+1}) is left-weighted.
struct MonoidElement {
  long delta_power = 0;
  std::vector<Interval::Index> factors;

  friend bool operator==(const MonoidElement&, const MonoidElement&) = default;
};

class WordError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Disagreement between two computations that the theory says must agree.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The dual braid monoid with simples [1, c], and its group of fractions as
/// far as delta^k (k in Z) times positive normal forms.
class DualMonoid {
 public:
  DualMonoid(const Interval& interval, const ReflectionSet& reflections);

  const Interval& interval() const noexcept { return interval_; }

  MonoidElement identity() const { return {}; }
  MonoidElement delta(long power = 1) const { return {power, {}}; }
  MonoidElement simple(Interval::Index s) const;
  /// Throws WordError when the reflection does not lie below c.
  MonoidElement atom(std::size_t reflection) const;

  MonoidElement multiply(const MonoidElement& a, const MonoidElement& b) const;
  /// Normal form of delta^k s_1 ... s_l for arbitrary simples s_i.
  MonoidElement normalize(long delta_power, const std::vector<Interval::Index>& simples) const;
  bool is_normal(const MonoidElement& a) const;

  /// c^-power a c^power, factorwise.
  MonoidElement delta_conjugate(const MonoidElement& a, long power) const;

  /// For positive elements (delta_power >= 0).
  MonoidElement left_gcd(const MonoidElement& a, const MonoidElement& b) const;
  bool left_divides(const MonoidElement& a, const MonoidElement& b) const;
  /// delta_power * n + sum of factor ranks.
  long length(const MonoidElement& a) const;

  /// Tokens r<i> (reflection i), D, D^k; brackets and the separator "·" are ignored,
  /// so render() output parses back to the same element.
  MonoidElement parse_word(std::string_view word) const;
  /// "D^k · [r.. r..] · ..." with each simple spelled along a fixed maximal chain.
  std::string render(const MonoidElement& a) const;
  /// Reflection labels r_1..r_j with s = r_1 ... r_j.
  std::vector<std::size_t> spell(Interval::Index s) const;

  /// s t for t below K(s).
  Interval::Index product(Interval::Index s, Interval::Index t) const;
  /// m^-1 t for m below t.
  Interval::Index quotient(Interval::Index m, Interval::Index t) const;

 private:
  void append(MonoidElement& a, Interval::Index t) const;
  MonoidElement strip_head(const MonoidElement& a, Interval::Index m) const;

  const Interval& interval_;
  const ReflectionSet& reflections_;
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<std::uint64_t, Interval::Index> products_;
  mutable std::unordered_map<std::uint64_t, Interval::Index> quotients_;
};

/// delta^(h'), h' = h / gcd(degrees), after checking that conjugation by
/// c^(h') fixes every simple, that no smaller power does, and that c^(h') is
/// central in W. Throws ConsistencyError otherwise.
MonoidElement center_generator(const GroupSpec& spec, const DualMonoid& monoid);

/// Fixed objects of the d-divided category exist; must agree with
/// is_regular_number(spec, d), else ConsistencyError.
bool has_dth_root_of_tau(const GroupSpec& spec, const Interval& interval, int d);

}  // namespace dualbraid
