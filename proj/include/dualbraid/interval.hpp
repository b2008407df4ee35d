#pragma once

#include <bit>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualbraid/group.hpp"

namespace dualbraid {

/// Fixed-size bitset over element indices.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const noexcept { return bits_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  const std::uint64_t* words() const noexcept { return words_.data(); }

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  Bitset& operator|=(const Bitset& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
    return *this;
  }
  Bitset& operator&=(const Bitset& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend bool operator==(const Bitset& a, const Bitset& b) { return a.bits_ == b.bits_ && a.words_ == b.words_; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      for (std::uint64_t w = words_[k]; w != 0; w &= w - 1) f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
    }
  }

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A failure of the lattice property, or an interval that contradicts its size formula.
class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A counted quantity disagreeing with its closed formula.
class FormulaMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Interval {
 public:
  using Index = std::uint32_t;

  /// `other` is the lower element in covers_below and the upper one in covers_above;
  /// in both cases upper = lower * reflection.
  struct Cover {
    Index other;
    std::uint32_t reflection;
  };

  /// Level-by-level search from 1. Throws LatticeError if more than Cat(W) elements appear.
  static Interval build(const GroupSpec& spec, const ReflectionSet& reflections, const GroupElement& c);

  std::size_t size() const noexcept { return elements_.size(); }
  int rank() const noexcept { return rank_; }
  Index bottom() const noexcept { return 0; }
  Index top() const noexcept { return static_cast<Index>(elements_.size() - 1); }

  const GroupElement& element(Index i) const { return elements_.at(i); }
  int rank_of(Index i) const { return ranks_.at(i); }
  std::optional<Index> find(const CycMatrix& m) const;

  const Bitset& lower_set(Index i) const { return lower_.at(i); }
  bool leq(Index u, Index w) const { return lower_[w].test(u); }
  const std::vector<Cover>& covers_below(Index i) const { return below_.at(i); }
  const std::vector<Cover>& covers_above(Index i) const { return above_.at(i); }

  /// w -> w^-1 c
  Index kreweras(Index i) const { return kreweras_.at(i); }
  /// w -> c w^-1
  Index kreweras_inverse(Index i) const { return kreweras_inverse_.at(i); }
  /// w -> c^-k w c^k; k may be negative.
  Index conjugate_by_c(Index i, long k = 1) const;

  /// Top of lower_set(a) & lower_set(b); LatticeError if that set has no top.
  Index meet(Index a, Index b) const;
  /// As meet, with nullopt in place of the error.
  std::optional<Index> try_meet(Index a, Index b) const noexcept;
  /// K^-1(meet(K a, K b)).
  Index join(Index a, Index b) const;

  /// u * v when it lies in the interval.
  std::optional<Index> product(Index u, Index v) const;
  /// u^-1 w when u is below w.
  std::optional<Index> left_quotient(Index u, Index w) const;

  /// Reflection index of a rank-one element.
  std::optional<std::size_t> atom_reflection(Index i) const;
  /// Interval index of a reflection, when the reflection lies below c.
  std::optional<Index> reflection_atom(std::size_t r) const;

  /// Coefficient k counts elements of rank k.
  std::vector<BigInt> rank_polynomial() const;

  /// Labels (r_1, ..., r_n) of one maximal chain, so c = r_1 ... r_n.
  std::vector<std::size_t> maximal_chain_labels() const;

  /// Cache file text; see docs/cache-format.md.
  std::string serialize(const GroupSpec& spec) const;
  /// Rebuilds an interval from serialize() output. Throws LatticeError on a
  /// version, group, hash or Coxeter-element mismatch.
  static Interval deserialize(std::string_view text, const GroupSpec& spec, const ReflectionSet& reflections,
                              const GroupElement& c);

 private:
  Interval() = default;
  void finish(const ReflectionSet& reflections);

  int rank_ = 0;
  std::vector<GroupElement> elements_;
  std::vector<int> ranks_;
  MatrixMap<Index> index_;
  std::vector<Bitset> lower_;
  std::vector<std::vector<Cover>> below_;
  std::vector<std::vector<Cover>> above_;
  std::vector<Index> kreweras_;
  std::vector<Index> kreweras_inverse_;
  std::vector<Index> conj_c_;
  std::vector<Index> conj_c_inverse_;
  std::vector<std::optional<std::size_t>> atom_reflection_;
  std::vector<std::optional<Index>> reflection_atom_;
};

/// prod (d_i + h) / d_i
BigInt catalan_number(const GroupSpec& spec);
/// prod (d_i + (N - 1) h) / d_i
BigInt chapoton_number(const GroupSpec& spec, int N);
/// n! h^n / |W|
BigInt maximal_chain_formula(const GroupSpec& spec);

/// f(1) = 1, f(w) = sum of f over lower covers; returns f(c).
BigInt maximal_chain_dp(const Interval& interval);
/// g_1 = 1, g_k(w) = sum of g_{k-1}(u) over u below w; returns g_N(c).
BigInt weak_chain_dp(const Interval& interval, int N);
/// DP values, checked against the closed formulas; FormulaMismatch otherwise.
BigInt count_maximal_chains(const Interval& interval, const GroupSpec& spec);
BigInt count_weak_chains(const Interval& interval, const GroupSpec& spec, int N);

struct LatticeCheck {
  std::uint64_t pairs_checked = 0;
  std::uint64_t failures = 0;
  std::optional<std::pair<Interval::Index, Interval::Index>> first_failure;
};

/// Every unordered pair: lower_set(a) & lower_set(b) has a top.
LatticeCheck check_lattice_exhaustive(const Interval& interval, unsigned threads = 1);
/// Uniform random pairs from a seeded generator.
LatticeCheck check_lattice_sampled(const Interval& interval, std::uint64_t samples, std::uint64_t seed,
                                   unsigned threads = 1);
/// Ordered pairs (u, v) for which u <= v and K(v) <= K(u) disagree.
std::uint64_t kreweras_reversal_failures(const Interval& interval);

/// Exponents k in [0, order(c)) with c^k in the interval.
std::vector<int> powers_of_c_in_interval(const Interval& interval);

struct CenterCheck {
  int expected = 0;         // h / gcd(degrees)
  int minimal_power = 0;    // least k > 0 with c^k fixing every simple
  bool central_in_group = false;  // c^expected commutes with every generator
  bool ok() const { return expected == minimal_power && central_in_group; }
};
CenterCheck check_center(const GroupSpec& spec, const Interval& interval);

/// Build, or load from `cache_dir` when a cache keyed by the data hash exists
/// (and write one after building). An empty path disables caching.
Interval load_or_build_interval(const GroupSpec& spec, const ReflectionSet& reflections, const GroupElement& c,
                                const std::filesystem::path& cache_dir);

std::filesystem::path interval_cache_path(const GroupSpec& spec, const std::filesystem::path& cache_dir);

}  // namespace dualbraid
