#include "dualbraid/interval.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <thread>

namespace dualbraid {

namespace {

using Index = Interval::Index;

// Top of L(a) & L(b), or nullopt when the intersection has no top.
std::optional<Index> top_of_intersection(const Bitset& la, const Bitset& lb,
                                         const std::vector<Bitset>& lower) {
  const std::uint64_t* a = la.words();
  const std::uint64_t* b = lb.words();
  std::size_t k = la.word_count();
  while (k > 0 && (a[k - 1] & b[k - 1]) == 0) --k;
  if (k == 0) return std::nullopt;
  const std::uint64_t w = a[k - 1] & b[k - 1];
  const auto m = static_cast<Index>((k - 1) * 64 + 63 - static_cast<std::size_t>(std::countl_zero(w)));
  const std::uint64_t* lm = lower[m].words();
  for (std::size_t j = 0; j < la.word_count(); ++j)
    if (lm[j] != (a[j] & b[j])) return std::nullopt;
  return m;
}

template <class Work>
LatticeCheck run_parallel(unsigned threads, Work&& work) {
  threads = std::max(1U, threads);
  std::vector<LatticeCheck> partial(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back([&, t] { work(t, threads, partial[t]); });
  work(0, threads, partial[0]);
  for (auto& th : pool) th.join();
  LatticeCheck total;
  for (const auto& p : partial) {
    total.pairs_checked += p.pairs_checked;
    total.failures += p.failures;
    if (!total.first_failure && p.first_failure) total.first_failure = p.first_failure;
  }
  return total;
}

void check_pair(const Interval& I, Index a, Index b, LatticeCheck& out) {
  ++out.pairs_checked;
  if (!I.try_meet(a, b)) {
    ++out.failures;
    if (!out.first_failure) out.first_failure = std::make_pair(a, b);
  }
}

BigInt product_ratio(const GroupSpec& spec, long shift) {
  BigInt num = 1, den = 1;
  for (int d : spec.degrees) {
    num *= d + shift;
    den *= d;
  }
  if (num % den != 0) throw FormulaMismatch(spec.name + ": product formula is not an integer");
  return num / den;
}

}  // namespace

Interval Interval::build(const GroupSpec& spec, const ReflectionSet& reflections, const GroupElement& c) {
  const int n = spec.rank;
  const BigInt cat = catalan_number(spec);
  const auto limit = cat.get_ui();
  Interval I;
  I.rank_ = n;
  std::vector<CycMatrix> complement;  // K(w) for each element, dropped after the build
  complement.reserve(limit);
  I.elements_.reserve(limit);

  const auto add = [&](CycMatrix w, int rank, CycMatrix k) {
    const auto idx = static_cast<Index>(I.elements_.size());
    if (idx >= limit) {
      throw LatticeError(spec.name + ": interval has more than Cat(W) = " + cat.get_str() + " elements");
    }
    I.index_.emplace(w, idx);
    I.elements_.emplace_back(std::move(w), rank);
    I.ranks_.push_back(rank);
    I.below_.emplace_back();
    complement.push_back(std::move(k));
    return idx;
  };
  add(identity<Cyclotomic>(n), 0, c.matrix());

  std::size_t level_begin = 0, level_end = 1;
  for (int k = 0; k < n; ++k) {
    for (std::size_t w = level_begin; w < level_end; ++w) {
      const CycMatrix& x = complement[w];
      CycMatrix moved = x;
      for (Eigen::Index i = 0; i < n; ++i) moved(i, i) -= Cyclotomic(1L);
      const auto fixed = kernel(moved);
      for (std::size_t r = 0; r < reflections.size(); ++r) {
        // r below x forces Fix(x) inside the hyperplane of r.
        const auto& f = reflections.coroot(r);
        bool inside = true;
        for (const auto& v : fixed) {
          Cyclotomic s(0L);
          for (Eigen::Index j = 0; j < n; ++j) s += f(j) * v(j);
          if (!s.is_zero()) {
            inside = false;
            break;
          }
        }
        if (!inside) continue;
        CycMatrix y = reflections.right_multiply(I.elements_[w].matrix(), r);
        const auto seen = I.index_.find(y);
        if (seen != I.index_.end()) {
          if (seen->second >= level_end) {
            I.below_[seen->second].push_back({static_cast<Index>(w), static_cast<std::uint32_t>(r)});
          }
          continue;
        }
        CycMatrix rest = reflections.left_multiply(reflections.inverse_of(r), x);
        if (codim(rest) != n - k - 1) continue;
        const Index idx = add(std::move(y), k + 1, std::move(rest));
        I.below_[idx].push_back({static_cast<Index>(w), static_cast<std::uint32_t>(r)});
      }
    }
    level_begin = level_end;
    level_end = I.elements_.size();
  }
  if (I.elements_.size() != limit) {
    throw LatticeError(spec.name + ": interval has " + std::to_string(I.elements_.size()) + " elements, Cat(W) = " +
                       cat.get_str());
  }
  if (level_end - level_begin != 1 || !(I.elements_.back() == c)) {
    throw LatticeError(spec.name + ": top level of the interval is not {c}");
  }
  I.kreweras_.resize(I.size());
  for (std::size_t i = 0; i < I.size(); ++i) {
    const auto k = I.find(complement[i]);
    if (!k) throw LatticeError(spec.name + ": Kreweras complement left the interval");
    I.kreweras_[i] = *k;
  }
  complement.clear();
  I.finish(reflections);
  return I;
}

void Interval::finish(const ReflectionSet& reflections) {
  const std::size_t N = elements_.size();
  lower_.assign(N, Bitset(N));
  above_.assign(N, {});
  for (std::size_t w = 0; w < N; ++w) {
    lower_[w].set(w);
    for (const auto& cov : below_[w]) {
      lower_[w] |= lower_[cov.other];
      above_[cov.other].push_back({static_cast<Index>(w), cov.reflection});
    }
  }
  kreweras_inverse_.assign(N, 0);
  for (std::size_t i = 0; i < N; ++i) kreweras_inverse_[kreweras_[i]] = static_cast<Index>(i);
  conj_c_.assign(N, 0);
  conj_c_inverse_.assign(N, 0);
  for (std::size_t i = 0; i < N; ++i) {
    conj_c_[i] = kreweras_[kreweras_[i]];
    conj_c_inverse_[conj_c_[i]] = static_cast<Index>(i);
  }
  atom_reflection_.assign(N, std::nullopt);
  reflection_atom_.assign(reflections.size(), std::nullopt);
  for (std::size_t i = 0; i < N; ++i) {
    if (ranks_[i] != 1) continue;
    const auto r = reflections.find(elements_[i].matrix());
    if (!r) throw LatticeError("rank-one interval element is not a reflection");
    atom_reflection_[i] = *r;
    reflection_atom_[*r] = static_cast<Index>(i);
  }
}

std::optional<Interval::Index> Interval::find(const CycMatrix& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Interval::Index Interval::conjugate_by_c(Index i, long k) const {
  const auto& perm = k >= 0 ? conj_c_ : conj_c_inverse_;
  for (long s = 0; s < (k >= 0 ? k : -k); ++s) i = perm[i];
  return i;
}

std::optional<Interval::Index> Interval::try_meet(Index a, Index b) const noexcept {
  return top_of_intersection(lower_[a], lower_[b], lower_);
}

Interval::Index Interval::meet(Index a, Index b) const {
  const auto m = top_of_intersection(lower_.at(a), lower_.at(b), lower_);
  if (!m) throw LatticeError("no meet for elements " + std::to_string(a) + " and " + std::to_string(b));
  return *m;
}

Interval::Index Interval::join(Index a, Index b) const { return kreweras_inverse_[meet(kreweras_[a], kreweras_[b])]; }

std::optional<Interval::Index> Interval::product(Index u, Index v) const {
  if (u == 0) return v;
  if (v == 0) return u;
  return find(multiply(elements_.at(u).matrix(), elements_.at(v).matrix()));
}

std::optional<Interval::Index> Interval::left_quotient(Index u, Index w) const {
  if (!leq(u, w)) return std::nullopt;
  if (u == 0) return w;
  if (u == w) return 0;
  return find(multiply(inverse(elements_[u].matrix()), elements_[w].matrix()));
}

std::optional<std::size_t> Interval::atom_reflection(Index i) const { return atom_reflection_.at(i); }

std::optional<Interval::Index> Interval::reflection_atom(std::size_t r) const { return reflection_atom_.at(r); }

std::vector<BigInt> Interval::rank_polynomial() const {
  std::vector<BigInt> coeffs(static_cast<std::size_t>(rank_) + 1, BigInt(0));
  for (int r : ranks_) coeffs[static_cast<std::size_t>(r)] += 1;
  return coeffs;
}

std::vector<std::size_t> Interval::maximal_chain_labels() const {
  std::vector<std::size_t> labels;
  Index w = bottom();
  while (w != top()) {
    const Cover& cov = above_[w].front();
    labels.push_back(cov.reflection);
    w = cov.other;
  }
  return labels;
}

BigInt catalan_number(const GroupSpec& spec) { return product_ratio(spec, spec.coxeter_number()); }

BigInt chapoton_number(const GroupSpec& spec, int N) {
  if (N < 1) throw std::invalid_argument("chapoton_number needs N >= 1");
  return product_ratio(spec, static_cast<long>(N - 1) * spec.coxeter_number());
}

BigInt maximal_chain_formula(const GroupSpec& spec) {
  BigInt num = 1;
  for (int k = 2; k <= spec.rank; ++k) num *= k;
  for (int k = 0; k < spec.rank; ++k) num *= spec.coxeter_number();
  return num / spec.order();
}

BigInt maximal_chain_dp(const Interval& I) {
  std::vector<BigInt> f(I.size());
  f[0] = 1;
  for (Index w = 1; w < I.size(); ++w)
    for (const auto& cov : I.covers_below(w)) f[w] += f[cov.other];
  return f[I.top()];
}

BigInt weak_chain_dp(const Interval& I, int N) {
  if (N < 1) throw std::invalid_argument("weak_chain_dp needs N >= 1");
  std::vector<BigInt> g(I.size(), BigInt(1));
  for (int k = 2; k <= N; ++k) {
    std::vector<BigInt> next(I.size());
    for (Index w = 0; w < I.size(); ++w) {
      mpz_ptr acc = next[w].get_mpz_t();
      I.lower_set(w).for_each([&](std::size_t u) { mpz_add(acc, acc, g[u].get_mpz_t()); });
    }
    g = std::move(next);
  }
  return g[I.top()];
}

BigInt count_maximal_chains(const Interval& I, const GroupSpec& spec) {
  const BigInt dp = maximal_chain_dp(I);
  const BigInt formula = maximal_chain_formula(spec);
  if (dp != formula) {
    throw FormulaMismatch(spec.name + ": maximal chains " + dp.get_str() + " != n!h^n/|W| = " + formula.get_str());
  }
  return dp;
}

BigInt count_weak_chains(const Interval& I, const GroupSpec& spec, int N) {
  const BigInt dp = weak_chain_dp(I, N);
  const BigInt formula = chapoton_number(spec, N);
  if (dp != formula) {
    throw FormulaMismatch(spec.name + ": weak " + std::to_string(N) + "-chains " + dp.get_str() + " != " +
                          formula.get_str());
  }
  return dp;
}

LatticeCheck check_lattice_exhaustive(const Interval& I, unsigned threads) {
  const auto N = static_cast<Index>(I.size());
  return run_parallel(threads, [&](unsigned t, unsigned T, LatticeCheck& out) {
    for (Index a = t; a < N; a += T)
      for (Index b = a + 1; b < N; ++b) check_pair(I, a, b, out);
  });
}

LatticeCheck check_lattice_sampled(const Interval& I, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  return run_parallel(threads, [&](unsigned t, unsigned T, LatticeCheck& out) {
    std::mt19937_64 rng(seed + t);
    std::uniform_int_distribution<Index> pick(0, static_cast<Index>(I.size() - 1));
    for (std::uint64_t s = t; s < samples; s += T) check_pair(I, pick(rng), pick(rng), out);
  });
}

std::uint64_t kreweras_reversal_failures(const Interval& I) {
  std::uint64_t failures = 0;
  for (Index u = 0; u < I.size(); ++u)
    for (Index v = 0; v < I.size(); ++v)
      if (I.leq(u, v) != I.leq(I.kreweras(v), I.kreweras(u))) ++failures;
  return failures;
}

std::vector<int> powers_of_c_in_interval(const Interval& I) {
  const CycMatrix& c = I.element(I.top()).matrix();
  const CycMatrix one = identity<Cyclotomic>(c.rows());
  std::vector<int> found;
  CycMatrix p = one;
  int k = 0;
  do {
    if (I.find(p)) found.push_back(k);
    p = multiply(p, c);
    ++k;
  } while (!MatrixEqual{}(p, one));
  return found;
}

CenterCheck check_center(const GroupSpec& spec, const Interval& I) {
  CenterCheck out;
  out.expected = center_exponent(spec);
  std::vector<bool> seen(I.size(), false);
  long order = 1;
  for (Index i = 0; i < I.size(); ++i) {
    if (seen[i]) continue;
    long len = 0;
    for (Index j = i; !seen[j]; j = I.conjugate_by_c(j)) {
      seen[j] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  out.minimal_power = static_cast<int>(order);
  CycMatrix z = identity<Cyclotomic>(spec.rank);
  for (int k = 0; k < out.expected; ++k) z = multiply(z, I.element(I.top()).matrix());
  out.central_in_group = std::all_of(spec.generators.begin(), spec.generators.end(), [&](const CycMatrix& g) {
    return MatrixEqual{}(multiply(z, g), multiply(g, z));
  });
  return out;
}

}  // namespace dualbraid
