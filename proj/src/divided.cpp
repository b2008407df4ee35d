#include "dualbraid/divided.hpp"

#include <numeric>
#include <unordered_map>

namespace dualbraid {

namespace {

using Index = Interval::Index;

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Memoised p * f for f below K(p).
class ChainExtender {
 public:
  explicit ChainExtender(const Interval& interval) : interval_(interval) {}

  std::optional<Index> extend(Index p, Index f) {
    if (!interval_.leq(f, interval_.kreweras(p))) return std::nullopt;
    if (f == interval_.bottom()) return p;
    if (p == interval_.bottom()) return f;
    const std::uint64_t key = (std::uint64_t{p} << 32) | f;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const auto q = interval_.product(p, f);
    if (!q) throw LatticeError("product of divisible simples left the interval");
    memo_.emplace(key, *q);
    return q;
  }

 private:
  const Interval& interval_;
  std::unordered_map<std::uint64_t, Index> memo_;
};

void enumerate_chains(const Interval& I, int m, const std::function<void(const std::vector<Index>&)>& visit) {
  // chain[k] = p_k, p_0 = 1, p_m = c
  std::vector<Index> chain(static_cast<std::size_t>(m) + 1);
  chain[0] = I.bottom();
  chain[static_cast<std::size_t>(m)] = I.top();
  std::function<void(int)> down = [&](int k) {
    if (k == 0) {
      visit(chain);
      return;
    }
    I.lower_set(chain[static_cast<std::size_t>(k) + 1]).for_each([&](std::size_t u) {
      chain[static_cast<std::size_t>(k)] = static_cast<Index>(u);
      down(k - 1);
    });
  };
  down(m - 1);
}

}  // namespace

Factorization twist(const Interval& interval, const Factorization& f, long e) {
  const auto m = static_cast<long>(f.m());
  Factorization out;
  out.parts.resize(f.parts.size());
  for (long i = 0; i < m; ++i) {
    const long q = floor_div(i + e, m);
    const long r = i + e - q * m;
    out.parts[static_cast<std::size_t>(i)] = interval.conjugate_by_c(f.parts[static_cast<std::size_t>(r)], q);
  }
  return out;
}

bool is_factorization(const Interval& interval, const Factorization& f) {
  ChainExtender ext(interval);
  Index p = interval.bottom();
  for (auto part : f.parts) {
    const auto next = ext.extend(p, part);
    if (!next) return false;
    p = *next;
  }
  return p == interval.top();
}

void enumerate_factorizations(const Interval& interval, int m, const std::function<void(const Factorization&)>& visit) {
  if (m < 1) throw std::invalid_argument("factorizations need m >= 1");
  Factorization f;
  f.parts.resize(static_cast<std::size_t>(m));
  enumerate_chains(interval, m, [&](const std::vector<Index>& chain) {
    for (std::size_t k = 0; k < f.parts.size(); ++k) {
      const auto q = interval.left_quotient(chain[k], chain[k + 1]);
      if (!q) throw LatticeError("chain step without a quotient in the interval");
      f.parts[k] = *q;
    }
    visit(f);
  });
}

BigInt count_factorizations(const Interval& interval, int m) {
  if (m < 1) throw std::invalid_argument("factorizations need m >= 1");
  BigInt count = 0;
  enumerate_chains(interval, m, [&](const std::vector<Index>&) { ++count; });
  return count;
}

TwistParameters twist_parameters(const GroupSpec& spec, int d, int N) {
  if (d < 1 || N < 1) throw std::invalid_argument("d and N must be positive");
  const int h = spec.coxeter_number();
  const int g = std::gcd(d, h);
  TwistParameters p;
  p.d_prime = d / g;
  p.h_prime = h / g;
  p.parts = N * p.d_prime;
  p.power = static_cast<long>(N) * p.h_prime;
  return p;
}

std::vector<Factorization> fixed_objects(const GroupSpec& spec, const Interval& interval, int d, int N) {
  const TwistParameters tp = twist_parameters(spec, d, N);
  const int m = tp.parts;
  const long e = tp.power;
  const int g = static_cast<int>(std::gcd(static_cast<long>(m), e));
  // Part i equals c^-power[i] f_source[i] c^power[i] for a fixed factorization.
  std::vector<int> source(static_cast<std::size_t>(m));
  std::vector<long> power(static_cast<std::size_t>(m), 0);
  for (int j = 0; j < g; ++j) {
    int i = j;
    source[static_cast<std::size_t>(j)] = j;
    for (int step = 1; step < m / g; ++step) {
      const long q = floor_div(i + e, m);
      const int next = static_cast<int>(i + e - q * m);
      source[static_cast<std::size_t>(next)] = j;
      power[static_cast<std::size_t>(next)] = power[static_cast<std::size_t>(i)] - q;
      i = next;
    }
  }
  const long cycle_power = -e / g;

  std::vector<Factorization> found;
  ChainExtender ext(interval);
  Factorization f;
  f.parts.resize(static_cast<std::size_t>(m));
  std::function<void(int, Index)> choose = [&](int k, Index p) {
    if (k < g) {
      interval.lower_set(interval.kreweras(p)).for_each([&](std::size_t u) {
        const auto part = static_cast<Index>(u);
        if (interval.conjugate_by_c(part, cycle_power) != part) return;
        if (k == m - 1 && part != interval.kreweras(p)) return;
        f.parts[static_cast<std::size_t>(k)] = part;
        const auto next = ext.extend(p, part);
        if (next) choose(k + 1, *next);
      });
      return;
    }
    for (int i = k; i < m; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const Index part = interval.conjugate_by_c(f.parts[static_cast<std::size_t>(source[idx])], power[idx]);
      f.parts[idx] = part;
      if (i == m - 1) {
        if (part != interval.kreweras(p)) return;
        p = interval.top();
      } else {
        const auto next = ext.extend(p, part);
        if (!next) return;
        p = *next;
      }
    }
    if (p == interval.top()) found.push_back(f);
  };
  choose(0, interval.bottom());
  return found;
}

BigInt count_fixed_objects(const GroupSpec& spec, const Interval& interval, int d, int N) {
  return BigInt(static_cast<unsigned long>(fixed_objects(spec, interval, d, N).size()));
}

SievingEvaluation q_evaluate_sieving(const GroupSpec& spec, int d, int N) {
  const TwistParameters tp = twist_parameters(spec, d, N);
  const long h = spec.coxeter_number();
  SievingEvaluation out;
  Cyclotomic value(1L);
  const auto q_integer = [&](long a) {
    // [a]_q at q = zeta_d, without the common factor 1 / (1 - zeta_d)
    return d == 1 ? Cyclotomic(a) : Cyclotomic(1L) - Cyclotomic::zeta(d, a % d);
  };
  for (int di : spec.degrees) {
    const long a = di + (static_cast<long>(tp.parts) - 1) * h;
    const long b = di;
    if (d > 1 && a % d == 0) {
      ++out.zero_numerators;
      value *= Cyclotomic(a);
    } else {
      value *= q_integer(a);
    }
    if (d > 1 && b % d == 0) {
      ++out.zero_denominators;
      value /= Cyclotomic(b);
    } else {
      value /= q_integer(b);
    }
  }
  if (out.zero_numerators != out.zero_denominators) {
    out.failure = std::to_string(out.zero_numerators) + " vanishing numerator factors against " +
                  std::to_string(out.zero_denominators) + " vanishing denominator factors";
    return out;
  }
  out.balanced = true;
  out.value = value;
  const auto r = value.to_rational();
  if (r && r->get_den() == 1) {
    out.integer = r->get_num();
  } else {
    out.failure = "value " + value.to_string() + " is not a rational integer";
  }
  return out;
}

}  // namespace dualbraid
