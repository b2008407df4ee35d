#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dualbraid/interval.hpp"

namespace dualbraid {

/// (f_1, ..., f_m): simples, identity allowed, with f_1 ... f_m = c.
struct Factorization {
  std::vector<Interval::Index> parts;

  std::size_t m() const noexcept { return parts.size(); }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// phi_m^e, phi_m(f_1, ..., f_m) = (f_2, ..., f_m, f_1^c) with x^c = c^-1 x c; e may be negative.
Factorization twist(const Interval& interval, const Factorization& f, long e);

/// Partial products stay in the interval, each dividing the next, and end at c.
bool is_factorization(const Interval& interval, const Factorization& f);

/// Calls `visit` on every factorization of c into m parts, in lexicographic
/// order of partial products.
void enumerate_factorizations(const Interval& interval, int m, const std::function<void(const Factorization&)>& visit);
BigInt count_factorizations(const Interval& interval, int m);

struct TwistParameters {
  int d_prime = 0;   // d / gcd(d, h)
  int h_prime = 0;   // h / gcd(d, h)
  int parts = 0;     // m = N d'
  long power = 0;    // e = N h'
};
TwistParameters twist_parameters(const GroupSpec& spec, int d, int N);

/// Factorizations into N d' parts fixed by phi^(N h'). Only the first
/// gcd(m, e) parts are chosen; the fixed-point equation determines the rest.
BigInt count_fixed_objects(const GroupSpec& spec, const Interval& interval, int d, int N);
/// Same set, listed.
std::vector<Factorization> fixed_objects(const GroupSpec& spec, const Interval& interval, int d, int N);

struct SievingEvaluation {
  bool balanced = false;           // zeros of numerator and denominator pair up
  int zero_numerators = 0;
  int zero_denominators = 0;
  std::optional<Cyclotomic> value;  // when balanced
  std::optional<BigInt> integer;    // when the value is a rational integer
  std::string failure;              // reason when not balanced or not an integer
};

/// prod_i [d_i + (N d' - 1) h]_q / [d_i]_q at q = zeta_d.
SievingEvaluation q_evaluate_sieving(const GroupSpec& spec, int d, int N);

}  // namespace dualbraid
