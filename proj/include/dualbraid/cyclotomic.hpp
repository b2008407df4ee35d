#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include <Eigen/Core>

namespace dualbraid {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Raised for arithmetic that has no value: inverting zero, embedding into a
/// field that does not contain the operand, malformed literals.
class CyclotomicError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The field Q(zeta_N) in its power basis modulo the N-th cyclotomic polynomial.
///
/// Fields are interned: `of(N)` always returns the same object, which lives for
/// the rest of the program. Everything here is immutable after construction.
class CyclotomicField {
 public:
  static const CyclotomicField& of(int conductor);

  int conductor() const noexcept { return conductor_; }
  /// phi(N), the length of every coefficient vector in this field.
  int degree() const noexcept { return degree_; }
  /// Coefficients of Phi_N, lowest first; monic of length degree()+1.
  std::span<const BigInt> modulus() const noexcept { return modulus_; }
  /// x^k mod Phi_N for degree() <= k <= 2*degree()-2.
  std::span<const BigInt> power_reduction(int k) const;

  /// Reduce an arbitrary-length polynomial modulo Phi_N (long division).
  std::vector<Rational> reduce(std::vector<Rational> poly) const;

 private:
  explicit CyclotomicField(int conductor);

  int conductor_;
  int degree_;
  std::vector<BigInt> modulus_;
  std::vector<std::vector<BigInt>> reductions_;
};

/// Integer coefficients of the n-th cyclotomic polynomial, lowest first.
std::vector<BigInt> cyclotomic_polynomial(int n);

/// An exact element of Q(zeta_N).
///
/// Values carry their field. Binary operations on operands of different
/// conductors first embed both into Q(zeta_lcm); a purely rational operand is
/// absorbed into the other operand's field without embedding.
class Cyclotomic {
 public:
  Cyclotomic();
  Cyclotomic(long value);  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Rational& value);  // NOLINT(google-explicit-constructor)
  Cyclotomic(int conductor, std::vector<Rational> coefficients);

  /// zeta_N^k, reduced into the power basis.
  static Cyclotomic zeta(int conductor, long k = 1);
  /// The same value regarded as an element of Q(zeta_N) (the rational c).
  static Cyclotomic rational(int conductor, const Rational& value);

  int conductor() const noexcept { return field_->conductor(); }
  const CyclotomicField& field() const noexcept { return *field_; }
  std::span<const Rational> coefficients() const noexcept { return coeffs_; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  bool is_rational() const noexcept;
  /// The rational value, when is_rational().
  std::optional<Rational> to_rational() const;

  /// Same number in Q(zeta_M). Throws unless conductor() divides M.
  Cyclotomic embed(int target_conductor) const;

  Cyclotomic inverse() const;
  std::optional<Cyclotomic> try_inverse() const;

  /// Galois automorphism zeta_N -> zeta_N^k, gcd(k, N) = 1. k = -1 is complex conjugation.
  Cyclotomic galois(long k) const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& other);
  Cyclotomic& operator-=(const Cyclotomic& other);
  Cyclotomic& operator*=(const Cyclotomic& other);
  Cyclotomic& operator/=(const Cyclotomic& other);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  /// Hash consistent with == for values of one conductor, and for rationals across conductors.
  std::size_t hash() const noexcept;

  /// Canonical text: power-basis terms in increasing degree, e.g. "1-1/2*z^3".
  std::string to_string() const;
  /// Parses polynomials in z with rational coefficients; exponents may exceed phi(N).
  static Cyclotomic parse(std::string_view text, int conductor);

  /// Approximate complex value, for diagnostics only.
  std::complex<double> approximate() const;

 private:
  const CyclotomicField* field_;
  std::vector<Rational> coeffs_;

  friend void unify(Cyclotomic& a, Cyclotomic& b);
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& value);

inline bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

/// Least common conductor of a set of values (1 for an empty set).
int common_conductor(std::span<const Cyclotomic> values);

}  // namespace dualbraid

namespace std {
template <>
struct hash<dualbraid::Cyclotomic> {
  std::size_t operator()(const dualbraid::Cyclotomic& x) const noexcept { return x.hash(); }
};
}  // namespace std

namespace Eigen {
template <>
struct NumTraits<dualbraid::Cyclotomic> : GenericNumTraits<dualbraid::Cyclotomic> {
  using Real = dualbraid::Cyclotomic;
  using NonInteger = dualbraid::Cyclotomic;
  using Nested = dualbraid::Cyclotomic;
  using Literal = dualbraid::Cyclotomic;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 64
  };
  static Real epsilon() { return Real(0L); }
  static Real dummy_precision() { return Real(0L); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<dualbraid::Rational> : GenericNumTraits<dualbraid::Rational> {
  using Real = dualbraid::Rational;
  using NonInteger = dualbraid::Rational;
  using Nested = dualbraid::Rational;
  using Literal = dualbraid::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 16
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};
}  // namespace Eigen
