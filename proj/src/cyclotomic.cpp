#include "dualbraid/cyclotomic.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace dualbraid {

namespace {

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Exact division of integer polynomials (lowest coefficient first); divisor monic.
std::vector<BigInt> divide_exact(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<BigInt> quotient(num.size() - dn);
  for (std::size_t k = num.size(); k-- > dn;) {
    BigInt q = num[k];
    quotient[k - dn] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= q * den[j];
  }
  return quotient;
}

void trim(std::vector<Rational>& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

std::size_t hash_mpz(const mpz_class& z) noexcept {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < limbs; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t hash_mpq(const Rational& q) noexcept {
  std::size_t h = hash_mpz(q.get_num());
  return h ^ (hash_mpz(q.get_den()) * 0x100000001b3ULL);
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(int n) {
  if (n < 1) throw CyclotomicError("cyclotomic polynomial of non-positive order");
  std::vector<BigInt> poly(static_cast<std::size_t>(n) + 1);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_exact(std::move(poly), cyclotomic_polynomial(d));
  }
  return poly;
}

const CyclotomicField& CyclotomicField::of(int conductor) {
  if (conductor < 1) throw CyclotomicError("conductor must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CyclotomicField>> registry;
  std::lock_guard lock(mutex);
  auto it = registry.find(conductor);
  if (it == registry.end()) {
    it = registry.emplace(conductor, std::unique_ptr<CyclotomicField>(new CyclotomicField(conductor))).first;
  }
  return *it->second;
}

CyclotomicField::CyclotomicField(int conductor)
    : conductor_(conductor), degree_(euler_phi(conductor)), modulus_(cyclotomic_polynomial(conductor)) {
  const auto d = static_cast<std::size_t>(degree_);
  if (d < 2) return;
  std::vector<BigInt> row(d);
  for (std::size_t j = 0; j < d; ++j) row[j] = -modulus_[j];
  reductions_.push_back(row);
  for (std::size_t k = d + 1; k <= 2 * d - 2; ++k) {
    std::vector<BigInt> next(d);
    const BigInt top = row[d - 1];
    for (std::size_t j = d - 1; j > 0; --j) next[j] = row[j - 1];
    next[0] = 0;
    if (top != 0) {
      for (std::size_t j = 0; j < d; ++j) next[j] -= top * modulus_[j];
    }
    reductions_.push_back(next);
    row = std::move(next);
  }
}

std::span<const BigInt> CyclotomicField::power_reduction(int k) const {
  return reductions_.at(static_cast<std::size_t>(k - degree_));
}

std::vector<Rational> CyclotomicField::reduce(std::vector<Rational> poly) const {
  const auto d = static_cast<std::size_t>(degree_);
  for (std::size_t k = poly.size(); k-- > d;) {
    if (sgn(poly[k]) == 0) continue;
    const Rational t = poly[k];
    for (std::size_t j = 0; j <= d; ++j) poly[k - d + j] -= t * modulus_[j];
  }
  poly.resize(d);
  return poly;
}

// ---------------------------------------------------------------------------

Cyclotomic::Cyclotomic() : field_(&CyclotomicField::of(1)), coeffs_(1) {}

Cyclotomic::Cyclotomic(long value) : field_(&CyclotomicField::of(1)), coeffs_{Rational(value)} {}

Cyclotomic::Cyclotomic(const Rational& value) : field_(&CyclotomicField::of(1)), coeffs_{value} {
  coeffs_[0].canonicalize();
}

Cyclotomic::Cyclotomic(int conductor, std::vector<Rational> coefficients)
    : field_(&CyclotomicField::of(conductor)) {
  const auto d = static_cast<std::size_t>(field_->degree());
  if (coefficients.size() > d) {
    coeffs_ = field_->reduce(std::move(coefficients));
  } else {
    coefficients.resize(d);
    coeffs_ = std::move(coefficients);
  }
  for (auto& c : coeffs_) c.canonicalize();
}

Cyclotomic Cyclotomic::zeta(int conductor, long k) {
  if (conductor < 1) throw CyclotomicError("conductor must be positive");
  long e = k % conductor;
  if (e < 0) e += conductor;
  std::vector<Rational> poly(static_cast<std::size_t>(e) + 1);
  poly[static_cast<std::size_t>(e)] = 1;
  return Cyclotomic(conductor, std::move(poly));
}

Cyclotomic Cyclotomic::rational(int conductor, const Rational& value) {
  std::vector<Rational> c(static_cast<std::size_t>(CyclotomicField::of(conductor).degree()));
  c[0] = value;
  return Cyclotomic(conductor, std::move(c));
}

bool Cyclotomic::is_zero() const noexcept {
  for (const auto& c : coeffs_)
    if (sgn(c) != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const noexcept {
  for (std::size_t j = 1; j < coeffs_.size(); ++j)
    if (sgn(coeffs_[j]) != 0) return false;
  return true;
}

bool Cyclotomic::is_one() const noexcept { return is_rational() && coeffs_[0] == 1; }

std::optional<Rational> Cyclotomic::to_rational() const {
  if (!is_rational()) return std::nullopt;
  return coeffs_[0];
}

Cyclotomic Cyclotomic::embed(int target) const {
  const int n = conductor();
  if (target < 1 || target % n != 0) {
    throw CyclotomicError("cannot embed Q(zeta_" + std::to_string(n) + ") into Q(zeta_" + std::to_string(target) + ")");
  }
  if (target == n) return *this;
  if (is_rational()) return rational(target, coeffs_[0]);
  const auto step = static_cast<std::size_t>(target / n);
  std::vector<Rational> poly((coeffs_.size() - 1) * step + 1);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) poly[j * step] = coeffs_[j];
  return Cyclotomic(target, std::move(poly));
}

void unify(Cyclotomic& a, Cyclotomic& b) {
  if (a.field_ == b.field_) return;
  if (b.is_rational()) {
    b = Cyclotomic::rational(a.conductor(), b.coeffs_[0]);
    return;
  }
  if (a.is_rational()) {
    a = Cyclotomic::rational(b.conductor(), a.coeffs_[0]);
    return;
  }
  const int l = std::lcm(a.conductor(), b.conductor());
  a = a.embed(l);
  b = b.embed(l);
}

int common_conductor(std::span<const Cyclotomic> values) {
  int l = 1;
  for (const auto& v : values)
    if (!v.is_rational()) l = std::lcm(l, v.conductor());
  return l;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& other) {
  if (field_ == other.field_) {
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  } else if (other.is_rational()) {
    coeffs_[0] += other.coeffs_[0];
  } else if (is_rational()) {
    const Rational r = coeffs_[0];
    *this = other;
    coeffs_[0] += r;
  } else {
    Cyclotomic rhs = other;
    unify(*this, rhs);
    *this += rhs;
  }
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& other) {
  if (field_ == other.field_) {
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
  } else if (other.is_rational()) {
    coeffs_[0] -= other.coeffs_[0];
  } else if (is_rational()) {
    const Rational r = coeffs_[0];
    *this = -other;
    coeffs_[0] += r;
  } else {
    Cyclotomic rhs = other;
    unify(*this, rhs);
    *this -= rhs;
  }
  return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.field_ != b.field_) {
    if (a.is_rational()) {
      Cyclotomic r = b;
      for (auto& c : r.coeffs_) c *= a.coeffs_[0];
      return r;
    }
    if (b.is_rational()) {
      Cyclotomic r = a;
      for (auto& c : r.coeffs_) c *= b.coeffs_[0];
      return r;
    }
    Cyclotomic x = a, y = b;
    unify(x, y);
    return x * y;
  }
  const std::size_t d = a.coeffs_.size();
  if (d == 1) {
    Cyclotomic r = a;
    r.coeffs_[0] *= b.coeffs_[0];
    return r;
  }
  std::vector<Rational> full(2 * d - 1);
  for (std::size_t i = 0; i < d; ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (sgn(b.coeffs_[j]) == 0) continue;
      full[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  for (std::size_t k = d; k < full.size(); ++k) {
    if (sgn(full[k]) == 0) continue;
    const auto row = a.field_->power_reduction(static_cast<int>(k));
    for (std::size_t j = 0; j < d; ++j) {
      if (row[j] != 0) full[j] += full[k] * row[j];
    }
  }
  full.resize(d);
  Cyclotomic r;
  r.field_ = a.field_;
  r.coeffs_ = std::move(full);
  return r;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& other) {
  *this = *this * other;
  return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& other) {
  *this = *this * other.inverse();
  return *this;
}

std::optional<Cyclotomic> Cyclotomic::try_inverse() const {
  if (is_zero()) return std::nullopt;
  if (is_rational()) return rational(conductor(), 1 / coeffs_[0]);
  // Extended Euclid on (a, Phi_N): track s with s*a = r (mod Phi_N).
  std::vector<Rational> r0(field_->modulus().begin(), field_->modulus().end());
  std::vector<Rational> r1(coeffs_);
  trim(r1);
  std::vector<Rational> s0;            // coefficient of a for r0
  std::vector<Rational> s1{Rational(1)};  // coefficient of a for r1
  while (r1.size() > 1) {
    // q, rem = divmod(r0, r1)
    std::vector<Rational> rem = r0;
    const std::size_t m = r1.size();
    std::vector<Rational> q(r0.size() >= m ? r0.size() - m + 1 : 0);
    const Rational lead = r1.back();
    for (std::size_t top = rem.size(); top-- > m - 1;) {
      if (sgn(rem[top]) == 0) continue;
      const Rational t = rem[top] / lead;
      const std::size_t shift = top - (m - 1);
      q[shift] = t;
      for (std::size_t j = 0; j < m; ++j) rem[shift + j] -= t * r1[j];
    }
    trim(rem);
    // s2 = s0 - q*s1
    std::vector<Rational> s2(std::max(s0.size(), q.size() + s1.size()));
    for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) return std::nullopt;  // a shares a factor with Phi_N: impossible for nonzero a
  for (auto& c : s1) c /= r1[0];
  return Cyclotomic(conductor(), std::move(s1));
}

Cyclotomic Cyclotomic::inverse() const {
  auto inv = try_inverse();
  if (!inv) throw CyclotomicError("division by zero in Q(zeta_" + std::to_string(conductor()) + ")");
  return *std::move(inv);
}

Cyclotomic Cyclotomic::galois(long k) const {
  const long n = conductor();
  if (std::gcd(k, n) != 1) throw CyclotomicError("Galois exponent must be coprime to the conductor");
  std::vector<Rational> poly(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    long e = (static_cast<long>(j) * k) % n;
    if (e < 0) e += n;
    poly[static_cast<std::size_t>(e)] += coeffs_[j];
  }
  return Cyclotomic(static_cast<int>(n), std::move(poly));
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.field_ == b.field_) return a.coeffs_ == b.coeffs_;
  const bool ar = a.is_rational(), br = b.is_rational();
  if (ar || br) return ar && br && a.coeffs_[0] == b.coeffs_[0];
  Cyclotomic x = a, y = b;
  unify(x, y);
  return x.coeffs_ == y.coeffs_;
}

std::size_t Cyclotomic::hash() const noexcept {
  if (is_rational()) return hash_mpq(coeffs_[0]);
  std::size_t h = static_cast<std::size_t>(conductor());
  for (const auto& c : coeffs_) h = h * 0x100000001b3ULL ^ hash_mpq(c);
  return h;
}

std::string Cyclotomic::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const Rational& c = coeffs_[j];
    if (sgn(c) == 0) continue;
    std::string term;
    if (j == 0) {
      term = c.get_str();
    } else {
      const std::string power = j == 1 ? "z" : "z^" + std::to_string(j);
      if (c == 1) {
        term = power;
      } else if (c == -1) {
        term = "-" + power;
      } else {
        term = c.get_str() + "*" + power;
      }
    }
    if (!out.empty() && term.front() != '-') out += '+';
    out += term;
  }
  return out.empty() ? "0" : out;
}

Cyclotomic Cyclotomic::parse(std::string_view text, int conductor) {
  const auto fail = [&](const std::string& why) {
    return CyclotomicError("bad cyclotomic literal '" + std::string(text) + "': " + why);
  };
  std::vector<Rational> poly(static_cast<std::size_t>(conductor));
  std::size_t p = 0;
  const auto skip_ws = [&] {
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
  };
  const auto read_digits = [&] {
    const std::size_t start = p;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
    return std::string(text.substr(start, p - start));
  };
  skip_ws();
  if (p == text.size()) throw fail("empty");
  bool first = true;
  while (true) {
    skip_ws();
    if (p == text.size()) break;
    int sign = 1;
    if (text[p] == '+' || text[p] == '-') {
      sign = text[p] == '-' ? -1 : 1;
      ++p;
      skip_ws();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    first = false;
    Rational coeff(1);
    bool have_number = false;
    const std::string num = read_digits();
    if (!num.empty()) {
      have_number = true;
      std::string den = "1";
      if (p < text.size() && text[p] == '/') {
        ++p;
        den = read_digits();
        if (den.empty()) throw fail("missing denominator");
      }
      coeff = Rational(BigInt(num), BigInt(den));
      if (coeff.get_den() == 0) throw fail("zero denominator");
      coeff.canonicalize();
      skip_ws();
      if (p < text.size() && text[p] == '*') {
        ++p;
        skip_ws();
        if (p == text.size() || text[p] != 'z') throw fail("expected 'z' after '*'");
      }
    }
    long exponent = 0;
    if (p < text.size() && text[p] == 'z') {
      ++p;
      exponent = 1;
      if (p < text.size() && text[p] == '^') {
        ++p;
        const std::string e = read_digits();
        if (e.empty()) throw fail("missing exponent");
        exponent = std::stol(e);
      }
    } else if (!have_number) {
      throw fail("expected a term");
    }
    poly[static_cast<std::size_t>(exponent % conductor)] += sign * coeff;
  }
  return Cyclotomic(conductor, std::move(poly));
}

std::complex<double> Cyclotomic::approximate() const {
  std::complex<double> sum = 0;
  const double step = 2.0 * M_PI / conductor();
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    sum += coeffs_[j].get_d() * std::polar(1.0, step * static_cast<double>(j));
  }
  return sum;
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& value) { return os << value.to_string(); }

}  // namespace dualbraid

#include "dualbraid/linalg.hpp"

namespace dualbraid {

CycMatrix embed(const CycMatrix& m, int conductor) {
  CycMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).embed(conductor);
  return out;
}

int common_conductor(const CycMatrix& m) {
  return common_conductor(std::span<const Cyclotomic>(m.data(), static_cast<std::size_t>(m.size())));
}

}  // namespace dualbraid
