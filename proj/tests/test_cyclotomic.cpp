#include <doctest.h>

#include <random>

#include "dualbraid/cyclotomic.hpp"
#include "dualbraid/linalg.hpp"

using namespace dualbraid;

namespace {

Cyclotomic random_element(std::mt19937_64& rng, int conductor) {
  std::uniform_int_distribution<int> coeff(-6, 6), den(1, 4), k(0, conductor - 1), terms(0, 4);
  Cyclotomic x = Cyclotomic::rational(conductor, Rational(coeff(rng), den(rng)));
  for (int t = terms(rng); t > 0; --t) x += Cyclotomic(Rational(coeff(rng), den(rng))) * Cyclotomic::zeta(conductor, k(rng));
  return x;
}

bool same(const CycMatrix& a, const CycMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != b(i, j)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("cyclotomic") {

TEST_CASE("small identities") {
  CHECK(Cyclotomic::zeta(4) * Cyclotomic::zeta(4) == Cyclotomic(-1L));
  CHECK(Cyclotomic::zeta(7, 7).is_one());
  CHECK(Cyclotomic::zeta(6, -1) == Cyclotomic::zeta(6, 5));
  CHECK_THROWS_AS(Cyclotomic(0L).inverse(), CyclotomicError);
  CHECK_FALSE(Cyclotomic::rational(5, 0).try_inverse());
}

TEST_CASE("golden ratio inverse") {
  // zeta5 + zeta5^4 = (sqrt5 - 1) / 2 satisfies x^2 + x - 1 = 0, so 1/x = 1 + x.
  const Cyclotomic x = Cyclotomic::zeta(5, 1) + Cyclotomic::zeta(5, 4);
  const Cyclotomic expected = Cyclotomic(1L) + x;
  CHECK(x.inverse() == expected);
  CHECK((x * expected).is_one());
}

TEST_CASE("embedding") {
  CHECK(Cyclotomic::rational(2, -1).embed(4) == Cyclotomic::rational(4, -1));
  CHECK(Cyclotomic::rational(2, -1).embed(4).conductor() == 4);
  CHECK(Cyclotomic::zeta(4).embed(8) == Cyclotomic::zeta(8, 2));
  // zeta6^2 reduced modulo x^2 - x + 1
  const Cyclotomic z3 = Cyclotomic::zeta(3).embed(6);
  CHECK(z3 == Cyclotomic::zeta(6, 1) - Cyclotomic(1L));
  CHECK(z3.to_string() == Cyclotomic::parse("-1 + z", 6).to_string());
}

TEST_CASE("parse and print round trip") {
  std::mt19937_64 rng(7);
  for (int conductor : {1, 3, 4, 5, 8, 12, 15}) {
    for (int i = 0; i < 50; ++i) {
      const Cyclotomic x = random_element(rng, conductor);
      CHECK(Cyclotomic::parse(x.to_string(), conductor) == x);
    }
  }
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(2024);
  const int conductors[] = {3, 4, 5, 7, 8, 9, 12, 15, 20, 24};
  int cases = 0;
  for (int round = 0; round < 1000; ++round) {
    for (int conductor : conductors) {
      const Cyclotomic a = random_element(rng, conductor), b = random_element(rng, conductor),
                       c = random_element(rng, conductor);
      REQUIRE(a + b == b + a);
      REQUIRE(a * b == b * a);
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE((a - a).is_zero());
      if (!a.is_zero()) {
        REQUIRE((a * a.inverse()).is_one());
        REQUIRE((b / a) * a == b);
      }
      REQUIRE(a.galois(1) == a);
      ++cases;
    }
  }
  CHECK(cases >= 10000);
}

TEST_CASE("mixed conductors combine in the compositum") {
  const Cyclotomic s = Cyclotomic::zeta(3) + Cyclotomic::zeta(4);
  CHECK(s.conductor() == 12);
  CHECK(s - Cyclotomic::zeta(4) == Cyclotomic::zeta(3).embed(12));
}

}  // TEST_SUITE

TEST_SUITE("linalg") {

TEST_CASE("rank basics") {
  CHECK(rank(CycMatrix(identity<Cyclotomic>(4) - identity<Cyclotomic>(4))) == 0);
  CycMatrix d = identity<Cyclotomic>(2);
  d(0, 0) = Cyclotomic::zeta(3);
  const auto e = eigenspace(d, Cyclotomic::zeta(3));
  REQUIRE(e.size() == 1);
  CHECK(e[0](0) == Cyclotomic(1L));
  CHECK(e[0](1).is_zero());
  CHECK(eigenspace(CycMatrix(identity<Cyclotomic>(3)), Cyclotomic(1L)).size() == 3);
}

TEST_CASE("rank plus nullity on random matrices") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> dim(1, 5), pick(0, 3), conductor_pick(0, 3);
  const int conductors[] = {1, 3, 4, 5};
  int cases = 0;
  for (int round = 0; round < 10000; ++round) {
    const int rows = dim(rng), cols = dim(rng), conductor = conductors[conductor_pick(rng)];
    CycMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) m(i, j) = pick(rng) == 0 ? Cyclotomic(0L) : random_element(rng, conductor);
    }
    // low-rank cases
    if (rows > 1 && pick(rng) == 0) m.row(rows - 1) = m.row(0);
    const auto ker = kernel(m);
    REQUIRE(rank(m) + static_cast<int>(ker.size()) == cols);
    for (const auto& v : ker) {
      const CycVector mv = multiply(m, v);
      for (Eigen::Index i = 0; i < mv.size(); ++i) REQUIRE(mv(i).is_zero());
    }
    ++cases;
  }
  CHECK(cases >= 10000);
}

TEST_CASE("inverse") {
  CycMatrix m(2, 2);
  m << Cyclotomic(1L), Cyclotomic::zeta(5), Cyclotomic(0L), Cyclotomic::zeta(5, 2);
  const CycMatrix inv = inverse(m);
  CHECK(same(multiply(m, inv), identity<Cyclotomic>(2)));
  CycMatrix singular(2, 2);
  singular << Cyclotomic(1L), Cyclotomic(2L), Cyclotomic(2L), Cyclotomic(4L);
  CHECK_THROWS_AS(inverse(singular), SingularMatrixError);
}

}  // TEST_SUITE
