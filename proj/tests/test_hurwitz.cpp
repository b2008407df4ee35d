#include <doctest.h>

#include <random>
#include <sstream>

#include "dualbraid/hurwitz.hpp"
#include "support.hpp"

using namespace dualbraid;
using dualbraid::testing::fixture;

namespace {

ReflectionTuple random_tuple(std::mt19937_64& rng, std::size_t reflections, std::size_t length) {
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(reflections - 1));
  ReflectionTuple t(length);
  for (auto& x : t) x = pick(rng);
  return t;
}

ReflectionTuple apply(const ConjugationTable& table, ReflectionTuple t, std::initializer_list<int> word) {
  // positive entries are sigma_i, negative are sigma_i^-1
  for (int s : word) t = hurwitz_move(table, t, static_cast<std::size_t>(s > 0 ? s : -s), s > 0 ? 1 : -1);
  return t;
}

}  // namespace

TEST_SUITE("hurwitz") {

TEST_CASE("one move in S3") {
  const auto& f = fixture("S3");
  const ConjugationTable table(f.reflections);
  // (s, t) -> (t, t s t)
  for (std::uint32_t s = 0; s < 3; ++s) {
    for (std::uint32_t t = 0; t < 3; ++t) {
      if (s == t) continue;
      const auto moved = hurwitz_move(table, {s, t}, 1, 1);
      CHECK(moved[0] == t);
      const CycMatrix tst = multiply(f.reflections[t].matrix(), multiply(f.reflections[s].matrix(), f.reflections[t].matrix()));
      CHECK(MatrixEqual{}(f.reflections[moved[1]].matrix(), tst));
      // the remaining transposition
      CHECK(moved[1] != s);
      CHECK(moved[1] != t);
    }
  }
}

TEST_CASE("braid relations and product invariance") {
  std::mt19937_64 rng(11);
  int cases = 0;
  for (const char* name : {"H3", "G24", "F4", "G29", "G(3,1,3)"}) {
    const auto& f = fixture(name);
    const ConjugationTable table(f.reflections);
    for (int i = 0; i < 2000; ++i) {
      const auto t = random_tuple(rng, f.reflections.size(), 4);
      REQUIRE(apply(table, t, {1, -1}) == t);
      REQUIRE(apply(table, t, {-2, 2}) == t);
      REQUIRE(apply(table, t, {1, 2, 1}) == apply(table, t, {2, 1, 2}));
      REQUIRE(apply(table, t, {2, 3, 2}) == apply(table, t, {3, 2, 3}));
      REQUIRE(apply(table, t, {1, 3}) == apply(table, t, {3, 1}));
      const auto moved = apply(table, t, {1, 2, -3});
      REQUIRE(MatrixEqual{}(tuple_product(f.reflections, moved), tuple_product(f.reflections, t)));
      ++cases;
    }
  }
  CHECK(cases >= 10000);
}

TEST_CASE("seed is a reduced decomposition of c") {
  for (const char* name : {"S3", "H3", "G24", "E6"}) {
    const auto& f = fixture(name);
    const auto seed = reduced_decompositions_seed(*f.interval);
    CHECK(seed.size() == static_cast<std::size_t>(f.spec.rank));
    CHECK(MatrixEqual{}(tuple_product(f.reflections, seed), f.c().matrix()));
  }
}

TEST_CASE("orbit sizes") {
  // S3: brute force over all pairs of reflections
  const auto& s3 = fixture("S3");
  int brute = 0;
  for (const auto& a : s3.reflections) {
    for (const auto& b : s3.reflections) brute += (a * b) == s3.c();
  }
  CHECK(brute == 3);
  const ConjugationTable t3(s3.reflections);
  CHECK(hurwitz_orbit(t3, reduced_decompositions_seed(*s3.interval), 100).size == 3);

  for (const auto& [name, expected] : std::vector<std::pair<const char*, std::uint64_t>>{
           {"H3", 50}, {"G24", 49}, {"G27", 75}, {"F4", 432}, {"G29", 500}}) {
    INFO(std::string(name));
    const auto& f = fixture(name);
    const ConjugationTable table(f.reflections);
    const auto stats = hurwitz_orbit(table, reduced_decompositions_seed(*f.interval), 1000000);
    CHECK(stats.complete);
    CHECK(stats.size == expected);
    CHECK(BigInt(static_cast<unsigned long>(stats.size)) == maximal_chain_formula(f.spec));
  }
}

TEST_CASE("cap and dump") {
  const auto& f = fixture("F4");
  const ConjugationTable table(f.reflections);
  const auto seed = reduced_decompositions_seed(*f.interval);
  const auto partial = hurwitz_orbit(table, seed, 100);
  CHECK_FALSE(partial.complete);
  CHECK(partial.size == 100);
  std::ostringstream dump;
  const auto full = hurwitz_orbit(table, seed, 1000, &dump);
  CHECK(full.complete);
  std::istringstream lines(dump.str());
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) count += !line.empty();
  CHECK(count == full.size);
}

}  // TEST_SUITE
