#include <doctest.h>

#include <algorithm>
#include <queue>

#include "support.hpp"

using namespace dualbraid;
using dualbraid::testing::group_elements;

namespace {

bool is_reflection(const CycMatrix& m) {
  return rank(CycMatrix(m - identity<Cyclotomic>(m.rows()))) == 1;
}

// Reflection length of every group element, by breadth-first search over reflection words.
MatrixMap<int> reflection_lengths(const GroupSpec& spec, const std::vector<CycMatrix>& reflections) {
  MatrixMap<int> dist{{identity<Cyclotomic>(spec.rank), 0}};
  std::vector<CycMatrix> frontier{identity<Cyclotomic>(spec.rank)};
  for (int k = 1; !frontier.empty(); ++k) {
    std::vector<CycMatrix> next;
    for (const auto& x : frontier) {
      for (const auto& r : reflections) {
        CycMatrix y = multiply(x, r);
        if (dist.emplace(y, k).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

}  // namespace

TEST_SUITE("catalog") {

TEST_CASE("monomial groups against brute-force closure") {
  const GroupSpec s3 = resolve_group("S3");
  CHECK(s3.rank == 2);
  CHECK(s3.degrees == std::vector<int>{2, 3});
  CHECK(group_elements(s3).size() == 6);

  const GroupSpec b2 = resolve_group("G(2,1,2)");
  CHECK(b2.degrees == std::vector<int>{2, 4});
  CHECK(group_elements(b2).size() == 8);
  CHECK(b2.order() == 8);

  const GroupSpec g332 = resolve_group("G(3,3,2)");
  CHECK(g332.degrees == std::vector<int>{2, 3});
  CHECK(group_elements(g332).size() == 6);

  for (const char* name : {"G(3,1,2)", "G(4,1,2)", "G(3,3,3)", "G(2,1,3)", "G(2,2,4)", "G(4,4,3)", "I2(5)", "A3"}) {
    const GroupSpec g = resolve_group(name);
    INFO(std::string(name));
    CHECK(BigInt(static_cast<unsigned long>(group_elements(g).size())) == g.order());
    CHECK_NOTHROW(validate(g));
  }
}

TEST_CASE("exceptional data") {
  const GroupSpec h3 = load_exceptional("H3");
  CHECK(h3.name == "G23");
  CHECK(h3.degrees == std::vector<int>{2, 6, 10});
  CHECK(h3.expected_reflections == 15);
  const GroupSpec g24 = load_exceptional("G24");
  CHECK(g24.degrees == std::vector<int>{4, 6, 14});
  CHECK(g24.expected_reflections == 21);
  const GroupSpec e8 = load_exceptional("E8");
  CHECK(e8.degrees == std::vector<int>{2, 8, 12, 14, 18, 20, 24, 30});
  CHECK(e8.codegrees == std::vector<int>{28, 22, 18, 16, 12, 10, 6, 0});
  for (const auto& name : exceptional_names()) {
    const GroupSpec g = load_exceptional(name);
    INFO(std::string(name));
    for (std::size_t i = 0; i < g.degrees.size(); ++i) {
      CHECK(g.degrees[i] + g.codegrees[i] == g.coxeter_number());
    }
    const auto ref = reference_row(g.name);
    REQUIRE(ref);
    CHECK(ref->degrees == g.degrees);
  }
}

TEST_CASE("small exceptional groups against brute-force closure") {
  CHECK(group_elements(load_exceptional("H3")).size() == 120);
  CHECK(group_elements(load_exceptional("G24")).size() == 336);
  CHECK(group_elements(load_exceptional("G27")).size() == 2160);
}

TEST_CASE("generator files round trip and are checked") {
  const GroupSpec g = load_exceptional("G27");
  const GroupSpec again = parse_generator_file(format_generator_file(g));
  CHECK(again.degrees == g.degrees);
  CHECK(again.generators.size() == g.generators.size());
  for (std::size_t i = 0; i < g.generators.size(); ++i) CHECK(MatrixEqual{}(again.generators[i], g.generators[i]));

  GroupSpec broken = g;
  broken.codegrees[0] += 1;
  CHECK_THROWS_AS(validate(broken), CatalogError);
  broken = g;
  broken.generators[0] = identity<Cyclotomic>(3);
  CHECK_THROWS_AS(validate(broken), CatalogError);
  CHECK_THROWS_AS(parse_generator_file("dualbraid-generators 2\n"), CatalogError);
}

TEST_CASE("selectors") {
  CHECK(resolve_group("E8").name == "G37");
  CHECK(resolve_group("G37").alias == "E8");
  CHECK(resolve_group("B3").name == "G(2,1,3)");
  CHECK(resolve_group("D4").name == "G(2,2,4)");
  CHECK_THROWS_AS(resolve_group("G99"), CatalogError);
  CHECK_THROWS_AS(resolve_group("G(2,2,2)"), CatalogError);
  CHECK_THROWS_AS(resolve_group("banana"), CatalogError);
}

TEST_CASE("relative degrees") {
  CHECK(relative_degrees(load_exceptional("E8"), 4) == std::vector<int>{8, 12, 20, 24});
}

TEST_CASE("hash is stable") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

}  // TEST_SUITE

TEST_SUITE("group") {

TEST_CASE("reflection counts") {
  CHECK(reflection_closure(resolve_group("S3")).size() == 3);
  CHECK(reflection_closure(load_exceptional("H3")).size() == 15);
  // G(3,1,2): four diagonal reflections and three transpositions twisted by powers of zeta3
  const GroupSpec g = resolve_group("G(3,1,2)");
  const ReflectionSet r = reflection_closure(g);
  CHECK(r.size() == 7);
  std::size_t brute = 0;
  for (const auto& x : group_elements(g)) brute += is_reflection(x);
  CHECK(brute == 7);
  CHECK_THROWS_AS(reflection_closure(load_exceptional("E8"), 50), ClosureOverflow);
}

TEST_CASE("rank-one reflection products") {
  const GroupSpec g = load_exceptional("G24");
  const ReflectionSet r = reflection_closure(g);
  const CycMatrix x = g.generators[0] * Cyclotomic(1L);
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(MatrixEqual{}(r.left_multiply(i, x), multiply(r[i].matrix(), x)));
    CHECK(MatrixEqual{}(r.right_multiply(x, i), multiply(x, r[i].matrix())));
    CHECK(MatrixEqual{}(multiply(r[i].matrix(), r[r.inverse_of(i)].matrix()), identity<Cyclotomic>(3)));
  }
}

TEST_CASE("codim against reflection length") {
  // equal for real groups; for complex groups codim can be smaller, but not on [1,c]
  for (const char* name : {"S3", "A3", "B3", "H3", "G(3,1,2)", "G(3,3,3)", "G24"}) {
    INFO(std::string(name));
    const auto& f = dualbraid::testing::fixture(name);
    std::vector<CycMatrix> rs;
    for (const auto& x : f.reflections) rs.push_back(x.matrix());
    const auto lengths = reflection_lengths(f.spec, rs);
    CHECK(BigInt(static_cast<unsigned long>(lengths.size())) == f.spec.order());
    const bool real = f.spec.conductor <= 2 || f.spec.alias == "H3";
    for (const auto& [w, l] : lengths) {
      REQUIRE(codim(w) <= l);
      if (real || f.interval->find(w)) REQUIRE(codim(w) == l);
    }
  }
  CHECK(codim(identity<Cyclotomic>(4)) == 0);
}

TEST_CASE("regular numbers") {
  const GroupSpec e8 = load_exceptional("E8");
  const GroupSpec h3 = load_exceptional("H3");
  CHECK(is_regular_number(e8, 4));
  CHECK(is_regular_number(h3, 1));
  CHECK_FALSE(is_regular_number(h3, 4));
  CHECK(regular_numbers(h3) == std::vector<int>{1, 2, 3, 5, 6, 10});
  CHECK(center_exponent(h3) == 5);
  CHECK(center_exponent(e8) == 15);
  CHECK(center_exponent(resolve_group("S3")) == 3);
}

TEST_CASE("Coxeter elements") {
  // the 3-cycle of S3
  const GroupSpec s3 = resolve_group("S3");
  const auto r = reflection_closure(s3);
  const auto c = find_coxeter_element(s3, r);
  CHECK(c.from_generators);
  CycMatrix c3 = multiply(c.element.matrix(), multiply(c.element.matrix(), c.element.matrix()));
  CHECK(MatrixEqual{}(c3, identity<Cyclotomic>(2)));
  CHECK_FALSE(MatrixEqual{}(c.element.matrix(), identity<Cyclotomic>(2)));

  for (const auto& name : exceptional_names()) {
    INFO(std::string(name));
    const auto& f = dualbraid::testing::fixture(name);
    CHECK(has_coxeter_spectrum(f.spec, f.c().matrix()));
    CHECK(coxeter_certificate(f.spec, f.reflections, f.c().matrix()));
    CHECK(codim(f.c().matrix()) == f.spec.rank);
  }
  for (const char* name : {"G(3,1,2)", "G(4,1,3)", "G(3,3,3)", "G(5,5,2)", "D4", "B4"}) {
    INFO(std::string(name));
    const GroupSpec g = resolve_group(name);
    const auto rs = reflection_closure(g);
    const auto cox = find_coxeter_element(g, rs);
    CHECK(has_coxeter_spectrum(g, cox.element.matrix()));
    CHECK(codim(cox.element.matrix()) == g.rank);
  }
  // a reflection is not a Coxeter element
  CHECK_FALSE(coxeter_certificate(s3, r, r[0].matrix()));
}

}  // TEST_SUITE
