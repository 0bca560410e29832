#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "surfext/surfext.hpp"

using namespace surfext;
using namespace surfext::oracle;

TEST_CASE("naive arithmetic helpers", "[oracle]") {
  for (Int n = 2; n <= 40; ++n)
    for (Int c = -n; c < 2 * n; ++c) {
      CHECK(naive_norm(n, c) == normalize_residue(n, c));
      CHECK(naive_order(n, c) == elem_order(n, c));
      CHECK(naive_is_unit(n, c) == is_unit(n, c));
    }

  SECTION("closure floods exactly the generated subgroup") {
    auto in = subgroup_closure(12, {4, 6});
    Int size = 0;
    for (bool b : in) size += b ? 1 : 0;
    CHECK(size == 6);  // gcd(4,6,12) = 2
    CHECK(in[0]);
    CHECK(in[2]);
    CHECK_FALSE(in[1]);
    auto all = subgroup_closure(5, {2});
    CHECK(std::count(all.begin(), all.end(), true) == 5);
    auto none = subgroup_closure(6, {});
    CHECK(std::count(none.begin(), none.end(), true) == 1);
  }

  SECTION("naive validity agrees on shaped input and rejects misshaped") {
    OrbifoldSignature sig{0, {2, 2}};
    CHECK(naive_spec_valid(sig, {4, {}, {}, {2, 2}}) ==
          validate(sig, {4, {}, {}, {2, 2}}).valid);
    CHECK_THROWS_AS(naive_spec_valid(sig, {4, {}, {}, {2}}), PreconditionViolated);
  }
}

TEST_CASE("exhaustive epimorphism enumeration", "[oracle]") {
  SECTION("two cone points of index two at order two") {
    auto specs = brute_force_epimorphisms({0, {2, 2}}, 2);
    REQUIRE(specs.size() == 1);
    CHECK(specs[0].gamma == std::vector<Int>{1, 1});
  }

  SECTION("torus quotients at order two in lexicographic order") {
    auto specs = brute_force_epimorphisms({1, {}}, 2);
    REQUIRE(specs.size() == 3);
    CHECK(specs[0].alpha == std::vector<Int>{0});
    CHECK(specs[0].beta == std::vector<Int>{1});
    CHECK(specs[1].alpha == std::vector<Int>{1});
    CHECK(specs[1].beta == std::vector<Int>{0});
    CHECK(specs[2].alpha == std::vector<Int>{1});
    CHECK(specs[2].beta == std::vector<Int>{1});
  }

  SECTION("impossible signatures come back empty") {
    CHECK(brute_force_epimorphisms({0, {2, 2}}, 3).empty());
    CHECK(brute_force_epimorphisms({0, {3, 3, 3}}, 6).empty());  // never surjective
  }

  SECTION("agrees with the fast enumeration everywhere small") {
    OracleCaps caps;
    for (Int n = 2; n <= 6; ++n)
      for (Int r = 0; r <= 1; ++r)
        for (const auto& indices : divisor_multisets(n, 3)) {
          OrbifoldSignature sig{r, indices};
          auto slow = brute_force_epimorphisms(sig, n, caps);
          auto fast = enumerate_valid_specs(sig, n, caps);
          CHECK(slow == fast);
          for (const auto& spec : slow) CHECK(validate(sig, spec).valid);
        }
  }

  SECTION("budget breakers") {
    OracleCaps caps;
    CHECK_THROWS_AS(brute_force_epimorphisms({1, {}}, caps.max_n + 1, caps), BudgetExceeded);
    caps.max_tuples = 2;
    CHECK_THROWS_AS(brute_force_epimorphisms({1, {}}, 3, caps), BudgetExceeded);
    CHECK_THROWS_AS(brute_force_epimorphisms({0, {2}}, 1), PreconditionViolated);
  }
}

TEST_CASE("exhaustive pairing search", "[oracle]") {
  auto pr = brute_force_matching(5, {1, 4, 2, 3});
  REQUIRE(pr.has_value());
  CHECK(pr->size() == 2);
  CHECK_FALSE(brute_force_matching(5, {1, 1}).has_value());
  CHECK(brute_force_matching(5, {}).has_value());
  CHECK_FALSE(brute_force_matching(4, {1, 3, 2}).has_value());
}

TEST_CASE("unit scans", "[oracle]") {
  OrbifoldSignature sig{0, {2, 2, 3, 3}};
  EpimorphismSpec spec{6, {}, {}, {3, 3, 2, 4}};
  auto units = brute_force_units(6, [&](Int u) { return generators_conjugate(sig, spec, u); });
  CHECK(units == std::vector<Int>{1, 5});
  CHECK(brute_force_units(8, [](Int) { return true; }) == std::vector<Int>{1, 3, 5, 7});
  CHECK_THROWS_AS(brute_force_units(1, [](Int) { return true; }), PreconditionViolated);
}

TEST_CASE("bounded orbit reachability", "[oracle]") {
  OrbifoldSignature sig{1, {}};
  EpimorphismSpec from{5, {2}, {3}, {}};
  EpimorphismSpec normal{5, {1}, {0}, {}};

  auto self = bfs_orbit(sig, from, from, 0);
  CHECK(self.outcome == OrbitSearch::reachable);
  CHECK(self.depth == 0);

  auto hit = bfs_orbit(sig, from, normal, 10);
  CHECK(hit.outcome == OrbitSearch::reachable);
  CHECK(hit.depth >= 1);

  auto miss = bfs_orbit(sig, from, {5, {0}, {0}, {}}, 8);
  CHECK(miss.outcome == OrbitSearch::not_within_depth);
  CHECK(miss.depth == -1);
}

TEST_CASE("enumeration scaffolding", "[oracle]") {
  SECTION("divisor multisets") {
    auto ms = divisor_multisets(6, 2);
    std::vector<std::vector<Int>> expect{{}, {2}, {2, 2}, {2, 3}, {2, 6}, {3},
                                         {3, 3}, {3, 6}, {6}, {6, 6}};
    std::sort(ms.begin(), ms.end());
    std::sort(expect.begin(), expect.end());
    CHECK(ms == expect);
    CHECK(divisor_multisets(5, 0) == std::vector<std::vector<Int>>{{}});
  }

  SECTION("signatures hitting a target genus") {
    for (Int n = 2; n <= 10; ++n)
      for (Int g = 1; g <= 6; ++g)
        for (const auto& sig : signatures_with_genus(n, g))
          CHECK(quotient_genus(sig, n) == g);

    // order 2, genus 2: the hyperelliptic sphere picture or a torus with two
    // branch points (no free quotient, since 2 does not divide g - 1 = 1)
    auto sigs = signatures_with_genus(2, 2);
    REQUIRE(sigs.size() == 2);
    bool has_torus = false, has_branched = false;
    for (const auto& sig : sigs) {
      if (sig.underlying_genus == 1 && sig.singular_indices == std::vector<Int>{2, 2})
        has_torus = true;
      if (sig.underlying_genus == 0 && sig.singular_indices == std::vector<Int>(6, 2))
        has_branched = true;
    }
    CHECK(has_torus);
    CHECK(has_branched);
  }
}

TEST_CASE("agreement suites at smoke scale", "[oracle]") {
  OracleCaps caps;

  auto matching = run_matching_suite(8, 4);
  INFO((matching.failures.empty() ? std::string() : matching.failures.front()));
  CHECK(matching.passed());
  CHECK(matching.checks > 100);

  auto align = run_align_suite(60);
  INFO((align.failures.empty() ? std::string() : align.failures.front()));
  CHECK(align.passed());
  CHECK(align.checks > 100);

  auto norm = run_normalize_suite(6, 1, 3, caps);
  INFO((norm.failures.empty() ? std::string() : norm.failures.front()));
  CHECK(norm.passed());
  CHECK(norm.checks > 100);

  auto atlas = run_atlas_suite(4, caps);
  INFO((atlas.failures.empty() ? std::string() : atlas.failures.front()));
  CHECK(atlas.passed());
  CHECK(atlas.checks > 10);

  auto val = run_validate_suite(12, 4, 20);
  INFO((val.failures.empty() ? std::string() : val.failures.front()));
  CHECK(val.passed());
  CHECK(val.checks > 1000);

  auto moves = run_move_invariance_suite(6, 1, 3, caps);
  INFO((moves.failures.empty() ? std::string() : moves.failures.front()));
  CHECK(moves.passed());
  CHECK(moves.checks > 1000);
}
