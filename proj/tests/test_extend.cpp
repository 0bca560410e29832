#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "surfext/surfext.hpp"

using namespace surfext;

namespace {

// the two bounding/non-bounding showcase actions at order 5 and 6
const OrbifoldSignature kSphere5{0, {5, 5, 5, 5}};
const EpimorphismSpec kSpec5{5, {}, {}, {1, 4, 2, 3}};
const OrbifoldSignature kSphere6{0, {6, 6, 3, 3}};
const EpimorphismSpec kSpec6{6, {}, {}, {1, 5, 2, 4}};
const OrbifoldSignature kGood6{0, {2, 2, 3, 3}};
const EpimorphismSpec kGoodSpec6{6, {}, {}, {3, 3, 2, 4}};

}  // namespace

TEST_CASE("inverse pairing", "[extend]") {
  auto pr = inverse_pairing(5, {1, 4, 2, 3});
  REQUIRE(pr.has_value());
  CHECK(*pr == Pairing{{1, 2}, {3, 4}});

  pr = inverse_pairing(2, {1, 1});
  REQUIRE(pr.has_value());
  CHECK(*pr == Pairing{{1, 2}});

  CHECK_FALSE(inverse_pairing(5, {1, 1, 4, 2}).has_value());
  CHECK_FALSE(inverse_pairing(5, {1, 4, 2}).has_value());
  CHECK(inverse_pairing(5, {}).has_value());
  CHECK(inverse_pairing(6, {3, 3, 3, 3}).has_value());

  SECTION("pairing is deterministic lowest-index-first") {
    auto p2 = inverse_pairing(4, {1, 3, 1, 3});
    REQUIRE(p2.has_value());
    CHECK(*p2 == Pairing{{1, 2}, {3, 4}});
  }
}

TEST_CASE("extendability verdicts", "[extend]") {
  SECTION("order five fails exactly the sign condition") {
    auto v = check_extendable(kSphere5, kSpec5);
    CHECK_FALSE(v.extendable);
    CHECK(v.condition_a.pass);
    CHECK_FALSE(v.condition_b.pass);
    CHECK(v.condition_c.pass);
    CHECK(v.failed_conditions() == std::vector<char>{'b'});
    REQUIRE(v.pairing.has_value());
    CHECK(*v.pairing == Pairing{{1, 2}, {3, 4}});
  }

  SECTION("order six fails exactly the coprime condition") {
    auto v = check_extendable(kSphere6, kSpec6);
    CHECK_FALSE(v.extendable);
    CHECK_FALSE(v.condition_a.pass);
    CHECK(v.condition_b.pass);
    CHECK(v.condition_c.pass);
    CHECK(v.failed_conditions() == std::vector<char>{'a'});
  }

  SECTION("the genus-two order-six action passes everything") {
    auto v = check_extendable(kGood6, kGoodSpec6);
    CHECK(v.extendable);
    CHECK(v.failed_conditions().empty());
    REQUIRE(v.pairing.has_value());
    CHECK(*v.pairing == Pairing{{1, 2}, {3, 4}});
  }

  SECTION("free actions always extend") {
    auto v = check_extendable({2, {}}, {3, {1, 0}, {0, 0}, {}});
    CHECK(v.extendable);
    REQUIRE(v.pairing.has_value());
    CHECK(v.pairing->empty());
  }

  SECTION("condition (c) can fail alone") {
    auto v = check_extendable({1, {3, 3, 3}}, {3, {1}, {0}, {1, 1, 1}});
    CHECK(v.condition_a.pass);
    CHECK(v.condition_b.pass);
    CHECK_FALSE(v.condition_c.pass);
    CHECK_FALSE(v.pairing.has_value());
  }

  SECTION("invalid input propagates") {
    CHECK_THROWS_AS(check_extendable(kSphere5, {5, {}, {}, {1, 4, 2, 2}}), InvalidSpec);
  }

  SECTION("condition (c) forces even counts at each index") {
    for (Int n = 2; n <= 8; ++n) {
      oracle::OracleCaps caps;
      for (const auto& indices : oracle::divisor_multisets(n, 4)) {
        OrbifoldSignature sig{0, indices};
        for (const auto& spec : oracle::enumerate_valid_specs(sig, n, caps)) {
          auto v = check_extendable(sig, spec);
          if (!v.extendable) continue;
          std::map<Int, Int> per_index;
          for (Int d : indices) ++per_index[d];
          for (auto [d, cnt] : per_index) CHECK(cnt % 2 == 0);
        }
      }
    }
  }
}

TEST_CASE("canonical classes", "[extend]") {
  auto cls = canonical_class(kGood6, kGoodSpec6);
  CHECK(cls.key() == std::make_tuple(6, 2, 3, 1, 0, 1, 1));
  CHECK(cls.genus == 2);

  SECTION("free class keeps handles and genus consistent") {
    StandardFormClass f = canonical_class({2, {}}, {3, {1, 0}, {0, 0}, {}});
    CHECK(f.key() == std::make_tuple(3, 1, 1, 3, 2, 0, 0));
    CHECK(f.genus == quotient_genus({2, {}}, 3));
    CHECK(f.genus == 4);
  }

  SECTION("single index value lands in the q slot") {
    StandardFormClass c = canonical_class({0, {2, 2}}, {2, {}, {}, {1, 1}});
    CHECK(c.key() == std::make_tuple(2, 1, 2, 1, 0, 0, 1));
    CHECK(c.genus == 0);
  }

  SECTION("non-extendable input throws with the failing letters") {
    CHECK_THROWS_AS(canonical_class(kSphere5, kSpec5), NotExtendable);
    CHECK_THROWS_WITH(canonical_class(kSphere5, kSpec5),
                      Catch::Matchers::ContainsSubstring("condition (b)"));
  }
}

TEST_CASE("class validation", "[extend]") {
  CHECK_NOTHROW(check_class({6, 2, 3, 1, 0, 1, 1, 2}));
  CHECK_NOTHROW(check_class({4, 1, 1, 4, 2, 0, 0, 5}));

  CHECK_THROWS_AS(check_class({6, 2, 4, 1, 0, 1, 1, 2}), InvalidClass);   // gcd > 1
  CHECK_THROWS_AS(check_class({6, 3, 2, 1, 0, 1, 1, 2}), InvalidClass);   // p > q
  CHECK_THROWS_AS(check_class({6, 1, 3, 2, 0, 0, 1, 4}), InvalidClass);   // r=0 with m=2
  CHECK_THROWS_AS(check_class({6, 2, 3, 1, 0, 0, 1, 2}), InvalidClass);   // p=2 but s1=0
  CHECK_THROWS_AS(check_class({6, 2, 3, 1, 0, 1, 1, 3}), InvalidClass);   // genus off by one
  CHECK_THROWS_AS(check_class({12, 2, 3, 1, 0, 1, 1, 2}), InvalidClass);  // n != m*p*q
  CHECK_THROWS_AS(check_class({1, 1, 1, 1, 1, 0, 0, 1}), InvalidClass);   // order too small
}

TEST_CASE("standard form witnesses", "[extend]") {
  SECTION("cone-point class") {
    auto [sig, spec] = standard_epimorphism({6, 2, 3, 1, 0, 1, 1, 2});
    CHECK(sig.underlying_genus == 0);
    CHECK(sig.singular_indices == std::vector<Int>{2, 2, 3, 3});
    CHECK(spec.gamma == std::vector<Int>{3, 3, 2, 4});
    CHECK(spec.alpha.empty());
    CHECK(validate(sig, spec).valid);
    CHECK(canonical_class(sig, spec) == StandardFormClass{6, 2, 3, 1, 0, 1, 1, 2});
  }

  SECTION("handle class") {
    auto [sig, spec] = standard_epimorphism({2, 1, 2, 1, 1, 0, 1, 2});
    CHECK(sig.underlying_genus == 1);
    CHECK(sig.singular_indices == std::vector<Int>{2, 2});
    CHECK(spec.alpha == std::vector<Int>{1});
    CHECK(spec.beta == std::vector<Int>{0});
    CHECK(spec.gamma == std::vector<Int>{1, 1});
    CHECK(validate(sig, spec).valid);
  }

  SECTION("free class") {
    auto [sig, spec] = standard_epimorphism({4, 1, 1, 4, 2, 0, 0, 5});
    CHECK(sig.singular_indices.empty());
    CHECK(spec.alpha == std::vector<Int>{1, 0});
    CHECK(spec.beta == std::vector<Int>{0, 0});
    CHECK(validate(sig, spec).valid);
  }

  CHECK_THROWS_AS(standard_epimorphism({6, 3, 2, 1, 0, 1, 1, 2}), InvalidClass);
}

TEST_CASE("atlas enumeration", "[extend]") {
  SECTION("genus two is the classical list") {
    auto atlas = enumerate_atlas(2);
    std::vector<StandardFormClass> expect{
        {2, 1, 2, 1, 0, 0, 3, 2}, {2, 1, 2, 1, 1, 0, 1, 2}, {3, 1, 3, 1, 0, 0, 2, 2},
        {6, 2, 3, 1, 0, 1, 1, 2}};
    CHECK(atlas == expect);
  }

  SECTION("free classes come from divisors of g-1") {
    auto atlas = enumerate_atlas(7);
    std::set<Int> free_orders;
    for (const auto& c : atlas)
      if (c.s1 == 0 && c.s2 == 0) {
        free_orders.insert(c.n);
        CHECK(c.r == 1 + 6 / c.n);
      }
    CHECK(free_orders == std::set<Int>{2, 3, 6});
  }

  SECTION("genus one needs a cap") {
    CHECK_THROWS_AS(enumerate_atlas(1), UncappedInfiniteFamily);
    auto atlas = enumerate_atlas(1, 4);
    std::vector<StandardFormClass> expect{
        {2, 1, 1, 2, 1, 0, 0, 1}, {2, 1, 2, 1, 0, 0, 2, 1}, {3, 1, 1, 3, 1, 0, 0, 1},
        {4, 1, 1, 4, 1, 0, 0, 1}};
    CHECK(atlas == expect);
  }

  SECTION("bad arguments") {
    CHECK_THROWS_AS(enumerate_atlas(0), PreconditionViolated);
    CHECK_THROWS_AS(enumerate_atlas(2, 1), PreconditionViolated);
  }

  SECTION("every class round-trips through its witness") {
    for (Int g = 2; g <= 8; ++g) {
      for (const auto& cls : enumerate_atlas(g)) {
        auto [sig, spec] = standard_epimorphism(cls);
        CHECK(validate(sig, spec).valid);
        auto v = check_extendable(sig, spec);
        CHECK(v.extendable);
        CHECK(canonical_class(sig, spec) == cls);
        CHECK(cls.genus == g);
      }
    }
  }
}

TEST_CASE("embedding recipes", "[extend]") {
  SECTION("graph spine at quotient genus zero") {
    auto rec = embedding_recipe({6, 2, 3, 1, 0, 1, 1, 2});
    CHECK(rec.rotation == std::pair<Int, Int>{3, 2});
    REQUIRE(rec.graph_beta1.has_value());
    CHECK(*rec.graph_beta1 == 2);
    CHECK(rec.vertex_orbits == std::vector<OrbitCount>{{1, 6}, {1, 3}, {1, 2}});
    CHECK(rec.edge_orbits == std::vector<OrbitCount>{{2, 6}});
    CHECK(rec.added_handles_per_point == 0);
  }

  SECTION("single-index spine") {
    auto rec = embedding_recipe({2, 1, 2, 1, 0, 0, 3, 2});
    REQUIRE(rec.graph_beta1.has_value());
    CHECK(*rec.graph_beta1 == 2);  // V = 2 + 3*1 = 5, E = 3*2 = 6
    CHECK(rec.vertex_orbits == std::vector<OrbitCount>{{1, 2}, {3, 1}});
    CHECK(rec.edge_orbits == std::vector<OrbitCount>{{3, 2}});
  }

  SECTION("torus picture for positive quotient genus") {
    auto rec = embedding_recipe({4, 1, 1, 4, 2, 0, 0, 5});
    CHECK_FALSE(rec.graph_beta1.has_value());
    CHECK(rec.added_handles_per_point == 1);
    CHECK(rec.vertex_orbits.empty());
    CHECK(rec.edge_orbits.empty());

    auto mixed = embedding_recipe({6, 2, 3, 1, 1, 1, 1, 8});
    CHECK(mixed.added_handles_per_point == 0);
    CHECK(mixed.vertex_orbits == std::vector<OrbitCount>{{1, 3}, {1, 2}, {2, 6}});
    CHECK(mixed.edge_orbits == std::vector<OrbitCount>{{1, 6}, {1, 6}});
  }

  SECTION("spine Betti number equals the genus on every r=0 class") {
    for (Int g = 2; g <= 12; ++g)
      for (const auto& cls : enumerate_atlas(g))
        if (cls.r == 0) {
          auto rec = embedding_recipe(cls);
          REQUIRE(rec.graph_beta1.has_value());
          CHECK(*rec.graph_beta1 == g);
        }
  }
}
