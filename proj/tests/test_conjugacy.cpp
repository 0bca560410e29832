#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "surfext/surfext.hpp"

using namespace surfext;

namespace {

const OrbifoldSignature kGood6{0, {2, 2, 3, 3}};
const EpimorphismSpec kGoodSpec6{6, {}, {}, {3, 3, 2, 4}};

// smallest standard form where the per-point and uniform sign readings split
const OrbifoldSignature kSplit12{0, {3, 3, 4, 4}};
const EpimorphismSpec kSplitSpec12{12, {}, {}, {4, 8, 3, 9}};

}  // namespace

TEST_CASE("subgroup conjugacy is class equality", "[conjugacy]") {
  StandardFormClass a{6, 2, 3, 1, 0, 1, 1, 2};
  StandardFormClass b{6, 2, 3, 1, 0, 1, 1, 2};
  StandardFormClass c{2, 1, 2, 1, 0, 0, 3, 2};
  CHECK(subgroups_conjugate(a, b));
  CHECK_FALSE(subgroups_conjugate(a, c));
  CHECK_THROWS_AS(subgroups_conjugate(a, {6, 3, 2, 1, 0, 1, 1, 2}), InvalidClass);
}

TEST_CASE("generator rescalings", "[conjugacy]") {
  CHECK(generators_conjugate(kGood6, kGoodSpec6, 1));
  CHECK(generators_conjugate(kGood6, kGoodSpec6, 5));
  CHECK_THROWS_AS(generators_conjugate(kGood6, kGoodSpec6, 2), NotAUnit);
  CHECK_THROWS_AS(generators_conjugate(kGood6, kGoodSpec6, 0), NotAUnit);

  SECTION("u and its inverse agree, and n-1 is always accepted") {
    for (Int g = 2; g <= 6; ++g) {
      for (const auto& cls : enumerate_atlas(g)) {
        auto [sig, spec] = standard_epimorphism(cls);
        CHECK(generators_conjugate(sig, spec, 1));
        CHECK(generators_conjugate(sig, spec, cls.n - 1));
        for (Int u = 1; u < cls.n; ++u) {
          if (!is_unit(cls.n, u)) continue;
          CHECK(generators_conjugate(sig, spec, u) ==
                generators_conjugate(sig, spec, inverse_mod(cls.n, u)));
        }
      }
    }
  }

  SECTION("order five with all four cone images distinct accepts only ±1") {
    OrbifoldSignature sig{0, {5, 5, 5, 5}};
    EpimorphismSpec spec{5, {}, {}, {1, 4, 2, 3}};
    CHECK(generators_conjugate(sig, spec, 1));
    CHECK(generators_conjugate(sig, spec, 4));
    CHECK_FALSE(generators_conjugate(sig, spec, 2));
    CHECK_FALSE(generators_conjugate(sig, spec, 3));
  }
}

TEST_CASE("sign rule split", "[conjugacy]") {
  REQUIRE(validate(kSplit12, kSplitSpec12).valid);
  CHECK(check_extendable(kSplit12, kSplitSpec12).extendable);

  // u=5 keeps 3 and 9 but can only flip 4 and 8
  CHECK(generators_conjugate(kSplit12, kSplitSpec12, 5, SignRule::per_point));
  CHECK_FALSE(generators_conjugate(kSplit12, kSplitSpec12, 5, SignRule::uniform));
  CHECK(sign_rule_disagreements(kSplit12, kSplitSpec12) == std::vector<Int>{5, 7});

  CHECK(accepted_units(kSplit12, kSplitSpec12, SignRule::per_point) ==
        std::vector<Int>{1, 5, 7, 11});
  CHECK(accepted_units(kSplit12, kSplitSpec12, SignRule::uniform) == std::vector<Int>{1, 11});
  CHECK(count_generator_classes(kSplit12, kSplitSpec12, SignRule::per_point) == 1);
  CHECK(count_generator_classes(kSplit12, kSplitSpec12, SignRule::uniform) == 2);

  SECTION("no disagreement on the order-six showcase") {
    CHECK(sign_rule_disagreements(kGood6, kGoodSpec6).empty());
  }
}

TEST_CASE("generator class counts", "[conjugacy]") {
  CHECK(accepted_units(kGood6, kGoodSpec6) == std::vector<Int>{1, 5});
  CHECK(count_generator_classes(kGood6, kGoodSpec6) == 1);

  SECTION("all four images distinct at order five: two classes") {
    OrbifoldSignature sig{0, {5, 5, 5, 5}};
    EpimorphismSpec spec{5, {}, {}, {1, 4, 1, 4}};
    CHECK(accepted_units(sig, spec) == std::vector<Int>{1, 4});
    CHECK(count_generator_classes(sig, spec) == 2);
  }

  SECTION("free actions have a single class") {
    CHECK(count_generator_classes({2, {}}, {3, {1, 0}, {0, 0}, {}}) == 1);
  }

  SECTION("non-extendable input is rejected") {
    CHECK_THROWS_AS(count_generator_classes({0, {5, 5, 5, 5}}, {5, {}, {}, {1, 4, 2, 3}}),
                    NotExtendable);
  }

  SECTION("counts match the oracle unit scan") {
    for (Int g = 2; g <= 5; ++g) {
      for (const auto& cls : enumerate_atlas(g)) {
        auto [sig, spec] = standard_epimorphism(cls);
        auto units = accepted_units(sig, spec);
        auto slow = oracle::brute_force_units(
            cls.n, [&](Int u) { return generators_conjugate(sig, spec, u); });
        CHECK(units == slow);
        CHECK(count_generator_classes(sig, spec) ==
              euler_phi(cls.n) / static_cast<Int>(units.size()));
      }
    }
  }

  SECTION("count is invariant under move scripts") {
    MoveScript script{SlidePointAlongAlpha{1, 1, +1}, TwistAlpha{1, -1},
                      SlidePointAlongBeta{3, 1, -1}, SwapPoints{1, 2}};
    OrbifoldSignature sig{1, {2, 2, 3, 3}};
    EpimorphismSpec spec{6, {0}, {0}, {3, 3, 2, 4}};
    REQUIRE(validate(sig, spec).valid);
    Int before = count_generator_classes(sig, spec);
    auto moved = apply_script(sig, spec, script);
    CHECK(count_generator_classes(sig, moved) == before);
  }
}

TEST_CASE("bounded conjugacy semi-decision", "[conjugacy]") {
  OrbifoldSignature sig{1, {}};
  EpimorphismSpec spec{5, {2}, {3}, {}};
  EpimorphismSpec normal{5, {1}, {0}, {}};

  CHECK(conjugate_semidecision(sig, spec, sig, spec, 0) == SemiDecision::yes);
  CHECK(conjugate_semidecision(sig, spec, sig, normal, 10) == SemiDecision::yes);

  SECTION("rescaled copies are recognized") {
    EpimorphismSpec doubled{5, {4}, {1}, {}};  // times 2
    CHECK(conjugate_semidecision(sig, spec, sig, doubled, 10) == SemiDecision::yes);
  }

  SECTION("mismatched shapes are unknown, not errors") {
    EpimorphismSpec other{7, {1}, {0}, {}};
    CHECK(conjugate_semidecision(sig, spec, sig, other, 4) == SemiDecision::unknown);
    OrbifoldSignature sig2{2, {}};
    EpimorphismSpec spec2{5, {1, 0}, {0, 0}, {}};
    CHECK(conjugate_semidecision(sig, spec, sig2, spec2, 4) == SemiDecision::unknown);
  }

  SECTION("cone points compare up to reordering") {
    OrbifoldSignature a{0, {2, 3, 2, 3}};
    EpimorphismSpec sa{6, {}, {}, {3, 2, 3, 4}};
    OrbifoldSignature b{0, {2, 2, 3, 3}};
    EpimorphismSpec sb{6, {}, {}, {3, 3, 2, 4}};
    CHECK(conjugate_semidecision(a, sa, b, sb, 4) == SemiDecision::yes);
  }

  SECTION("depth too small comes back unknown") {
    // (2,3) -> (1,0) needs a few moves; depth 0 only matches equal tuples
    CHECK(conjugate_semidecision(sig, spec, sig, normal, 0) == SemiDecision::unknown);
  }
}
