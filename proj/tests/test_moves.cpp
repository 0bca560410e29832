#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "surfext/surfext.hpp"

using namespace surfext;

namespace {

const OrbifoldSignature kTorusTwo{1, {2, 2}};
const EpimorphismSpec kTorusTwoSpec{6, {2}, {1}, {3, 3}};

}  // namespace

TEST_CASE("single move effects", "[moves]") {
  SECTION("point slide along alpha shifts beta") {
    auto out = apply_move(kTorusTwo, kTorusTwoSpec, SlidePointAlongAlpha{1, 1, +1});
    CHECK(out.beta == std::vector<Int>{4});
    CHECK(out.alpha == kTorusTwoSpec.alpha);
    CHECK(out.gamma == kTorusTwoSpec.gamma);
  }

  SECTION("point slide along beta shifts alpha") {
    auto out = apply_move(kTorusTwo, kTorusTwoSpec, SlidePointAlongBeta{2, 1, -1});
    CHECK(out.alpha == std::vector<Int>{5});
    CHECK(out.beta == kTorusTwoSpec.beta);
  }

  SECTION("twists") {
    OrbifoldSignature sig{1, {}};
    EpimorphismSpec spec{5, {2}, {3}, {}};
    auto out = apply_move(sig, spec, TwistBeta{1, -1});
    CHECK(out.alpha == std::vector<Int>{4});
    CHECK(out.beta == std::vector<Int>{3});
    out = apply_move(sig, spec, TwistAlpha{1, +1});
    CHECK(out.alpha == std::vector<Int>{2});
    CHECK(out.beta == std::vector<Int>{0});
  }

  SECTION("swap is an involution") {
    auto once = apply_move(kTorusTwo, kTorusTwoSpec, SwapPoints{1, 2});
    auto twice = apply_move(kTorusTwo, once, SwapPoints{1, 2});
    CHECK(twice == kTorusTwoSpec);
  }

  SECTION("handle slide only in the all-alpha-zero regime") {
    OrbifoldSignature sig{2, {}};
    EpimorphismSpec zeroed{5, {0, 0}, {1, 2}, {}};
    auto out = apply_move(sig, zeroed, HandleSlide{2, 1, +1});
    CHECK(out.beta == std::vector<Int>{3, 2});

    EpimorphismSpec blocked{5, {1, 0}, {1, 2}, {}};
    CHECK_THROWS_AS(apply_move(sig, blocked, HandleSlide{2, 1, +1}), RestrictedMove);
  }

  SECTION("rejected moves") {
    CHECK_THROWS_AS(apply_move(kTorusTwo, kTorusTwoSpec, SlidePointAlongAlpha{3, 1, +1}),
                    InvalidMove);
    CHECK_THROWS_AS(apply_move(kTorusTwo, kTorusTwoSpec, SlidePointAlongAlpha{1, 2, +1}),
                    InvalidMove);
    CHECK_THROWS_AS(apply_move(kTorusTwo, kTorusTwoSpec, SlidePointAlongAlpha{1, 1, 0}),
                    InvalidMove);
    CHECK_THROWS_AS(apply_move(kTorusTwo, kTorusTwoSpec, SwapPoints{1, 1}), InvalidMove);
    OrbifoldSignature mixed{1, {2, 3}};
    EpimorphismSpec mspec{6, {1}, {0}, {3, 2}};  // relation fails but moves don't care
    CHECK_THROWS_AS(apply_move(mixed, mspec, SwapPoints{1, 2}), InvalidMove);
    OrbifoldSignature two_handles{2, {}};
    CHECK_THROWS_AS(apply_move(two_handles, {5, {0, 0}, {1, 2}, {}}, HandleSlide{1, 1, +1}),
                    InvalidMove);
  }
}

TEST_CASE("move kinds are stable strings", "[moves]") {
  CHECK(std::string(move_kind(SlidePointAlongAlpha{})) == "slide_point_alpha");
  CHECK(std::string(move_kind(SlidePointAlongBeta{})) == "slide_point_beta");
  CHECK(std::string(move_kind(TwistAlpha{})) == "twist_alpha");
  CHECK(std::string(move_kind(TwistBeta{})) == "twist_beta");
  CHECK(std::string(move_kind(HandleSlide{})) == "handle_slide");
  CHECK(std::string(move_kind(SwapPoints{})) == "swap_points");
}

TEST_CASE("inverse moves undo", "[moves]") {
  for (const Move& mv : candidate_moves(kTorusTwo, kTorusTwoSpec)) {
    auto there = apply_move(kTorusTwo, kTorusTwoSpec, mv);
    auto back = apply_move(kTorusTwo, there, inverse_move(mv));
    CHECK(back == kTorusTwoSpec);
  }
}

TEST_CASE("script replay and inversion", "[moves]") {
  MoveScript script{SlidePointAlongAlpha{1, 1, +1}, TwistBeta{1, -1}, SwapPoints{1, 2},
                    SlidePointAlongBeta{2, 1, +1}};
  auto there = apply_script(kTorusTwo, kTorusTwoSpec, script);
  auto back = apply_script(kTorusTwo, there, inverse_script(script));
  CHECK(back == kTorusTwoSpec);
  CHECK(apply_script(kTorusTwo, kTorusTwoSpec, {}) == kTorusTwoSpec);
}

TEST_CASE("normalization reaches the standard handle images", "[moves]") {
  SECTION("point-slide branch") {
    OrbifoldSignature sig{1, {2, 2}};
    EpimorphismSpec spec{2, {0}, {1}, {1, 1}};
    auto res = normalize(sig, spec);
    CHECK(res.spec.alpha == std::vector<Int>{1});
    CHECK(res.spec.beta == std::vector<Int>{0});
    CHECK(res.spec.gamma == spec.gamma);
    CHECK_FALSE(res.script.empty());
    CHECK(apply_script(sig, spec, res.script) == res.spec);
  }

  SECTION("twist branch") {
    OrbifoldSignature sig{1, {}};
    EpimorphismSpec spec{5, {2}, {3}, {}};
    auto res = normalize(sig, spec);
    CHECK(res.spec.alpha == std::vector<Int>{1});
    CHECK(res.spec.beta == std::vector<Int>{0});
    CHECK(apply_script(sig, spec, res.script) == res.spec);
  }

  SECTION("already normal is a fixed point") {
    OrbifoldSignature sig{1, {}};
    EpimorphismSpec spec{5, {1}, {0}, {}};
    auto res = normalize(sig, spec);
    CHECK(res.script.empty());
    CHECK(res.spec == spec);
  }

  SECTION("nothing to do at genus zero") {
    OrbifoldSignature sig{0, {2, 2, 3, 3}};
    EpimorphismSpec spec{6, {}, {}, {3, 3, 2, 4}};
    auto res = normalize(sig, spec);
    CHECK(res.script.empty());
    CHECK(res.spec == spec);
  }

  SECTION("invalid input is rejected up front") {
    // Images generate only {0, 2} inside Z/4, so this is not surjective.
    CHECK_THROWS_AS(normalize({1, {2, 2}}, {4, {0}, {2}, {2, 2}}), InvalidSpec);
  }

  SECTION("sweep: every valid small spec normalizes and replays") {
    oracle::OracleCaps caps;
    for (Int n = 2; n <= 6; ++n) {
      for (Int r = 1; r <= 2; ++r) {
        for (const auto& indices : oracle::divisor_multisets(n, 3)) {
          OrbifoldSignature sig{r, indices};
          for (const EpimorphismSpec& spec : oracle::enumerate_valid_specs(sig, n, caps)) {
            auto res = normalize(sig, spec);
            CHECK(res.spec.gamma == spec.gamma);
            CHECK(res.spec.alpha[0] == 1);
            for (Int i = 2; i <= r; ++i) CHECK(res.spec.alpha[static_cast<std::size_t>(i - 1)] == 0);
            for (Int b : res.spec.beta) CHECK(b == 0);
            CHECK(apply_script(sig, spec, res.script) == res.spec);
          }
        }
      }
    }
  }
}

TEST_CASE("bounded search over the move graph", "[moves]") {
  OrbifoldSignature sig{1, {}};
  EpimorphismSpec from{5, {2}, {3}, {}};
  EpimorphismSpec normal{5, {1}, {0}, {}};

  CHECK(bounded_move_search(sig, from, from, 0));
  CHECK(bounded_move_search(sig, from, normal, 10));

  auto outcome = move_search(sig, from, normal);
  CHECK(outcome.reachable);
  CHECK(outcome.depth >= 1);
  CHECK(outcome.states_visited >= 2);

  SECTION("unreachable stays unreachable") {
    // surjective and non-surjective tuples sit in different orbits
    EpimorphismSpec stuck{5, {0}, {0}, {}};
    CHECK_FALSE(bounded_move_search(sig, from, stuck, 6));
  }

  SECTION("order mismatch is a precondition error") {
    EpimorphismSpec other{7, {1}, {0}, {}};
    CHECK_THROWS_AS(move_search(sig, from, other), PreconditionViolated);
  }

  SECTION("tiny budget trips the breaker") {
    SearchCaps caps;
    caps.max_depth = 10;
    caps.max_states = 3;
    CHECK_THROWS_AS(move_search(sig, from, normal, caps), BudgetExceeded);
  }
}

TEST_CASE("candidate moves cover both regimes", "[moves]") {
  OrbifoldSignature sig{2, {2, 2}};
  EpimorphismSpec zeroed{4, {0, 0}, {1, 2}, {2, 2}};
  EpimorphismSpec lifted{4, {1, 0}, {1, 2}, {2, 2}};

  auto with_slides = candidate_moves(sig, zeroed);
  auto without = candidate_moves(sig, lifted);
  auto count_kind = [](const std::vector<Move>& moves, const char* kind) {
    return std::count_if(moves.begin(), moves.end(), [&](const Move& mv) {
      return std::string(move_kind(mv)) == kind;
    });
  };
  CHECK(count_kind(with_slides, "handle_slide") == 4);
  CHECK(count_kind(without, "handle_slide") == 0);
  CHECK(count_kind(with_slides, "swap_points") == 1);

  // every emitted move must apply cleanly
  for (const Move& mv : with_slides) CHECK_NOTHROW(apply_move(sig, zeroed, mv));
  for (const Move& mv : without) CHECK_NOTHROW(apply_move(sig, lifted, mv));
}
