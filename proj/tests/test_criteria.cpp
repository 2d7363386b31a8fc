#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "that/criteria.hpp"

using namespace that;

namespace {
// All reference values below were computed independently with 30-digit
// arithmetic and truncated to double precision.
constexpr double kRelTol = 1e-9;
}  // namespace

TEST_CASE("entropy matches reference values") {
  const std::vector<double> pure{1.0};
  const std::vector<double> even{0.5, 0.5};
  const std::vector<double> skew{0.25, 0.75};
  const std::vector<double> tri{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  CHECK(entropy(pure) == doctest::Approx(0.0));
  CHECK(entropy(even) == doctest::Approx(1.0).epsilon(kRelTol));
  CHECK(entropy(skew) == doctest::Approx(0.811278124459132864).epsilon(kRelTol));
  CHECK(entropy(tri) == doctest::Approx(1.584962500721156181).epsilon(kRelTol));

  SUBCASE("zero entries contribute nothing") {
    const std::vector<double> padded{0.25, 0.75, 0.0};
    CHECK(entropy(padded) == doctest::Approx(entropy(skew)).epsilon(kRelTol));
  }
  SUBCASE("rejects malformed inputs") {
    const std::vector<double> negative{-0.25, 1.25};
    const std::vector<double> short_sum{0.25, 0.25};
    CHECK_THROWS_AS(entropy(negative), std::invalid_argument);
    CHECK_THROWS_AS(entropy(short_sum), std::invalid_argument);
  }
}

TEST_CASE("gini matches reference values") {
  const std::vector<double> pure{1.0};
  const std::vector<double> even{0.5, 0.5};
  const std::vector<double> skew{0.25, 0.75};
  CHECK(gini(pure) == doctest::Approx(0.0));
  CHECK(gini(even) == doctest::Approx(0.5).epsilon(kRelTol));
  CHECK(gini(skew) == doctest::Approx(0.375).epsilon(kRelTol));
}

TEST_CASE("impurity dispatches on the criterion") {
  const std::vector<double> skew{0.25, 0.75};
  CHECK(impurity(SplitCriterion::kInfoGain, skew) == doctest::Approx(entropy(skew)));
  CHECK(impurity(SplitCriterion::kGini, skew) == doctest::Approx(gini(skew)));
}

TEST_CASE("criterion_range") {
  CHECK(criterion_range(SplitCriterion::kInfoGain, 2) == doctest::Approx(1.0).epsilon(kRelTol));
  CHECK(criterion_range(SplitCriterion::kInfoGain, 3) ==
        doctest::Approx(1.584962500721156181).epsilon(kRelTol));
  CHECK(criterion_range(SplitCriterion::kInfoGain, 4) == doctest::Approx(2.0).epsilon(kRelTol));
  CHECK(criterion_range(SplitCriterion::kGini, 2) == doctest::Approx(1.0));
  CHECK(criterion_range(SplitCriterion::kGini, 7) == doctest::Approx(1.0));
  CHECK_THROWS_AS(criterion_range(SplitCriterion::kGini, 1), std::invalid_argument);
}

TEST_CASE("hoeffding_bound matches reference values") {
  CHECK(hoeffding_bound(1.0, 0.05, 1000.0) ==
        doctest::Approx(0.0387022756020494937).epsilon(kRelTol));
  CHECK(hoeffding_bound(1.0, 0.2, 200.0) ==
        doctest::Approx(0.0634318120589759830).epsilon(kRelTol));
  CHECK(hoeffding_bound(2.0, 0.1, 500.0) ==
        doctest::Approx(0.0959705182437616242).epsilon(kRelTol));

  SUBCASE("scales linearly in the range and shrinks with n") {
    const double base = hoeffding_bound(1.0, 0.05, 400.0);
    CHECK(hoeffding_bound(2.0, 0.05, 400.0) == doctest::Approx(2.0 * base).epsilon(kRelTol));
    CHECK(hoeffding_bound(1.0, 0.05, 1600.0) == doctest::Approx(base / 2.0).epsilon(kRelTol));
    CHECK(hoeffding_bound(1.0, 0.01, 400.0) > base);
  }
  SUBCASE("rejects out-of-domain arguments") {
    CHECK_THROWS_AS(hoeffding_bound(0.0, 0.05, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(hoeffding_bound(1.0, 0.0, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(hoeffding_bound(1.0, 1.0, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(hoeffding_bound(1.0, 0.05, 0.0), std::invalid_argument);
  }
}

TEST_CASE("merit_of_partition matches hand-computed gains") {
  const std::vector<double> parent{2.0, 6.0};
  const std::vector<std::vector<double>> parts{{2.0, 2.0}, {0.0, 4.0}};
  // Parent entropy 0.8112781..., children (even, pure) average to 0.5 bits.
  CHECK(merit_of_partition(parent, parts, SplitCriterion::kInfoGain) ==
        doctest::Approx(0.311278124459132864).epsilon(kRelTol));
  // Parent gini 0.375, children average to 0.25.
  CHECK(merit_of_partition(parent, parts, SplitCriterion::kGini) ==
        doctest::Approx(0.125).epsilon(kRelTol));

  SUBCASE("invariant under uniform count scaling") {
    const std::vector<double> parent10{20.0, 60.0};
    const std::vector<std::vector<double>> parts10{{20.0, 20.0}, {0.0, 40.0}};
    CHECK(merit_of_partition(parent10, parts10, SplitCriterion::kInfoGain) ==
          doctest::Approx(0.311278124459132864).epsilon(kRelTol));
  }
  SUBCASE("empty parts contribute nothing") {
    const std::vector<std::vector<double>> padded{{2.0, 2.0}, {0.0, 0.0}, {0.0, 4.0}};
    CHECK(merit_of_partition(parent, padded, SplitCriterion::kGini) ==
          doctest::Approx(0.125).epsilon(kRelTol));
  }
  SUBCASE("a split that separates nothing has zero merit") {
    const std::vector<std::vector<double>> same{{1.0, 3.0}, {1.0, 3.0}};
    CHECK(merit_of_partition(parent, same, SplitCriterion::kInfoGain) == doctest::Approx(0.0));
    CHECK(merit_of_partition(parent, same, SplitCriterion::kGini) == doctest::Approx(0.0));
  }
  SUBCASE("never negative even when the parts disagree with the parent") {
    const std::vector<double> skew_parent{2.0, 6.0};
    const std::vector<std::vector<double>> worse{{4.0, 4.0}};
    CHECK(merit_of_partition(skew_parent, worse, SplitCriterion::kInfoGain) == 0.0);
  }
  SUBCASE("degenerate totals yield zero") {
    CHECK(merit_of_partition({0.0, 0.0}, parts, SplitCriterion::kGini) == 0.0);
    CHECK(merit_of_partition(parent, {{0.0, 0.0}}, SplitCriterion::kGini) == 0.0);
  }
}
