#include <doctest.h>

#include <cmath>
#include <limits>

#include "bindcap/channel.hpp"
#include "bindcap/discrete.hpp"
#include "bindcap/errors.hpp"
#include "bindcap/policy.hpp"

using namespace bindcap;

namespace {
const ReceptorKinetics kRef{1.0, 10.0, 20.0};
}

TEST_CASE("independent builder uses mass-action totals") {
  const BirthDeathChannel ch = build_independent_channel(3, kRef);
  CHECK(ch.n() == 3);
  CHECK(ch.kind() == ChannelKind::independent);
  CHECK(ch.up_h() == std::vector<double>{30.0, 20.0, 10.0});
  CHECK(ch.up_l() == std::vector<double>{3.0, 2.0, 1.0});
  CHECK(ch.down() == std::vector<double>{20.0, 40.0, 60.0});
  REQUIRE(ch.kinetics().has_value());
  CHECK(ch.kinetics()->alpha_h == 10.0);
}

TEST_CASE("cooperative builder keeps totals occupancy-independent") {
  const BirthDeathChannel ch = build_cooperative_channel(2, kRef);
  CHECK(ch.kind() == ChannelKind::cooperative);
  CHECK(ch.up_h() == std::vector<double>{10.0, 10.0});
  CHECK(ch.up_l() == std::vector<double>{1.0, 1.0});
  CHECK(ch.down() == std::vector<double>{20.0, 20.0});
}

TEST_CASE("boundary rates vanish") {
  const BirthDeathChannel ch = build_independent_channel(2, kRef);
  CHECK(ch.up_rate(2, true) == 0.0);
  CHECK(ch.up_rate(2, false) == 0.0);
  CHECK(ch.down_rate(0) == 0.0);
  CHECK(ch.down_rate(1) == 20.0);
  CHECK(ch.down_rate(2) == 40.0);
}

TEST_CASE("kinetics validation") {
  CHECK_THROWS_AS(build_independent_channel(0, kRef), ValidationError);
  CHECK_THROWS_AS(build_independent_channel(2, ReceptorKinetics{10.0, 1.0, 20.0}),
                  ValidationError);  // alpha_l > alpha_h
  CHECK_THROWS_AS(build_independent_channel(2, ReceptorKinetics{1.0, 10.0, 0.0}),
                  ValidationError);  // beta must be positive
  CHECK_THROWS_AS(build_independent_channel(2, ReceptorKinetics{-1.0, 10.0, 20.0}),
                  ValidationError);
  CHECK_THROWS_AS(
      build_independent_channel(
          2, ReceptorKinetics{1.0, std::numeric_limits<double>::infinity(), 20.0}),
      ValidationError);
  // Equal low and high rates are a valid (zero-information) channel.
  CHECK_NOTHROW(build_independent_channel(2, ReceptorKinetics{5.0, 5.0, 20.0}));
  // A dead low input is allowed at construction time.
  CHECK_NOTHROW(build_independent_channel(2, ReceptorKinetics{0.0, 10.0, 20.0}));
}

TEST_CASE("custom builder checks rate vectors") {
  CHECK_NOTHROW(build_custom_channel({1.0, 2.0}, {0.0, 0.5}, {3.0, 4.0}));
  CHECK_THROWS_AS(build_custom_channel({1.0}, {0.5, 0.5}, {3.0}),
                  ValidationError);  // length mismatch
  CHECK_THROWS_AS(build_custom_channel({1.0}, {0.5}, {0.0}),
                  ValidationError);  // down-rate must be positive
  CHECK_THROWS_AS(build_custom_channel({-1.0}, {0.5}, {3.0}), ValidationError);
  CHECK_THROWS_AS(build_custom_channel({}, {}, {}), ValidationError);
  const BirthDeathChannel ch = build_custom_channel({1.0, 2.0}, {0.5, 0.5}, {3.0, 4.0});
  CHECK(ch.kind() == ChannelKind::custom);
  CHECK_FALSE(ch.kinetics().has_value());
}

TEST_CASE("kind strings round-trip") {
  for (ChannelKind k : {ChannelKind::independent, ChannelKind::cooperative,
                        ChannelKind::custom}) {
    CHECK(channel_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(channel_kind_from_string("bogus"), ValidationError);
}

TEST_CASE("largest valid time step comes from the busiest row") {
  const BirthDeathChannel ch = build_independent_channel(2, kRef);
  // Exit rates under high input: state 0: 20, state 1: 10+20, state 2: 40.
  CHECK(max_time_step(ch) == doctest::Approx(1.0 / 40.0).epsilon(1e-15));
  CHECK_NOTHROW(check_time_step(ch, 0.024));
  CHECK_THROWS_AS(check_time_step(ch, 1.0 / 40.0), StepSizeError);
  CHECK_THROWS_AS(check_time_step(ch, 0.5), StepSizeError);
  CHECK_THROWS_AS(check_time_step(ch, 0.0), StepSizeError);
  CHECK_THROWS_AS(check_time_step(ch, -1e-3), StepSizeError);
}

TEST_CASE("discretized matrices are row-stochastic and tridiagonal") {
  const BirthDeathChannel ch = build_independent_channel(3, kRef);
  const double tau = 0.3 * max_time_step(ch);
  const DiscreteChannelMatrices m = discretize(ch, tau);
  for (const Matrix* p : {&m.p_h, &m.p_l}) {
    REQUIRE(p->rows() == 4);
    REQUIRE(p->cols() == 4);
    for (int i = 0; i < 4; ++i) {
      double row = 0.0;
      for (int j = 0; j < 4; ++j) {
        row += (*p)(i, j);
        if (j < i - 1 || j > i + 1) CHECK((*p)(i, j) == 0.0);
        CHECK((*p)(i, j) >= 0.0);
      }
      CHECK(row == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  CHECK(m.p_h(0, 1) == doctest::Approx(tau * 30.0));
  CHECK(m.p_l(0, 1) == doctest::Approx(tau * 3.0));
  CHECK(m.p_h(2, 1) == doctest::Approx(tau * 40.0));
  CHECK(m.p_h(2, 1) == m.p_l(2, 1));  // unbinding ignores the input
}

TEST_CASE("output chain mixes the up-rates by the policy") {
  const BirthDeathChannel ch = build_independent_channel(2, kRef);
  const FeedbackPolicy pol{{0.5, 0.5}};
  const Matrix p = output_chain(ch, pol, 1e-3);
  CHECK(p(0, 1) == doctest::Approx(0.011).epsilon(1e-12));
  CHECK(p(1, 2) == doctest::Approx(0.0055).epsilon(1e-12));
  CHECK(p(1, 0) == doctest::Approx(0.020).epsilon(1e-12));
}

TEST_CASE("policy validation") {
  CHECK_NOTHROW(validate(FeedbackPolicy{{0.0, 1.0, 0.5}}));
  CHECK_THROWS_AS(validate(FeedbackPolicy{{}}), ValidationError);
  CHECK_THROWS_AS(validate(FeedbackPolicy{{1.2}}), ValidationError);
  CHECK_THROWS_AS(validate(FeedbackPolicy{{-0.1}}), ValidationError);
  CHECK_THROWS_AS(validate(FeedbackPolicy{{std::nan("")}}), ValidationError);
  CHECK_NOTHROW(validate_for(FeedbackPolicy::uniform(4, 0.3), 4));
  CHECK_THROWS_AS(validate_for(FeedbackPolicy::uniform(3, 0.3), 4),
                  ValidationError);
  // The fully bound state carries no policy entry.
  const BirthDeathChannel ch = build_independent_channel(2, kRef);
  CHECK_THROWS_AS(averaged_up_rates(ch, FeedbackPolicy::uniform(3, 0.3)),
                  ValidationError);
}
