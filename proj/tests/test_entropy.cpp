#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bindcap/entropy.hpp"
#include "bindcap/rng.hpp"

using namespace bindcap;

TEST_CASE("partial entropy at the pinned points") {
  CHECK(partial_entropy(0.0) == 0.0);
  CHECK(partial_entropy(1.0) == 0.0);
  CHECK(partial_entropy(10.0) == doctest::Approx(-23.02585092994046).epsilon(1e-15));
  CHECK(partial_entropy(0.5) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(partial_entropy(-1e-9), std::domain_error);
  CHECK_THROWS_AS(partial_entropy(std::nan("")), std::domain_error);
}

TEST_CASE("product rule holds for rate-scaled arguments") {
  SplitMix64 rng(0x9E37);
  for (int i = 0; i < 10000; ++i) {
    const double k = 1e-3 + 100.0 * rng.next_double();
    const double p = 1e-6 + (1.0 - 1e-6) * rng.next_double();
    const double lhs = partial_entropy(k * p);
    const double rhs = k * partial_entropy(p) + p * partial_entropy(k);
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
    CHECK(std::abs(lhs - rhs) / scale <= 1e-12);
  }
}

TEST_CASE("triple entropy degenerates to binary entropy at q = 0") {
  SplitMix64 rng(0x7E57);
  for (int i = 0; i < 10000; ++i) {
    const double p = 1e-6 + (1.0 - 2e-6) * rng.next_double();
    const double lhs = triple_entropy(p, 0.0);
    const double rhs = -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
    CHECK(std::abs(lhs - rhs) / std::max(rhs, 1e-30) <= 1e-12);
  }
  CHECK(triple_entropy(0.02, 0.0) ==
        doctest::Approx(0.098039113279732).epsilon(1e-13));
}

TEST_CASE("triple entropy corners and domain") {
  CHECK(triple_entropy(0.0, 0.0) == 0.0);
  CHECK(triple_entropy(1.0, 0.0) == 0.0);
  CHECK(triple_entropy(0.0, 1.0) == 0.0);
  CHECK(triple_entropy(1.0 / 3.0, 1.0 / 3.0) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-15));
  CHECK_THROWS_AS(triple_entropy(0.6, 0.5), std::domain_error);
  CHECK_THROWS_AS(triple_entropy(-0.1, 0.2), std::domain_error);
  CHECK_THROWS_AS(triple_entropy(0.2, -0.1), std::domain_error);
  // p + q = 1 exactly must not trip the 1-p-q >= 0 floor.
  CHECK(triple_entropy(0.3, 0.7) ==
        doctest::Approx(-0.3 * std::log(0.3) - 0.7 * std::log(0.7)).epsilon(1e-15));
}

TEST_CASE("per-receptor density vanishes at deterministic inputs") {
  const ReceptorKinetics kin{1.0, 10.0, 20.0};
  CHECK(receptor_info_density(0.0, kin) == doctest::Approx(0.0));
  CHECK(receptor_info_density(1.0, kin) == doctest::Approx(0.0));
  CHECK(receptor_info_density(0.5, kin) > 0.0);
  // Identical rates carry no information at any mixing weight.
  const ReceptorKinetics flat{5.0, 5.0, 20.0};
  CHECK(receptor_info_density(0.3, flat) == doctest::Approx(0.0).epsilon(1e-15));
  // A dead low input is in-domain: the zero-rate terms drop out.
  const ReceptorKinetics dead{0.0, 10.0, 20.0};
  CHECK(std::isfinite(receptor_info_density(0.5, dead)));
  CHECK(receptor_info_density(0.5, dead) > 0.0);
}

TEST_CASE("single-receptor capacity value at the pinned argmax") {
  const ReceptorKinetics kin{1.0, 10.0, 20.0};
  const double p = 0.37169581967451004;
  const double abar = p * kin.alpha_h + (1.0 - p) * kin.alpha_l;
  const double rate = receptor_info_density(p, kin) * kin.beta / (abar + kin.beta);
  CHECK(rate == doctest::Approx(1.7868345439245472).epsilon(1e-13));
}
