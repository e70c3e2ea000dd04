#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <cstdint>
#include <limits>
#include <random>

#include "etf/eisenstein.hpp"

namespace {

std::complex<double> numeric(etf::EisensteinInt x) {
  const std::complex<double> w{-0.5, std::sqrt(3.0) / 2.0};
  return static_cast<double>(x.a) + static_cast<double>(x.b) * w;
}

etf::EisensteinInt random_value(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(-1000000, 1000000);
  return {d(rng), d(rng)};
}

}  // namespace

TEST_CASE("basis products and conjugation", "[eisenstein]") {
  const etf::EisensteinInt one{1, 0};
  const etf::EisensteinInt w{0, 1};
  const etf::EisensteinInt w2{-1, -1};

  CHECK(one * w == w);
  CHECK(w * w == w2);
  CHECK(w * w2 == one);
  CHECK(w * w * w == one);
  CHECK(conj(w) == w2);
  CHECK(conj(w2) == w);
  CHECK(conj(one) == one);
  CHECK((w + w2 + one).is_zero());
}

TEST_CASE("cube root wrapper agrees with ring values", "[eisenstein]") {
  using etf::CubeRoot;
  CHECK(CubeRoot::one().value() == etf::EisensteinInt{1, 0});
  CHECK(CubeRoot::omega().value() == etf::EisensteinInt{0, 1});
  CHECK(CubeRoot::omega_sq().value() == etf::EisensteinInt{-1, -1});
  CHECK(CubeRoot::from_exponent(-1) == CubeRoot::omega_sq());
  CHECK(CubeRoot::from_exponent(7) == CubeRoot::omega());

  for (int s = 0; s < 3; ++s) {
    for (int t = 0; t < 3; ++t) {
      const auto x = etf::CubeRoot::from_exponent(s);
      const auto y = etf::CubeRoot::from_exponent(t);
      CHECK((x * y).value() == x.value() * y.value());
    }
    const auto x = etf::CubeRoot::from_exponent(s);
    CHECK(x.conj().value() == conj(x.value()));
    CHECK(norm(x.value()) == 1);
  }
}

TEST_CASE("combination a + b w + c w^2 vanishes exactly when a = b = c", "[eisenstein]") {
  const etf::EisensteinInt w{0, 1};
  const etf::EisensteinInt w2{-1, -1};
  for (std::int64_t a = -10; a <= 10; ++a) {
    for (std::int64_t b = -10; b <= 10; ++b) {
      for (std::int64_t c = -10; c <= 10; ++c) {
        const bool claimed = etf::real_combination_is_zero(a, b, c);
        REQUIRE(claimed == (a == b && b == c));

        const etf::EisensteinInt sum = etf::EisensteinInt{a, 0} + b * w + c * w2;
        REQUIRE(claimed == sum.is_zero());

        const double mag = std::abs(numeric(sum));
        REQUIRE(claimed == (mag < 1e-9));
      }
    }
  }
}

TEST_CASE("ring laws on random values", "[eisenstein]") {
  std::mt19937_64 rng(0x5eed0001);
  for (int iter = 0; iter < 2000; ++iter) {
    const auto x = random_value(rng);
    const auto y = random_value(rng);
    const auto z = random_value(rng);

    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK((x + y) + z == x + (y + z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(conj(conj(x)) == x);
    CHECK(conj(x * y) == conj(x) * conj(y));
    CHECK(x - x == etf::EisensteinInt{});

    const auto nx = x * conj(x);
    CHECK(nx.b == 0);
    CHECK(nx.a == etf::norm(x));
    CHECK(etf::norm(x) >= 0);
  }
}

TEST_CASE("norm is multiplicative", "[eisenstein]") {
  std::mt19937_64 rng(0x5eed0002);
  std::uniform_int_distribution<std::int64_t> d(-30000, 30000);
  for (int iter = 0; iter < 2000; ++iter) {
    const etf::EisensteinInt x{d(rng), d(rng)};
    const etf::EisensteinInt y{d(rng), d(rng)};
    CHECK(etf::norm(x * y) == etf::norm(x) * etf::norm(y));
  }
}

TEST_CASE("arithmetic overflow is detected", "[eisenstein]") {
  const auto big = std::numeric_limits<std::int64_t>::max();
  const auto low = std::numeric_limits<std::int64_t>::min();
  CHECK_THROWS_AS((etf::EisensteinInt{big, 0} + etf::EisensteinInt{1, 0}), std::overflow_error);
  CHECK_THROWS_AS((etf::EisensteinInt{low, 0} - etf::EisensteinInt{1, 0}), std::overflow_error);
  CHECK_THROWS_AS((etf::EisensteinInt{big, 1} * etf::EisensteinInt{2, 0}), std::overflow_error);
  CHECK_THROWS_AS(conj(etf::EisensteinInt{0, low}), std::overflow_error);
  CHECK_THROWS_AS(etf::norm(etf::EisensteinInt{big, big}), std::overflow_error);
  CHECK_THROWS_AS(etf::real_combination_is_zero(big, 0, -1), std::overflow_error);
}
