#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "etf/constructions.hpp"
#include "etf/digraph.hpp"
#include "etf/eisenstein.hpp"
#include "etf/seidel.hpp"
#include "oracles.hpp"

namespace {

// (Q + I)^2 computed entrywise in exact Eisenstein arithmetic.
etf::EisensteinInt plus_identity_square_entry(const etf::SeidelMatrix& Q, int i, int j) {
  const auto plus_value = [&](int x, int y) {
    return x == y ? etf::EisensteinInt{1, 0} : Q.value(x, y);
  };
  etf::EisensteinInt acc{0, 0};
  for (int k = 0; k < Q.order(); ++k) acc = acc + plus_value(i, k) * plus_value(k, j);
  return acc;
}

std::complex<double> plus_numeric(const etf::SeidelMatrix& Q, int x, int y) {
  if (x == y) return {1.0, 0.0};
  return oracle::entry_value(Q, x, y);
}

}  // namespace

TEST_CASE("signature_9_6 matches its independent transcriptions", "[constructions]") {
  const auto& Q = etf::signature_9_6();
  CHECK(Q == oracle::sig9());
  CHECK(Q == etf::bordered(etf::Digraph::from_arcs(8, oracle::sig9_reduced_arcs())));
}

TEST_CASE("signature_9_6 structural facts", "[constructions]") {
  const auto& Q = etf::signature_9_6();
  CHECK(Q.order() == 9);
  CHECK(etf::is_standard_form(Q));
  CHECK_FALSE(etf::is_trivial(Q));
  CHECK(etf::verify_signature(Q) == -2);
  const auto p = etf::derive_params(9, -2);
  CHECK(p.k == 6);
  CHECK(p.e == 3);
}

TEST_CASE("tensor_compose of the 9x9 matrix with itself", "[constructions]") {
  const auto& s = etf::signature_9_6();
  const auto T = etf::tensor_compose(s, s);
  REQUIRE(T.order() == 81);
  CHECK(etf::is_standard_form(T));
  CHECK(etf::verify_signature(T) == -2);
  CHECK(etf::verify_via_conditions(T) == -2);
  const auto p = etf::derive_params(81, -2);
  CHECK(p.k == 45);
  CHECK(p.e == 27);
  CHECK(p.lambda1 == -10);
  CHECK(p.lambda2 == 8);
}

TEST_CASE("tensor_compose index law", "[constructions]") {
  const auto& s = etf::signature_9_6();
  const auto T = etf::tensor_compose(s, s);
  std::mt19937 rng(411);
  std::uniform_int_distribution<int> pick(0, 8);
  int checked = 0;
  while (checked < 500) {
    const int a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
    const int r = a * 9 + c, q = b * 9 + d;
    if (r == q) continue;
    ++checked;
    const auto expected = plus_numeric(s, a, b) * plus_numeric(s, c, d);
    const auto got = oracle::entry_value(T, r, q);
    CHECK(std::abs(got - expected) < 1e-12);
  }
}

TEST_CASE("plus-identity square is n times identity", "[constructions]") {
  const auto& s = etf::signature_9_6();
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      const auto v = plus_identity_square_entry(s, i, j);
      CHECK(v == etf::EisensteinInt{i == j ? 9 : 0, 0});
    }
  const auto T = etf::tensor_compose(s, s);
  std::mt19937 rng(412);
  std::uniform_int_distribution<int> pick(0, 80);
  for (int t = 0; t < 300; ++t) {
    const int i = pick(rng), j = pick(rng);
    const auto v = plus_identity_square_entry(T, i, j);
    CHECK(v == etf::EisensteinInt{i == j ? 81 : 0, 0});
  }
}

TEST_CASE("tensor_compose rejects non-signature and wrong-mu factors", "[constructions]") {
  const auto& s = etf::signature_9_6();
  const auto trivial = etf::SeidelMatrix::from_upper(
      3, std::vector<etf::CubeRoot>(3, etf::CubeRoot::one()));
  CHECK(etf::verify_signature(trivial) == 1);
  CHECK_THROWS_AS(etf::tensor_compose(trivial, s), etf::precondition_error);
  CHECK_THROWS_AS(etf::tensor_compose(s, trivial), etf::precondition_error);
  auto corrupted = oracle::corrupt_pair(s, 1, 3, 2);
  CHECK_THROWS_AS(etf::tensor_compose(corrupted, s), etf::precondition_error);
}

TEST_CASE("power_9 sizes, caps, and base cases", "[constructions]") {
  const auto& s = etf::signature_9_6();
  CHECK(etf::power_9(1) == s);
  CHECK(etf::power_9(2) == etf::tensor_compose(s, s));
  CHECK(etf::power_9(3).order() == 729);
  CHECK_THROWS_AS(etf::power_9(4), etf::size_limit_error);
  CHECK_THROWS_AS(etf::power_9(2, 80), etf::size_limit_error);
  CHECK_THROWS_AS(etf::power_9(0), std::invalid_argument);
  CHECK_FALSE(etf::is_trivial(etf::power_9(2)));
}

TEST_CASE("power_9 third power verifies exactly", "[constructions]") {
  const auto T = etf::power_9(3);
  CHECK(etf::is_standard_form(T));
  CHECK(etf::verify_signature(T) == -2);
  const auto p = etf::derive_params(729, -2);
  CHECK(p.k == 378);
  CHECK(p.e == 243);
}
