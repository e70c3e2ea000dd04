#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "etf/constructions.hpp"
#include "etf/search.hpp"
#include "etf/seidel.hpp"
#include "oracles.hpp"

namespace {

std::vector<std::string> crsm_texts(const std::vector<etf::SeidelMatrix>& ms) {
  std::vector<std::string> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(etf::emit_crsm(m));
  return out;
}

// Every switched variant of Q under all diagonal switchings and relabelings.
std::set<std::string> full_orbit(const etf::SeidelMatrix& Q) {
  const int n = Q.order();
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::sort(perm.begin(), perm.end());
  std::set<std::string> orbit;
  do {
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (int d = 0; d < total; ++d) {
      std::vector<etf::CubeRoot> diag;
      int rem = d;
      for (int i = 0; i < n; ++i) {
        diag.push_back(etf::CubeRoot::from_exponent(rem % 3));
        rem /= 3;
      }
      orbit.insert(etf::emit_crsm(etf::switched(Q, diag, perm)));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return orbit;
}

}  // namespace

TEST_CASE("search rejects orders without parameters", "[search]") {
  CHECK_THROWS_AS(etf::search_all({10, 0, true, 1}), etf::precondition_error);
  CHECK_THROWS_AS(etf::search_all({12, 0, true, 1}), etf::precondition_error);
  CHECK_THROWS_AS(etf::search_all({21, 0, true, 1}), etf::precondition_error);
  CHECK_THROWS_AS(etf::search_all({1, 0, true, 1}), etf::precondition_error);
}

TEST_CASE("limited search at order 9 finds signature matrices", "[search]") {
  const auto res = etf::search_all({9, 5, true, 1});
  REQUIRE(res.matrices.size() == 5);
  CHECK(res.stats.solutions == 5);
  CHECK(res.stats.nodes > 0);
  for (const auto& Q : res.matrices) {
    CHECK(Q.order() == 9);
    CHECK(etf::is_standard_form(Q));
    CHECK(etf::verify_signature(Q) == -2);
    CHECK(etf::verify_via_conditions(Q) == -2);
    const auto rs = etf::row_stats(Q, 1);
    CHECK(rs.ones == 2);
    CHECK(rs.omegas == 3);
    CHECK(rs.omega_sqs == 3);
  }
  const auto texts = crsm_texts(res.matrices);
  CHECK(std::set<std::string>(texts.begin(), texts.end()).size() == 5);
}

TEST_CASE("search emission is deterministic", "[search]") {
  const auto a = etf::search_all({9, 6, true, 1});
  const auto b = etf::search_all({9, 6, true, 1});
  CHECK(crsm_texts(a.matrices) == crsm_texts(b.matrices));
  CHECK(a.stats.nodes == b.stats.nodes);

  const auto threaded = etf::search_all({9, 6, true, 3});
  CHECK(crsm_texts(threaded.matrices) == crsm_texts(a.matrices));

  const auto unpruned = etf::search_all({9, 6, false, 1});
  CHECK(crsm_texts(unpruned.matrices) == crsm_texts(a.matrices));
  CHECK(unpruned.stats.nodes >= a.stats.nodes);
}

TEST_CASE("search callback can stop early", "[search]") {
  int seen = 0;
  const auto stats = etf::search_signatures({9, 0, true, 1}, [&](const etf::SeidelMatrix&) {
    return ++seen < 2;
  });
  CHECK(seen == 2);
  CHECK(stats.solutions == 2);
}

TEST_CASE("canonical form is a switching invariant", "[search]") {
  const auto& s = etf::signature_9_6();
  const auto canon = etf::canonical_form(s);
  CHECK(canon.order() == 9);
  CHECK(etf::canonical_form(canon) == canon);
  std::mt19937_64 rng(711);
  for (int t = 0; t < 15; ++t) {
    const auto moved = oracle::random_switch(rng, s);
    CHECK(etf::canonical_form(moved) == canon);
    CHECK(etf::switching_equivalent(moved, s));
  }
}

TEST_CASE("canonical form against the exhaustive orbit at small orders", "[search]") {
  std::mt19937_64 rng(712);
  for (const int n : {3, 4}) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto Q = oracle::random_seidel(rng, n);
      const auto orbit = full_orbit(Q);
      CHECK(orbit.count(etf::emit_crsm(etf::canonical_form(Q))) == 1);
      for (int probes = 0; probes < 8; ++probes) {
        const auto R = oracle::random_seidel(rng, n);
        const bool in_orbit = orbit.count(etf::emit_crsm(R)) == 1;
        CHECK(etf::switching_equivalent(Q, R) == in_orbit);
      }
      CHECK(etf::switching_equivalent(Q, oracle::random_switch(rng, Q)));
    }
  }
}

TEST_CASE("canonical form of the trivial matrix", "[search]") {
  const auto trivial = etf::SeidelMatrix::from_upper(
      6, std::vector<etf::CubeRoot>(15, etf::CubeRoot::one()));
  CHECK(etf::canonical_form(trivial) == trivial);
  std::mt19937_64 rng(713);
  CHECK(etf::canonical_form(oracle::random_switch(rng, trivial)) == trivial);
}

TEST_CASE("canonical form size and order guards", "[search]") {
  const auto big = etf::power_9(2);
  CHECK_THROWS_AS(etf::canonical_form(big), etf::size_limit_error);
  CHECK_THROWS_AS(etf::switching_equivalent(big, big), etf::size_limit_error);
  std::mt19937_64 rng(714);
  const auto a = oracle::random_seidel(rng, 3);
  const auto b = oracle::random_seidel(rng, 4);
  CHECK_THROWS_AS(etf::switching_equivalent(a, b), std::invalid_argument);
  CHECK_THROWS_AS(etf::canonical_form(etf::signature_9_6(), 8), etf::size_limit_error);
}

TEST_CASE("searched matrices are equivalent to the reference", "[search]") {
  const auto res = etf::search_all({9, 4, true, 2});
  const auto canon = etf::canonical_form(etf::signature_9_6());
  for (const auto& Q : res.matrices) CHECK(etf::canonical_form(Q) == canon);
}
