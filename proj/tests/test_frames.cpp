#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cmath>
#include <complex>

#include "etf/constructions.hpp"
#include "etf/frames.hpp"
#include "etf/seidel.hpp"
#include "oracles.hpp"

namespace {

etf::SeidelMatrix trivial_matrix(int n) {
  return etf::SeidelMatrix::from_upper(
      n, std::vector<etf::CubeRoot>(static_cast<std::size_t>(n) * (n - 1) / 2,
                                    etf::CubeRoot::one()));
}

}  // namespace

TEST_CASE("c_constant reference values", "[frames]") {
  CHECK(etf::c_constant(9, 6) == Catch::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(etf::c_constant(81, 45) == Catch::Approx(1.0 / 18.0).epsilon(1e-15));
  CHECK(etf::c_constant(4, 1) == Catch::Approx(0.25).epsilon(1e-15));
  CHECK(etf::c_constant(9, 3) == etf::c_constant(9, 6));
  CHECK_THROWS_AS(etf::c_constant(5, 5), etf::frame_error);
  CHECK_THROWS_AS(etf::c_constant(5, 0), etf::frame_error);
}

TEST_CASE("grammian is a projection with trace k", "[frames]") {
  const auto& Q = etf::signature_9_6();
  const auto p = etf::frame_params_of(Q);
  REQUIRE(p.k == 6);
  const auto P = etf::grammian_of(Q, p);
  const Eigen::MatrixXcd diff = P * P - P;
  CHECK(diff.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(P.trace() - std::complex<double>(6.0, 0.0)) < 1e-13);
  CHECK((P - P.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("grammian_of rejects mismatched parameters", "[frames]") {
  const auto& Q = etf::signature_9_6();
  auto p = etf::frame_params_of(Q);
  p.mu = 1;
  CHECK_THROWS_AS(etf::grammian_of(Q, p), etf::frame_error);
  const auto p81 = etf::derive_params(81, -2);
  CHECK_THROWS_AS(etf::grammian_of(Q, p81), etf::frame_error);
  const auto corrupted = oracle::corrupt_pair(Q, 1, 3, 2);
  CHECK_THROWS_AS(etf::frame_params_of(corrupted), etf::frame_error);
}

TEST_CASE("synthesized (9,6) frame meets every invariant", "[frames]") {
  const auto fs = etf::synthesize(etf::signature_9_6());
  REQUIRE(fs.n == 9);
  REQUIRE(fs.k == 6);
  REQUIRE(fs.vectors.rows() == 6);
  REQUIRE(fs.vectors.cols() == 9);
  const auto r = etf::validate_frame(fs);
  const double tol = etf::frame_tolerance(9);
  CHECK(r.parseval_deviation < tol);
  CHECK(r.norm_deviation < tol);
  CHECK(r.angle_deviation < tol);
  CHECK(r.gram_deviation < tol);
}

TEST_CASE("trivial matrices synthesize the rank-one frame", "[frames]") {
  for (const int n : {3, 5, 8}) {
    const auto fs = etf::synthesize(trivial_matrix(n));
    REQUIRE(fs.k == 1);
    const auto r = etf::validate_frame(fs);
    CHECK(r.gram_deviation < 1e-12);
    CHECK(r.parseval_deviation < 1e-12);
    // P = J/n exactly, so every pair of vectors is parallel.
    const Eigen::MatrixXcd gram = fs.vectors.adjoint() * fs.vectors;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(std::abs(std::abs(gram(i, j)) - 1.0 / n) < 1e-12);
  }
}

TEST_CASE("synthesize rejects a non-projection grammian", "[frames]") {
  // A corrupted pair breaks the signature identity, so params cannot even be
  // derived; rank mismatch is exercised through the eigenvalue structure.
  const auto& Q = etf::signature_9_6();
  const auto p = etf::frame_params_of(Q);
  auto wrong = p;
  wrong.k = 5;  // trace no longer matches the projection rank
  const auto P = etf::grammian_of(Q, p);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(P);
  int rank = 0;
  for (int i = 0; i < 9; ++i)
    if (solver.eigenvalues()(i) > 0.5) ++rank;
  CHECK(rank == 6);
  CHECK(rank != wrong.k);
}

TEST_CASE("eigenvalue structure of the signature matrix", "[frames]") {
  const auto& Q = etf::signature_9_6();
  Eigen::MatrixXcd M(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) M(i, j) = i == j ? 0.0 : oracle::entry_value(Q, i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(M);
  int low = 0, high = 0;
  for (int i = 0; i < 9; ++i) {
    if (std::abs(solver.eigenvalues()(i) - (-4.0)) < 1e-7) ++low;
    if (std::abs(solver.eigenvalues()(i) - 2.0) < 1e-7) ++high;
  }
  CHECK(low == 3);   // multiplicity n - k at lambda1
  CHECK(high == 6);  // multiplicity k at lambda2
}

TEST_CASE("scaling the frame breaks Parseval by the expected amount", "[frames]") {
  auto fs = etf::synthesize(etf::signature_9_6());
  fs.vectors *= 2.0;
  const auto r = etf::validate_frame(fs);
  CHECK(r.parseval_deviation == Catch::Approx(3.0).margin(1e-9));
  CHECK(r.norm_deviation == Catch::Approx(3.0 * 6.0 / 9.0).margin(1e-9));
}

TEST_CASE("unitary mixing preserves the Gram matrix", "[frames]") {
  auto fs = etf::synthesize(etf::signature_9_6());
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Random(6, 6);
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  const Eigen::MatrixXcd U = qr.householderQ();
  fs.vectors = U * fs.vectors;
  const auto r = etf::validate_frame(fs);
  CHECK(r.gram_deviation < 1e-12);
  CHECK(r.parseval_deviation < 1e-12);
}

TEST_CASE("order 81 frame synthesis round trip", "[frames]") {
  const auto Q = etf::power_9(2);
  const auto fs = etf::synthesize(Q);
  REQUIRE(fs.k == 45);
  const auto r = etf::validate_frame(fs);
  const double tol = etf::frame_tolerance(81);
  CHECK(r.parseval_deviation < tol);
  CHECK(r.norm_deviation < tol);
  CHECK(r.angle_deviation < tol);
  CHECK(r.gram_deviation < tol);
}

TEST_CASE("frame JSON round trips at full precision", "[frames]") {
  const auto fs = etf::synthesize(etf::signature_9_6());
  const auto text = etf::frame_to_json(fs);
  const auto doc = nlohmann::json::parse(text);
  REQUIRE(doc.at("n").get<int>() == 9);
  REQUIRE(doc.at("k").get<int>() == 6);
  CHECK(doc.at("c").get<double>() == etf::c_constant(9, 6));
  const auto& vecs = doc.at("vectors");
  REQUIRE(vecs.size() == 9);
  for (int i = 0; i < 9; ++i) {
    REQUIRE(vecs.at(i).size() == 6);
    for (int r = 0; r < 6; ++r) {
      const std::complex<double> got(vecs.at(i).at(r).at(0).get<double>(),
                                     vecs.at(i).at(r).at(1).get<double>());
      CHECK(got == fs.vectors(r, i));
    }
  }
}

TEST_CASE("synthesis is deterministic", "[frames]") {
  const auto a = etf::synthesize(etf::signature_9_6());
  const auto b = etf::synthesize(etf::signature_9_6());
  CHECK((a.vectors - b.vectors).cwiseAbs().maxCoeff() == 0.0);
}
