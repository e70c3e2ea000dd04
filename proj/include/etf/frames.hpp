#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <string>

#include "etf/errors.hpp"
#include "etf/seidel.hpp"

// Floating-point synthesis of equiangular tight frames from signature
// matrices. All structural verification stays exact; floating point enters
// only here.

namespace etf {

// Common angle modulus of an equiangular (n, k) frame.
inline double c_constant(std::int64_t n, std::int64_t k) {
  if (n < 2 || k < 1 || k >= n) throw frame_error("c_constant: need 1 <= k < n and n >= 2");
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return std::sqrt(kk * (nn - kk) / (nn * nn * (nn - 1.0)));
}

// Absolute tolerance used by the bundled checks for a given order.
inline double frame_tolerance(std::int64_t n) { return n <= 9 ? 1e-9 : 1e-8; }

// Parameters of Q derived from its exactly verified mu.
inline FrameParams frame_params_of(const SeidelMatrix& Q) {
  const auto mu = verify_signature(Q);
  if (!mu) throw frame_error("frame_params_of: matrix is not a signature matrix");
  try {
    return derive_params(Q.order(), *mu);
  } catch (const param_error& e) {
    throw frame_error(std::string("frame_params_of: ") + e.what());
  }
}

// P = (k/n) I + c Q, the rank-k projection whose columns generate the frame.
inline Eigen::MatrixXcd grammian_of(const SeidelMatrix& Q, const FrameParams& p) {
  if (p.n != Q.order())
    throw frame_error("grammian_of: parameter order does not match the matrix");
  if (verify_signature(Q) != p.mu)
    throw frame_error("grammian_of: matrix does not verify with the given mu");
  const int n = Q.order();
  const double diag = static_cast<double>(p.k) / static_cast<double>(p.n);
  const double c = c_constant(p.n, p.k);
  const double half_sqrt3 = std::sqrt(3.0) / 2.0;
  Eigen::MatrixXcd P(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        P(i, j) = diag;
      } else {
        const auto v = Q.value(i, j);
        P(i, j) = c * std::complex<double>(static_cast<double>(v.a) - 0.5 * v.b,
                                           half_sqrt3 * v.b);
      }
    }
  return P;
}

struct FrameSystem {
  std::int64_t n = 0;
  std::int64_t k = 0;
  Eigen::MatrixXcd vectors;   // k x n, frame vector i in column i
  Eigen::MatrixXcd grammian;  // the exact-parameter projection P
};

namespace detail {

// Deterministic phase: the largest-modulus component (lowest index on exact
// ties) is made real and positive.
inline void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  int best = 0;
  double best_mod = std::abs(v(0));
  for (int i = 1; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best_mod) {
      best = i;
      best_mod = m;
    }
  }
  if (best_mod == 0.0) return;
  const std::complex<double> phase = v(best) / best_mod;
  v /= phase;
}

}  // namespace detail

// Eigendecomposes the Grammian and returns the k x n frame whose Gram matrix
// reproduces it. Throws frame_error when the numerical rank is not k.
inline FrameSystem synthesize(const SeidelMatrix& Q) {
  const auto p = frame_params_of(Q);
  const auto P = grammian_of(Q, p);
  const int n = Q.order();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(P);
  if (solver.info() != Eigen::Success) throw frame_error("synthesize: eigendecomposition failed");
  const auto& vals = solver.eigenvalues();
  int rank = 0;
  for (int i = 0; i < n; ++i)
    if (vals(i) > 0.5) ++rank;
  if (rank != p.k)
    throw frame_error("synthesize: numerical rank " + std::to_string(rank) +
                      " does not match k = " + std::to_string(p.k));
  FrameSystem fs;
  fs.n = p.n;
  fs.k = p.k;
  fs.grammian = P;
  fs.vectors.resize(static_cast<Eigen::Index>(p.k), n);
  int row = 0;
  for (int i = 0; i < n; ++i) {
    if (vals(i) <= 0.5) continue;
    Eigen::VectorXcd v = solver.eigenvectors().col(i);
    detail::fix_phase(v);
    fs.vectors.row(row) = std::sqrt(vals(i)) * v.adjoint();
    ++row;
  }
  return fs;
}

struct FrameReport {
  double parseval_deviation = 0;  // max |F F* - I_k|
  double norm_deviation = 0;      // max | ||f_i||^2 - k/n |
  double angle_deviation = 0;     // max | |<f_i, f_j>| - c |, i != j
  double gram_deviation = 0;      // max |F* F - P|
};

inline FrameReport validate_frame(const FrameSystem& fs) {
  FrameReport r;
  const Eigen::MatrixXcd gram = fs.vectors.adjoint() * fs.vectors;
  const Eigen::MatrixXcd frame_op = fs.vectors * fs.vectors.adjoint();
  const double target_norm = static_cast<double>(fs.k) / static_cast<double>(fs.n);
  const double c = c_constant(fs.n, fs.k);
  for (Eigen::Index i = 0; i < frame_op.rows(); ++i)
    for (Eigen::Index j = 0; j < frame_op.cols(); ++j) {
      const double dev = std::abs(frame_op(i, j) - (i == j ? 1.0 : 0.0));
      r.parseval_deviation = std::max(r.parseval_deviation, dev);
    }
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
      if (i == j) {
        r.norm_deviation = std::max(r.norm_deviation, std::abs(gram(i, j).real() - target_norm));
      } else {
        r.angle_deviation = std::max(r.angle_deviation, std::abs(std::abs(gram(i, j)) - c));
      }
      r.gram_deviation = std::max(r.gram_deviation, std::abs(gram(i, j) - fs.grammian(i, j)));
    }
  return r;
}

namespace detail {

inline void append_double(std::string& out, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

}  // namespace detail

// JSON document with full-precision vectors: components as [re, im] pairs.
inline std::string frame_to_json(const FrameSystem& fs) {
  std::string out = "{\n  \"n\": " + std::to_string(fs.n) + ",\n  \"k\": " + std::to_string(fs.k) +
                    ",\n  \"c\": ";
  detail::append_double(out, c_constant(fs.n, fs.k));
  out += ",\n  \"vectors\": [\n";
  for (Eigen::Index i = 0; i < fs.vectors.cols(); ++i) {
    out += "    [";
    for (Eigen::Index r = 0; r < fs.vectors.rows(); ++r) {
      if (r != 0) out += ", ";
      out += "[";
      detail::append_double(out, fs.vectors(r, i).real());
      out += ", ";
      detail::append_double(out, fs.vectors(r, i).imag());
      out += "]";
    }
    out += i + 1 < fs.vectors.cols() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

}  // namespace etf
