#pragma once

#include <cstdint>
#include <string>

#include "etf/errors.hpp"
#include "etf/seidel.hpp"

// Concrete signature matrices: the 9x9 matrix of the (9,6) frame and the
// tensor construction that lifts mu = -2 matrices to mu = -2 matrices of
// composite order.

namespace etf {

// Signature matrix of the (9,6) equiangular tight frame (mu = -2, standard
// form). Its lower-right 8x8 block is the unique 3-regular orientation
// described by graph_of.
inline const SeidelMatrix& signature_9_6() {
  static const SeidelMatrix Q = parse_crsm(
      "9\n"
      "0 1 1 1 1 1 1 1 1\n"
      "1 0 1 w w w W W W\n"
      "1 1 0 W W W w w w\n"
      "1 W w 0 w W 1 w W\n"
      "1 W w W 0 w w W 1\n"
      "1 W w w W 0 W 1 w\n"
      "1 w W 1 W w 0 W w\n"
      "1 w W W w 1 w 0 W\n"
      "1 w W w 1 W W w 0\n");
  return Q;
}

// Largest matrix order the constructions will materialize.
inline constexpr std::int64_t default_size_cap = 729;

// (Q1 + I) tensor (Q2 + I) - I, with row-major index blocks: position
// (a, c) maps to a * order(Q2) + c. Requires mu = -2 factors; the result
// again has mu = -2 because (Q + I)^2 = n I exactly for such factors.
inline SeidelMatrix tensor_compose(const SeidelMatrix& Q1, const SeidelMatrix& Q2) {
  if (verify_signature(Q1) != -2)
    throw precondition_error("tensor_compose: first factor is not a signature matrix with mu = -2");
  if (verify_signature(Q2) != -2)
    throw precondition_error("tensor_compose: second factor is not a signature matrix with mu = -2");
  const int n1 = Q1.order(), n2 = Q2.order();
  const std::int64_t n = static_cast<std::int64_t>(n1) * n2;
  if (n > 32768)
    throw size_limit_error("tensor_compose: result order " + std::to_string(n) +
                           " exceeds the library bound");
  const auto plus_code = [](const SeidelMatrix& Q, int x, int y) {
    return x == y ? 0 : Q.code(x, y);
  };
  const int order = static_cast<int>(n);
  std::vector<CubeRoot> upper;
  upper.reserve(static_cast<std::size_t>(order) * (order - 1) / 2);
  for (int r = 0; r < order; ++r) {
    const int a = r / n2, c = r % n2;
    for (int q = r + 1; q < order; ++q) {
      const int b = q / n2, d = q % n2;
      upper.push_back(CubeRoot::from_exponent(plus_code(Q1, a, b) + plus_code(Q2, c, d)));
    }
  }
  return SeidelMatrix::from_upper(order, upper);
}

// Repeated tensor composition of signature_9_6 with itself: order 9^m.
inline SeidelMatrix power_9(int m, std::int64_t size_cap = default_size_cap) {
  if (m < 1) throw std::invalid_argument("power_9: exponent must be at least 1");
  std::int64_t order = 1;
  for (int i = 0; i < m; ++i) {
    order = detail::checked_mul(order, 9);
    if (order > size_cap)
      throw size_limit_error("power_9: order 9^" + std::to_string(m) + " exceeds the size cap " +
                             std::to_string(size_cap));
  }
  SeidelMatrix result = signature_9_6();
  for (int i = 1; i < m; ++i) result = tensor_compose(result, signature_9_6());
  return result;
}

}  // namespace etf
