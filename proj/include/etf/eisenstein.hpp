#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

// Exact arithmetic in Z[w], w = exp(2*pi*i/3), with the basis {1, w} and the
// reduction w^2 = -1 - w. All operations are overflow-checked.

namespace etf {

namespace detail {

inline std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("eisenstein add overflow");
  return r;
}

inline std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_sub_overflow(x, y, &r)) throw std::overflow_error("eisenstein sub overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("eisenstein mul overflow");
  return r;
}

}  // namespace detail

struct EisensteinInt {
  std::int64_t a{0};  // coefficient of 1
  std::int64_t b{0};  // coefficient of w

  constexpr bool is_zero() const { return a == 0 && b == 0; }
  friend constexpr bool operator==(EisensteinInt, EisensteinInt) = default;
};

inline EisensteinInt operator+(EisensteinInt x, EisensteinInt y) {
  return {detail::checked_add(x.a, y.a), detail::checked_add(x.b, y.b)};
}

inline EisensteinInt operator-(EisensteinInt x, EisensteinInt y) {
  return {detail::checked_sub(x.a, y.a), detail::checked_sub(x.b, y.b)};
}

inline EisensteinInt operator-(EisensteinInt x) {
  return {detail::checked_sub(0, x.a), detail::checked_sub(0, x.b)};
}

// (a1 + b1 w)(a2 + b2 w) = (a1 a2 - b1 b2) + (a1 b2 + a2 b1 - b1 b2) w
inline EisensteinInt operator*(EisensteinInt x, EisensteinInt y) {
  using detail::checked_add;
  using detail::checked_mul;
  using detail::checked_sub;
  const std::int64_t bb = checked_mul(x.b, y.b);
  const std::int64_t re = checked_sub(checked_mul(x.a, y.a), bb);
  const std::int64_t wc = checked_sub(checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a)), bb);
  return {re, wc};
}

inline EisensteinInt operator*(std::int64_t s, EisensteinInt x) {
  return {detail::checked_mul(s, x.a), detail::checked_mul(s, x.b)};
}

// conj(a + b w) = a + b w^2 = (a - b) - b w
inline EisensteinInt conj(EisensteinInt x) {
  return {detail::checked_sub(x.a, x.b), detail::checked_sub(0, x.b)};
}

// x * conj(x) = a^2 - a b + b^2, always a non-negative rational integer.
inline std::int64_t norm(EisensteinInt x) {
  using detail::checked_mul;
  return detail::checked_add(detail::checked_sub(checked_mul(x.a, x.a), checked_mul(x.a, x.b)),
                             checked_mul(x.b, x.b));
}

// a*1 + b*w + c*w^2 = (a - c) + (b - c) w, so the sum vanishes iff a = b = c.
inline bool real_combination_is_zero(std::int64_t a, std::int64_t b, std::int64_t c) {
  return detail::checked_sub(a, c) == 0 && detail::checked_sub(b, c) == 0;
}

// A cube root of unity w^e, e in {0, 1, 2}.
class CubeRoot {
 public:
  constexpr CubeRoot() = default;

  static constexpr CubeRoot from_exponent(std::int64_t e) {
    CubeRoot r;
    r.e_ = static_cast<std::int8_t>(((e % 3) + 3) % 3);
    return r;
  }

  static constexpr CubeRoot one() { return from_exponent(0); }
  static constexpr CubeRoot omega() { return from_exponent(1); }
  static constexpr CubeRoot omega_sq() { return from_exponent(2); }

  constexpr int exponent() const { return e_; }

  constexpr CubeRoot conj() const { return from_exponent(3 - e_); }

  constexpr EisensteinInt value() const {
    switch (e_) {
      case 0: return {1, 0};
      case 1: return {0, 1};
      default: return {-1, -1};
    }
  }

  friend constexpr CubeRoot operator*(CubeRoot x, CubeRoot y) {
    return from_exponent(x.e_ + y.e_);
  }

  friend constexpr bool operator==(CubeRoot, CubeRoot) = default;

 private:
  std::int8_t e_{0};
};

}  // namespace etf
