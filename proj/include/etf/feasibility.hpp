#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "etf/errors.hpp"
#include "etf/seidel.hpp"

// Integer sieve for candidate parameters (n, mu): necessary congruence and
// range conditions, per-order candidate enumeration, and the parameter table.
// Everything here is exact integer arithmetic.

namespace etf {

enum class ParamCondition {
  order_multiple_of_3,   // n = 0 (mod 3)
  mu_residue,            // mu = 1 (mod 3)
  mod9_pair,             // (n mod 9, mu mod 9) in {(0,7), (3,1), (6,4)}
  discriminant_square,   // 4(n-1) + mu^2 a perfect square divisible by 9
  e_integral,            // 3 divides n - mu - 2
  e_residue,             // e = 0 (mod 3)
  e_range,               // 2n/9 <= e <= (4n-9)/9
  mu_range,              // 1 - n/3 <= mu <= n/3 - 2
};

// Conditions violated by (n, mu); empty means no obstruction found.
inline std::vector<ParamCondition> necessary_conditions(std::int64_t n, std::int64_t mu) {
  if (n < 2) throw std::invalid_argument("necessary_conditions: order must be at least 2");
  using detail::mod3;
  std::vector<ParamCondition> out;
  if (n % 3 != 0) out.push_back(ParamCondition::order_multiple_of_3);
  if (mod3(mu) != 1) out.push_back(ParamCondition::mu_residue);

  const std::int64_t n9 = ((n % 9) + 9) % 9;
  const std::int64_t mu9 = ((mu % 9) + 9) % 9;
  const bool mod9_ok =
      (n9 == 0 && mu9 == 7) || (n9 == 3 && mu9 == 1) || (n9 == 6 && mu9 == 4);
  if (!mod9_ok) out.push_back(ParamCondition::mod9_pair);

  const std::int64_t disc =
      detail::checked_add(detail::checked_mul(4, n - 1), detail::checked_mul(mu, mu));
  const std::int64_t m = detail::isqrt(disc);
  if (m * m != disc || disc % 9 != 0) out.push_back(ParamCondition::discriminant_square);

  if (mod3(n - mu - 2) != 0) {
    out.push_back(ParamCondition::e_integral);
  } else {
    const std::int64_t e = (n - mu - 2) / 3;
    if (e % 3 != 0) out.push_back(ParamCondition::e_residue);
    if (!(9 * e >= 2 * n && 9 * e <= 4 * n - 9)) out.push_back(ParamCondition::e_range);
  }
  if (!(3 * mu >= 3 - n && 3 * mu <= n - 6)) out.push_back(ParamCondition::mu_range);
  return out;
}

enum class RejectionReason {
  not_multiple_of_3,
  no_valid_e,          // no candidate e = 0 (mod 3) in [2n/9, (4n-9)/9]
  not_perfect_square,  // 4(n-1) + mu^2 fails to be a square for every candidate
  non_integral_k,      // a candidate had a square discriminant but fractional k
  trivial_k,           // a candidate produced k <= 1
};

struct SieveCandidate {
  std::int64_t e{0};
  std::int64_t mu{0};
  std::optional<FrameParams> params;
  std::optional<RejectionReason> rejection;
};

// All candidate e values for one order, with the fate of each.
inline std::vector<SieveCandidate> sieve_order(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("sieve_order: order must be at least 2");
  std::vector<SieveCandidate> out;
  if (n % 3 != 0) return out;
  // smallest multiple of 3 with 9e >= 2n
  std::int64_t e = ((2 * n + 8) / 9 + 2) / 3 * 3;
  for (; 9 * e <= 4 * n - 9; e += 3) {
    SieveCandidate cand;
    cand.e = e;
    cand.mu = n - 3 * e - 2;
    const std::int64_t disc = 4 * (n - 1) + cand.mu * cand.mu;
    const std::int64_t m = detail::isqrt(disc);
    if (m * m != disc) {
      cand.rejection = RejectionReason::not_perfect_square;
    } else {
      try {
        const FrameParams p = derive_params(n, cand.mu);
        if (p.k <= 1) {
          cand.rejection = RejectionReason::trivial_k;
        } else {
          cand.params = p;
        }
      } catch (const param_error&) {
        cand.rejection = RejectionReason::non_integral_k;
      }
    }
    out.push_back(cand);
  }
  return out;
}

// Why an order contributes no parameter rows; nullopt when it does.
inline std::optional<RejectionReason> order_rejection(std::int64_t n) {
  if (n % 3 != 0) return RejectionReason::not_multiple_of_3;
  const auto cands = sieve_order(n);
  if (cands.empty()) return RejectionReason::no_valid_e;
  bool saw_k = false, saw_trivial = false;
  for (const auto& c : cands) {
    if (c.params) return std::nullopt;
    if (c.rejection == RejectionReason::non_integral_k) saw_k = true;
    if (c.rejection == RejectionReason::trivial_k) saw_trivial = true;
  }
  if (saw_k) return RejectionReason::non_integral_k;
  if (saw_trivial) return RejectionReason::trivial_k;
  return RejectionReason::not_perfect_square;
}

inline std::vector<FrameParams> feasible_params(std::int64_t n) {
  std::vector<FrameParams> out;
  for (const auto& c : sieve_order(n))
    if (c.params) out.push_back(*c.params);
  return out;
}

// All admissible parameter rows with order up to max_n, ascending in n and e.
inline std::vector<FrameParams> feasibility_table(std::int64_t max_n) {
  std::vector<FrameParams> out;
  for (std::int64_t n = 3; n <= max_n; n += 3) {
    const auto rows = feasible_params(n);
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

}  // namespace etf
