#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "etf/eisenstein.hpp"
#include "etf/errors.hpp"

// Self-adjoint matrices with zero diagonal and cube-root-of-unity entries
// everywhere else, their text format (.crsm), exact signature verification
// (Q^2 = (n-1)I + mu*Q), switching operations, and the per-row / per-pair
// counting statistics that characterize signature matrices combinatorially.
//
// Programmatic indices are 0-based throughout; file formats and rendered
// coordinates in failure reasons are 1-based.

namespace etf {

class SeidelMatrix {
 public:
  // upper holds the strict upper triangle in row-major order:
  // (0,1), (0,2), ..., (0,n-1), (1,2), ...
  static SeidelMatrix from_upper(int n, const std::vector<CubeRoot>& upper) {
    if (n < 2) throw std::invalid_argument("seidel: order must be at least 2");
    const std::size_t want = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (upper.size() != want) throw std::invalid_argument("seidel: wrong upper-triangle size");
    std::vector<std::int8_t> codes(static_cast<std::size_t>(n) * n, -1);
    std::size_t pos = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j, ++pos) {
        const auto e = static_cast<std::int8_t>(upper[pos].exponent());
        codes[static_cast<std::size_t>(i) * n + j] = e;
        codes[static_cast<std::size_t>(j) * n + i] = static_cast<std::int8_t>((3 - e) % 3);
      }
    }
    return SeidelMatrix(n, std::move(codes));
  }

  int order() const { return n_; }

  // Exponent of the entry at (i, j); -1 on the diagonal. No bounds check.
  int code(int i, int j) const {
    return codes_[static_cast<std::size_t>(i) * n_ + j];
  }

  CubeRoot entry(int i, int j) const {
    check_index(i);
    check_index(j);
    if (i == j) throw std::invalid_argument("seidel: diagonal entries are zero, not cube roots");
    return CubeRoot::from_exponent(code(i, j));
  }

  EisensteinInt value(int i, int j) const {
    check_index(i);
    check_index(j);
    if (i == j) return {};
    return CubeRoot::from_exponent(code(i, j)).value();
  }

  std::vector<CubeRoot> upper() const {
    std::vector<CubeRoot> out;
    out.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) out.push_back(CubeRoot::from_exponent(code(i, j)));
    return out;
  }

  friend bool operator==(const SeidelMatrix&, const SeidelMatrix&) = default;

 private:
  SeidelMatrix(int n, std::vector<std::int8_t> codes) : n_(n), codes_(std::move(codes)) {}

  void check_index(int i) const {
    if (i < 0 || i >= n_) throw std::invalid_argument("seidel: index out of range");
  }

  int n_;
  std::vector<std::int8_t> codes_;
};

// ---------------------------------------------------------------------------
// .crsm text format: line 1 is the order n, then n lines of n tokens from
// {0, 1, w, W}. LF line endings, zero exactly on the diagonal, self-adjoint.

namespace detail {

inline int token_code(const std::string& tok, int i, int j) {
  if (tok == "0") {
    if (i != j)
      throw format_error("crsm: zero entry off the diagonal at (" + std::to_string(i + 1) + ", " +
                         std::to_string(j + 1) + ")");
    return -1;
  }
  int e;
  if (tok == "1") e = 0;
  else if (tok == "w") e = 1;
  else if (tok == "W") e = 2;
  else throw format_error("crsm: invalid token \"" + tok + "\" at (" + std::to_string(i + 1) +
                          ", " + std::to_string(j + 1) + ")");
  if (i == j)
    throw format_error("crsm: nonzero diagonal at (" + std::to_string(i + 1) + ", " +
                       std::to_string(j + 1) + ")");
  return e;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ' ' || ch == '\t') {
      if (!cur.empty()) out.push_back(std::exchange(cur, {}));
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace detail

inline SeidelMatrix parse_crsm(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char ch : text) {
      if (ch == '\n') lines.push_back(std::exchange(cur, {}));
      else cur.push_back(ch);
    }
    if (!cur.empty()) lines.push_back(cur);
  }
  if (lines.empty()) throw format_error("crsm: empty input");

  const auto head = detail::split_ws(lines[0]);
  if (head.size() != 1) throw format_error("crsm: first line must be the order");
  long long n = 0;
  for (char ch : head[0]) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw format_error("crsm: order is not a decimal integer");
    n = n * 10 + (ch - '0');
    if (n > 32768) throw format_error("crsm: order too large");
  }
  if (n < 2) throw format_error("crsm: order must be at least 2");

  const int order = static_cast<int>(n);
  if (static_cast<long long>(lines.size()) < 1 + n) throw format_error("crsm: missing rows");
  for (std::size_t extra = static_cast<std::size_t>(1 + n); extra < lines.size(); ++extra)
    if (!detail::split_ws(lines[extra]).empty())
      throw format_error("crsm: trailing content after row " + std::to_string(order));

  std::vector<std::int8_t> codes(static_cast<std::size_t>(order) * order, -1);
  for (int i = 0; i < order; ++i) {
    const auto toks = detail::split_ws(lines[static_cast<std::size_t>(i) + 1]);
    if (static_cast<int>(toks.size()) != order)
      throw format_error("crsm: row " + std::to_string(i + 1) + " has " +
                         std::to_string(toks.size()) + " tokens, expected " +
                         std::to_string(order));
    for (int j = 0; j < order; ++j)
      codes[static_cast<std::size_t>(i) * order + j] =
          static_cast<std::int8_t>(detail::token_code(toks[j], i, j));
  }

  std::vector<CubeRoot> upper;
  upper.reserve(static_cast<std::size_t>(order) * (order - 1) / 2);
  for (int i = 0; i < order; ++i) {
    for (int j = i + 1; j < order; ++j) {
      const int e = codes[static_cast<std::size_t>(i) * order + j];
      const int f = codes[static_cast<std::size_t>(j) * order + i];
      if ((e + f) % 3 != 0)
        throw format_error("crsm: not self-adjoint at (" + std::to_string(i + 1) + ", " +
                           std::to_string(j + 1) + ")");
      upper.push_back(CubeRoot::from_exponent(e));
    }
  }
  return SeidelMatrix::from_upper(order, upper);
}

inline std::string emit_crsm(const SeidelMatrix& Q) {
  static constexpr std::array<char, 3> token{'1', 'w', 'W'};
  const int n = Q.order();
  std::string out = std::to_string(n);
  out.push_back('\n');
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j > 0) out.push_back(' ');
      out.push_back(i == j ? '0' : token[static_cast<std::size_t>(Q.code(i, j))]);
    }
    out.push_back('\n');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derived frame parameters.

struct FrameParams {
  std::int64_t n{0};
  std::int64_t k{0};
  std::int64_t mu{0};
  std::int64_t e{0};  // meaningful only when e_integral
  std::int64_t lambda1{0};
  std::int64_t lambda2{0};
  bool e_integral{false};

  friend bool operator==(const FrameParams&, const FrameParams&) = default;
};

namespace detail {

// Floor of sqrt(x) for x >= 0, pure integer binary search.
inline std::int64_t isqrt(std::int64_t x) {
  if (x < 0) throw std::invalid_argument("isqrt of negative value");
  std::int64_t lo = 0, hi = 3037000499LL;  // floor(sqrt(2^63 - 1))
  if (hi > x) hi = x;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (mid <= x / mid) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

inline std::int64_t mod3(std::int64_t x) { return ((x % 3) + 3) % 3; }

}  // namespace detail

// Solves lambda^2 - mu*lambda - (n-1) = 0 over the integers and splits n into
// the rank k forced by the eigenvalue multiplicities.
inline FrameParams derive_params(std::int64_t n, std::int64_t mu) {
  if (n < 2) throw std::invalid_argument("derive_params: order must be at least 2");
  using detail::checked_add;
  using detail::checked_mul;
  const std::int64_t disc = checked_add(checked_mul(4, n - 1), checked_mul(mu, mu));
  const std::int64_t m = detail::isqrt(disc);
  if (m * m != disc)
    throw param_error(param_error_kind::not_perfect_square,
                      "derive_params: 4(n-1) + mu^2 = " + std::to_string(disc) +
                          " is not a perfect square");
  if ((mu + m) % 2 != 0)
    throw param_error(param_error_kind::non_integral_lambda,
                      "derive_params: mu and sqrt(4(n-1) + mu^2) have different parity");
  const std::int64_t lambda1 = (mu - m) / 2;
  const std::int64_t lambda2 = (mu + m) / 2;
  const std::int64_t num = checked_mul(n, m - mu);
  if (num % (2 * m) != 0)
    throw param_error(param_error_kind::non_integral_k,
                      "derive_params: k = n(m - mu)/(2m) is not an integer for n = " +
                          std::to_string(n) + ", mu = " + std::to_string(mu));
  FrameParams p;
  p.n = n;
  p.k = num / (2 * m);
  p.mu = mu;
  p.lambda1 = lambda1;
  p.lambda2 = lambda2;
  p.e_integral = (detail::mod3(n - mu - 2) == 0);
  p.e = p.e_integral ? (n - mu - 2) / 3 : 0;
  return p;
}

// ---------------------------------------------------------------------------
// Exact verification of Q^2 = (n-1)I + mu*Q.

namespace detail {

inline EisensteinInt square_entry(const SeidelMatrix& Q, int i, int j) {
  const int n = Q.order();
  std::int64_t a = 0, b = 0;
  for (int k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    switch ((Q.code(i, k) + Q.code(k, j)) % 3) {
      case 0: ++a; break;
      case 1: ++b; break;
      default: --a; --b; break;
    }
  }
  return {a, b};
}

}  // namespace detail

struct CheckFailure {
  int i{-1};
  int j{-1};
  std::string reason;
};

struct VerifyReport {
  std::optional<std::int64_t> mu;
  std::optional<CheckFailure> failure;
};

inline VerifyReport verify_signature_explained(const SeidelMatrix& Q) {
  const int n = Q.order();
  const EisensteinInt probe = detail::square_entry(Q, 0, 1) * conj(Q.entry(0, 1).value());
  if (probe.b != 0)
    return {std::nullopt,
            CheckFailure{0, 1, "(Q^2)(1,2) is not an integer multiple of Q(1,2)"}};
  const std::int64_t mu = probe.a;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const EisensteinInt got = detail::square_entry(Q, i, j);
      const EisensteinInt want = (i == j) ? EisensteinInt{n - 1, 0} : mu * Q.value(i, j);
      if (!(got == want)) {
        return {std::nullopt,
                CheckFailure{i, j,
                             "(Q^2)(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                 ") = " + std::to_string(got.a) + " + " + std::to_string(got.b) +
                                 "w, expected " + std::to_string(want.a) + " + " +
                                 std::to_string(want.b) + "w with mu = " + std::to_string(mu)}};
      }
    }
  }
  return {mu, std::nullopt};
}

inline std::optional<std::int64_t> verify_signature(const SeidelMatrix& Q) {
  return verify_signature_explained(Q).mu;
}

// ---------------------------------------------------------------------------
// Switching: conjugation by a diagonal of cube roots and a permutation.
// perm[i] is the source index placed at position i; the result is
// R(i,j) = w^(t[perm[j]] - t[perm[i]]) * Q(perm[i], perm[j]).

inline std::vector<int> identity_perm(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

inline SeidelMatrix switched(const SeidelMatrix& Q, const std::vector<CubeRoot>& diag,
                             const std::vector<int>& perm) {
  const int n = Q.order();
  if (static_cast<int>(diag.size()) != n)
    throw std::invalid_argument("switched: diagonal size mismatch");
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("switched: permutation size mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("switched: not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
  std::vector<CubeRoot> upper;
  upper.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    const int si = perm[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) {
      const int sj = perm[static_cast<std::size_t>(j)];
      const int e = diag[static_cast<std::size_t>(sj)].exponent() -
                    diag[static_cast<std::size_t>(si)].exponent() + Q.code(si, sj);
      upper.push_back(CubeRoot::from_exponent(e));
    }
  }
  return SeidelMatrix::from_upper(n, upper);
}

inline bool is_standard_form(const SeidelMatrix& Q) {
  for (int j = 1; j < Q.order(); ++j)
    if (Q.code(0, j) != 0) return false;
  return true;
}

// Unique diagonal switch (up to a global scalar) making row and column 1 all
// ones: conjugate by D = diag(1, conj(Q(1,2)), ..., conj(Q(1,n))).
inline std::pair<SeidelMatrix, std::vector<CubeRoot>> standard_form(const SeidelMatrix& Q) {
  const int n = Q.order();
  std::vector<CubeRoot> diag(static_cast<std::size_t>(n));
  for (int j = 1; j < n; ++j)
    diag[static_cast<std::size_t>(j)] = CubeRoot::from_exponent(3 - Q.code(0, j));
  SeidelMatrix result = switched(Q, diag, identity_perm(n));
  return {std::move(result), std::move(diag)};
}

inline bool is_trivial(const SeidelMatrix& Q) {
  const auto [S, diag] = standard_form(Q);
  const int n = S.order();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (S.code(i, j) != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Counting statistics.

struct RowStats {
  std::int64_t ones{0};
  std::int64_t omegas{0};
  std::int64_t omega_sqs{0};

  friend bool operator==(const RowStats&, const RowStats&) = default;
};

// Entry counts of column j (equivalently, conjugate counts of row j).
inline RowStats row_stats(const SeidelMatrix& Q, int j) {
  const int n = Q.order();
  if (j < 1 || j >= n) throw std::invalid_argument("row_stats: column index out of range");
  RowStats rs;
  for (int i = 0; i < n; ++i) {
    if (i == j) continue;
    switch (Q.code(i, j)) {
      case 0: ++rs.ones; break;
      case 1: ++rs.omegas; break;
      default: ++rs.omega_sqs; break;
    }
  }
  return rs;
}

// table[s][t] = #{k : Q(i,k) = w^s and Q(k,j) = w^t}, k outside {i, j}.
struct PairCounts {
  std::array<std::array<std::int64_t, 3>, 3> table{};

  std::int64_t at(int s, int t) const {
    return table[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
  }

  friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

inline PairCounts pair_counts(const SeidelMatrix& Q, int i, int j) {
  const int n = Q.order();
  if (i < 1 || i >= n || j < 1 || j >= n)
    throw std::invalid_argument("pair_counts: indices must avoid the first row and column");
  if (i == j) throw std::invalid_argument("pair_counts: indices must differ");
  const int e = Q.code(i, j);
  if (e == 2)
    throw precondition_error("pair_counts: entry at (" + std::to_string(i + 1) + ", " +
                             std::to_string(j + 1) +
                             ") is W; statistics are defined for entries 1 and w "
                             "(use the transposed pair)");
  PairCounts pc;
  for (int k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    pc.table[static_cast<std::size_t>(Q.code(i, k))][static_cast<std::size_t>(Q.code(k, j))]++;
  }
  return pc;
}

// The seven independent linear conditions a pair (i, j) with Q(i,j) = w must
// satisfy in a signature matrix of order n with parameter mu. Stated with all
// terms multiplied by 3 so divisibility is part of the check.
inline bool omega_pair_system_holds(const PairCounts& pc, std::int64_t n, std::int64_t mu) {
  const std::int64_t alpha = pc.at(1, 2), beta = pc.at(1, 1), gamma = pc.at(1, 0);
  const std::int64_t a = pc.at(2, 2), b = pc.at(2, 1), c = pc.at(2, 0);
  const std::int64_t A = pc.at(0, 2), B = pc.at(0, 1), C = pc.at(0, 0);
  return 3 * (alpha - B) == -(2 * mu + 1) && 3 * (beta - C) == -(2 * mu + 4) &&
         3 * (gamma + B + C) == n + 3 * mu && 3 * (a - C) == -(mu + 2) &&
         3 * (b + B + C) == n + mu - 1 && 3 * (c - B) == 1 - mu &&
         3 * (A + B + C) == n + 2 * mu + 1;
}

// Same for a pair with Q(i,j) = 1; here 3e = n - mu - 2.
inline bool one_pair_system_holds(const PairCounts& pc, std::int64_t n, std::int64_t mu) {
  const std::int64_t alpha = pc.at(1, 2), beta = pc.at(1, 1), gamma = pc.at(1, 0);
  const std::int64_t a = pc.at(2, 2), b = pc.at(2, 1), c = pc.at(2, 0);
  const std::int64_t A = pc.at(0, 2), B = pc.at(0, 1), C = pc.at(0, 0);
  const std::int64_t e3 = n - mu - 2;
  const std::int64_t rem3 = e3 + 3 * mu - 3 * B - 3 * C;
  return alpha == B && beta == C - mu && 3 * gamma == rem3 && a == C - mu && 3 * b == rem3 &&
         c == B && 3 * A == rem3;
}

// ---------------------------------------------------------------------------
// Combinatorial verification: row statistics plus the pair systems decide
// the signature property without forming Q^2.

inline VerifyReport verify_via_conditions_explained(const SeidelMatrix& Q) {
  const int n = Q.order();
  if (!is_standard_form(Q))
    throw precondition_error("verify_via_conditions: matrix must be in standard form");
  bool nontrivial = false;
  for (int i = 1; i < n && !nontrivial; ++i)
    for (int j = i + 1; j < n; ++j)
      if (Q.code(i, j) != 0) {
        nontrivial = true;
        break;
      }
  if (!nontrivial)
    throw precondition_error("verify_via_conditions: matrix must be nontrivial");

  const RowStats first = row_stats(Q, 1);
  if (first.omegas != first.omega_sqs)
    return {std::nullopt,
            CheckFailure{1, 1, "column 2 has unequal w and W counts (" +
                                   std::to_string(first.omegas) + " vs " +
                                   std::to_string(first.omega_sqs) + ")"}};
  const std::int64_t e = first.omegas;
  const std::int64_t mu = n - 3 * e - 2;

  for (int j = 1; j < n; ++j) {
    const RowStats rs = row_stats(Q, j);
    if (rs.omegas != e || rs.omega_sqs != e)
      return {std::nullopt,
              CheckFailure{j, j, "column " + std::to_string(j + 1) + " entry counts (" +
                                     std::to_string(rs.ones) + ", " + std::to_string(rs.omegas) +
                                     ", " + std::to_string(rs.omega_sqs) +
                                     ") do not match e = " + std::to_string(e)}};
  }

  for (int i = 1; i < n; ++i) {
    for (int j = 1; j < n; ++j) {
      if (i == j) continue;
      const int code = Q.code(i, j);
      if (code == 2) continue;
      const PairCounts pc = pair_counts(Q, i, j);
      const bool ok = (code == 1) ? omega_pair_system_holds(pc, n, mu)
                                  : one_pair_system_holds(pc, n, mu);
      if (!ok)
        return {std::nullopt,
                CheckFailure{i, j, std::string(code == 1 ? "w" : "1") + "-pair conditions fail at (" +
                                       std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")"}};
    }
  }
  return {mu, std::nullopt};
}

inline std::optional<std::int64_t> verify_via_conditions(const SeidelMatrix& Q) {
  return verify_via_conditions_explained(Q).mu;
}

}  // namespace etf
