#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ksum/core.hpp"
#include "ksum/solvers.hpp"

namespace ksum {

/// Moment-curve embedding a -> (a, a^2, ..., a^d, a^(d+2)) over Z_Q. Its
/// images are affinely degenerate exactly when elements collide or sum to
/// zero, which is what makes the plane reduction work.
inline std::vector<Int> embed_moment_curve(const Int& a, int d, const Int& Q) {
  if (d < 1) throw std::invalid_argument("embed_moment_curve requires d >= 1");
  std::vector<Int> p;
  p.reserve(d + 1);
  Int acc = a % Q;
  if (acc < 0) acc += Q;
  Int base = acc;
  for (int j = 1; j <= d; ++j) {
    p.push_back(acc);
    acc = (acc * base) % Q;
  }
  acc = (acc * base) % Q;  // skip exponent d+1
  p.push_back(acc);
  return p;
}

/// Determinant of a square matrix over the prime field Z_Q by Gaussian
/// elimination.
inline Int det_mod(std::vector<std::vector<Int>> m, const Int& Q) {
  const std::size_t n = m.size();
  for (auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("det_mod requires a square matrix");
    for (auto& v : row) {
      v %= Q;
      if (v < 0) v += Q;
    }
  }
  Int det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = Q - det;  // row swap flips the sign
    }
    det = (det * m[col][col]) % Q;
    Int inv = mod_inverse(m[col][col], Q);
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      Int f = (m[row][col] * inv) % Q;
      for (std::size_t j = col; j < n; ++j) {
        m[row][j] = (m[row][j] - f * m[col][j]) % Q;
        if (m[row][j] < 0) m[row][j] += Q;
      }
    }
  }
  return det % Q;
}

/// True iff the d+2 points lie in a d-dimensional affine hyperplane over
/// Z_Q, i.e. the matrix of differences (b_1-b_{d+2}, ..., b_{d+1}-b_{d+2})
/// is singular.
inline bool is_affinely_degenerate(const std::vector<std::vector<Int>>& points, const Int& Q) {
  if (!is_prime(Q)) throw std::invalid_argument("is_affinely_degenerate requires prime Q");
  if (points.size() < 2) throw std::invalid_argument("is_affinely_degenerate needs d+2 points");
  const std::size_t dim = points[0].size();          // d+1
  if (points.size() != dim + 1)
    throw std::invalid_argument("is_affinely_degenerate: expected exactly d+2 points");
  for (const auto& p : points)
    if (p.size() != dim) throw std::invalid_argument("is_affinely_degenerate: ragged points");

  const auto& last = points.back();
  std::vector<std::vector<Int>> m(dim, std::vector<Int>(dim));
  for (std::size_t c = 0; c + 1 < points.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) m[r][c] = points[c][r] - last[r];
  return det_mod(std::move(m), Q) == 0;
}

/// det M(b_1, ..., b_{d+2}) where column i is f_d(b_i) - f_d(b_{d+2}),
/// computed by elimination. Companion to plane_det_closed_form below; the
/// two routes stay independent so each can check the other.
inline Int moment_det(const std::vector<Int>& b, int d, const Int& Q) {
  if (b.size() != static_cast<std::size_t>(d) + 2)
    throw std::invalid_argument("moment_det requires d+2 values");
  std::vector<std::vector<Int>> pts;
  pts.reserve(b.size());
  for (const Int& v : b) pts.push_back(embed_moment_curve(v, d, Q));
  const std::size_t dim = static_cast<std::size_t>(d) + 1;
  std::vector<std::vector<Int>> m(dim, std::vector<Int>(dim));
  for (std::size_t c = 0; c + 1 < pts.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) m[r][c] = pts[c][r] - pts.back()[r];
  return det_mod(std::move(m), Q);
}

/// (-1)^(d+1) (b_1 + ... + b_{d+2}) * prod_{i<j} (b_j - b_i) mod Q: the
/// closed form of moment_det, with the sign fixed by interpolating x^(d+1)
/// at the first d+1 values (the leading coefficient is +sum, so restoring
/// b_{d+2} contributes (-1)^(d+1)). Zero iff two values collide or the
/// values sum to 0.
inline Int plane_det_closed_form(const std::vector<Int>& b, int d, const Int& Q) {
  if (b.size() != static_cast<std::size_t>(d) + 2)
    throw std::invalid_argument("plane_det_closed_form requires d+2 values");
  Int acc = 0;
  for (const Int& v : b) acc += v;
  acc %= Q;
  if (d % 2 == 0) acc = -acc;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) acc = (acc * (b[j] - b[i])) % Q;
  acc %= Q;
  if (acc < 0) acc += Q;
  return acc;
}

using PlaneOracle = std::function<std::optional<std::vector<std::uint32_t>>(const PlaneInstance&)>;

/// Exhaustive (Q,m,d)-Plane search: the lexicographically first set of d+2
/// pairwise-distinct points lying in a d-dimensional affine hyperplane, or
/// nothing. Fewer than d+2 points is simply NotFound.
inline std::optional<std::vector<std::uint32_t>> solve_plane_bruteforce(const PlaneInstance& plane) {
  check_plane_instance(plane);
  const std::uint32_t m = static_cast<std::uint32_t>(plane.points.size());
  const int need = plane.d + 2;
  if (m < static_cast<std::uint32_t>(need)) return std::nullopt;
  if (binomial(m, need) > kEnumerationGuard)
    throw capacity_error("solve_plane_bruteforce: C(m, d+2) exceeds enumeration guard");

  std::vector<std::uint32_t> c(need);
  for (int j = 0; j < need; ++j) c[j] = j;
  for (;;) {
    bool distinct = true;
    for (int i = 0; i < need && distinct; ++i)
      for (int j = i + 1; j < need; ++j)
        if (plane.points[c[i]] == plane.points[c[j]]) {
          distinct = false;
          break;
        }
    if (distinct) {
      std::vector<std::vector<Int>> pts;
      pts.reserve(need);
      for (std::uint32_t i : c) pts.push_back(plane.points[i]);
      if (is_affinely_degenerate(pts, plane.q)) return c;
    }
    int j = need - 1;
    while (j >= 0 && c[j] == m - need + j) --j;
    if (j < 0) return std::nullopt;
    ++c[j];
    for (int l = j + 1; l < need; ++l) c[l] = c[l - 1] + 1;
  }
}

inline PlaneOracle plane_oracle_bruteforce() {
  return [](const PlaneInstance& p) { return solve_plane_bruteforce(p); };
}

/// (d+2)-SUM over Z_Q via a Plane oracle on moment-curve images. Oracle
/// outputs at indices with repeated element values are treated as misses
/// (equal elements embed to identical points); output at distinct values
/// that fails to verify means the oracle broke its contract.
inline OracleResult reduce_ksum_to_plane(const KSumInstance& inst, const PlaneOracle& oracle) {
  check_instance(inst);
  if (!inst.domain.is_modular() || !is_prime(inst.domain.bound))
    throw std::invalid_argument("reduce_ksum_to_plane requires a prime modular instance");
  if (inst.k < 3) throw std::invalid_argument("reduce_ksum_to_plane requires k = d+2 >= 3");
  const int d = inst.k - 2;
  PlaneInstance plane{d, inst.domain.bound, {}};
  plane.points.reserve(inst.elements.size());
  for (const Int& a : inst.elements) plane.points.push_back(embed_moment_curve(a, d, inst.domain.bound));

  auto res = oracle(plane);
  if (!res) return OracleResult::not_found();
  if (res->size() != static_cast<std::size_t>(inst.k))
    throw oracle_contract_error("plane oracle returned wrong index count");
  for (std::uint32_t i : *res)
    if (i >= inst.elements.size()) throw oracle_contract_error("plane oracle index out of range");

  for (std::size_t i = 0; i < res->size(); ++i)
    for (std::size_t j = i + 1; j < res->size(); ++j)
      if (inst.elements[(*res)[i]] == inst.elements[(*res)[j]])
        return OracleResult::not_found();  // f_d collision, treat as a miss

  OracleResult out = OracleResult::of(std::vector<std::uint32_t>(*res));
  if (!verify_ksum(inst, *out.solution))
    throw oracle_contract_error("plane oracle output is not a k-SUM");
  return out;
}

}  // namespace ksum
