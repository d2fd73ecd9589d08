#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ksum/numeric.hpp"

namespace ksum {

enum class DomainKind { modular, interval };

/// Element domain of a k-SUM instance: residues in [0, Q) or integers in
/// [-u, u]. Modular elements are always stored as canonical residues;
/// centered form is computed on demand via center_representative.
struct Domain {
  DomainKind kind = DomainKind::modular;
  Int bound = 2;  // Q for modular, u for interval

  static Domain modular(Int Q) {
    if (Q < 2) throw std::invalid_argument("modular domain requires Q >= 2");
    return Domain{DomainKind::modular, std::move(Q)};
  }

  static Domain interval(Int u) {
    if (u < 1) throw std::invalid_argument("interval domain requires u >= 1");
    return Domain{DomainKind::interval, std::move(u)};
  }

  bool is_modular() const { return kind == DomainKind::modular; }

  bool contains(const Int& v) const {
    if (is_modular()) return v >= 0 && v < bound;
    return v >= -bound && v <= bound;
  }

  bool operator==(const Domain& o) const { return kind == o.kind && bound == o.bound; }
};

struct KSumInstance {
  Domain domain;
  int k = 2;
  std::vector<Int> elements;

  std::size_t size() const { return elements.size(); }
};

/// A set of exactly k distinct indices into an instance, kept sorted.
struct KSumSolution {
  std::vector<std::uint32_t> indices;
};

struct SisInstance {
  Int q;       // prime
  int r = 1;   // modulus is q^r
  Int beta;    // l1 bound
  std::vector<Int> elements;

  Int modulus() const { return pow_int(q, static_cast<unsigned long>(r)); }
};

struct SisSolution {
  std::vector<Int> x;
};

struct PlaneInstance {
  int d = 1;
  Int q;  // prime
  std::vector<std::vector<Int>> points;  // each of dimension d+1
};

inline void check_instance(const KSumInstance& inst) {
  if (inst.k < 2) throw std::invalid_argument("instance requires k >= 2");
  if (inst.elements.size() < static_cast<std::size_t>(inst.k))
    throw std::invalid_argument("instance requires m >= k");
  for (const Int& e : inst.elements)
    if (!inst.domain.contains(e))
      throw std::invalid_argument("element out of domain range: " + to_decimal(e));
}

inline KSumInstance make_ksum_instance(Domain domain, int k, std::vector<Int> elements) {
  KSumInstance inst{std::move(domain), k, std::move(elements)};
  check_instance(inst);
  return inst;
}

inline void check_sis_instance(const SisInstance& s) {
  if (s.r < 1) throw std::invalid_argument("SIS instance requires r >= 1");
  if (!is_prime(s.q)) throw std::invalid_argument("SIS instance requires prime q");
  if (s.beta < 1) throw std::invalid_argument("SIS instance requires beta >= 1");
  if (s.elements.empty()) throw std::invalid_argument("SIS instance requires m' >= 1");
  Int Q = s.modulus();
  for (const Int& e : s.elements)
    if (e < 0 || e >= Q) throw std::invalid_argument("SIS element out of [0, Q)");
}

inline void check_plane_instance(const PlaneInstance& p) {
  if (p.d < 1) throw std::invalid_argument("plane instance requires d >= 1");
  if (!is_prime(p.q)) throw std::invalid_argument("plane instance requires prime Q");
  for (const auto& pt : p.points) {
    if (pt.size() != static_cast<std::size_t>(p.d) + 1)
      throw std::invalid_argument("plane point has wrong dimension");
    for (const Int& c : pt)
      if (c < 0 || c >= p.q) throw std::invalid_argument("plane coordinate out of [0, Q)");
  }
}

/// Maps a canonical residue in [0, Q) to its centered representative in
/// [-(Q-1)/2, (Q-1)/2]. Q must be odd: the centered range is only
/// well-defined then, and every use in this library has Q = 2u+1.
inline Int center_representative(const Int& residue, const Int& Q) {
  if (Q < 3 || mpz_even_p(Q.get_mpz_t()))
    throw std::invalid_argument("center_representative requires odd Q >= 3");
  if (residue < 0 || residue >= Q)
    throw std::invalid_argument("center_representative requires residue in [0, Q)");
  Int half = (Q - 1) / 2;
  return residue > half ? Int(residue - Q) : residue;
}

namespace detail {

inline void check_solution_indices(const std::vector<std::uint32_t>& idx, std::size_t m, int k) {
  if (idx.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("solution has wrong cardinality");
  std::vector<std::uint32_t> sorted(idx);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= m) throw std::invalid_argument("solution index out of range");
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw std::invalid_argument("solution indices not distinct");
  }
}

}  // namespace detail

/// True iff the k indexed elements sum to zero -- exactly for interval
/// domains, mod Q for modular ones.
inline bool verify_ksum(const KSumInstance& inst, const KSumSolution& sol) {
  detail::check_solution_indices(sol.indices, inst.elements.size(), inst.k);
  Int sum = 0;
  for (std::uint32_t i : sol.indices) sum += inst.elements[i];
  if (inst.domain.is_modular()) return sum % inst.domain.bound == 0;
  return sum == 0;
}

/// True iff x is nonzero, has l1 norm at most beta, and <x, elements> = 0
/// mod q^r.
inline bool verify_sis(const SisInstance& inst, const SisSolution& sol) {
  if (sol.x.size() != inst.elements.size())
    throw std::invalid_argument("SIS solution length mismatch");
  Int l1 = 0, dot = 0;
  bool nonzero = false;
  for (std::size_t i = 0; i < sol.x.size(); ++i) {
    if (sol.x[i] != 0) nonzero = true;
    l1 += abs(sol.x[i]);
    dot += sol.x[i] * inst.elements[i];
  }
  if (!nonzero || l1 > inst.beta) return false;
  return dot % inst.modulus() == 0;
}

}  // namespace ksum
