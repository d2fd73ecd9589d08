#pragma once

#include <vector>

#include "ksum/core.hpp"
#include "ksum/rng.hpp"

namespace ksum {

/// m elements i.i.d. uniform over the domain's range. Same seed, same
/// instance, on any platform.
inline KSumInstance gen_ksum(const Domain& domain, long m, int k, Seed seed) {
  if (k < 2) throw std::invalid_argument("gen_ksum requires k >= 2");
  if (m < k) throw std::invalid_argument("gen_ksum requires m >= k");
  Prng g(seed);
  std::vector<Int> elems;
  elems.reserve(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) {
    if (domain.is_modular())
      elems.push_back(g.below(domain.bound));
    else
      elems.push_back(g.interval(domain.bound));
  }
  return KSumInstance{domain, k, std::move(elems)};
}

/// m' i.i.d. uniform residues mod q^r. q must be prime (checked
/// deterministically).
inline SisInstance gen_sis(const Int& q, int r, long m_prime, const Int& beta, Seed seed) {
  if (!is_prime(q)) throw std::invalid_argument("gen_sis requires prime q");
  if (r < 1) throw std::invalid_argument("gen_sis requires r >= 1");
  if (m_prime < 1) throw std::invalid_argument("gen_sis requires m' >= 1");
  if (beta < 1) throw std::invalid_argument("gen_sis requires beta >= 1");
  SisInstance s{q, r, beta, {}};
  Int Q = s.modulus();
  Prng g(seed);
  s.elements.reserve(static_cast<std::size_t>(m_prime));
  for (long i = 0; i < m_prime; ++i) s.elements.push_back(g.below(Q));
  return s;
}

}  // namespace ksum
