#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ksum {

/// Arbitrary-precision integer and rational types used throughout the
/// library. All JSON/CSV surfaces serialize these as decimal strings.
using Int = mpz_class;
using Rat = mpq_class;

/// Thrown when an enumeration or table would exceed its size guard.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an oracle returns output that violates its contract.
class oracle_contract_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::size_t bit_length(const Int& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

/// floor(x^(1/n)) for x >= 0, n >= 1. Sets `exact` when x is a perfect
/// n-th power.
inline Int floor_root(const Int& x, unsigned long n, bool* exact = nullptr) {
  if (x < 0 || n == 0) throw std::invalid_argument("floor_root: x >= 0 and n >= 1 required");
  Int r;
  int ex = mpz_root(r.get_mpz_t(), x.get_mpz_t(), n);
  if (exact) *exact = (ex != 0);
  return r;
}

inline Int ceil_root(const Int& x, unsigned long n) {
  bool exact = false;
  Int r = floor_root(x, n, &exact);
  return exact ? r : Int(r + 1);
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int floor_rat(const Rat& r) {
  return floor_div(r.get_num(), r.get_den());
}

inline Int ceil_rat(const Rat& r) {
  return ceil_div(r.get_num(), r.get_den());
}

/// num/den as a canonical rational (the two-argument mpq_class constructor
/// does not reduce).
inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Int mod_pow(const Int& base, const Int& exp, const Int& mod) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

/// Modular inverse; throws if gcd(a, mod) != 1.
inline Int mod_inverse(const Int& a, const Int& mod) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0)
    throw std::invalid_argument("mod_inverse: element not invertible");
  return r;
}

inline Int binomial(unsigned long m, unsigned long k) {
  if (k > m) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), m, k);
  return r;
}

namespace detail {

inline bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned long s) {
  Int x = mod_pow(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned long i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;  // a witnesses compositeness
}

}  // namespace detail

/// Deterministic primality test: trial division by small primes followed by
/// Miller-Rabin with a fixed base set. The first twelve bases prove
/// primality for n < 3.317e24; the extended set keeps the test fully
/// deterministic (same verdict every run) for larger inputs.
inline bool is_prime(const Int& n) {
  static const unsigned long small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                               41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  if (n < 2) return false;
  for (unsigned long p : small_primes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n < 101 * 101) return true;

  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  for (unsigned long a : small_primes) {
    if (detail::miller_rabin_witness(n, Int(a), d, s)) return false;
  }
  return true;
}

inline Int next_prime_at_least(Int n) {
  if (n <= 2) return 2;
  if (mpz_even_p(n.get_mpz_t())) n += 1;
  while (!is_prime(n)) n += 2;
  return n;
}

inline Int parse_decimal(const std::string& s) {
  Int r;
  if (s.empty() || mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("not a decimal integer: '" + s + "'");
  return r;
}

inline std::string to_decimal(const Int& x) { return x.get_str(10); }

/// Parses "p/q", plain integers, and simple decimals ("0.1") as exact
/// rationals.
inline Rat parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num = parse_decimal(s.substr(0, slash));
    Int den = parse_decimal(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: '" + s + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac = s.size() - dot - 1;
    if (frac == 0) throw std::invalid_argument("malformed decimal: '" + s + "'");
    Int num = parse_decimal(digits);
    Rat r(num, pow_int(10, frac));
    r.canonicalize();
    return r;
  }
  return Rat(parse_decimal(s));
}

inline std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str(10);
  return r.get_num().get_str(10) + "/" + r.get_den().get_str(10);
}

inline bool fits_s64(const Int& x) {
  return mpz_fits_slong_p(x.get_mpz_t()) != 0;
}

inline std::int64_t to_s64(const Int& x) {
  if (!fits_s64(x)) throw std::overflow_error("value does not fit in 64 bits");
  return mpz_get_si(x.get_mpz_t());
}

inline unsigned long to_ulong_checked(const Int& x, const char* what) {
  if (x < 0 || mpz_fits_ulong_p(x.get_mpz_t()) == 0)
    throw capacity_error(std::string(what) + " does not fit in an unsigned long");
  return mpz_get_ui(x.get_mpz_t());
}

}  // namespace ksum
