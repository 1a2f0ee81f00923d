#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace lambdak {

/// Exact arbitrary-precision integer used for all coefficients.
using Int = boost::multiprecision::cpp_int;

/// Binomial coefficient C(n, k) via the falling factorial,
/// defined for every integer n (including negatives):
///   C(n, k) = n (n-1) ... (n-k+1) / k!
/// The division is always exact.
inline Int binomial(const Int& n, unsigned k) {
  Int num = 1;
  Int den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

inline Int pow_int(Int base, unsigned exp) {
  Int result = 1;
  while (exp) {
    if (exp & 1u) result *= base;
    base *= base;
    exp >>= 1u;
  }
  return result;
}

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// All primes p with lo <= p <= hi, ascending.
inline std::vector<long long> primes_in(long long lo, long long hi) {
  std::vector<long long> out;
  for (long long n = lo; n <= hi; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

/// Residue of v in [0, m).
inline Int mod_floor(const Int& v, const Int& m) {
  Int r = v % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace lambdak
