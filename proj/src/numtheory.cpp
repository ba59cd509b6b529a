#include "knapqsec/numtheory.hpp"

#include <numeric>

#include "knapqsec/rng.hpp"

namespace knapqsec {

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp,
                         std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
  // extended Euclid over signed 128-bit intermediates
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

namespace {

bool miller_rabin_round(std::uint64_t n, std::uint64_t a, std::uint64_t d,
                        int s) {
  std::uint64_t x = powmod_u64(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

std::uint64_t pollard_rho(std::uint64_t n, SplitMix64& rng) {
  // Brent's variant with batched gcds
  while (true) {
    std::uint64_t c = rng.bounded(n - 1) + 1;
    std::uint64_t y = rng.bounded(n);
    std::uint64_t m = 128, g = 1, q = 1, x = 0, ys = 0;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i)
        y = addmod_u64(mulmod_u64(y, y, n), c, n);
      for (std::uint64_t k = 0; k < r && g == 1; k += m) {
        ys = y;
        std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = addmod_u64(mulmod_u64(y, y, n), c, n);
          q = mulmod_u64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      // backtrack one step at a time
      do {
        ys = addmod_u64(mulmod_u64(ys, ys, n), c, n);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(std::uint64_t n, std::map<std::uint64_t, int>& out,
                SplitMix64& rng) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  std::uint64_t d = pollard_rho(n, rng);
  factor_rec(d, out, rng);
  factor_rec(n / d, out, rng);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // this base set is deterministic for the full 64-bit range
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (!miller_rabin_round(n, a, d, s)) return false;
  }
  return true;
}

std::map<std::uint64_t, int> factor_u64(std::uint64_t n) {
  std::map<std::uint64_t, int> out;
  if (n <= 1) return out;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  SplitMix64 rng(0x5eedf00du);
  factor_rec(n, out, rng);
  return out;
}

}  // namespace knapqsec
