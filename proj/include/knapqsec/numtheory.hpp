#pragma once

#include <cstdint>
#include <map>

namespace knapqsec {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b,
                                std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t addmod_u64(std::uint64_t a, std::uint64_t b,
                                std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) + b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp,
                         std::uint64_t m);

// Multiplicative inverse in Z_m for gcd(a, m) = 1.
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m);

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

// Prime factorization (trial division + Pollard rho), prime -> exponent.
std::map<std::uint64_t, int> factor_u64(std::uint64_t n);

}  // namespace knapqsec
