#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "knapqsec/common.hpp"

namespace knapqsec::core {

// Bit convention shared by the whole project: an n-bit vector (x_1,...,x_n)
// has integer value sum_i 2^{n-i} x_i, i.e. x_1 is the most significant bit.
struct BitVector {
  std::uint64_t value = 0;
  int width = 0;

  // x_{i+1}: coefficient of 2^{width-1-i}, 0-based from the most
  // significant end.
  bool bit(int i) const { return (value >> (width - 1 - i)) & 1u; }
  std::vector<int> bits() const;                       // most significant first
  static BitVector from_bits(const std::vector<int>& bits);
  std::string to_string() const;                       // e.g. "101"

  friend auto operator<=>(const BitVector&, const BitVector&) = default;
};

// A knapsack instance over Z_r: weights b, target s. Construction validates
// the domain (r >= 2, nonempty b, all residues canonical) and throws Error
// naming the offending field otherwise.
class KnapsackInstance {
 public:
  KnapsackInstance(std::vector<std::uint64_t> weights, std::uint64_t target,
                   std::uint64_t modulus);

  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t target() const { return target_; }
  const std::vector<std::uint64_t>& weights() const { return weights_; }
  int n() const { return static_cast<int>(weights_.size()); }

 private:
  std::vector<std::uint64_t> weights_;
  std::uint64_t target_ = 0;
  std::uint64_t modulus_ = 2;
};

// Enumeration guards. Exceeding one raises InstanceTooLarge rather than
// silently truncating; callers may pass a larger value explicitly.
inline constexpr int kBruteForceGuard = 30;
inline constexpr int kMeetInMiddleGuard = 40;
inline constexpr int kExtendedGuard = 12;

// sum_i x_i b_i mod r for the candidate with integer value x.
std::uint64_t subset_sum_mod(const KnapsackInstance& inst, std::uint64_t x);

bool is_solution(const KnapsackInstance& inst, std::uint64_t x);

// All x in {0,1}^n with sum_i x_i b_i = s (mod r), ascending by value.
std::vector<BitVector> brute_force_solutions(const KnapsackInstance& inst,
                                             int guard = kBruteForceGuard);

// Same set as brute_force_solutions; splits the weights into halves and
// matches residue sums through a multimap keyed by canonical residue, so
// modular wraparound needs a single lookup.
std::vector<BitVector> meet_in_the_middle_solutions(
    const KnapsackInstance& inst, int guard = kMeetInMiddleGuard);

// Number of coefficient vectors over {-1,0,1,2}^n with
// sum_i x'_i b_i = s' (mod r). Enumerates all 4^n candidates.
std::uint64_t count_extended_solutions(const std::vector<std::uint64_t>& b,
                                       std::uint64_t s_prime, std::uint64_t r,
                                       int guard = kExtendedGuard);

// Histogram of the same counts over every reachable residue class, in one
// 4^n pass. Values sum to exactly 4^n.
std::map<std::uint64_t, std::uint64_t> extended_count_histogram(
    const std::vector<std::uint64_t>& b, std::uint64_t r,
    int guard = kExtendedGuard);

// n / log2(max_i b_i). Requires max b_i >= 2.
double density(const std::vector<std::uint64_t>& b);

}  // namespace knapqsec::core
