#include "knapqsec/core.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace knapqsec::core {

namespace {

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t r) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) + b) % r);
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t r) {
  return a >= b ? a - b : a + (r - b);
}

void check_guard(int n, int guard, const char* what) {
  if (n > guard) {
    fail(Errc::InstanceTooLarge,
         std::string(what) + ": n = " + std::to_string(n) +
             " exceeds the enumeration guard " + std::to_string(guard));
  }
}

}  // namespace

std::vector<int> BitVector::bits() const {
  std::vector<int> out(width);
  for (int i = 0; i < width; ++i) out[i] = bit(i) ? 1 : 0;
  return out;
}

BitVector BitVector::from_bits(const std::vector<int>& bits) {
  BitVector v;
  v.width = static_cast<int>(bits.size());
  for (int b : bits) v.value = (v.value << 1) | (b ? 1u : 0u);
  return v;
}

std::string BitVector::to_string() const {
  std::string out(width, '0');
  for (int i = 0; i < width; ++i)
    if (bit(i)) out[i] = '1';
  return out;
}

KnapsackInstance::KnapsackInstance(std::vector<std::uint64_t> weights,
                                   std::uint64_t target,
                                   std::uint64_t modulus)
    : weights_(std::move(weights)), target_(target), modulus_(modulus) {
  if (modulus_ < 2)
    fail(Errc::ModulusTooSmall,
         "field \"r\": modulus " + std::to_string(modulus_) + " is below 2");
  if (weights_.empty())
    fail(Errc::EmptyVector, "field \"b\": the knapsack vector is empty");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] >= modulus_)
      fail(Errc::ResidueOutOfRange,
           "field \"b[" + std::to_string(i) + "]\": " +
               std::to_string(weights_[i]) + " is not a residue mod " +
               std::to_string(modulus_));
  }
  if (target_ >= modulus_)
    fail(Errc::ResidueOutOfRange,
         "field \"s\": " + std::to_string(target_) +
             " is not a residue mod " + std::to_string(modulus_));
}

std::uint64_t subset_sum_mod(const KnapsackInstance& inst, std::uint64_t x) {
  const auto& b = inst.weights();
  const int n = inst.n();
  std::uint64_t acc = 0;
  for (int j = 0; j < n; ++j) {
    if ((x >> j) & 1u) acc = addmod(acc, b[n - 1 - j], inst.modulus());
  }
  return acc;
}

bool is_solution(const KnapsackInstance& inst, std::uint64_t x) {
  return subset_sum_mod(inst, x) == inst.target();
}

std::vector<BitVector> brute_force_solutions(const KnapsackInstance& inst,
                                             int guard) {
  check_guard(inst.n(), guard, "brute_force_solutions");
  const int n = inst.n();
  const std::uint64_t r = inst.modulus();
  const auto& b = inst.weights();

  std::vector<BitVector> out;
  // Gray-code walk: one weight toggles per step, so the running sum is
  // maintained with a single modular add/sub.
  std::uint64_t gray = 0, sum = 0;
  if (sum == inst.target()) out.push_back({0, n});
  for (std::uint64_t t = 1; t < (std::uint64_t{1} << n); ++t) {
    const int flip = std::countr_zero(t);
    gray ^= std::uint64_t{1} << flip;
    const std::uint64_t w = b[n - 1 - flip];
    sum = (gray >> flip) & 1u ? addmod(sum, w, r) : submod(sum, w, r);
    if (sum == inst.target()) out.push_back({gray, n});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// residue sums of every mask over b[first, first+len), Gray order restored
// to natural indexing
std::vector<std::uint64_t> half_sums(const std::vector<std::uint64_t>& b,
                                     int first, int len, int n,
                                     std::uint64_t r) {
  std::vector<std::uint64_t> sums(std::uint64_t{1} << len, 0);
  std::uint64_t gray = 0, sum = 0;
  for (std::uint64_t t = 1; t < (std::uint64_t{1} << len); ++t) {
    const int flip = std::countr_zero(t);
    gray ^= std::uint64_t{1} << flip;
    // mask bit j toggles coefficient b[first + len - 1 - j]
    const std::uint64_t w = b[first + len - 1 - flip];
    sum = (gray >> flip) & 1u ? addmod(sum, w, r) : submod(sum, w, r);
    sums[gray] = sum;
  }
  (void)n;
  return sums;
}

}  // namespace

std::vector<BitVector> meet_in_the_middle_solutions(
    const KnapsackInstance& inst, int guard) {
  check_guard(inst.n(), guard, "meet_in_the_middle_solutions");
  const int n = inst.n();
  const int m = n / 2;           // first half: coefficients b[0, m)
  const int rest = n - m;
  const std::uint64_t r = inst.modulus();

  const auto low_sums = half_sums(inst.weights(), m, rest, n, r);
  std::unordered_multimap<std::uint64_t, std::uint64_t> by_residue;
  by_residue.reserve(low_sums.size());
  for (std::uint64_t mask = 0; mask < low_sums.size(); ++mask)
    by_residue.emplace(low_sums[mask], mask);

  const auto high_sums = half_sums(inst.weights(), 0, m, n, r);
  std::vector<BitVector> out;
  for (std::uint64_t hi = 0; hi < high_sums.size(); ++hi) {
    const std::uint64_t need = submod(inst.target(), high_sums[hi], r);
    auto [it, end] = by_residue.equal_range(need);
    for (; it != end; ++it)
      out.push_back({(hi << rest) | it->second, n});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// shared 4^n walk over {-1,0,1,2} coefficient vectors
template <typename Visit>
void extended_walk(const std::vector<std::uint64_t>& b, std::uint64_t r,
                   Visit&& visit) {
  const int n = static_cast<int>(b.size());
  // per position: residues contributed by coefficients -1, 0, 1, 2
  std::vector<std::array<std::uint64_t, 4>> step(n);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t w = b[i] % r;
    step[i] = {w == 0 ? 0 : r - w, 0, w, addmod(w, w, r)};
  }
  // iterative odometer with running partial sums per depth
  std::vector<int> digit(n, 0);
  std::vector<std::uint64_t> partial(n + 1, 0);
  for (int i = 0; i < n; ++i)
    partial[i + 1] = addmod(partial[i], step[i][0], r);
  for (;;) {
    visit(partial[n]);
    int i = n - 1;
    while (i >= 0 && digit[i] == 3) {
      digit[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++digit[i];
    for (int j = i; j < n; ++j)
      partial[j + 1] = addmod(partial[j], step[j][digit[j]], r);
  }
}

}  // namespace

std::uint64_t count_extended_solutions(const std::vector<std::uint64_t>& b,
                                       std::uint64_t s_prime, std::uint64_t r,
                                       int guard) {
  KnapsackInstance domain(b, s_prime, r);  // validates b, s', r
  check_guard(domain.n(), guard, "count_extended_solutions");
  std::uint64_t count = 0;
  extended_walk(b, r, [&](std::uint64_t sum) {
    if (sum == s_prime) ++count;
  });
  return count;
}

std::map<std::uint64_t, std::uint64_t> extended_count_histogram(
    const std::vector<std::uint64_t>& b, std::uint64_t r, int guard) {
  KnapsackInstance domain(b, 0, r);
  check_guard(domain.n(), guard, "extended_count_histogram");
  std::map<std::uint64_t, std::uint64_t> hist;
  if (r <= (std::uint64_t{1} << 22)) {
    std::vector<std::uint64_t> dense(r, 0);
    extended_walk(b, r, [&](std::uint64_t sum) { ++dense[sum]; });
    for (std::uint64_t v = 0; v < r; ++v)
      if (dense[v] > 0) hist.emplace(v, dense[v]);
  } else {
    std::unordered_map<std::uint64_t, std::uint64_t> sparse;
    extended_walk(b, r, [&](std::uint64_t sum) { ++sparse[sum]; });
    hist.insert(sparse.begin(), sparse.end());
  }
  return hist;
}

double density(const std::vector<std::uint64_t>& b) {
  if (b.empty())
    fail(Errc::EmptyVector, "field \"b\": the knapsack vector is empty");
  const std::uint64_t mx = *std::max_element(b.begin(), b.end());
  if (mx < 2)
    fail(Errc::DegenerateVector,
         "density is undefined when every weight is below 2");
  return static_cast<double>(b.size()) /
         std::log2(static_cast<double>(mx));
}

}  // namespace knapqsec::core
