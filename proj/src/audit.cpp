#include "knapqsec/audit.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <map>

#include "knapqsec/numtheory.hpp"
#include "knapqsec/rng.hpp"

namespace knapqsec::audit {

namespace {

BigInt pow_big(std::uint64_t base, std::uint64_t exp) {
  BigInt acc = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1u) acc *= b;
    b *= b;
    exp >>= 1;
  }
  return acc;
}

BigInt ten_to(unsigned e) { return pow_big(10, e); }

bool is_probable_prime(const BigInt& n) {
  return boost::multiprecision::miller_rabin_test(n, 25);
}

// Brent-cycle rho returning a nontrivial factor, or 0 when the iteration
// budget runs out first. Each squaring step costs one unit of budget.
BigInt rho_factor(const BigInt& n, std::uint64_t& budget, SplitMix64& rng) {
  using boost::multiprecision::gcd;
  if (n % 2 == 0) return 2;
  while (budget > 0) {
    const BigInt c = BigInt(rng.next()) % (n - 1) + 1;
    BigInt y = BigInt(rng.next()) % (n - 1) + 1;
    BigInt g = 1, q = 1, x = y, ys = y;
    std::uint64_t r = 1;
    const std::uint64_t batch = 128;
    while (g == 1 && budget > 0) {
      x = y;
      for (std::uint64_t i = 0; i < r && budget > 0; ++i) {
        y = (y * y + c) % n;
        --budget;
      }
      std::uint64_t k = 0;
      while (k < r && g == 1 && budget > 0) {
        ys = y;
        const std::uint64_t steps = std::min(batch, r - k);
        for (std::uint64_t i = 0; i < steps && budget > 0; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
          --budget;
        }
        g = gcd(q, n);
        k += steps;
      }
      r *= 2;
    }
    if (g == n) {
      // the batched gcd overshot; replay one step at a time
      do {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
    // cycle found only the trivial divisor: retry with a fresh constant
  }
  return 0;
}

}  // namespace

FiveConditions check_fc(std::uint64_t p, std::uint64_t h) {
  if (p < 1 || h < 1)
    fail(Errc::BadParameters, "p and h must be at least 1");
  FiveConditions fc;
  fc.p_prime = is_prime_u64(p);
  fc.h_prime = is_prime_u64(h);
  fc.h_le_p = h <= p;
  fc.h_in_11_31 = h >= 11 && h <= 31;
  const BigInt n = pow_big(p, h) - 1;
  fc.size_window = n > ten_to(44) && n < ten_to(60);
  return fc;
}

const char* gpf_status_name(GpfStatus status) {
  switch (status) {
    case GpfStatus::Satisfied: return "satisfied";
    case GpfStatus::Violated: return "violated";
    case GpfStatus::Unknown: return "unknown";
  }
  return "?";
}

GpfReport gpf_bound_check(std::uint64_t p, std::uint64_t h,
                          const BigInt& bound, const FactorBudget& budget) {
  if (p < 1 || h < 1)
    fail(Errc::BadParameters, "p and h must be at least 1");
  BigInt n = pow_big(p, h) - 1;
  if (n < 1)
    fail(Errc::DegenerateModulus,
         "p^h - 1 must be positive; got " + n.str());

  GpfReport report;
  report.bound = bound;

  std::map<BigInt, int> primes;

  // trial division up to the budgeted limit
  auto strip = [&](const BigInt& d) {
    while (n % d == 0) {
      ++primes[d];
      n /= d;
    }
  };
  strip(2);
  for (BigInt d = 3; d <= budget.trial_division_limit && d * d <= n; d += 2)
    strip(d);
  if (n > 1 && n <= BigInt(budget.trial_division_limit) *
                        BigInt(budget.trial_division_limit)) {
    // what remains has no divisor below its square root, so it is prime
    ++primes[n];
    n = 1;
  }

  // rho phase on whatever composite mass is left
  std::uint64_t iterations = budget.rho_iterations;
  SplitMix64 rng(0x9f4c7d3a11e5b021ULL);
  std::vector<BigInt> pending;
  BigInt leftover = 1;
  if (n > 1) pending.push_back(n);
  while (!pending.empty()) {
    BigInt m = pending.back();
    pending.pop_back();
    if (is_probable_prime(m)) {
      ++primes[m];
      continue;
    }
    const BigInt d = rho_factor(m, iterations, rng);
    if (d == 0) {
      leftover *= m;  // budget exhausted with m still composite
      continue;
    }
    pending.push_back(d);
    pending.push_back(m / d);
  }

  for (const auto& [prime, exp] : primes)
    report.prime_factors.emplace_back(prime, exp);
  report.unfactored_cofactor = leftover;

  const BigInt largest_proven =
      primes.empty() ? BigInt(1) : primes.rbegin()->first;
  if (largest_proven > bound) {
    report.status = GpfStatus::Violated;
  } else if (leftover == 1) {
    report.status = GpfStatus::Satisfied;
    report.greatest_prime_factor = largest_proven;
  } else if (leftover <= bound) {
    // every prime factor of the leftover is below the leftover itself
    report.status = GpfStatus::Satisfied;
  } else {
    report.status = GpfStatus::Unknown;
  }
  return report;
}

Rational quantum_ratio(std::uint64_t p, std::uint64_t h) {
  if (p < 1 || h < 1)
    fail(Errc::BadParameters, "p and h must be at least 1");
  const BigInt n = pow_big(p, h) - 1;
  if (n < 1)
    fail(Errc::DegenerateModulus,
         "p^h - 1 must be positive to form 4^p / (p^h - 1)");
  return Rational(pow_big(4, p), n);
}

std::string decimal_string(const Rational& value, unsigned places) {
  using boost::multiprecision::numerator;
  using boost::multiprecision::denominator;
  BigInt num = numerator(value);
  const BigInt den = denominator(value);  // canonical: always positive
  const bool negative = num < 0;
  if (negative) num = -num;

  const BigInt scaled = num * ten_to(places);
  const BigInt q = (scaled + den / 2) / den;  // round half up

  std::string digits = q.str();
  if (digits.size() <= places)
    digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = negative ? "-" : "";
  out += digits.substr(0, digits.size() - places);
  if (places > 0) {
    out += '.';
    out += digits.substr(digits.size() - places);
  }
  return out;
}

SecurityReport chor_rivest_quantum_audit(std::uint64_t p, std::uint64_t h,
                                         const FactorBudget& budget) {
  SecurityReport report;
  report.p = p;
  report.h = h;
  report.fc = check_fc(p, h);
  report.gpf = gpf_bound_check(p, h, default_gpf_bound(), budget);
  report.ratio = quantum_ratio(p, h);
  report.threshold = pow_big(2, p);
  report.quantum_secure = report.ratio > Rational(report.threshold);
  if (!report.quantum_secure)
    report.break_probability_bound = Rational(1) / (2 * report.ratio);
  return report;
}

std::string break_bound_display(const SecurityReport& report,
                                unsigned places) {
  if (!report.break_probability_bound) return "";
  // reciprocal form: 1 / (2 * ratio), denominator rendered as a decimal
  return "1/" + decimal_string(Rational(1) / *report.break_probability_bound,
                               places);
}

ZrVerdict knapsack_zr_audit(std::uint64_t n, const BigInt& r) {
  if (n < 1)
    fail(Errc::BadParameters, "n must be at least 1");
  if (r < 2)
    fail(Errc::ModulusTooSmall,
         "the modulus must be at least 2; got " + r.str());
  ZrVerdict verdict;
  verdict.n = n;
  verdict.r = r;
  verdict.threshold = pow_big(2, n);
  verdict.secure = r < verdict.threshold;
  return verdict;
}

}  // namespace knapqsec::audit
