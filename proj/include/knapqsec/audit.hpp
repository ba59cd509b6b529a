#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knapqsec/common.hpp"

namespace knapqsec::audit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// The five classical parameter conditions for Chor-Rivest moduli.
struct FiveConditions {
  bool p_prime = false;
  bool h_prime = false;
  bool h_le_p = false;
  bool h_in_11_31 = false;
  bool size_window = false;  // 10^44 < p^h - 1 < 10^60

  bool all() const {
    return p_prime && h_prime && h_le_p && h_in_11_31 && size_window;
  }
};

FiveConditions check_fc(std::uint64_t p, std::uint64_t h);

enum class GpfStatus { Satisfied, Violated, Unknown };

const char* gpf_status_name(GpfStatus status);

struct FactorBudget {
  std::uint64_t trial_division_limit = 1'000'000;
  std::uint64_t rho_iterations = 2'000'000;
};

// Outcome of bounding the greatest prime factor of p^h - 1. Unknown is a
// first-class result: desk-scale factoring cannot always decide the bound.
struct GpfReport {
  GpfStatus status = GpfStatus::Unknown;
  BigInt bound;
  std::vector<std::pair<BigInt, int>> prime_factors;  // proven, ascending
  BigInt unfactored_cofactor = 1;  // 1 when fully factored
  std::optional<BigInt> greatest_prime_factor;  // set when fully factored
};

inline BigInt default_gpf_bound() { return BigInt(10'000'000'000'000ULL); }

GpfReport gpf_bound_check(std::uint64_t p, std::uint64_t h,
                          const BigInt& bound = default_gpf_bound(),
                          const FactorBudget& budget = {});

// 4^p / (p^h - 1), exact.
Rational quantum_ratio(std::uint64_t p, std::uint64_t h);

// Fixed-point rendering with round-half-up, e.g. ("16", 1) -> "16.0".
std::string decimal_string(const Rational& value, unsigned places);

struct SecurityReport {
  std::uint64_t p = 0;
  std::uint64_t h = 0;
  FiveConditions fc;
  GpfReport gpf;
  Rational ratio;      // 4^p / (p^h - 1)
  BigInt threshold;    // 2^p; the asymptotic criterion pinned at constant 1
  bool quantum_secure = false;  // ratio > threshold, exact comparison
  std::optional<Rational> break_probability_bound;  // 1/(2 ratio) if insecure
};

SecurityReport chor_rivest_quantum_audit(std::uint64_t p, std::uint64_t h,
                                         const FactorBudget& budget = {});

// "1/6921506.2"-style display of the break probability; empty when secure.
std::string break_bound_display(const SecurityReport& report,
                                unsigned places = 1);

// Generic criterion for an n-dimensional knapsack over Z_r: secure exactly
// when r < 2^n (strict; the asymptotic constant is pinned at 1). The verdict
// equals the sign of the exact comparison 4^n vs r * 2^n.
struct ZrVerdict {
  std::uint64_t n = 0;
  BigInt r;
  BigInt threshold;  // 2^n
  bool secure = false;
};

ZrVerdict knapsack_zr_audit(std::uint64_t n, const BigInt& r);

}  // namespace knapqsec::audit
